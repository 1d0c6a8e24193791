#include "espeed/sequencing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace espeed {

void check_permutation(const Permutation& perm, const Instance& inst)
{
        if (perm.order.size() != inst.jobs.size()) throw Error("permutation length does not match job count");
        std::set<JobId> ids;
        for (const auto& j : inst.jobs) ids.insert(j.id);
        std::set<JobId> seen;
        for (JobId id : perm.order) {
                if (!ids.count(id)) throw Error("permutation names unknown job " + std::to_string(id));
                if (!seen.insert(id).second) throw Error("permutation repeats job " + std::to_string(id));
        }
}

double LBReport::duration_of(JobId id) const
{
        for (std::size_t i = 0; i < permutation.order.size(); ++i) {
                if (permutation.order[i] == id) return durations[i];
        }
        throw Error("job " + std::to_string(id) + " is not part of the bound");
}

namespace {

void require_kind(const Instance& inst, JobKind kind)
{
        if (inst.kind != kind) {
                throw Error(std::string("expected a ") + to_string(kind) + " instance, got " + to_string(inst.kind));
        }
}

int rigid_size(const Job& j) { return std::get<RigidSize>(j.demand).size; }
int moldable_cap(const Job& j) { return std::get<MoldableCap>(j.demand).delta; }

double per_proc_work(const Job& j) { return j.total_work / j.demand_count(); }

LBReport make_report(const Permutation& perm, const DurationSolution& sol)
{
        return LBReport{perm, sol.durations, sol.multiplier, sol.objective};
}

}  // namespace

Permutation order_rigid(const Instance& inst)
{
        require_kind(inst, JobKind::Rigid);
        require_valid(inst);
        const double w0 = per_proc_work(inst.jobs.front());
        for (const auto& j : inst.jobs) {
                if (std::abs(per_proc_work(j) - w0) > 1e-9 * std::max(std::abs(w0), std::abs(per_proc_work(j)))) {
                        throw Error("non-identical works");
                }
        }
        std::vector<const Job*> sorted;
        for (const auto& j : inst.jobs) sorted.push_back(&j);
        std::sort(sorted.begin(), sorted.end(), [](const Job* a, const Job* b) {
                if (rigid_size(*a) != rigid_size(*b)) return rigid_size(*a) < rigid_size(*b);
                return a->id < b->id;
        });
        Permutation perm;
        for (const auto* j : sorted) perm.order.push_back(j->id);
        return perm;
}

WeightedProgram rigid_program(const Permutation& perm, const Instance& inst)
{
        require_kind(inst, JobKind::Rigid);
        check_permutation(perm, inst);
        const double n = static_cast<double>(perm.order.size());
        const double m = inst.m;
        const double a = inst.alpha.value;

        WeightedProgram prog;
        prog.budget = inst.energy;
        prog.alpha = inst.alpha;
        for (std::size_t i = 0; i < perm.order.size(); ++i) {
                const auto& j = inst.job(perm.order[i]);
                const double size = rigid_size(j);
                const double pos = static_cast<double>(i + 1);
                prog.weights.push_back((size * (n - pos + 0.5) + 0.5 * m) / m);
                prog.energy_coeffs.push_back(std::pow(per_proc_work(j), a) * size);
        }
        return prog;
}

LBReport lb_rigid(const Permutation& perm, const Instance& inst)
{
        return make_report(perm, solve_weighted(rigid_program(perm, inst)));
}

double lb_rigid_direct(const Permutation& perm, const Instance& inst)
{
        require_kind(inst, JobKind::Rigid);
        check_permutation(perm, inst);
        const double n = static_cast<double>(perm.order.size());
        const double m = inst.m;
        const double a = inst.alpha.value;
        double sum = 0.0;
        for (std::size_t i = 0; i < perm.order.size(); ++i) {
                const auto& j = inst.job(perm.order[i]);
                const double size = rigid_size(j);
                const double pos = static_cast<double>(i + 1);
                sum += per_proc_work(j) * std::pow(size, 1.0 / a) *
                       std::pow(size * (n - pos + 0.5) + 0.5 * m, (a - 1.0) / a);
        }
        return std::pow(inst.energy, 1.0 / (1.0 - a)) / m * std::pow(sum, a / (a - 1.0));
}

Permutation order_moldable(const Instance& inst)
{
        require_kind(inst, JobKind::Moldable);
        require_valid(inst);
        std::vector<const Job*> sorted;
        for (const auto& j : inst.jobs) sorted.push_back(&j);
        std::sort(sorted.begin(), sorted.end(), [](const Job* a, const Job* b) {
                if (moldable_cap(*a) != moldable_cap(*b)) return moldable_cap(*a) < moldable_cap(*b);
                if (a->total_work != b->total_work) return a->total_work < b->total_work;
                return a->id < b->id;
        });
        // Sorted by (delta, V): agreeable iff V is non-decreasing along the order.
        for (std::size_t i = 1; i < sorted.size(); ++i) {
                if (sorted[i]->total_work < sorted[i - 1]->total_work) throw Error("non-agreeable instance");
        }
        Permutation perm;
        for (const auto* j : sorted) perm.order.push_back(j->id);
        return perm;
}

WeightedProgram moldable_program(const Permutation& perm, const Instance& inst)
{
        require_kind(inst, JobKind::Moldable);
        check_permutation(perm, inst);
        const double n = static_cast<double>(perm.order.size());
        const double m = inst.m;
        const double a = inst.alpha.value;

        WeightedProgram prog;
        prog.budget = inst.energy;
        prog.alpha = inst.alpha;
        for (std::size_t i = 0; i < perm.order.size(); ++i) {
                const auto& j = inst.job(perm.order[i]);
                const double pos = static_cast<double>(i + 1);
                prog.weights.push_back((n - pos + 0.5 + 0.5 * m / moldable_cap(j)) / m);
                prog.energy_coeffs.push_back(std::pow(j.total_work, a));
        }
        return prog;
}

LBReport lb_moldable(const Permutation& perm, const Instance& inst)
{
        return make_report(perm, solve_weighted(moldable_program(perm, inst)));
}

double lb_moldable_direct(const Permutation& perm, const Instance& inst)
{
        require_kind(inst, JobKind::Moldable);
        check_permutation(perm, inst);
        const double n = static_cast<double>(perm.order.size());
        const double m = inst.m;
        const double a = inst.alpha.value;
        double sum = 0.0;
        for (std::size_t i = 0; i < perm.order.size(); ++i) {
                const auto& j = inst.job(perm.order[i]);
                const double pos = static_cast<double>(i + 1);
                sum += j.total_work * std::pow(n - pos + 0.5 + 0.5 * m / moldable_cap(j), (a - 1.0) / a);
        }
        return std::pow(inst.energy, 1.0 / (1.0 - a)) / m * std::pow(sum, a / (a - 1.0));
}

Permutation order_dedicated(const std::vector<Job>& jobs, Alpha alpha)
{
        std::vector<std::pair<double, JobId>> keyed;
        for (const auto& j : jobs) {
                const double width = j.demand_count();
                keyed.emplace_back(per_proc_work(j) * std::pow(width, 1.0 / alpha.value), j.id);
        }
        std::sort(keyed.begin(), keyed.end());
        Permutation perm;
        for (const auto& [key, id] : keyed) perm.order.push_back(id);
        return perm;
}

WeightedProgram chain_program(const Permutation& perm, const std::vector<Job>& jobs, double budget, Alpha alpha)
{
        if (perm.order.size() != jobs.size()) throw Error("permutation length does not match job count");
        const auto lookup = [&](JobId id) -> const Job& {
                for (const auto& j : jobs) {
                        if (j.id == id) return j;
                }
                throw Error("permutation names unknown job " + std::to_string(id));
        };
        const double n = static_cast<double>(perm.order.size());
        WeightedProgram prog;
        prog.budget = budget;
        prog.alpha = alpha;
        for (std::size_t i = 0; i < perm.order.size(); ++i) {
                const auto& j = lookup(perm.order[i]);
                prog.weights.push_back(n - static_cast<double>(i));
                prog.energy_coeffs.push_back(j.demand_count() * std::pow(per_proc_work(j), alpha.value));
        }
        return prog;
}

LBReport lb_chain(const Permutation& perm, const std::vector<Job>& jobs, double budget, Alpha alpha)
{
        if (jobs.empty()) return LBReport{perm, {}, 0.0, 0.0};
        return make_report(perm, solve_weighted(chain_program(perm, jobs, budget, alpha)));
}

Dedicated2LB lb_dedicated2(const Instance& inst, double budget)
{
        require_kind(inst, JobKind::Dedicated);
        if (inst.m != 2) throw Error("two-processor bound requires m = 2");
        std::vector<Job> first, second;
        for (const auto& j : inst.jobs) {
                const auto& fix = std::get<DedicatedSet>(j.demand).fix;
                bool uses0 = false, uses1 = false;
                for (ProcId p : fix) {
                        if (p == 0) uses0 = true;
                        else if (p == 1) uses1 = true;
                        else throw Error("job " + std::to_string(j.id) + " uses a processor outside {0, 1}");
                }
                if (uses0) first.push_back(j);
                if (uses1) second.push_back(j);
        }
        Dedicated2LB out;
        out.first = lb_chain(order_dedicated(first, inst.alpha), first, budget, inst.alpha);
        out.second = lb_chain(order_dedicated(second, inst.alpha), second, budget, inst.alpha);
        out.value = std::max(out.first.value, out.second.value);
        return out;
}

}  // namespace espeed
