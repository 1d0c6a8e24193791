#include "espeed/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "espeed/dedicated2.hpp"
#include "espeed/gadgets.hpp"
#include "espeed/listsched.hpp"

namespace espeed {

PermutationMinimum min_lb_over_permutations(std::vector<JobId> ids, const ProgramBuilder& build)
{
        if (ids.size() > max_exhaustive_jobs) throw Error("instance too large");
        if (ids.empty()) return {};
        std::sort(ids.begin(), ids.end());
        PermutationMinimum best;
        bool first = true;
        do {
                Permutation perm{ids};
                const double value = solve_weighted(build(perm)).objective;
                if (first || value < best.value) {
                        best = {perm, value};
                        first = false;
                }
        } while (std::next_permutation(ids.begin(), ids.end()));
        return best;
}

ProgramBuilder rigid_builder(const Instance& inst)
{
        return [&inst](const Permutation& p) { return rigid_program(p, inst); };
}

ProgramBuilder moldable_builder(const Instance& inst)
{
        return [&inst](const Permutation& p) { return moldable_program(p, inst); };
}

ProgramBuilder chain_builder(const std::vector<Job>& jobs, double budget, Alpha alpha)
{
        return [&jobs, budget, alpha](const Permutation& p) { return chain_program(p, jobs, budget, alpha); };
}

const char* to_string(Algorithm algo)
{
        switch (algo) {
        case Algorithm::Rigid: return "rigid";
        case Algorithm::Moldable: return "moldable";
        case Algorithm::Dedicated2: return "dedicated2";
        case Algorithm::Dedicated2Preemptive: return "dedicated2-pmtn";
        }
        return "unknown";
}

Algorithm algorithm_from_string(const std::string& name)
{
        if (name == "rigid") return Algorithm::Rigid;
        if (name == "moldable") return Algorithm::Moldable;
        if (name == "dedicated2") return Algorithm::Dedicated2;
        if (name == "dedicated2-pmtn") return Algorithm::Dedicated2Preemptive;
        throw Error("unknown algorithm '" + name + "'");
}

double proven_bound(Algorithm algo, Alpha alpha)
{
        const double a = alpha.value;
        switch (algo) {
        case Algorithm::Rigid:
        case Algorithm::Moldable: return 2.0;
        case Algorithm::Dedicated2: return std::pow(2.0, (2.0 * a - 1.0) / (a - 1.0));
        case Algorithm::Dedicated2Preemptive: return std::pow(2.0, a / (a - 1.0));
        }
        return 0.0;
}

RatioRecord check_ratio(const Instance& inst, Algorithm algo, std::uint64_t instance_id)
{
        RatioRecord rec;
        rec.instance_id = instance_id;
        rec.algorithm = algo;
        rec.n = inst.n();
        rec.m = inst.m;
        rec.alpha = inst.alpha.value;
        rec.bound = proven_bound(algo, inst.alpha);

        Schedule sched;
        VerifyOptions opts;
        switch (algo) {
        case Algorithm::Rigid: {
                auto r = schedule_rigid(inst);
                sched = std::move(r.schedule);
                rec.lb = r.lb;
                opts.require_nonpreemptive = true;
                break;
        }
        case Algorithm::Moldable: {
                auto r = schedule_moldable(inst);
                sched = std::move(r.schedule);
                rec.lb = r.lb;
                opts.require_nonpreemptive = true;
                break;
        }
        case Algorithm::Dedicated2:
        case Algorithm::Dedicated2Preemptive: {
                auto r = schedule_dedicated2(inst);
                rec.lb = r.lb;
                if (algo == Algorithm::Dedicated2) {
                        sched = std::move(r.final_schedule);
                        opts.require_nonpreemptive = true;
                } else {
                        sched = std::move(r.normalized);
                }
                break;
        }
        }
        const auto report = verify_schedule(sched, inst, opts);
        rec.feasible = report.ok();
        rec.sum_completion = report.sum_completion;
        rec.ratio = rec.sum_completion / rec.lb;
        rec.pass = rec.ratio <= rec.bound * (1.0 + 1e-9);
        return rec;
}

Instance sweep_instance(const SweepOptions& opts, std::uint64_t id)
{
        static constexpr double alphas[] = {1.5, 2.0, 3.0};
        Rng rng(derive_seed(opts.seed, id));
        const Alpha alpha{opts.alpha ? *opts.alpha : alphas[id % 3]};
        const int n = rng.uniform_int(1, 12);
        const auto inst_seed = derive_seed(opts.seed ^ 0x5eedULL, id);
        switch (opts.algorithm) {
        case Algorithm::Rigid:
                return gen_random(JobKind::Rigid, n, rng.uniform_int(2, 16), inst_seed, alpha, WorkMode::Identical);
        case Algorithm::Moldable:
                return gen_random(JobKind::Moldable, n, rng.uniform_int(1, 16), inst_seed, alpha,
                                  id % 2 == 0 ? WorkMode::Identical : WorkMode::Free);
        case Algorithm::Dedicated2:
        case Algorithm::Dedicated2Preemptive: break;
        }
        return gen_random(JobKind::Dedicated, n, 2, inst_seed, alpha, WorkMode::Free);
}

std::vector<RatioRecord> ratio_sweep(const SweepOptions& opts)
{
        std::vector<RatioRecord> records(opts.count);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
                for (std::size_t i = next++; i < opts.count; i = next++) {
                        records[i] = check_ratio(sweep_instance(opts, i), opts.algorithm, i);
                }
        };
        const unsigned workers = std::max(1u, opts.workers);
        if (workers == 1) {
                worker();
        } else {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        }
        std::sort(records.begin(), records.end(),
                  [](const RatioRecord& a, const RatioRecord& b) { return a.instance_id < b.instance_id; });
        return records;
}

std::string ratio_csv(const std::vector<RatioRecord>& records)
{
        std::ostringstream out;
        out.precision(9);
        out << "id,n,m,alpha,lb,sumc,ratio,bound,pass\n";
        for (const auto& r : records) {
                out << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.alpha << ',' << r.lb << ','
                    << r.sum_completion << ',' << r.ratio << ',' << r.bound << ',' << (r.pass ? "true" : "false")
                    << '\n';
        }
        return out.str();
}

std::size_t CrosscheckReport::failures() const
{
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; }));
}

namespace {

CrosscheckRow compare(std::uint64_t seed, std::string check, double expected, double actual, double tol)
{
        const double rel = std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
        return {seed, std::move(check), expected, actual, rel, tol, rel <= tol};
}

}  // namespace

CrosscheckReport crosscheck_closed_forms(std::uint64_t seed, std::size_t count)
{
        static constexpr double alphas[] = {1.5, 2.0, 3.0};
        CrosscheckReport report;
        for (std::size_t k = 0; k < count; ++k) {
                const auto s = derive_seed(seed, k);
                Rng rng(s);
                WeightedProgram prog;
                prog.alpha = Alpha{alphas[k % 3]};
                const int n = rng.uniform_int(1, 50);
                for (int i = 0; i < n; ++i) {
                        prog.weights.push_back(rng.log_uniform(0.01, 100.0));
                        prog.energy_coeffs.push_back(rng.log_uniform(0.01, 100.0));
                }
                prog.budget = rng.log_uniform(0.1, 100.0);

                const auto closed = solve_weighted(prog);
                const auto numeric = solve_weighted_numeric(prog);
                report.rows.push_back(compare(s, "objective", closed.objective, numeric.objective, 1e-8));
                double worst = 0.0;
                std::size_t worst_i = 0;
                for (std::size_t i = 0; i < closed.durations.size(); ++i) {
                        const double rel = std::abs(closed.durations[i] - numeric.durations[i]) / closed.durations[i];
                        if (rel >= worst) {
                                worst = rel;
                                worst_i = i;
                        }
                }
                report.rows.push_back(
                    compare(s, "durations", closed.durations[worst_i], numeric.durations[worst_i], 1e-8));

                const auto inst = gen_random(JobKind::Rigid, rng.uniform_int(1, 50), rng.uniform_int(1, 32), s,
                                             prog.alpha, k % 2 ? WorkMode::Free : WorkMode::Identical);
                std::vector<JobId> ids;
                for (const auto& j : inst.jobs) ids.push_back(j.id);
                rng.shuffle(ids);
                const Permutation perm{ids};
                report.rows.push_back(
                    compare(s, "lb_rigid", lb_rigid_direct(perm, inst), lb_rigid(perm, inst).value, 1e-12));
        }
        return report;
}

}  // namespace espeed
