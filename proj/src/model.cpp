#include "espeed/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace espeed {

namespace {

template <class... Ts>
struct overloaded : Ts... {
        using Ts::operator()...;
};

}  // namespace

JobKind Job::kind() const
{
        return std::visit(overloaded{[](const RigidSize&) { return JobKind::Rigid; },
                                     [](const MoldableCap&) { return JobKind::Moldable; },
                                     [](const DedicatedSet&) { return JobKind::Dedicated; }},
                          demand);
}

int Job::demand_count() const
{
        return std::visit(overloaded{[](const RigidSize& d) { return d.size; },
                                     [](const MoldableCap& d) { return d.delta; },
                                     [](const DedicatedSet& d) { return static_cast<int>(d.fix.size()); }},
                          demand);
}

const Job& Instance::job(JobId id) const
{
        for (const auto& j : jobs) {
                if (j.id == id) return j;
        }
        throw Error("unknown job id " + std::to_string(id));
}

std::map<JobId, std::size_t> Instance::index() const
{
        std::map<JobId, std::size_t> idx;
        for (std::size_t i = 0; i < jobs.size(); ++i) idx.emplace(jobs[i].id, i);
        return idx;
}

std::string ValidationVerdict::summary() const
{
        if (ok()) return "OK";
        std::ostringstream out;
        for (std::size_t i = 0; i < violations.size(); ++i) {
                const auto& v = violations[i];
                if (i) out << "; ";
                out << v.field;
                if (v.job) out << "[job " << *v.job << "]";
                out << ": " << v.message;
        }
        return out.str();
}

ValidationVerdict validate_instance(const Instance& inst)
{
        ValidationVerdict verdict;
        auto add = [&](std::string field, std::optional<JobId> job, std::string msg) {
                verdict.violations.push_back({std::move(field), job, std::move(msg)});
        };

        if (inst.m < 1) add("m", std::nullopt, "m must be at least 1");
        if (!(inst.energy > 0.0) || !std::isfinite(inst.energy)) add("energy", std::nullopt, "energy must be positive");
        if (!(inst.alpha.value > 1.0) || !std::isfinite(inst.alpha.value)) {
                add("alpha", std::nullopt, "alpha must exceed 1");
        }
        if (inst.jobs.empty()) add("jobs", std::nullopt, "instance has no jobs");

        std::set<JobId> seen;
        for (const auto& j : inst.jobs) {
                if (!seen.insert(j.id).second) add("id", j.id, "duplicate job id");
                if (!(j.total_work > 0.0) || !std::isfinite(j.total_work)) add("work", j.id, "work must be positive");
                if (j.kind() != inst.kind) {
                        add("demand", j.id, std::string("demand does not match instance kind ") + to_string(inst.kind));
                        continue;
                }
                if (const auto* r = std::get_if<RigidSize>(&j.demand)) {
                        if (r->size < 1) add("size", j.id, "size must be at least 1");
                        if (r->size > inst.m) add("size", j.id, "size exceeds m");
                } else if (const auto* c = std::get_if<MoldableCap>(&j.demand)) {
                        if (c->delta < 1) add("delta", j.id, "delta must be at least 1");
                        if (c->delta > inst.m) add("delta", j.id, "delta exceeds m");
                } else if (const auto* f = std::get_if<DedicatedSet>(&j.demand)) {
                        if (f->fix.empty()) add("fix", j.id, "fix must be non-empty");
                        std::set<ProcId> procs;
                        for (ProcId p : f->fix) {
                                if (p < 0 || p >= inst.m) add("fix", j.id, "processor id out of range");
                                if (!procs.insert(p).second) add("fix", j.id, "duplicate processor id");
                        }
                }
        }
        return verdict;
}

void require_valid(const Instance& inst)
{
        auto verdict = validate_instance(inst);
        if (!verdict.ok()) throw Error(verdict.summary());
}

std::map<JobId, JobStats> job_stats(const Schedule& sched)
{
        std::map<JobId, JobStats> stats;
        for (const auto& p : sched.pieces) {
                auto [it, fresh] = stats.try_emplace(p.job);
                auto& s = it->second;
                if (fresh) {
                        s.width = static_cast<int>(p.procs.size());
                        s.completion = p.end;
                        s.first_start = p.start;
                } else {
                        s.completion = std::max(s.completion, p.end);
                        s.first_start = std::min(s.first_start, p.start);
                }
                s.duration += p.length();
                ++s.piece_count;
        }
        return stats;
}

double energy_of(const Schedule& sched, const Instance& inst)
{
        const auto stats = job_stats(sched);
        const double a = inst.alpha.value;
        double total = 0.0;
        for (const auto& j : inst.jobs) {
                auto it = stats.find(j.id);
                if (it == stats.end()) throw Error("job " + std::to_string(j.id) + " has no pieces");
                const double width = it->second.width;
                const double per_proc = j.total_work / width;
                total += width * std::pow(per_proc, a) * std::pow(it->second.duration, 1.0 - a);
        }
        return total;
}

double integrated_energy(const Schedule& sched, Alpha alpha)
{
        double total = 0.0;
        for (const auto& p : sched.pieces) {
                total += static_cast<double>(p.procs.size()) * std::pow(p.speed, alpha.value) * p.length();
        }
        return total;
}

double total_completion(const Schedule& sched)
{
        double sum = 0.0;
        for (const auto& [id, s] : job_stats(sched)) sum += s.completion;
        return sum;
}

const char* to_string(JobKind kind)
{
        switch (kind) {
        case JobKind::Rigid: return "rigid";
        case JobKind::Moldable: return "moldable";
        case JobKind::Dedicated: return "dedicated";
        }
        return "unknown";
}

JobKind kind_from_string(const std::string& name)
{
        if (name == "rigid") return JobKind::Rigid;
        if (name == "moldable") return JobKind::Moldable;
        if (name == "dedicated") return JobKind::Dedicated;
        throw Error("unknown job kind '" + name + "'");
}

}  // namespace espeed
