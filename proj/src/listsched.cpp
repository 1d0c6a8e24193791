#include "espeed/listsched.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace espeed {

int assign_moldable_width(int delta, int m)
{
        const int half = (m + 1) / 2;
        return delta < half ? delta : half;
}

namespace {

struct Busy {
        double start;
        double end;
};

std::string fmt(double v)
{
        std::ostringstream out;
        out.precision(9);
        out << v;
        return out.str();
}

}  // namespace

Schedule list_schedule(const ScheduleRequest& req)
{
        const std::size_t n = req.order.order.size();
        if (req.durations.size() != n || req.widths.size() != n || req.works.size() != n) {
                throw Error("schedule request vectors differ in length");
        }
        if (req.m < 1) throw Error("m must be at least 1");

        std::vector<std::vector<Busy>> busy(static_cast<std::size_t>(req.m));
        std::set<double> candidates{0.0};
        Schedule sched;
        sched.pieces.reserve(n);

        for (std::size_t k = 0; k < n; ++k) {
                const int width = req.widths[k];
                const double dur = req.durations[k];
                if (width < 1 || width > req.m) throw Error("width " + std::to_string(width) + " exceeds m");
                if (!(dur > 0.0) || !std::isfinite(dur)) throw Error("durations must be positive");

                bool placed = false;
                for (double t : candidates) {
                        const double tol = 1e-12 * std::max(1.0, t + dur);
                        std::vector<ProcId> free;
                        for (int p = 0; p < req.m && static_cast<int>(free.size()) < width; ++p) {
                                const bool clash = std::any_of(busy[p].begin(), busy[p].end(), [&](const Busy& b) {
                                        return b.start < t + dur - tol && b.end > t + tol;
                                });
                                if (!clash) free.push_back(p);
                        }
                        if (static_cast<int>(free.size()) < width) continue;

                        for (ProcId p : free) busy[p].push_back({t, t + dur});
                        candidates.insert(t + dur);
                        sched.pieces.push_back(Piece{req.order.order[k], free, t, t + dur,
                                                     req.works[k] / width / dur});
                        placed = true;
                        break;
                }
                // The latest candidate always has every processor free.
                if (!placed) throw Error("list scheduling failed to place a job");
        }
        return sched;
}

PipelineResult schedule_rigid(const Instance& inst)
{
        const auto perm = order_rigid(inst);
        auto bound = lb_rigid(perm, inst);
        ScheduleRequest req;
        req.order = perm;
        req.durations = bound.durations;
        req.m = inst.m;
        for (JobId id : perm.order) {
                const auto& j = inst.job(id);
                req.widths.push_back(j.demand_count());
                req.works.push_back(j.total_work);
        }
        PipelineResult out{list_schedule(req), bound, bound.value};
        return out;
}

PipelineResult schedule_moldable(const Instance& inst)
{
        const auto perm = order_moldable(inst);
        auto bound = lb_moldable(perm, inst);
        ScheduleRequest req;
        req.order = perm;
        req.m = inst.m;
        for (std::size_t i = 0; i < perm.order.size(); ++i) {
                const auto& j = inst.job(perm.order[i]);
                const int width = assign_moldable_width(j.demand_count(), inst.m);
                req.widths.push_back(width);
                req.works.push_back(j.total_work);
                req.durations.push_back(bound.durations[i] / width);
        }
        PipelineResult out{list_schedule(req), bound, bound.value};
        return out;
}

VerifyReport verify_schedule(const Schedule& sched, const Instance& inst, const VerifyOptions& opts)
{
        VerifyReport rep;
        rep.energy_budget = inst.energy;
        const auto idx = inst.index();

        // Piece shape and per-job consistency.
        std::map<JobId, std::vector<const Piece*>> by_job;
        for (const auto& p : sched.pieces) {
                if (!idx.count(p.job)) {
                        rep.complete = false;
                        rep.violations.push_back("piece references unknown job " + std::to_string(p.job));
                        continue;
                }
                if (!(p.end > p.start) || p.procs.empty() || !(p.speed > 0.0)) {
                        rep.work_ok = false;
                        rep.violations.push_back("malformed piece of job " + std::to_string(p.job));
                }
                by_job[p.job].push_back(&p);
        }

        for (const auto& j : inst.jobs) {
                auto it = by_job.find(j.id);
                if (it == by_job.end()) {
                        rep.complete = false;
                        rep.violations.push_back("job " + std::to_string(j.id) + " is not scheduled");
                        continue;
                }
                const auto& pieces = it->second;
                const auto& procs = pieces.front()->procs;
                const double speed = pieces.front()->speed;
                double dur = 0.0;
                for (const auto* p : pieces) {
                        if (p->procs != procs) {
                                rep.demand_ok = false;
                                rep.violations.push_back("job " + std::to_string(j.id) + " changes processors");
                        }
                        if (std::abs(p->speed - speed) > 1e-9 * speed) {
                                rep.work_ok = false;
                                rep.violations.push_back("job " + std::to_string(j.id) + " changes speed");
                        }
                        dur += p->length();
                }
                std::set<ProcId> distinct(procs.begin(), procs.end());
                bool in_range = distinct.size() == procs.size();
                for (ProcId p : procs) in_range = in_range && p >= 0 && p < inst.m;
                if (!in_range) {
                        rep.demand_ok = false;
                        rep.violations.push_back("job " + std::to_string(j.id) + " uses invalid processors");
                }

                const int width = static_cast<int>(procs.size());
                bool demand = true;
                if (const auto* r = std::get_if<RigidSize>(&j.demand)) demand = width == r->size;
                else if (const auto* c = std::get_if<MoldableCap>(&j.demand)) demand = width >= 1 && width <= c->delta;
                else if (const auto* f = std::get_if<DedicatedSet>(&j.demand)) {
                        auto want = f->fix;
                        std::sort(want.begin(), want.end());
                        auto got = procs;
                        std::sort(got.begin(), got.end());
                        demand = want == got;
                }
                if (!demand) {
                        rep.demand_ok = false;
                        rep.violations.push_back("job " + std::to_string(j.id) + " violates its processor demand");
                }

                const double per_proc = j.total_work / width;
                if (std::abs(speed * dur - per_proc) > 1e-9 * per_proc) {
                        rep.work_ok = false;
                        rep.violations.push_back("job " + std::to_string(j.id) + " processes " + fmt(speed * dur) +
                                                 " work per processor, expected " + fmt(per_proc));
                }
                if (pieces.size() > 1) rep.nonpreemptive = false;
        }

        // Capacity: per processor, pieces sorted by start must not overlap.
        std::map<ProcId, std::vector<const Piece*>> by_proc;
        for (const auto& p : sched.pieces) {
                for (ProcId q : p.procs) by_proc[q].push_back(&p);
        }
        for (auto& [proc, pieces] : by_proc) {
                std::sort(pieces.begin(), pieces.end(), [](const Piece* a, const Piece* b) {
                        return a->start < b->start || (a->start == b->start && a->end < b->end);
                });
                for (std::size_t i = 1; i < pieces.size(); ++i) {
                        if (pieces[i]->start < pieces[i - 1]->end - opts.time_tol) {
                                rep.capacity_ok = false;
                                rep.violations.push_back("capacity violation on processor " + std::to_string(proc) +
                                                         " at t=" + fmt(pieces[i]->start) + " (jobs " +
                                                         std::to_string(pieces[i - 1]->job) + ", " +
                                                         std::to_string(pieces[i]->job) + ")");
                        }
                }
        }

        if (opts.require_nonpreemptive && !rep.nonpreemptive) {
                rep.nonpreemption_ok = false;
                rep.violations.push_back("schedule is preemptive");
        }

        if (rep.complete) {
                rep.energy_used = energy_of(sched, inst);
                if (rep.energy_used > inst.energy * (1.0 + opts.energy_rel_tol)) {
                        rep.energy_ok = false;
                        rep.violations.push_back("energy " + fmt(rep.energy_used) + " exceeds budget " + fmt(inst.energy));
                }
        } else {
                rep.energy_used = integrated_energy(sched, inst.alpha);
        }
        rep.sum_completion = total_completion(sched);
        return rep;
}

}  // namespace espeed
