#include "espeed/dedicated2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace espeed {

namespace {

void ensure(bool cond, const char* what)
{
        if (!cond) throw std::logic_error(std::string("dedicated2 invariant violated: ") + what);
}

double time_tol(const Schedule& sched)
{
        double horizon = 1.0;
        for (const auto& p : sched.pieces) horizon = std::max(horizon, std::abs(p.end));
        return 1e-12 * horizon;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Two-processor pieces sorted by start, grouped into maximal contiguous runs.
struct Block {
        std::vector<std::size_t> members;  // indices into Schedule::pieces, time order
        double start{0.0};
        double end{0.0};
};

std::vector<Block> find_blocks(const Schedule& sched, double tol)
{
        std::vector<std::size_t> two;
        for (std::size_t i = 0; i < sched.pieces.size(); ++i) {
                if (sched.pieces[i].procs.size() == 2) two.push_back(i);
        }
        std::sort(two.begin(), two.end(),
                  [&](std::size_t a, std::size_t b) { return sched.pieces[a].start < sched.pieces[b].start; });
        std::vector<Block> blocks;
        for (std::size_t i : two) {
                const auto& p = sched.pieces[i];
                if (!blocks.empty() && near(blocks.back().end, p.start, tol)) {
                        blocks.back().members.push_back(i);
                        blocks.back().end = p.end;
                } else {
                        blocks.push_back(Block{{i}, p.start, p.end});
                }
        }
        return blocks;
}

// Index of the single-processor piece on proc that ends at t and whose job
// resumes at resume_at, or npos.
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::size_t victim_piece(const Schedule& sched, ProcId proc, double t, double resume_at, double tol)
{
        for (std::size_t i = 0; i < sched.pieces.size(); ++i) {
                const auto& p = sched.pieces[i];
                if (p.procs.size() != 1 || p.procs.front() != proc || !near(p.end, t, tol)) continue;
                for (const auto& q : sched.pieces) {
                        if (q.job == p.job && near(q.start, resume_at, tol)) return i;
                }
        }
        return npos;
}

SubSchedule make_sub(const LBReport& rep)
{
        SubSchedule s;
        s.order = rep.permutation;
        s.durations = rep.durations;
        double t = 0.0;
        for (double d : s.durations) {
                t += d;
                s.completions.push_back(t);
        }
        return s;
}

}  // namespace

double SubSchedule::sum_completion() const { return std::accumulate(completions.begin(), completions.end(), 0.0); }

std::size_t SubSchedule::position(JobId id) const
{
        for (std::size_t i = 0; i < order.order.size(); ++i) {
                if (order.order[i] == id) return i;
        }
        throw Error("job " + std::to_string(id) + " is not in the subschedule");
}

JobSplit split_sets(const Instance& inst)
{
        if (inst.kind != JobKind::Dedicated) throw Error("expected a dedicated instance");
        if (inst.m != 2) throw Error("two-processor pipeline requires m = 2");
        JobSplit out;
        for (const auto& j : inst.jobs) {
                auto fix = std::get<DedicatedSet>(j.demand).fix;
                std::sort(fix.begin(), fix.end());
                if (fix == std::vector<ProcId>{0}) out.first_only.push_back(j);
                else if (fix == std::vector<ProcId>{1}) out.second_only.push_back(j);
                else if (fix == std::vector<ProcId>{0, 1}) out.both.push_back(j);
                else throw Error("job " + std::to_string(j.id) + " has a processor set outside {0}, {1}, {0, 1}");
        }
        return out;
}

SubSchedules solve_subproblems(const Instance& inst, double budget)
{
        split_sets(inst);
        const auto lb = lb_dedicated2(inst, budget);
        return SubSchedules{make_sub(lb.first), make_sub(lb.second)};
}

Schedule build_preemptive(const Instance& inst, const SubSchedules& subs)
{
        const auto split = split_sets(inst);
        Schedule sched;

        double horizon = 1.0;
        for (const auto* s : {&subs.first, &subs.second}) {
                if (!s->completions.empty()) horizon = std::max(horizon, s->completions.back());
        }
        const double tol = 1e-12 * horizon;

        struct Interval {
                double start, end;
        };
        std::vector<Interval> blocked;
        for (const auto& j : split.both) {
                const std::size_t a = subs.first.position(j.id);
                const std::size_t b = subs.second.position(j.id);
                const double finish = std::max(subs.first.completions[a], subs.second.completions[b]);
                const double dur = std::min(subs.first.durations[a], subs.second.durations[b]);
                blocked.push_back({finish - dur, finish});
                sched.pieces.push_back(Piece{j.id, {0, 1}, finish - dur, finish, j.total_work / 2.0 / dur});
        }
        std::sort(blocked.begin(), blocked.end(), [](const Interval& x, const Interval& y) { return x.start < y.start; });
        for (std::size_t i = 1; i < blocked.size(); ++i) {
                ensure(blocked[i].start >= blocked[i - 1].end - tol, "two-processor intervals overlap");
        }

        auto fill = [&](ProcId proc, const SubSchedule& sub) {
                double t = 0.0;
                std::size_t k = 0;
                for (std::size_t i = 0; i < sub.order.order.size(); ++i) {
                        const auto& job = inst.job(sub.order.order[i]);
                        if (job.demand_count() != 1) continue;
                        const double dur = sub.durations[i];
                        const double speed = job.total_work / dur;
                        double remaining = dur;
                        while (remaining > 0.0) {
                                while (k < blocked.size() && blocked[k].end <= t + tol) ++k;
                                if (k < blocked.size() && blocked[k].start <= t + tol) {
                                        t = blocked[k].end;
                                        ++k;
                                        continue;
                                }
                                const double limit =
                                    k < blocked.size() ? blocked[k].start : std::numeric_limits<double>::infinity();
                                if (t + remaining <= limit + tol) {
                                        const double end = near(t + remaining, limit, tol) ? limit : t + remaining;
                                        sched.pieces.push_back(Piece{job.id, {proc}, t, end, speed});
                                        t = end;
                                        remaining = 0.0;
                                } else {
                                        sched.pieces.push_back(Piece{job.id, {proc}, t, limit, speed});
                                        remaining -= limit - t;
                                        t = limit;
                                }
                        }
                }
        };
        fill(0, subs.first);
        fill(1, subs.second);
        return sched;
}

NormalizeResult normalize_preemptions(const Schedule& sched)
{
        NormalizeResult out{sched, 0};
        auto& s = out.schedule;
        const double tol = time_tol(sched);
        const std::size_t max_moves = 4 * sched.pieces.size() + 4;

        for (;;) {
                bool moved = false;
                for (const auto& block : find_blocks(s, tol)) {
                        const std::size_t vx = victim_piece(s, 0, block.start, block.end, tol);
                        const std::size_t vy = victim_piece(s, 1, block.start, block.end, tol);
                        if (vx == npos || vy == npos) continue;

                        const JobId jx = s.pieces[vx].job;
                        const JobId jy = s.pieces[vy].job;
                        const double new_start = std::max(s.pieces[vx].start, s.pieces[vy].start);

                        // Slide the block left, keeping its pieces contiguous.
                        double t = new_start;
                        for (std::size_t i : block.members) {
                                const double len = s.pieces[i].length();
                                s.pieces[i].start = t;
                                s.pieces[i].end = t + len;
                                t += len;
                        }
                        const double new_end = t;
                        for (auto& p : s.pieces) {
                                if (p.procs.size() == 1 && (p.job == jx || p.job == jy) && near(p.start, block.end, tol)) {
                                        p.start = new_end;
                                }
                        }
                        s.pieces[vx].end = new_start;
                        s.pieces[vy].end = new_start;
                        std::erase_if(s.pieces, [&](const Piece& p) { return p.end - p.start <= tol; });

                        ++out.moves;
                        moved = true;
                        break;
                }
                if (!moved) break;
                ensure(static_cast<std::size_t>(out.moves) <= max_moves, "normalization does not terminate");
        }
        return out;
}

std::vector<PreemptionInfo> preemption_info(const Schedule& sched)
{
        const double tol = time_tol(sched);
        const auto stats = job_stats(sched);
        std::vector<PreemptionInfo> out;
        for (const auto& [id, st] : stats) {
                if (st.width != 1 || st.piece_count < 2) continue;
                std::vector<const Piece*> pieces;
                for (const auto& p : sched.pieces) {
                        if (p.job == id) pieces.push_back(&p);
                }
                std::sort(pieces.begin(), pieces.end(), [](const Piece* a, const Piece* b) { return a->start < b->start; });
                const Piece* last = pieces.back();
                const Piece* blocker = nullptr;
                for (const auto& p : sched.pieces) {
                        if (p.procs.size() == 2 && near(p.end, last->start, tol)) blocker = &p;
                }
                if (!blocker) throw Error("job " + std::to_string(id) + " resumes without a preceding two-processor job");

                PreemptionInfo info;
                info.preempted_job = id;
                info.blocker = blocker->job;
                info.g = 0.0;
                for (std::size_t i = 0; i + 1 < pieces.size(); ++i) info.g += pieces[i]->length();
                info.h = static_cast<int>(std::count_if(stats.begin(), stats.end(), [&](const auto& kv) {
                        return kv.second.completion > blocker->end + tol;
                }));
                info.victim_start = pieces.front()->start;
                info.blocker_start = blocker->start;
                info.blocker_end = blocker->end;
                out.push_back(info);
        }
        std::sort(out.begin(), out.end(),
                  [](const PreemptionInfo& a, const PreemptionInfo& b) { return a.victim_start < b.victim_start; });
        return out;
}

Schedule to_nonpreemptive(const Schedule& sched)
{
        const double tol = time_tol(sched);
        const auto infos = preemption_info(sched);
        for (std::size_t l = 1; l < infos.size(); ++l) {
                ensure(infos[l].victim_start >= infos[l - 1].blocker_end - tol, "victim windows overlap");
        }

        auto shift_at = [&](double t) {
                double shift = 0.0;
                for (const auto& info : infos) {
                        if (info.blocker_end <= t + tol) shift += info.g;
                }
                return shift;
        };

        Schedule out;
        for (const auto& p : sched.pieces) {
                auto it = std::find_if(infos.begin(), infos.end(),
                                       [&](const PreemptionInfo& i) { return i.preempted_job == p.job; });
                if (it == infos.end()) {
                        const double shift = shift_at(p.start);
                        out.pieces.push_back(Piece{p.job, p.procs, p.start + shift, p.end + shift, p.speed});
                        continue;
                }
                // Earlier pieces of a victim are dropped; the final piece absorbs their work.
                if (!near(p.start, it->blocker_end, tol)) continue;
                const double shift = shift_at(p.start);
                out.pieces.push_back(Piece{p.job, p.procs, it->blocker_end + shift - it->g, p.end + shift, p.speed});
        }
        std::sort(out.pieces.begin(), out.pieces.end(), [](const Piece& a, const Piece& b) {
                return a.start < b.start || (a.start == b.start && a.procs < b.procs);
        });
        return out;
}

Dedicated2Result schedule_dedicated2(const Instance& inst)
{
        require_valid(inst);
        Dedicated2Result r;
        r.bound = lb_dedicated2(inst, inst.energy);
        r.lb = r.bound.value;
        r.subs = solve_subproblems(inst, inst.energy / 2.0);
        r.merged = build_preemptive(inst, r.subs);
        auto norm = normalize_preemptions(r.merged);
        r.normalized = std::move(norm.schedule);
        r.moves = norm.moves;
        r.preemptions = preemption_info(r.normalized);
        r.final_schedule = to_nonpreemptive(r.normalized);
        return r;
}

}  // namespace espeed
