#ifndef ESPEED_DEDICATED2_HPP
#define ESPEED_DEDICATED2_HPP

#include <vector>

#include "espeed/model.hpp"
#include "espeed/sequencing.hpp"

namespace espeed {

struct JobSplit {
        std::vector<Job> first_only;   // fix = {0}
        std::vector<Job> second_only;  // fix = {1}
        std::vector<Job> both;         // fix = {0, 1}
};

// Throws Error unless the instance is dedicated, m = 2 and every fix is one of
// {0}, {1}, {0, 1}.
JobSplit split_sets(const Instance& inst);

// One processor's chain: jobs back to back from time 0 in order.
struct SubSchedule {
        Permutation order;
        std::vector<double> durations;    // aligned with order
        std::vector<double> completions;  // prefix sums of durations

        [[nodiscard]] double sum_completion() const;
        [[nodiscard]] std::size_t position(JobId id) const;  // throws Error if absent
};

struct SubSchedules {
        SubSchedule first;   // processor 0
        SubSchedule second;  // processor 1
};

// Optimal chains for both processors, each solved with the given budget
// (the construction uses half of E per side).
SubSchedules solve_subproblems(const Instance& inst, double budget);

// Two-processor jobs occupy (max C - min p, max C] on both processors;
// single-processor jobs fill the remaining time in chain order without idling
// and may be split around two-processor intervals.
Schedule build_preemptive(const Instance& inst, const SubSchedules& subs);

struct NormalizeResult {
        Schedule schedule;
        int moves{0};
};

// Shifts two-processor blocks earlier while a block preempts single-processor
// jobs on both processors. Completion times never increase.
NormalizeResult normalize_preemptions(const Schedule& sched);

// A single-processor job that has more than one piece, and the two-processor
// job right before its final piece.
struct PreemptionInfo {
        JobId preempted_job{0};
        JobId blocker{0};       // F(j)
        double g{0.0};          // processing of j before the blocker starts
        int h{0};               // jobs completing after the blocker
        double victim_start{0.0};
        double blocker_start{0.0};
        double blocker_end{0.0};
};

// Victims ordered by increasing start time.
std::vector<PreemptionInfo> preemption_info(const Schedule& sched);

// Inserts an idle period of length g on both processors right after each
// blocker and reruns its victim contiguously from the blocker's completion.
Schedule to_nonpreemptive(const Schedule& sched);

struct Dedicated2Result {
        Dedicated2LB bound;  // at full budget E
        SubSchedules subs;   // at budget E / 2
        Schedule merged;
        Schedule normalized;
        Schedule final_schedule;
        std::vector<PreemptionInfo> preemptions;
        int moves{0};
        double lb{0.0};
};

Dedicated2Result schedule_dedicated2(const Instance& inst);

}  // namespace espeed

#endif
