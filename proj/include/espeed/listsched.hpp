#ifndef ESPEED_LISTSCHED_HPP
#define ESPEED_LISTSCHED_HPP

#include <string>
#include <vector>

#include "espeed/model.hpp"
#include "espeed/sequencing.hpp"

namespace espeed {

// All per-job vectors are aligned with order.order.
struct ScheduleRequest {
        Permutation order;
        std::vector<double> durations;  // wall-clock execution time
        std::vector<int> widths;        // m_j
        std::vector<double> works;      // V_j; each processor receives V_j / m_j
        int m{1};
};

// m_j = delta_j if delta_j < ceil(m/2), else ceil(m/2).
int assign_moldable_width(int delta, int m);

// Takes jobs in list order; each starts at the earliest t >= 0 such that m_j
// processors stay free on [t, t + p_j), using the lowest-indexed free ones.
// Throws Error on malformed requests (width > m, non-positive durations).
Schedule list_schedule(const ScheduleRequest& req);

struct PipelineResult {
        Schedule schedule;
        LBReport bound;
        double lb{0.0};
};

// order_rigid + lb_rigid durations + list scheduling.
PipelineResult schedule_rigid(const Instance& inst);

// order_moldable + lb_moldable durations, widths from assign_moldable_width;
// a job runs p_j / m_j wall-clock on m_j processors.
PipelineResult schedule_moldable(const Instance& inst);

struct VerifyOptions {
        bool require_nonpreemptive{false};
        double time_tol{1e-9};
        double energy_rel_tol{1e-9};
};

struct VerifyReport {
        bool capacity_ok{true};
        bool demand_ok{true};
        bool energy_ok{true};
        bool complete{true};
        bool work_ok{true};
        bool nonpreemptive{true};
        bool nonpreemption_ok{true};
        double energy_used{0.0};
        double energy_budget{0.0};
        double sum_completion{0.0};
        std::vector<std::string> violations;

        [[nodiscard]] bool ok() const
        {
                return capacity_ok && demand_ok && energy_ok && complete && work_ok && nonpreemption_ok;
        }
};

VerifyReport verify_schedule(const Schedule& sched, const Instance& inst, const VerifyOptions& opts = {});

}  // namespace espeed

#endif
