#ifndef ESPEED_SEQUENCING_HPP
#define ESPEED_SEQUENCING_HPP

#include <vector>

#include "espeed/duropt.hpp"
#include "espeed/model.hpp"

namespace espeed {

// Job ids in processing order.
struct Permutation {
        std::vector<JobId> order;

        bool operator==(const Permutation&) const = default;
};

// Throws Error unless perm is a bijection on the instance's job ids.
void check_permutation(const Permutation& perm, const Instance& inst);

struct LBReport {
        Permutation permutation;
        std::vector<double> durations;  // aligned with permutation.order
        double multiplier{0.0};
        double value{0.0};  // lower bound on the total completion time

        [[nodiscard]] double duration_of(JobId id) const;
};

// Rigid jobs: non-decreasing size, ties by id. Requires V_j / size_j equal for
// all jobs (relative 1e-9), otherwise throws "non-identical works".
Permutation order_rigid(const Instance& inst);

// w_i = (size_i (n - i + 0.5) + 0.5 m) / m,  c_i = W_i^alpha * size_i   (i 1-based along perm)
WeightedProgram rigid_program(const Permutation& perm, const Instance& inst);

LBReport lb_rigid(const Permutation& perm, const Instance& inst);

// The closed form for the rigid bound evaluated term by term, without going
// through the weighted program.
double lb_rigid_direct(const Permutation& perm, const Instance& inst);

// Moldable jobs: non-decreasing delta, ties by work then id. Throws
// "non-agreeable instance" when some V_i < V_j has delta_i > delta_j.
Permutation order_moldable(const Instance& inst);

// w_i = (n - i + 0.5 + 0.5 m / delta_i) / m,  c_i = V_i^alpha. Durations are
// one-processor times.
WeightedProgram moldable_program(const Permutation& perm, const Instance& inst);

LBReport lb_moldable(const Permutation& perm, const Instance& inst);

double lb_moldable_direct(const Permutation& perm, const Instance& inst);

// Sort key W_i * |fix_i|^(1/alpha), ties by id.
Permutation order_dedicated(const std::vector<Job>& jobs, Alpha alpha);

// Single-processor chain program for a subset of dedicated jobs:
// w_i = n' - i + 1, c_i = |fix_i| W_i^alpha.
WeightedProgram chain_program(const Permutation& perm, const std::vector<Job>& jobs, double budget, Alpha alpha);

// Optimal chain for one processor's jobs in the given order. An empty job set
// yields an empty report with value 0.
LBReport lb_chain(const Permutation& perm, const std::vector<Job>& jobs, double budget, Alpha alpha);

struct Dedicated2LB {
        LBReport first;   // jobs using processor 0 (J1 and J12)
        LBReport second;  // jobs using processor 1 (J2 and J12)
        double value{0.0};
};

// Throws Error if m != 2 or some fix_j is not a subset of {0, 1}.
Dedicated2LB lb_dedicated2(const Instance& inst, double budget);

}  // namespace espeed

#endif
