#ifndef ESPEED_ORACLE_HPP
#define ESPEED_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "espeed/duropt.hpp"
#include "espeed/model.hpp"
#include "espeed/sequencing.hpp"

namespace espeed {

// Maps a job order to the weighted program whose optimum is LB of that order.
using ProgramBuilder = std::function<WeightedProgram(const Permutation&)>;

struct PermutationMinimum {
        Permutation permutation;
        double value{0.0};
};

inline constexpr std::size_t max_exhaustive_jobs = 8;

// Exhaustive minimum of LB over all orders of ids (lexicographic successor
// enumeration). Throws Error "instance too large" above max_exhaustive_jobs.
PermutationMinimum min_lb_over_permutations(std::vector<JobId> ids, const ProgramBuilder& build);

// Convenience: builders for each job kind.
ProgramBuilder rigid_builder(const Instance& inst);
ProgramBuilder moldable_builder(const Instance& inst);
ProgramBuilder chain_builder(const std::vector<Job>& jobs, double budget, Alpha alpha);

enum class Algorithm { Rigid, Moldable, Dedicated2, Dedicated2Preemptive };

const char* to_string(Algorithm algo);
Algorithm algorithm_from_string(const std::string& name);

// Proven ratio against the lower bound: 2, 2, 2^((2a-1)/(a-1)), 2^(a/(a-1)).
double proven_bound(Algorithm algo, Alpha alpha);

struct RatioRecord {
        std::uint64_t instance_id{0};
        Algorithm algorithm{Algorithm::Rigid};
        std::size_t n{0};
        int m{0};
        double alpha{0.0};
        double sum_completion{0.0};
        double lb{0.0};
        double ratio{0.0};
        double bound{0.0};
        bool feasible{false};
        bool pass{false};
};

// Runs the pipeline, verifies the schedule and compares it to LB at budget E.
RatioRecord check_ratio(const Instance& inst, Algorithm algo, std::uint64_t instance_id = 0);

struct SweepOptions {
        Algorithm algorithm{Algorithm::Rigid};
        std::size_t count{100};
        std::uint64_t seed{42};
        std::optional<double> alpha;  // unset: cycle through 1.5, 2, 3
        unsigned workers{1};
};

// Random instances satisfying each algorithm's hypotheses. Records are
// sorted by instance id regardless of worker scheduling.
std::vector<RatioRecord> ratio_sweep(const SweepOptions& opts);

// Deterministic instance for sweep entry id.
Instance sweep_instance(const SweepOptions& opts, std::uint64_t id);

std::string ratio_csv(const std::vector<RatioRecord>& records);

struct CrosscheckRow {
        std::uint64_t seed{0};
        std::string check;
        double expected{0.0};
        double actual{0.0};
        double rel_error{0.0};
        double tolerance{0.0};
        bool pass{false};
};

struct CrosscheckReport {
        std::vector<CrosscheckRow> rows;
        [[nodiscard]] std::size_t failures() const;
};

// Closed form vs bisection (rel 1e-8) on random programs with n <= 50 and
// alpha in {1.5, 2, 3}; lb_rigid vs its direct evaluation (rel 1e-12).
CrosscheckReport crosscheck_closed_forms(std::uint64_t seed, std::size_t count);

}  // namespace espeed

#endif
