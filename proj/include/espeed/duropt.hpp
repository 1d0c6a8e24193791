#ifndef ESPEED_DUROPT_HPP
#define ESPEED_DUROPT_HPP

#include <vector>

#include "espeed/model.hpp"

namespace espeed {

// minimize   sum_i weights[i] * p_i
// subject to sum_i energy_coeffs[i] * p_i^(1 - alpha) <= budget
//
// Every lower bound and every duration assignment in this library is an
// instance of this program.
struct WeightedProgram {
        std::vector<double> weights;
        std::vector<double> energy_coeffs;
        double budget{1.0};
        Alpha alpha{};
};

struct DurationSolution {
        std::vector<double> durations;
        double multiplier{0.0};  // lambda of the energy constraint
        double objective{0.0};
};

// Throws Error when the program is malformed (empty, mismatched lengths,
// non-positive entries or budget, alpha <= 1).
void check_program(const WeightedProgram& prog);

// Closed-form stationary point of the Lagrangian:
//   p_i = (mu * c_i / w_i)^(1/alpha),  mu = lambda * (alpha - 1)
//   mu  = (E / S)^(alpha / (1 - alpha)),  S = sum_i c_i^(1/alpha) w_i^((alpha-1)/alpha)
//   objective = E^(1/(1-alpha)) * S^(alpha/(alpha-1))
DurationSolution solve_weighted(const WeightedProgram& prog);

// Bisection on lambda over the tight energy constraint. Kept independent of
// solve_weighted so the two can cross-check each other.
DurationSolution solve_weighted_numeric(const WeightedProgram& prog);

// Left-hand side of the energy constraint, sum_i c_i p_i^(1-alpha).
double program_energy(const WeightedProgram& prog, const std::vector<double>& durations);

}  // namespace espeed

#endif
