#include "espeed/duropt.hpp"

#include <cmath>
#include <numeric>

namespace espeed {

void check_program(const WeightedProgram& prog)
{
        if (prog.weights.empty()) throw Error("weighted program is empty");
        if (prog.weights.size() != prog.energy_coeffs.size()) {
                throw Error("weights and energy coefficients differ in length");
        }
        if (!(prog.alpha.value > 1.0)) throw Error("alpha must exceed 1");
        if (!(prog.budget > 0.0) || !std::isfinite(prog.budget)) throw Error("energy budget must be positive");
        for (std::size_t i = 0; i < prog.weights.size(); ++i) {
                if (!(prog.weights[i] > 0.0) || !std::isfinite(prog.weights[i])) {
                        throw Error("weight " + std::to_string(i) + " must be positive");
                }
                if (!(prog.energy_coeffs[i] > 0.0) || !std::isfinite(prog.energy_coeffs[i])) {
                        throw Error("energy coefficient " + std::to_string(i) + " must be positive");
                }
        }
}

DurationSolution solve_weighted(const WeightedProgram& prog)
{
        check_program(prog);
        const double a = prog.alpha.value;
        const double beta = (a - 1.0) / a;

        double s = 0.0;
        for (std::size_t i = 0; i < prog.weights.size(); ++i) {
                s += std::pow(prog.energy_coeffs[i], 1.0 / a) * std::pow(prog.weights[i], beta);
        }

        // (E / S)^(1/(1-alpha)) is the common factor of every duration.
        const double scale = std::pow(prog.budget / s, 1.0 / (1.0 - a));

        DurationSolution sol;
        sol.durations.reserve(prog.weights.size());
        for (std::size_t i = 0; i < prog.weights.size(); ++i) {
                sol.durations.push_back(scale * std::pow(prog.energy_coeffs[i] / prog.weights[i], 1.0 / a));
        }
        sol.multiplier = std::pow(scale, a) / (a - 1.0);
        sol.objective = std::pow(prog.budget, 1.0 / (1.0 - a)) * std::pow(s, a / (a - 1.0));
        return sol;
}

namespace {

std::vector<double> stationary_durations(const WeightedProgram& prog, double lambda)
{
        const double a = prog.alpha.value;
        std::vector<double> p(prog.weights.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
                p[i] = std::pow(lambda * (a - 1.0) * prog.energy_coeffs[i] / prog.weights[i], 1.0 / a);
        }
        return p;
}

}  // namespace

double program_energy(const WeightedProgram& prog, const std::vector<double>& durations)
{
        const double a = prog.alpha.value;
        double e = 0.0;
        for (std::size_t i = 0; i < durations.size(); ++i) {
                e += prog.energy_coeffs[i] * std::pow(durations[i], 1.0 - a);
        }
        return e;
}

DurationSolution solve_weighted_numeric(const WeightedProgram& prog)
{
        check_program(prog);
        constexpr int max_iterations = 200;

        // g is strictly decreasing in lambda: larger lambda, longer jobs, less energy.
        auto g = [&](double lambda) { return program_energy(prog, stationary_durations(prog, lambda)) - prog.budget; };
        const double tol = 1e-12 * prog.budget;

        double lo = 1e-18;
        double hi = 1.0;
        int doublings = 0;
        while (g(hi) >= 0.0) {
                hi *= 2.0;
                if (++doublings > 2000 || !std::isfinite(hi)) throw Error("bisection failed to bracket the multiplier");
        }
        if (g(lo) <= 0.0) throw Error("bisection failed to bracket the multiplier");

        double mid = 0.5 * (lo + hi);
        bool converged = false;
        for (int it = 0; it < max_iterations; ++it) {
                // Geometric midpoint once the bracket spans orders of magnitude.
                mid = (hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
                const double gm = g(mid);
                if (std::abs(gm) < tol) {
                        converged = true;
                        break;
                }
                (gm > 0.0 ? lo : hi) = mid;
        }
        if (!converged) throw Error("bisection did not converge within 200 iterations");

        DurationSolution sol;
        sol.durations = stationary_durations(prog, mid);
        sol.multiplier = mid;
        sol.objective = std::inner_product(prog.weights.begin(), prog.weights.end(), sol.durations.begin(), 0.0);
        return sol;
}

}  // namespace espeed
