#ifndef ESPEED_GADGETS_HPP
#define ESPEED_GADGETS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "espeed/model.hpp"

namespace espeed {

// Seeded generator whose draws do not depend on the standard library's
// distribution implementations, so instances are identical on every platform.
class Rng {
      public:
        explicit Rng(std::uint64_t seed) : eng_(seed) {}

        double uniform();                  // [0, 1)
        int uniform_int(int lo, int hi);   // inclusive
        double log_uniform(double lo, double hi);

        template <class T>
        void shuffle(std::vector<T>& v)
        {
                for (std::size_t i = v.size(); i > 1; --i) {
                        std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(0, static_cast<int>(i) - 1))]);
                }
        }

      private:
        std::mt19937_64 eng_;
};

// Mixes a base seed with a stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

enum class WorkMode { Identical, Free };

// Sizes uniform in [1, max(1, floor(m/2))], caps uniform in [1, m], works
// log-uniform in [0.1, 10], E log-uniform in [0.5 n, 5 n]. Identical mode
// equalizes V_j / m_j (rigid, dedicated) or V_j (moldable). Moldable instances
// are always agreeable. Dedicated instances with m = 2 draw fix from
// {0}, {1}, {0, 1}.
Instance gen_random(JobKind kind, int n, int m, std::uint64_t seed, Alpha alpha, WorkMode mode);

struct GadgetOutput {
        Instance instance;
        std::string reduction;                 // "3partition" | "chromatic-index"
        double threshold{0.0};                 // T
        double chain_optimum{0.0};             // per-processor optimal sum of completions
        std::optional<Schedule> witness;       // built from a supplied certificate
        std::optional<double> witness_sumc;
};

// Rigid instance with m = B, E = B q, V_j = size_j = a_j, threshold
// T = 3 * (sum_{j=1..q} (q-j+1)^((a-1)/a))^(a/(a-1)) * q^(1/(1-a)).
// partition, when given, lists q triples of indices into a, each summing to B.
GadgetOutput gen_3partition(const std::vector<int>& a, int B, int q, Alpha alpha,
                            const std::optional<std::vector<std::array<int, 3>>>& partition = std::nullopt);

// Dedicated instance with one job per edge of a cubic graph: fix = {u, v},
// V = 2, m = |V|, E = 2 |A|, T = (m/2) * ((3^b + 2^b + 1)^a / 3)^(1/(a-1)),
// b = (a-1)/a. coloring, when given, assigns each edge a color in {0, 1, 2}.
GadgetOutput gen_chromatic(const std::vector<std::pair<int, int>>& edges, int vertex_count, Alpha alpha,
                           const std::optional<std::vector<int>>& coloring = std::nullopt);

}  // namespace espeed

#endif
