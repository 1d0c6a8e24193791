#include "espeed/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "espeed/duropt.hpp"

namespace espeed {

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi)
{
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(eng_() % span);
}

double Rng::log_uniform(double lo, double hi) { return lo * std::exp(uniform() * std::log(hi / lo)); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
        // splitmix64 finalizer over the combined value
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
}

Instance gen_random(JobKind kind, int n, int m, std::uint64_t seed, Alpha alpha, WorkMode mode)
{
        if (n < 1 || m < 1) throw Error("random instances need n >= 1 and m >= 1");
        Rng rng(seed);
        Instance inst;
        inst.m = m;
        inst.alpha = alpha;
        inst.kind = kind;
        inst.energy = rng.log_uniform(0.5 * n, 5.0 * n);
        const double shared = rng.log_uniform(0.1, 10.0);
        auto draw_work = [&] { return mode == WorkMode::Identical ? shared : rng.log_uniform(0.1, 10.0); };

        switch (kind) {
        case JobKind::Rigid:
                for (int i = 0; i < n; ++i) {
                        const int size = rng.uniform_int(1, std::max(1, m / 2));
                        inst.jobs.push_back(Job{i, draw_work() * size, RigidSize{size}});
                }
                break;
        case JobKind::Moldable: {
                std::vector<double> works;
                std::vector<int> caps;
                for (int i = 0; i < n; ++i) {
                        works.push_back(draw_work());
                        caps.push_back(rng.uniform_int(1, m));
                }
                std::sort(works.begin(), works.end());
                std::sort(caps.begin(), caps.end());
                std::vector<std::pair<double, int>> pairs;
                for (int i = 0; i < n; ++i) pairs.emplace_back(works[i], caps[i]);
                rng.shuffle(pairs);
                for (int i = 0; i < n; ++i) inst.jobs.push_back(Job{i, pairs[i].first, MoldableCap{pairs[i].second}});
                break;
        }
        case JobKind::Dedicated:
                for (int i = 0; i < n; ++i) {
                        std::vector<ProcId> fix;
                        if (m == 2) {
                                switch (rng.uniform_int(0, 2)) {
                                case 0: fix = {0}; break;
                                case 1: fix = {1}; break;
                                default: fix = {0, 1}; break;
                                }
                        } else {
                                std::vector<ProcId> all(static_cast<std::size_t>(m));
                                std::iota(all.begin(), all.end(), 0);
                                rng.shuffle(all);
                                fix.assign(all.begin(), all.begin() + rng.uniform_int(1, m));
                                std::sort(fix.begin(), fix.end());
                        }
                        const double width = static_cast<double>(fix.size());
                        inst.jobs.push_back(Job{i, draw_work() * width, DedicatedSet{fix}});
                }
                break;
        }
        return inst;
}

GadgetOutput gen_3partition(const std::vector<int>& a, int B, int q, Alpha alpha,
                            const std::optional<std::vector<std::array<int, 3>>>& partition)
{
        if (q < 1 || B < 1) throw Error("3-partition needs q >= 1 and B >= 1");
        if (a.size() != static_cast<std::size_t>(3 * q)) throw Error("3-partition needs exactly 3q elements");
        if (std::accumulate(a.begin(), a.end(), 0LL) != static_cast<long long>(B) * q) {
                throw Error("element sum must equal B q");
        }
        for (int x : a) {
                if (4 * x < B || 2 * x > B) throw Error("elements must lie in [B/4, B/2]");
        }
        if (!(alpha.value > 1.0)) throw Error("alpha must exceed 1");

        GadgetOutput out;
        out.reduction = "3partition";
        auto& inst = out.instance;
        inst.kind = JobKind::Rigid;
        inst.m = B;
        inst.energy = static_cast<double>(B) * q;
        inst.alpha = alpha;
        for (std::size_t j = 0; j < a.size(); ++j) {
                inst.jobs.push_back(Job{static_cast<JobId>(j), static_cast<double>(a[j]), RigidSize{a[j]}});
        }

        const double al = alpha.value;
        double s = 0.0;
        for (int j = 1; j <= q; ++j) s += std::pow(static_cast<double>(q - j + 1), (al - 1.0) / al);
        out.chain_optimum = std::pow(s, al / (al - 1.0)) * std::pow(static_cast<double>(q), 1.0 / (1.0 - al));
        out.threshold = 3.0 * out.chain_optimum;

        if (partition) {
                if (partition->size() != static_cast<std::size_t>(q)) throw Error("partition must have q triples");
                std::set<int> used;
                for (const auto& triple : *partition) {
                        int sum = 0;
                        for (int idx : triple) {
                                if (idx < 0 || idx >= static_cast<int>(a.size()) || !used.insert(idx).second) {
                                        throw Error("partition must use every element exactly once");
                                }
                                sum += a[static_cast<std::size_t>(idx)];
                        }
                        if (sum != B) throw Error("every partition triple must sum to B");
                }
                // Each processor runs a q-job chain with budget q.
                WeightedProgram chain;
                for (int j = 1; j <= q; ++j) {
                        chain.weights.push_back(q - j + 1);
                        chain.energy_coeffs.push_back(1.0);
                }
                chain.budget = q;
                chain.alpha = alpha;
                const auto sol = solve_weighted(chain);

                Schedule w;
                double t = 0.0;
                for (int r = 0; r < q; ++r) {
                        const double p = sol.durations[static_cast<std::size_t>(r)];
                        ProcId next = 0;
                        for (int idx : (*partition)[static_cast<std::size_t>(r)]) {
                                std::vector<ProcId> procs;
                                for (int k = 0; k < a[static_cast<std::size_t>(idx)]; ++k) procs.push_back(next++);
                                w.pieces.push_back(Piece{idx, procs, t, t + p, 1.0 / p});
                        }
                        t += p;
                }
                out.witness_sumc = total_completion(w);
                out.witness = std::move(w);
        }
        return out;
}

GadgetOutput gen_chromatic(const std::vector<std::pair<int, int>>& edges, int vertex_count, Alpha alpha,
                           const std::optional<std::vector<int>>& coloring)
{
        if (vertex_count < 1 || vertex_count % 2 != 0) throw Error("odd vertex count");
        if (!(alpha.value > 1.0)) throw Error("alpha must exceed 1");
        std::vector<int> degree(static_cast<std::size_t>(vertex_count), 0);
        std::set<std::pair<int, int>> distinct;
        for (auto [u, v] : edges) {
                if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v) {
                        throw Error("edge endpoints must be distinct vertices in range");
                }
                if (!distinct.insert({std::min(u, v), std::max(u, v)}).second) throw Error("graph not cubic");
                ++degree[static_cast<std::size_t>(u)];
                ++degree[static_cast<std::size_t>(v)];
        }
        if (std::any_of(degree.begin(), degree.end(), [](int d) { return d != 3; })) throw Error("graph not cubic");

        GadgetOutput out;
        out.reduction = "chromatic-index";
        auto& inst = out.instance;
        inst.kind = JobKind::Dedicated;
        inst.m = vertex_count;
        inst.energy = 2.0 * static_cast<double>(edges.size());
        inst.alpha = alpha;
        for (std::size_t j = 0; j < edges.size(); ++j) {
                auto [u, v] = edges[j];
                inst.jobs.push_back(Job{static_cast<JobId>(j), 2.0, DedicatedSet{{std::min(u, v), std::max(u, v)}}});
        }

        const double al = alpha.value;
        const double b = (al - 1.0) / al;
        const double s = std::pow(3.0, b) + std::pow(2.0, b) + 1.0;
        out.chain_optimum = std::pow(std::pow(s, al) / 3.0, 1.0 / (al - 1.0));
        out.threshold = vertex_count / 2.0 * out.chain_optimum;

        if (coloring) {
                if (coloring->size() != edges.size()) throw Error("coloring must assign one color per edge");
                std::array<std::vector<std::size_t>, 3> classes;
                for (std::size_t j = 0; j < edges.size(); ++j) {
                        const int c = (*coloring)[j];
                        if (c < 0 || c > 2) throw Error("colors must be 0, 1 or 2");
                        classes[static_cast<std::size_t>(c)].push_back(j);
                }
                for (const auto& cls : classes) {
                        std::set<int> touched;
                        for (std::size_t j : cls) {
                                if (!touched.insert(edges[j].first).second || !touched.insert(edges[j].second).second) {
                                        throw Error("coloring is not proper");
                                }
                        }
                }
                // Every processor runs three unit jobs with budget 3.
                WeightedProgram chain{{3.0, 2.0, 1.0}, {1.0, 1.0, 1.0}, 3.0, alpha};
                const auto sol = solve_weighted(chain);

                Schedule w;
                double t = 0.0;
                for (std::size_t r = 0; r < 3; ++r) {
                        const double p = sol.durations[r];
                        for (std::size_t j : classes[r]) {
                                const auto& fix = std::get<DedicatedSet>(inst.jobs[j].demand).fix;
                                w.pieces.push_back(Piece{static_cast<JobId>(j), fix, t, t + p, 1.0 / p});
                        }
                        t += p;
                }
                out.witness_sumc = total_completion(w);
                out.witness = std::move(w);
        }
        return out;
}

}  // namespace espeed
