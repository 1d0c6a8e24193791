#include "doctest.h"

#include <cmath>
#include <set>

#include "espeed/gadgets.hpp"
#include "espeed/listsched.hpp"

using namespace espeed;

namespace {

const std::vector<std::pair<int, int>> k4{{0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 3}, {1, 2}};
const std::vector<int> k4_colors{0, 0, 1, 1, 2, 2};

const std::vector<std::pair<int, int>> petersen{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                                {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};

bool same(const Instance& a, const Instance& b)
{
        if (a.m != b.m || a.energy != b.energy || a.alpha.value != b.alpha.value || a.kind != b.kind || a.n() != b.n()) {
                return false;
        }
        for (std::size_t i = 0; i < a.n(); ++i) {
                const auto &x = a.jobs[i], &y = b.jobs[i];
                if (x.id != y.id || x.total_work != y.total_work || x.demand_count() != y.demand_count()) return false;
                if (x.kind() == JobKind::Dedicated &&
                    std::get<DedicatedSet>(x.demand).fix != std::get<DedicatedSet>(y.demand).fix) {
                        return false;
                }
        }
        return true;
}

}  // namespace

TEST_CASE("3-partition gadget, single triple")
{
        const auto g = gen_3partition({1, 1, 2}, 4, 1, Alpha{2}, std::vector<std::array<int, 3>>{{0, 1, 2}});
        CHECK(g.reduction == "3partition");
        CHECK(g.instance.m == 4);
        CHECK(g.instance.energy == 4.0);
        CHECK(g.instance.kind == JobKind::Rigid);
        CHECK(g.threshold == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(validate_instance(g.instance).ok());

        REQUIRE(g.witness);
        CHECK(*g.witness_sumc == doctest::Approx(3.0).epsilon(1e-9));
        const auto rep = verify_schedule(*g.witness, g.instance, {.require_nonpreemptive = true});
        CHECK(rep.ok());
        CHECK(rep.energy_used == doctest::Approx(g.instance.energy).epsilon(1e-12));
}

TEST_CASE("3-partition gadget, two triples")
{
        const std::vector<int> a(6, 2);
        for (double al : {1.5, 2.0, 3.0}) {
                const auto g = gen_3partition(a, 6, 2, Alpha{al}, std::vector<std::array<int, 3>>{{0, 1, 2}, {3, 4, 5}});
                CHECK(g.instance.m == 6);
                CHECK(g.instance.energy == 12.0);
                // each processor runs a 2-job chain with budget 2
                const double chain = solve_weighted({{2.0, 1.0}, {1.0, 1.0}, 2.0, Alpha{al}}).objective;
                CHECK(g.threshold == doctest::Approx(3.0 * chain).epsilon(1e-12));
                CHECK(*g.witness_sumc == doctest::Approx(g.threshold).epsilon(1e-9));
                const auto rep = verify_schedule(*g.witness, g.instance);
                CHECK(rep.ok());
                CHECK(rep.energy_used == doctest::Approx(12.0).epsilon(1e-12));
        }
        CHECK(gen_3partition(a, 6, 2, Alpha{2}).threshold == doctest::Approx(1.5 * std::pow(1 + std::sqrt(2.0), 2)));
}

TEST_CASE("3-partition gadget rejects bad input")
{
        CHECK_THROWS_AS(gen_3partition({1, 1, 1}, 4, 1, Alpha{2}), Error);
        CHECK_THROWS_AS(gen_3partition({1, 1, 2, 2}, 4, 1, Alpha{2}), Error);
        CHECK_THROWS_AS(gen_3partition({1, 1, 2}, 4, 1, Alpha{1}), Error);
        CHECK_THROWS_AS(gen_3partition({2, 2, 2, 2, 2, 2}, 6, 2, Alpha{2}, std::vector<std::array<int, 3>>{{0, 1, 2}, {2, 3, 4}}),
                        Error);
        CHECK_THROWS_AS(gen_3partition({2, 2, 2, 1, 2, 3}, 6, 2, Alpha{2}, std::vector<std::array<int, 3>>{{0, 1, 3}, {2, 4, 5}}),
                        Error);
}

TEST_CASE("chromatic gadget on K4")
{
        const auto g = gen_chromatic(k4, 4, Alpha{2}, k4_colors);
        CHECK(g.reduction == "chromatic-index");
        CHECK(g.instance.m == 4);
        CHECK(g.instance.energy == 12.0);
        CHECK(g.instance.kind == JobKind::Dedicated);
        const double exact = 2.0 * std::pow(std::sqrt(3.0) + std::sqrt(2.0) + 1.0, 2) / 3.0;
        CHECK(g.threshold == doctest::Approx(exact).epsilon(1e-12));
        CHECK(g.threshold == doctest::Approx(11.461005).epsilon(1e-7));

        REQUIRE(g.witness);
        CHECK(*g.witness_sumc == doctest::Approx(g.threshold).epsilon(1e-9));
        const auto rep = verify_schedule(*g.witness, g.instance, {.require_nonpreemptive = true});
        CHECK(rep.ok());
        CHECK(rep.energy_used == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("chromatic gadget rejects bad input")
{
        // a 4-cycle has degree 2 everywhere
        CHECK_THROWS_WITH_AS(gen_chromatic({{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 4, Alpha{2}), "graph not cubic", Error);
        CHECK_THROWS_WITH_AS(gen_chromatic(k4, 5, Alpha{2}), "odd vertex count", Error);
        CHECK_THROWS_AS(gen_chromatic(k4, 4, Alpha{2}, std::vector<int>{0, 1, 1, 1, 2, 2}), Error);
        CHECK_THROWS_AS(gen_chromatic(k4, 4, Alpha{2}, std::vector<int>{0, 0, 1}), Error);
}

TEST_CASE("Petersen graph builds without a certificate")
{
        const auto g = gen_chromatic(petersen, 10, Alpha{3});
        CHECK(g.instance.m == 10);
        CHECK(g.instance.energy == 30.0);
        CHECK_FALSE(g.witness);
        CHECK(validate_instance(g.instance).ok());
}

TEST_CASE("gen_random")
{
        for (auto kind : {JobKind::Rigid, JobKind::Moldable, JobKind::Dedicated}) {
                const int m = kind == JobKind::Dedicated ? 2 : 9;
                CHECK(same(gen_random(kind, 10, m, 99, Alpha{2}, WorkMode::Free),
                           gen_random(kind, 10, m, 99, Alpha{2}, WorkMode::Free)));
                CHECK_FALSE(same(gen_random(kind, 10, m, 99, Alpha{2}, WorkMode::Free),
                                 gen_random(kind, 10, m, 100, Alpha{2}, WorkMode::Free)));
        }

        for (std::uint64_t seed = 0; seed < 200; ++seed) {
                const int n = 1 + static_cast<int>(seed % 12);
                const auto r = gen_random(JobKind::Rigid, n, 11, seed, Alpha{2}, WorkMode::Identical);
                CHECK(validate_instance(r).ok());
                CHECK(r.energy >= 0.5 * n);
                CHECK(r.energy <= 5.0 * n);
                const double w0 = r.jobs[0].total_work / r.jobs[0].demand_count();
                for (const auto& j : r.jobs) {
                        CHECK(j.total_work / j.demand_count() == doctest::Approx(w0).epsilon(1e-12));
                        CHECK(2 * j.demand_count() <= r.m);
                }

                const auto d = gen_random(JobKind::Dedicated, n, 2, seed, Alpha{2}, WorkMode::Free);
                for (const auto& j : d.jobs) {
                        const auto& fix = std::get<DedicatedSet>(j.demand).fix;
                        CHECK((fix == std::vector<ProcId>{0} || fix == std::vector<ProcId>{1} ||
                               fix == std::vector<ProcId>{0, 1}));
                }

                const auto md = gen_random(JobKind::Moldable, n, 11, seed, Alpha{2}, WorkMode::Free);
                for (const auto& x : md.jobs) {
                        CHECK(x.demand_count() <= md.m);
                        for (const auto& y : md.jobs) {
                                if (x.total_work < y.total_work) CHECK(x.demand_count() <= y.demand_count());
                        }
                }
        }
}

TEST_CASE("Rng draws stay in range")
{
        Rng rng(5);
        std::set<int> seen;
        for (int i = 0; i < 2000; ++i) {
                const double u = rng.uniform();
                CHECK(u >= 0.0);
                CHECK(u < 1.0);
                const int k = rng.uniform_int(-2, 2);
                CHECK(k >= -2);
                CHECK(k <= 2);
                seen.insert(k);
                const double l = rng.log_uniform(0.1, 10.0);
                CHECK(l >= 0.1);
                CHECK(l <= 10.0);
        }
        CHECK(seen.size() == 5);
        CHECK(derive_seed(1, 2) != derive_seed(1, 3));
        CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}
