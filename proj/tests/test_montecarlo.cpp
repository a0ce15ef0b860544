#include "affwalk/error.hpp"
#include "affwalk/exactdist.hpp"
#include "affwalk/montecarlo.hpp"
#include "affwalk/philox.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace affwalk;

namespace {

const IntMatrix kGolden{{2, 1}, {1, 1}};
const IntMatrix kShear{{1, 1}, {0, 2}};
const IntMatrix kRotation{{0, -1}, {1, 0}};

// Reference words from numpy.random.Philox with its state set directly to the
// given key and counter. numpy increments the counter before each block, so
// state counter c yields our blocks c + 1, c + 2, ...
constexpr Philox4x64::Block kZeroKeyFromMax{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
                                            0x7e68b68aec7ba23bULL};
constexpr Philox4x64::Block kZeroKeyFromZero0{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
                                              0x907d7a052fd5b4dcULL};
constexpr Philox4x64::Block kZeroKeyFromZero1{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL,
                                              0xfc6ed66767a457bcULL};
constexpr Philox4x64::Key kKey{0x0123456789abcdefULL, 0xfedcba9876543210ULL};
constexpr Philox4x64::Block kKeyFrom1234_0{0x88e941281d6fe907ULL, 0x5823687dd5272472ULL, 0x246fd1b93a04f59dULL,
                                           0x5f18e9daf3d87de6ULL};
constexpr Philox4x64::Block kKeyFrom1234_1{0xa0177786c22eeb8aULL, 0x03d98f3fd166e544ULL, 0xaaaf3beb62510fa6ULL,
                                           0x235db640e2fc64ceULL};

// Brute-force law of v . (T^{m-1} b_0 + ... + b_{m-1}) over all (d+1)^m tuples.
std::map<std::int64_t, double> enumerate_increments(const IntMatrix& t, std::int64_t p, unsigned m, const ModVector& v) {
    const std::size_t d = t.dim();
    const ModMatrix tm(t, p);
    std::uint64_t tuples = 1;
    for (unsigned j = 0; j < m; ++j) tuples *= d + 1;
    std::map<std::int64_t, double> law;
    for (std::uint64_t code = 0; code < tuples; ++code) {
        std::vector<std::int64_t> x(d, 0), y(d);
        std::uint64_t rest = code;
        for (unsigned j = 0; j < m; ++j) {
            tm.apply(x, y);
            const std::uint64_t b = rest % (d + 1);
            rest /= d + 1;
            if (b > 0) y[b - 1] = (y[b - 1] + 1) % p;
            x = y;
        }
        std::int64_t s = 0;
        for (std::size_t r = 0; r < d; ++r) s = (s + v[r] * x[r]) % p;
        law[s] += 1.0 / static_cast<double>(tuples);
    }
    return law;
}

}  // namespace

TEST(Philox, MatchesNumpyReference) {
    EXPECT_EQ(Philox4x64::block({0, 0, 0, 0}, {0, 0}), kZeroKeyFromMax);
    EXPECT_EQ(Philox4x64::block({1, 0, 0, 0}, {0, 0}), kZeroKeyFromZero0);
    EXPECT_EQ(Philox4x64::block({2, 0, 0, 0}, {0, 0}), kZeroKeyFromZero1);
    EXPECT_EQ(Philox4x64::block({2, 2, 3, 4}, kKey), kKeyFrom1234_0);
    EXPECT_EQ(Philox4x64::block({3, 2, 3, 4}, kKey), kKeyFrom1234_1);
}

TEST(Philox, StreamOrder) {
    Philox4x64 g(0, 0);
    for (auto w : kZeroKeyFromMax) EXPECT_EQ(g(), w);
    for (auto w : kZeroKeyFromZero0) EXPECT_EQ(g(), w);
}

TEST(Philox, BelowIsInRangeAndRoughlyUniform) {
    Philox4x64 g(42, 7);
    std::vector<int> counts(3, 0);
    const int n = 300000;
    for (int i = 0; i < n; ++i) {
        const auto x = g.below(3);
        ASSERT_LT(x, 3u);
        ++counts[x];
    }
    const double se = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
    for (int c : counts) EXPECT_LT(std::abs(c - n / 3.0), 4 * se);
}

TEST(Simulate, ZeroStepsAndDeterminism) {
    const WalkConfig cfg(kGolden, 5);
    const auto zero = simulate(cfg, 0, 100, 1);
    for (auto x : zero.coords) EXPECT_EQ(x, 0);
    EXPECT_DOUBLE_EQ(empirical_tv(zero), 1.0 - 1.0 / 25);

    const auto a = simulate(cfg, 17, 5000, 99, 1);
    const auto b = simulate(cfg, 17, 5000, 99, 4);
    EXPECT_EQ(a.coords, b.coords);
    const auto c = simulate(cfg, 17, 5000, 100, 1);
    EXPECT_NE(a.coords, c.coords);
}

TEST(Simulate, FrequenciesNearUniformAfterMixing) {
    const WalkConfig cfg(kGolden, 5);
    ASSERT_LT(tv_to_uniform(evolve(cfg, 30)), 1e-6);
    const std::uint64_t n = 100000;
    const auto batch = simulate(cfg, 30, n, kDefaultSeed);
    std::vector<double> counts(25, 0);
    for (std::size_t i = 0; i < n; ++i) counts[encode_state(batch.state(i).values(), 5)] += 1;
    const double se = std::sqrt(static_cast<double>(n) * (1.0 / 25) * (24.0 / 25));
    for (double c : counts) EXPECT_LT(std::abs(c - static_cast<double>(n) / 25), 4 * se);
}

TEST(Simulate, EmpiricalTvApproachesExact) {
    const WalkConfig cfg(kGolden, 5);
    const auto batch = simulate(cfg, 5, 1'000'000, 3);
    EXPECT_NEAR(empirical_tv(batch), tv_to_uniform(evolve(cfg, 5)), 0.02);
}

TEST(EmpiricalTv, BalancedSampleIsZeroAndBudget) {
    const WalkConfig cfg(kGolden, 3);
    TrajectoryBatch batch{cfg, 0, 0, 18, {}};
    for (int rep = 0; rep < 2; ++rep)
        for (std::int64_t s = 0; s < 9; ++s) {
            batch.coords.push_back(s % 3);
            batch.coords.push_back(s / 3);
        }
    EXPECT_NEAR(empirical_tv(batch), 0.0, 1e-15);
    EXPECT_THROW(empirical_tv(batch, 8), BudgetError);
}

TEST(Projection, ShearExample) {
    const auto rep = projection_functional(kShear, 101, 1);
    EXPECT_EQ(rep.v, ModVector(101, {1, 100}));
    ASSERT_EQ(rep.support(), 3u);
    std::map<std::int64_t, double> law(rep.increments.begin(), rep.increments.end());
    EXPECT_NEAR(law[0], 1.0 / 3, 1e-15);
    EXPECT_NEAR(law[1], 1.0 / 3, 1e-15);
    EXPECT_NEAR(law[100], 1.0 / 3, 1e-15);
    EXPECT_FALSE(rep.degenerate);
}

TEST(Projection, RotationEnumeratesAllTuples) {
    const auto rep = projection_functional(kRotation, 13, 4);
    EXPECT_EQ(rep.nullity_mod_p, 2u);
    EXPECT_EQ(rep.v, ModVector(13, {1, 0}));
    EXPECT_LE(rep.support(), 81u);
    const auto law = enumerate_increments(kRotation, 13, 4, rep.v);
    ASSERT_EQ(law.size(), rep.support());
    double total = 0;
    for (const auto& [s, prob] : rep.increments) {
        EXPECT_NEAR(prob, law.at(s), 1e-15);
        total += prob;
    }
    EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(Projection, IdentityMatrix) {
    const auto rep = projection_functional(IntMatrix::identity(3), 7, 1);
    EXPECT_EQ(rep.v, ModVector(7, {1, 0, 0}));
    std::map<std::int64_t, double> law(rep.increments.begin(), rep.increments.end());
    EXPECT_NEAR(law[0], 3.0 / 4, 1e-15);
    EXPECT_NEAR(law[1], 1.0 / 4, 1e-15);
}

TEST(Projection, EigenvectorAndBruteForceOnRandomSetups) {
    const IntMatrix mats[] = {kShear, kRotation, {{0, 1}, {-1, -1}}, {{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}, {{-1, 2}, {0, 3}}};
    for (const auto& t : mats) {
        const auto spec = classify(t);
        ASSERT_EQ(spec.classification, SpectrumClass::RootOfUnity) << t.to_string();
        for (std::int64_t p : {5, 7, 11}) {
            if (!is_admissible(t, p)) continue;
            const auto rep = projection_functional(t, p, *spec.order);
            const ModMatrix tmt = mat_pow_mod(t, rep.m, p).transpose();
            EXPECT_EQ(tmt.apply(rep.v), rep.v);
            const auto law = enumerate_increments(t, p, rep.m, rep.v);
            ASSERT_EQ(law.size(), rep.support());
            for (const auto& [s, prob] : rep.increments) EXPECT_NEAR(prob, law.at(s), 1e-14);
        }
    }
}

TEST(Projection, Preconditions) {
    EXPECT_THROW(projection_functional(kShear, 9, 1), MathError);      // composite
    EXPECT_THROW(projection_functional(kShear, 2, 1), MathError);      // det 2
    EXPECT_THROW(projection_functional(kGolden, 11, 1), MathError);    // no root of unity
    EXPECT_THROW(projection_functional(kRotation, 13, 3), MathError);  // order 4 does not divide 3
    EXPECT_THROW(projection_functional(kShear, 11, 0), ConfigError);
}

TEST(Projection, DegeneratePrimeDetected) {
    // eigenvalues 1 and 6: mod 5 the matrix is the identity, so the eigenspace grows
    const IntMatrix t{{1, 0}, {0, 6}};
    const auto rep = projection_functional(t, 5, 1);
    EXPECT_EQ(rep.nullity_mod_p, 2u);
    EXPECT_EQ(rep.nullity_rational, 1u);
    EXPECT_TRUE(rep.degenerate);
    EXPECT_FALSE(projection_functional(t, 7, 1).degenerate);
}

TEST(ProjectedWalk, Basics) {
    const auto rep = projection_functional(kShear, 101, 1);
    const auto d0 = projected_walk_dist(rep, 0);
    EXPECT_EQ(d0[0], 1.0);
    const auto d101 = projected_walk_dist(rep, 101);
    double mass = 0;
    for (double m : d101) mass += m;
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_GE(tv_to_uniform(d101), 0.5);
}

TEST(ProjectedWalk, MatchesPushforwardOfDenseEvolution) {
    for (const auto& t : {kShear, IntMatrix{{1, 0}, {1, 3}}}) {
        const auto rep = projection_functional(t, 7, 1);
        const WalkConfig cfg(t, 7);
        for (std::uint64_t n : {0u, 1u, 2u, 5u, 12u}) {
            const auto full = evolve(cfg, n);
            const auto pf = pushforward(full, rep.v);
            const auto pw = projected_walk_dist(rep, n);
            for (std::size_t s = 0; s < 7; ++s) EXPECT_NEAR(pw[s], pf[s], 1e-10);
            EXPECT_LE(tv_to_uniform(pw), tv_to_uniform(full) + 1e-12);
        }
    }
}

TEST(ProjectedWalk, BlockIncrementsMatchTrajectories) {
    const WalkConfig cfg(kRotation, 13);
    const auto rep = projection_functional(kRotation, 13, 4);
    std::map<std::int64_t, double> law(rep.increments.begin(), rep.increments.end());
    const std::uint64_t blocks = 100000;
    // a trajectory of 4k steps, read off every block boundary
    std::map<std::int64_t, double> seen;
    Philox4x64 rng(5, 0);
    std::vector<std::int64_t> x(2, 0), y(2);
    auto pi = [&](const std::vector<std::int64_t>& z) { return (rep.v[0] * z[0] + rep.v[1] * z[1]) % 13; };
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const auto before = pi(x);
        for (int j = 0; j < 4; ++j) {
            cfg.matrix_mod().apply(x, y);
            const auto k = rng.below(3);
            if (k > 0) y[k - 1] = (y[k - 1] + 1) % 13;
            x = y;
        }
        seen[((pi(x) - before) % 13 + 13) % 13] += 1;
    }
    for (const auto& [s, count] : seen) {
        ASSERT_TRUE(law.count(s)) << s;
        const double prob = law[s];
        const double se = std::sqrt(static_cast<double>(blocks) * prob * (1 - prob));
        EXPECT_LT(std::abs(count - static_cast<double>(blocks) * prob), 4 * se + 1e-9);
    }
}

TEST(Sweep, EmptyAndErrorsRecorded) {
    EXPECT_TRUE(scaling_sweep({{"g", kGolden}}, {}, 0.25, SweepMethod::Ub).cells.empty());
    const auto r = scaling_sweep({{"g", kGolden}, {"d", IntMatrix{{2, 0}, {0, 2}}}}, {5, 6}, 0.25, SweepMethod::Exact);
    ASSERT_EQ(r.cells.size(), 4u);
    EXPECT_EQ(r.cells[0].n_mix, 3u);
    EXPECT_TRUE(r.cells[0].error.empty());
    EXPECT_FALSE(r.cells[3].n_mix.has_value());
    EXPECT_FALSE(r.cells[3].error.empty());
    EXPECT_EQ(r.fits[1].law, "log2");  // eigenvalue 2 is off the unit circle
    EXPECT_EQ(r.fits[1].points, 1u);
}

TEST(Sweep, ProjectedGrowsQuadratically) {
    const auto r = scaling_sweep({{"shear", kShear}}, {11, 31, 101}, 0.25, SweepMethod::Projected);
    ASSERT_EQ(r.fits.size(), 1u);
    EXPECT_EQ(r.fits[0].law, "power");
    ASSERT_TRUE(r.fits[0].parameter.has_value());
    EXPECT_GT(*r.fits[0].parameter, 1.8);
    for (const auto& c : r.cells) EXPECT_TRUE(c.n_mix.has_value()) << c.error;
}

TEST(Sweep, DeterministicAcrossThreads) {
    const std::vector<SweepMatrix> mats{{"g", kGolden}, {"s", kShear}};
    SweepOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const auto a = scaling_sweep(mats, {11, 31}, 0.25, SweepMethod::Ub, one);
    const auto b = scaling_sweep(mats, {11, 31}, 0.25, SweepMethod::Ub, four);
    EXPECT_EQ(a.cells, b.cells);
    EXPECT_EQ(a.fits, b.fits);
}

TEST(Sweep, MethodNames) {
    for (auto m : {SweepMethod::Exact, SweepMethod::Ub, SweepMethod::Projected})
        EXPECT_EQ(sweep_method_from_string(to_string(m)), m);
    EXPECT_THROW(sweep_method_from_string("guess"), ConfigError);
}
