#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bosongap/error.hpp"
#include "bosongap/nogo.hpp"
#include "oracles.hpp"

using namespace bosongap;

TEST(LatticeSum, MatchesEnumeration) {
    for (int N : {1, 2, 3}) {
        for (double gs : {0.5, 1.0, 2.0, 4.0}) {
            const auto s = lattice_sum(1, gs, N);
            const double ref = static_cast<double>(oracle::lattice_sum(1, gs, N, N == 1 ? 200 : 60));
            EXPECT_NEAR(s.sum, ref, 1e-12 * std::max(1.0, ref)) << "N=" << N << " g*sigma=" << gs;
            EXPECT_LT(s.tail_bound, 1e-15);
        }
    }
}

TEST(LatticeSum, DependsOnProductOnly) {
    EXPECT_NEAR(lattice_sum(3, 0.5, 2).sum, lattice_sum(1, 1.5, 2).sum, 1e-15);
}

TEST(EpsilonGSigma, ReferenceValuesAtGSigmaTwo) {
    // Values from a 30-digit evaluation of the defining series.
    EXPECT_NEAR(lattice_sum(1, 2.0, 1).sum, 0.13567076109450761, 1e-15);
    EXPECT_NEAR(lattice_sum(1, 2.0, 2).sum, 0.28974807760497819, 1e-15);
    EXPECT_NEAR(epsilon_g_sigma(1, 2.0, 1).value, 0.10102578845611976, 1e-13);
    EXPECT_NEAR(epsilon_geometric(1, 2.0, 1).value, 0.0715438456862084, 1e-13);
    EXPECT_NEAR(lemma4_bound(1, 2.0, 1), 1.7979484230877605, 1e-13);
}

TEST(EpsilonGSigma, Asymptote) {
    EXPECT_NEAR(epsilon_g_sigma(1, 20.0, 1).value, 1.0 - 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(epsilon_g_sigma(4, 5.0, 3).value, 1.0 - 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(EpsilonGSigma, GeometricNeverExceedsLattice) {
    for (int N : {1, 2, 3}) {
        for (double gs = 0.2; gs < 6.0; gs += 0.1) {
            EXPECT_LE(epsilon_geometric(1, gs, N).value, epsilon_g_sigma(1, gs, N).value + 1e-14);
        }
    }
}

TEST(EpsilonGSigma, MonotoneInSigma) {
    double prev = -1e300;
    for (double s = 0.05; s < 5.0; s += 0.05) {
        const double v = epsilon_g_sigma(2, s, 2).value;
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(EpsilonGSigma, RejectsBadInput) {
    EXPECT_THROW(epsilon_g_sigma(1, 0.0, 1), ValidationError);
    EXPECT_THROW(epsilon_g_sigma(0, 1.0, 1), ValidationError);
    EXPECT_THROW(epsilon_g_sigma(1, 1.0, 0), ValidationError);
}

TEST(Threshold, SmallNTable) {
    const double table[] = {1.87, 2.19, 2.36, 2.48, 2.56};
    for (int N = 1; N <= 5; ++N) {
        EXPECT_NEAR(g_sigma_threshold(N), table[N - 1], 0.01) << "N=" << N;
    }
}

TEST(Threshold, GeometricBoundVanishesThere) {
    for (int N = 1; N <= 6; ++N) {
        const double t = g_sigma_threshold(N);
        EXPECT_NEAR(epsilon_geometric(1, t, N).value, 0.0, 1e-12);
        EXPECT_NEAR(sigma_thres(5, N), t / 5.0, 1e-15);
    }
}

TEST(Threshold, LiteralFormAgreesAtOneMode) {
    EXPECT_NEAR(g_sigma_threshold(1, Form::Literal), g_sigma_threshold(1), 1e-12);
    EXPECT_NEAR(epsilon_geometric(1, 2.5, 1, Form::Literal).value, epsilon_geometric(1, 2.5, 1).value, 1e-12);
}

TEST(PairBound, RandomSingleModeCodes) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick_g(2, 8);
    std::uniform_real_distribution<double> pick_sigma(0.1, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int g = pick_g(rng);
        const double sigma = pick_sigma(rng);
        const auto code = random_gapped_code(rng, g, TruncationConfig{40, 1});
        const auto c = verify_lemma4(code, sigma);
        EXPECT_TRUE(c.holds) << "g=" << g << " sigma=" << sigma;
        EXPECT_NEAR(c.bound, lemma4_bound(g, sigma, 1), 1e-15);
    }
}

TEST(PairBound, TwoFockStateCode) {
    // rho_+ - rho_- = |0><4| + |4><0|, whose coherence decays as exp(-8 sigma^2).
    const auto code = make_gapped_code({{{0}, 1.0}}, {{{4}, 1.0}}, 4, {0}, TruncationConfig{8, 1});
    for (double sigma : {0.1, 0.3, 1.0}) {
        const auto c = verify_lemma4(code, sigma);
        EXPECT_NEAR(c.norm_pm, 2.0 * std::exp(-8.0 * sigma * sigma), 1e-13);
        EXPECT_NEAR(c.norm_pmi, c.norm_pm, 1e-13);
        EXPECT_TRUE(c.holds);
    }
}
