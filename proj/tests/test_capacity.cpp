#include <gtest/gtest.h>

#include <cmath>

#include "bosongap/capacity.hpp"
#include "bosongap/error.hpp"
#include "oracles.hpp"

using namespace bosongap;

TEST(Parameters, DephasingProbability) {
    EXPECT_EQ(p_from_sigma(3, 0.0), 0.0);
    EXPECT_NEAR(p_from_sigma(1, 2.0), 0.5 * (1.0 - std::exp(-2.0)), 1e-16);
    EXPECT_NEAR(p_from_sigma(1, 2.0), 0.432332358381693654, 1e-15);
    EXPECT_NEAR(p_from_sigma(2, 40.0), 0.5, 1e-16);
    EXPECT_THROW(p_from_sigma(1, -1.0), ValidationError);
}

TEST(Parameters, DampingProbability) {
    EXPECT_EQ(q_from_gamma(4, 0.0), 0.0);
    EXPECT_EQ(q_from_gamma(4, 1.0), 0.5);
    EXPECT_NEAR(q_from_gamma(1, 0.2), 0.5 * (1.0 - std::pow(0.8, 1.5)), 1e-15);
    EXPECT_NEAR(xi_closed_form(1, 0.2), 0.715541752799933, 1e-14);
    EXPECT_THROW(q_from_gamma(1, 1.2), ValidationError);
}

TEST(Parameters, QAndXiAgree) {
    for (int g = 1; g <= 10; ++g) {
        for (double gamma : {0.01, 0.2, 0.5, 0.8, 0.99}) {
            EXPECT_NEAR(1.0 - 2.0 * q_from_gamma(g, gamma), xi_closed_form(g, gamma), 1e-14);
        }
    }
}

TEST(Parameters, XiDecreasesWithGamma) {
    for (int g : {1, 10, 60}) {
        double prev = 2.0;
        for (int i = 0; i <= 100; ++i) {
            const double xi = xi_closed_form(g, i / 100.0);
            EXPECT_LE(xi, prev);
            prev = xi;
        }
    }
}

TEST(Hashing, EndpointsAndReference) {
    EXPECT_EQ(hashing_rate(0.0), 1.0);
    EXPECT_NEAR(hashing_rate(0.5), 0.0, 1e-16);
    EXPECT_NEAR(hashing_rate(0.1), static_cast<double>(1.0L - oracle::h2_bits(0.1L)), 1e-15);
    EXPECT_NEAR(hashing_rate(0.1), 0.531004406410719, 1e-14);
}

TEST(Hashing, ContrastFormAgrees) {
    for (double r : {0.0, 0.01, 0.1, 0.2, 0.25, 0.3, 0.45, 0.4999, 0.5}) {
        EXPECT_NEAR(hashing_rate_contrast(1.0 - 2.0 * r), static_cast<double>(1.0L - oracle::h2_bits(r)), 2e-15) << r;
    }
    const double below = hashing_rate_contrast(std::nextafter(0.5, 0.0));
    const double above = hashing_rate_contrast(std::nextafter(0.5, 1.0));
    EXPECT_NEAR(below, above, 1e-15);
    EXPECT_THROW(hashing_rate_contrast(1.5), ValidationError);
}

TEST(Hashing, ContrastFormSmallValues) {
    // Q = c^2 (1/2 + c^2/12 + ...) / ln 2 near r = 1/2, resolved to full relative precision.
    const double c = 1e-6;
    const double expected = c * c * (0.5 + c * c / 12.0) / std::log(2.0);
    EXPECT_NEAR(hashing_rate_contrast(c), expected, 1e-14 * expected);
    double prev = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        const double v = hashing_rate_contrast(i * 2.5e-4);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(CoherentInfo, MatchesMatrixOracle) {
    for (double p : {0.0, 0.05, 0.2, 0.45, 0.5}) {
        for (double r : {0.0, 0.1, 0.3, 0.5, 0.7, 1.0}) {
            EXPECT_NEAR(coherent_info_diag(p, r), oracle::coherent_info(p, r), 1e-12) << p << " " << r;
        }
    }
}

TEST(CoherentInfo, ClosedFormAtHalf) {
    for (double p : {0.05, 0.1, 0.25, 0.45}) {
        const double closed = std::log(2.0 - 2.0 * p) - 2.0 * p * std::atanh(1.0 - 2.0 * p);
        EXPECT_NEAR(coherent_info_diag(p, 0.5), closed, 1e-10);
        EXPECT_NEAR(coherent_info_diag(p, 0.5), hashing_rate(p) * kNatsPerBit, 1e-10);
    }
    EXPECT_NEAR(coherent_info_diag(0.1, 0.5), 0.3680642071685, 1e-12);
}

TEST(CoherentInfo, SymmetricAndBoundary) {
    for (double r : {0.05, 0.2, 0.4}) {
        EXPECT_NEAR(coherent_info_diag(0.3, r), coherent_info_diag(0.3, 1.0 - r), 1e-12);
    }
    EXPECT_NEAR(coherent_info_diag(0.3, 0.0), 0.0, 1e-15);
    EXPECT_NEAR(coherent_info_diag(0.0, 0.5), std::log(2.0), 1e-15);
}

TEST(Argmax, HalfIsOptimal) {
    for (double p : {0.1, 0.25, 0.49}) {
        const auto c = verify_argmax_half(p);
        EXPECT_TRUE(c.holds) << p;
        EXPECT_NEAR(c.argmax_r, 0.5, c.grid_step);
        EXPECT_LT(std::abs(c.gradient_at_half), 1e-8);
    }
    EXPECT_THROW(verify_argmax_half(0.5), ValidationError);
}

TEST(Reduction, OffDiagonalMatchesClosedFormAndOracle) {
    for (int g : {1, 2, 3, 5}) {
        for (double gamma : {0.0, 0.05, 0.1, 0.2, 0.5}) {
            const auto rep = verify_reduction(g, gamma, TruncationConfig{2 * g + 3, 1});
            EXPECT_TRUE(rep.holds);
            EXPECT_LT(rep.error, 1e-12);
            EXPECT_NEAR(rep.xi_matrix, oracle::reduction_offdiag(g, gamma, 2 * g + 3).real(), 1e-13);
        }
    }
}

TEST(Reduction, DiagonalActionIsReported) {
    const auto rep = verify_reduction(2, 0.2, TruncationConfig{8, 1});
    // |g> survives unless all g photons are lost; |2g> keeps weight on itself
    // and leaks to |g>.
    EXPECT_NEAR(rep.image_g(0, 0), 1.0 - 0.04, 1e-14);
    EXPECT_NEAR(rep.image_2g(0, 0) + rep.image_2g(1, 1), 1.0 - std::pow(0.2, 4), 1e-14);
    EXPECT_GT(rep.image_2g(0, 0), 0.0);
    EXPECT_LT(rep.completeness_defect, 1e-12);
}

TEST(Reduction, IdentityWithoutDamping) {
    const auto rep = verify_reduction(3, 0.0, TruncationConfig{6, 1});
    EXPECT_EQ(rep.xi_closed, 1.0);
    EXPECT_NEAR(rep.image_g(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(rep.image_2g(1, 1), 1.0, 1e-15);
    EXPECT_THROW(verify_reduction(3, 0.1, TruncationConfig{5, 1}), ValidationError);
}

TEST(Sweep, ReferenceCellAndCorners) {
    const auto rows = capacity_sweep(1, 0.5, {0.0, 2.0}, {0.0, 0.2});
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].Q_lower, 1.0);
    const auto& cell = rows[3];
    EXPECT_EQ(cell.sigma, 2.0);
    EXPECT_EQ(cell.gamma, 0.2);
    EXPECT_NEAR(cell.r, 0.287280740991, 1e-11);
    EXPECT_NEAR(cell.Q_lower, static_cast<double>(1.0L - oracle::h2_bits(cell.r)), 1e-14);
    EXPECT_NEAR(cell.Q_lower, 0.134809, 1e-5);
    const auto far = capacity_sweep(1, 0.5, {50.0}, {1.0});
    EXPECT_NEAR(far[0].Q_lower, 0.0, 1e-15);
}

TEST(Sweep, MonotoneInBothAxes) {
    std::vector<double> sigmas;
    std::vector<double> gammas;
    for (int i = 0; i < 20; ++i) sigmas.push_back(0.01 * i);
    for (int i = 0; i < 20; ++i) gammas.push_back(i / 19.0);
    for (int g : {1, 10, 60}) {
        const auto rows = capacity_sweep(g, 0.5, sigmas, gammas, 2);
        auto at = [&](std::size_t s, std::size_t k) { return rows[s * gammas.size() + k].Q_lower; };
        for (std::size_t s = 0; s < sigmas.size(); ++s) {
            for (std::size_t k = 0; k < gammas.size(); ++k) {
                if (s > 0) EXPECT_LE(at(s, k), at(s - 1, k));
                if (k > 0) EXPECT_LE(at(s, k), at(s, k - 1));
            }
        }
    }
}
