#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bosongap/channels.hpp"
#include "bosongap/error.hpp"

using namespace bosongap;

namespace {

HermitianOperator random_hermitian(const TruncationConfig& t, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n;
    const auto d = static_cast<Eigen::Index>(t.dim());
    ComplexMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {n(rng), n(rng)};
    return HermitianOperator(t, 0.5 * (m + m.adjoint()));
}

}  // namespace

TEST(Dephasing, ScalesOffDiagonals) {
    TruncationConfig t{6, 1};
    const auto rho = random_hermitian(t, 1);
    const double sigma = 0.7;
    const auto out = dephase_apply(rho, sigma);
    for (int j = 0; j <= 6; ++j) {
        for (int k = 0; k <= 6; ++k) {
            const double f = std::exp(-0.5 * (j - k) * (j - k) * sigma * sigma);
            EXPECT_NEAR(std::abs(out(j, k) - f * rho(j, k)), 0.0, 1e-15);
        }
    }
}

TEST(Dephasing, MultiModeUsesEuclideanDistance) {
    TruncationConfig t{2, 2};
    const auto rho = random_hermitian(t, 2);
    const auto out = dephase_apply(rho, 0.5);
    const auto i = static_cast<Eigen::Index>(t.flatten({0, 1}));
    const auto j = static_cast<Eigen::Index>(t.flatten({2, 0}));
    EXPECT_NEAR(std::abs(out(i, j) - std::exp(-0.5 * 5 * 0.25) * rho(i, j)), 0.0, 1e-15);
}

TEST(Dephasing, QuadratureMatchesClosedForm) {
    TruncationConfig t{30, 1};
    const auto rho = random_hermitian(t, 3);
    for (double sigma : {0.05, 0.3, 1.0, 3.0, 10.0}) {
        const auto a = dephase_apply(rho, sigma);
        const auto b = dephase_by_quadrature(rho, sigma);
        EXPECT_LT((a.entries() - b.entries()).cwiseAbs().maxCoeff(), 1e-8) << "sigma=" << sigma;
    }
}

TEST(Dephasing, KernelStartsAtOne) {
    for (auto method : {QuadratureMethod::GaussHermite, QuadratureMethod::WrappedTrapezoid}) {
        const auto c = dephasing_kernel_by_quadrature(0.4, 5, 64, method);
        EXPECT_NEAR(std::abs(c[0] - 1.0), 0.0, 1e-13);
        EXPECT_NEAR(c[3].real(), std::exp(-0.5 * 9 * 0.16), 1e-12);
    }
    EXPECT_THROW(dephasing_kernel_by_quadrature(0.4, 5, 8), ValidationError);
}

TEST(Dephasing, RejectsNegativeSigma) {
    TruncationConfig t{3, 1};
    EXPECT_THROW(dephase_apply(random_hermitian(t, 4), -0.1), ValidationError);
}

TEST(AmplitudeDamping, CompleteForAllGamma) {
    TruncationConfig t{60, 1};
    for (double gamma : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        EXPECT_LT(amp_damp_kraus(gamma, t).completeness_defect(), 1e-12) << gamma;
    }
    EXPECT_THROW(amp_damp_kraus(1.5, t), ValidationError);
}

TEST(AmplitudeDamping, MeanPhotonNumberDecays) {
    TruncationConfig t{12, 1};
    const double gamma = 0.3;
    const auto ch = amp_damp_kraus(gamma, t);
    const auto out = apply_kraus(ch, projector(basis_state({10}, t)));
    double mean = 0.0;
    for (int n = 0; n <= 12; ++n) mean += n * out(n, n).real();
    EXPECT_NEAR(mean, (1.0 - gamma) * 10.0, 1e-12);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-13);
}

TEST(AmplitudeDamping, FullLossGoesToVacuum) {
    TruncationConfig t{5, 1};
    const auto out = apply_kraus(amp_damp_kraus(1.0, t), projector(basis_state({4}, t)));
    EXPECT_NEAR(out(0, 0).real(), 1.0, 1e-15);
    EXPECT_EQ(amp_damp_kraus(0.0, t).kraus.size(), 1u);
}

TEST(AmplitudeDamping, EachModeOnTwoModes) {
    TruncationConfig t{3, 2};
    const auto single = amp_damp_kraus(0.25, TruncationConfig{3, 1});
    const auto out = apply_kraus_each_mode(single, projector(basis_state({1, 1}, t)));
    const auto at = [&](int a, int b) {
        const auto i = static_cast<Eigen::Index>(t.flatten({a, b}));
        return out(i, i).real();
    };
    EXPECT_NEAR(at(1, 1), 0.75 * 0.75, 1e-14);
    EXPECT_NEAR(at(0, 0), 0.25 * 0.25, 1e-14);
    EXPECT_NEAR(at(0, 1), 0.25 * 0.75, 1e-14);
}

TEST(Recovery, CompleteOnValidSpan) {
    for (int g : {1, 2, 3, 5}) {
        TruncationConfig t{40, 1};
        const auto r = recovery_kraus(g, t);
        ASSERT_TRUE(r.valid_span.has_value());
        EXPECT_EQ(r.valid_span->first, 1);
        EXPECT_EQ(r.valid_span->second, (40 / g) * g);
        EXPECT_LT(r.completeness_defect(), 1e-12);
    }
    EXPECT_THROW(recovery_kraus(3, TruncationConfig{5, 1}), ValidationError);
}

TEST(Recovery, MapsShiftedLevelsBackToLattice) {
    TruncationConfig t{12, 1};
    const auto out = apply_kraus(recovery_kraus(4, t), projector(basis_state({6}, t)));
    EXPECT_NEAR(out(8, 8).real(), 1.0, 1e-15);
}

TEST(MixedNoise, TracePreservingAndInterpolates) {
    TruncationConfig t{8, 1};
    const auto rho = projector(basis_state({0}, t).normalized());
    ComplexVector v = ComplexVector::Zero(9);
    v[0] = v[4] = 1.0 / std::sqrt(2.0);
    const auto cat = projector(FockVector(t, v));
    const auto out = mix_apply(cat, 0.5, 0.3, 0.1);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-13);
    const auto deph = dephase_apply(cat, 0.3);
    EXPECT_NEAR(std::abs(mix_apply(cat, 1.0, 0.3, 0.1)(0, 4) - deph(0, 4)), 0.0, 1e-15);
    EXPECT_NEAR(mix_apply(rho, 0.2, 0.3, 0.4)(0, 0).real(), 1.0, 1e-15);
}

TEST(QubitDephasing, ScalesCoherence) {
    Eigen::Matrix2cd rho;
    rho << 0.5, 0.5, 0.5, 0.5;
    const auto out = qubit_dephasing_apply(rho, 0.2);
    EXPECT_NEAR(out(0, 1).real(), 0.5 * 0.6, 1e-15);
    EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-15);
    EXPECT_THROW(qubit_dephasing_apply(rho, 0.6), ValidationError);
}

TEST(TensorPower, KrausCountMultiplies) {
    const auto ch = amp_damp_kraus(0.2, TruncationConfig{3, 1});
    const auto two = tensor_power(ch, 2);
    EXPECT_EQ(two.kraus.size(), ch.kraus.size() * ch.kraus.size());
    EXPECT_EQ(two.trunc.modes, 2);
    EXPECT_LT(two.completeness_defect(), 1e-12);
}
