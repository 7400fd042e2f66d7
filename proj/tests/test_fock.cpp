#include <gtest/gtest.h>

#include <cmath>

#include "bosongap/error.hpp"
#include "bosongap/fock.hpp"

using namespace bosongap;

TEST(Truncation, FlattenRoundTrip) {
    TruncationConfig t{4, 3};
    EXPECT_EQ(t.dim(), 125u);
    for (std::size_t i = 0; i < t.dim(); ++i) EXPECT_EQ(t.flatten(t.unflatten(i)), i);
    EXPECT_EQ(t.flatten({0, 0, 1}), 1u);
    EXPECT_EQ(t.flatten({1, 0, 0}), 25u);
}

TEST(Truncation, RejectsBadConfigs) {
    EXPECT_THROW((TruncationConfig{0, 1}.validate()), ValidationError);
    EXPECT_THROW((TruncationConfig{3, 0}.validate()), ValidationError);
    TruncationConfig big{99, 3};
    EXPECT_THROW(big.dim(), ValidationError);
    TruncationConfig t{3, 2};
    EXPECT_THROW(t.flatten({4, 0}), ValidationError);
    EXPECT_THROW(t.flatten({1}), ValidationError);
}

TEST(FockVector, BasisStatesAreOrthonormal) {
    TruncationConfig t{5, 2};
    const auto a = basis_state({1, 2}, t);
    const auto b = basis_state({2, 1}, t);
    EXPECT_DOUBLE_EQ(a.norm(), 1.0);
    EXPECT_EQ(inner_product(a, b), std::complex<double>(0.0, 0.0));
    EXPECT_EQ(inner_product(a, a), std::complex<double>(1.0, 0.0));
    EXPECT_EQ(a.at({1, 2}), std::complex<double>(1.0, 0.0));
}

TEST(FockVector, MismatchedSpacesThrow) {
    const auto a = basis_state({1}, TruncationConfig{3, 1});
    const auto b = basis_state({1}, TruncationConfig{4, 1});
    EXPECT_THROW(inner_product(a, b), ValidationError);
}

TEST(HermitianOperator, RejectsNonHermitian) {
    TruncationConfig t{1, 1};
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 0.0, 1.0;
    EXPECT_THROW(HermitianOperator(t, m), ValidationError);
}

TEST(TraceNorm, OrthogonalProjectorsGiveTwo) {
    TruncationConfig t{6, 1};
    const auto a = basis_state({0}, t);
    const auto b = basis_state({3}, t);
    EXPECT_NEAR(trace_norm(projector(a) - projector(b)), 2.0, 1e-14);
}

TEST(TraceNorm, PureStateFormula) {
    TruncationConfig t{3, 1};
    ComplexVector v(4);
    v << 0.6, std::complex<double>(0.0, 0.8), 0.0, 0.0;
    const FockVector psi(t, v);
    const auto phi = basis_state({0}, t);
    const double overlap2 = std::norm(inner_product(psi, phi));
    EXPECT_NEAR(trace_norm(projector(psi) - projector(phi)), 2.0 * std::sqrt(1.0 - overlap2), 1e-14);
    EXPECT_NEAR(trace_norm(outer_difference(psi, phi)), 2.0 * std::sqrt(1.0 - overlap2), 1e-14);
}

TEST(Eigenvalues, DescendingAndTraceConsistent) {
    TruncationConfig t{3, 1};
    ComplexMatrix m = ComplexMatrix::Random(4, 4);
    m = (m + m.adjoint()).eval();
    const HermitianOperator h(t, m);
    const auto ev = hermitian_eigenvalues(h);
    for (Eigen::Index i = 1; i < ev.size(); ++i) EXPECT_GE(ev[i - 1], ev[i]);
    EXPECT_NEAR(ev.sum(), h.trace().real(), 1e-12);
}

TEST(Eigenvalues, LongDoubleInstantiation) {
    TruncationConfig t{2, 1};
    const auto a = basis_state<long double>({0}, t);
    const auto b = basis_state<long double>({2}, t);
    EXPECT_NEAR(static_cast<double>(trace_norm(projector(a) - projector(b))), 2.0, 1e-15);
}

TEST(Tensor, ProductStructure) {
    TruncationConfig t{2, 1};
    const auto a = basis_state({1}, t);
    const auto b = basis_state({2}, t);
    const auto ab = tensor(a, b);
    EXPECT_EQ(ab.trunc().modes, 2);
    EXPECT_EQ(ab.at({1, 2}), std::complex<double>(1.0, 0.0));
    const auto op = tensor_op(projector(a), projector(b));
    EXPECT_EQ(op(5, 5), std::complex<double>(1.0, 0.0));
    EXPECT_THROW(tensor(a, basis_state({1}, TruncationConfig{3, 1})), ValidationError);
}
