#pragma once

// Truncated Fock-space linear algebra. Multi-mode states are flattened
// row-major over the multi-index (k_1, ..., k_N), the last mode varying
// fastest, so |k_1 ... k_N> sits at sum_i k_i (n_max+1)^(N-1-i).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bosongap/error.hpp"

namespace bosongap {

using MultiIndex = std::vector<int>;

struct TruncationConfig {
    int n_max = 1;
    int modes = 1;
    double tol = 1e-10;
    std::size_t dim_cap = 4096;

    void validate() const {
        if (n_max < 1) throw ValidationError("n_max must be >= 1, got " + std::to_string(n_max));
        if (modes < 1) throw ValidationError("modes must be >= 1, got " + std::to_string(modes));
        if (!(tol > 0.0 && tol <= 1e-3)) {
            std::ostringstream os;
            os << "tol must lie in (0, 1e-3], got " << tol;
            throw ValidationError(os.str());
        }
    }

    std::size_t levels() const { return static_cast<std::size_t>(n_max) + 1; }

    // Hilbert-space dimension (n_max+1)^modes, refused above dim_cap.
    std::size_t dim() const {
        validate();
        std::size_t d = 1;
        for (int i = 0; i < modes; ++i) {
            if (d > dim_cap / levels()) {
                std::ostringstream os;
                os << "dimension (" << levels() << ")^" << modes << " exceeds cap " << dim_cap
                   << "; raise dim_cap to override";
                throw ValidationError(os.str());
            }
            d *= levels();
        }
        if (d > dim_cap) {
            std::ostringstream os;
            os << "dimension " << d << " exceeds cap " << dim_cap << "; raise dim_cap to override";
            throw ValidationError(os.str());
        }
        return d;
    }

    std::size_t flatten(const MultiIndex& k) const {
        if (static_cast<int>(k.size()) != modes) {
            throw ValidationError("multi-index has " + std::to_string(k.size()) + " components, expected " +
                                  std::to_string(modes));
        }
        std::size_t flat = 0;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] < 0 || k[i] > n_max) {
                throw ValidationError("multi-index component " + std::to_string(i) + " = " + std::to_string(k[i]) +
                                      " outside [0, " + std::to_string(n_max) + "]");
            }
            flat = flat * levels() + static_cast<std::size_t>(k[i]);
        }
        return flat;
    }

    MultiIndex unflatten(std::size_t flat) const {
        MultiIndex k(static_cast<std::size_t>(modes));
        for (int i = modes - 1; i >= 0; --i) {
            k[static_cast<std::size_t>(i)] = static_cast<int>(flat % levels());
            flat /= levels();
        }
        return k;
    }
};

inline bool same_space(const TruncationConfig& a, const TruncationConfig& b) {
    return a.n_max == b.n_max && a.modes == b.modes;
}

inline void require_same_space(const TruncationConfig& a, const TruncationConfig& b, const char* what) {
    if (!same_space(a, b)) {
        std::ostringstream os;
        os << what << ": truncation mismatch (n_max " << a.n_max << ", modes " << a.modes << ") vs (n_max "
           << b.n_max << ", modes " << b.modes << ")";
        throw ValidationError(os.str());
    }
}

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
class BasicFockVector {
public:
    using Scalar = std::complex<Real>;
    using Amplitudes = ComplexVectorT<Real>;

    explicit BasicFockVector(TruncationConfig trunc)
        : trunc_(std::move(trunc)), amps_(Amplitudes::Zero(static_cast<Eigen::Index>(trunc_.dim()))) {}

    BasicFockVector(TruncationConfig trunc, Amplitudes amps) : trunc_(std::move(trunc)), amps_(std::move(amps)) {
        const auto expected = static_cast<Eigen::Index>(trunc_.dim());
        if (amps_.size() != expected) {
            throw ValidationError("amplitude vector has length " + std::to_string(amps_.size()) + ", expected " +
                                  std::to_string(expected));
        }
        if (!amps_.allFinite()) throw ValidationError("amplitude vector has non-finite entries");
    }

    const TruncationConfig& trunc() const { return trunc_; }
    const Amplitudes& amplitudes() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

    Scalar operator[](Eigen::Index flat) const { return amps_[flat]; }
    Scalar at(const MultiIndex& k) const { return amps_[static_cast<Eigen::Index>(trunc_.flatten(k))]; }

    Real norm() const { return amps_.norm(); }

    BasicFockVector normalized() const {
        const Real n = norm();
        if (!(n > Real(0))) throw ValidationError("cannot normalize a zero vector");
        return BasicFockVector(trunc_, amps_ / n);
    }

private:
    TruncationConfig trunc_;
    Amplitudes amps_;
};

template <typename Real>
Real max_hermitian_asymmetry(const ComplexMatrixT<Real>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
class BasicHermitianOperator {
public:
    using Scalar = std::complex<Real>;
    using Matrix = ComplexMatrixT<Real>;

    BasicHermitianOperator(TruncationConfig trunc, Matrix entries)
        : trunc_(std::move(trunc)), entries_(std::move(entries)) {
        const auto d = static_cast<Eigen::Index>(trunc_.dim());
        if (entries_.rows() != d || entries_.cols() != d) {
            throw ValidationError("operator is " + std::to_string(entries_.rows()) + "x" +
                                  std::to_string(entries_.cols()) + ", expected " + std::to_string(d) + "x" +
                                  std::to_string(d));
        }
        const Real scale = std::max(Real(1), entries_.cwiseAbs().maxCoeff());
        const Real asym = max_hermitian_asymmetry<Real>(entries_);
        if (!(asym <= Real(trunc_.tol) * scale)) {
            std::ostringstream os;
            os << "operator is not Hermitian: max |H - H^dagger| = " << static_cast<double>(asym);
            throw ValidationError(os.str());
        }
    }

    static BasicHermitianOperator zero(const TruncationConfig& trunc) {
        const auto d = static_cast<Eigen::Index>(trunc.dim());
        return BasicHermitianOperator(trunc, Matrix::Zero(d, d));
    }

    const TruncationConfig& trunc() const { return trunc_; }
    const Matrix& entries() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }
    Scalar operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
    Scalar trace() const { return entries_.trace(); }

private:
    TruncationConfig trunc_;
    Matrix entries_;
};

template <typename Real>
BasicHermitianOperator<Real> operator+(const BasicHermitianOperator<Real>& a, const BasicHermitianOperator<Real>& b) {
    require_same_space(a.trunc(), b.trunc(), "operator+");
    return {a.trunc(), a.entries() + b.entries()};
}

template <typename Real>
BasicHermitianOperator<Real> operator-(const BasicHermitianOperator<Real>& a, const BasicHermitianOperator<Real>& b) {
    require_same_space(a.trunc(), b.trunc(), "operator-");
    return {a.trunc(), a.entries() - b.entries()};
}

template <typename Real>
BasicHermitianOperator<Real> operator*(Real s, const BasicHermitianOperator<Real>& a) {
    return {a.trunc(), a.entries() * s};
}

template <typename Real = double>
BasicFockVector<Real> basis_state(const MultiIndex& k, const TruncationConfig& trunc) {
    BasicFockVector<Real> zero(trunc);
    auto amps = zero.amplitudes();
    amps[static_cast<Eigen::Index>(trunc.flatten(k))] = std::complex<Real>(1);
    return {trunc, std::move(amps)};
}

// Conjugate-linear in the first argument.
template <typename Real>
std::complex<Real> inner_product(const BasicFockVector<Real>& a, const BasicFockVector<Real>& b) {
    require_same_space(a.trunc(), b.trunc(), "inner_product");
    return a.amplitudes().dot(b.amplitudes());
}

template <typename Real>
BasicHermitianOperator<Real> projector(const BasicFockVector<Real>& a) {
    return {a.trunc(), a.amplitudes() * a.amplitudes().adjoint()};
}

// |a><a| - |b><b| for unit vectors a, b.
template <typename Real>
BasicHermitianOperator<Real> outer_difference(const BasicFockVector<Real>& a, const BasicFockVector<Real>& b) {
    require_same_space(a.trunc(), b.trunc(), "outer_difference");
    const Real na = a.norm();
    const Real nb = b.norm();
    const Real tol = std::max(Real(a.trunc().tol), Real(64) * std::numeric_limits<Real>::epsilon());
    if (std::abs(na - Real(1)) > tol || std::abs(nb - Real(1)) > tol) {
        std::ostringstream os;
        os << "outer_difference needs unit vectors, got norms " << static_cast<double>(na) << " and "
           << static_cast<double>(nb);
        throw ValidationError(os.str());
    }
    ComplexMatrixT<Real> m = a.amplitudes() * a.amplitudes().adjoint() - b.amplitudes() * b.amplitudes().adjoint();
    return {a.trunc(), std::move(m)};
}

// Eigenvalues of a Hermitian matrix in descending order.
template <typename Real>
RealVectorT<Real> hermitian_eigenvalues(const ComplexMatrixT<Real>& m, Real tol) {
    if (m.rows() != m.cols()) throw ValidationError("hermitian_eigenvalues needs a square matrix");
    if (m.rows() == 0) return RealVectorT<Real>();
    const Real scale = std::max(Real(1), m.cwiseAbs().maxCoeff());
    const Real asym = max_hermitian_asymmetry<Real>(m);
    if (!(asym <= tol * scale)) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max asymmetry " << static_cast<double>(asym);
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ComputationError("Hermitian eigensolver did not converge");
    RealVectorT<Real> ascending = solver.eigenvalues();
    return ascending.reverse();
}

template <typename Real>
RealVectorT<Real> hermitian_eigenvalues(const BasicHermitianOperator<Real>& h) {
    return hermitian_eigenvalues<Real>(h.entries(), Real(h.trunc().tol));
}

// Sum of absolute eigenvalues.
template <typename Real>
Real trace_norm(const BasicHermitianOperator<Real>& h) {
    return hermitian_eigenvalues(h).cwiseAbs().sum();
}

namespace detail {

inline TruncationConfig joined(const TruncationConfig& a, const TruncationConfig& b, const char* what) {
    if (a.n_max != b.n_max) {
        throw ValidationError(std::string(what) + ": cutoffs differ (" + std::to_string(a.n_max) + " vs " +
                              std::to_string(b.n_max) + ")");
    }
    TruncationConfig out = a;
    out.modes = a.modes + b.modes;
    out.tol = std::max(a.tol, b.tol);
    out.dim_cap = std::min(a.dim_cap, b.dim_cap);
    out.dim();
    return out;
}

}  // namespace detail

template <typename Real>
BasicFockVector<Real> tensor(const BasicFockVector<Real>& a, const BasicFockVector<Real>& b) {
    const TruncationConfig out = detail::joined(a.trunc(), b.trunc(), "tensor");
    ComplexVectorT<Real> amps(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        amps.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
    }
    return {out, std::move(amps)};
}

template <typename Real>
BasicHermitianOperator<Real> tensor_op(const BasicHermitianOperator<Real>& a, const BasicHermitianOperator<Real>& b) {
    const TruncationConfig out = detail::joined(a.trunc(), b.trunc(), "tensor_op");
    const Eigen::Index da = a.dim();
    const Eigen::Index db = b.dim();
    ComplexMatrixT<Real> m(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = a(i, j) * b.entries();
    }
    return {out, std::move(m)};
}

using FockVector = BasicFockVector<double>;
using HermitianOperator = BasicHermitianOperator<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

}  // namespace bosongap
