#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bosongap/fock.hpp"

namespace bosongap {

// CPTP map in Kraus form on a truncated Fock space. When valid_span is set,
// completeness sum_k K_k^dagger K_k = 1 only holds on the single-mode Fock
// levels [first, second]; otherwise it holds on the whole truncated space.
struct KrausChannel {
    std::vector<ComplexMatrix> kraus;
    std::string label;
    TruncationConfig trunc;
    std::optional<std::pair<int, int>> valid_span;

    ComplexMatrix completeness() const;
    // max |(sum K^dagger K - 1)_{ij}| over i, j in the valid span.
    double completeness_defect() const;
};

struct DephasingParams {
    double sigma = 0.0;
    int g = 1;
    int modes = 1;

    void validate() const;
};

// Gaussian dephasing applied exactly: entry (j, k) scaled by
// exp(-|j - k|^2 sigma^2 / 2), |.| the Euclidean multi-index distance.
HermitianOperator dephase_apply(const HermitianOperator& rho, double sigma);

enum class QuadratureMethod { Auto, GaussHermite, WrappedTrapezoid };

// Per-mode average of e^{-i theta n} (.) e^{i theta n} over theta ~ N(0, sigma^2),
// returned as c[d] = sum_l w_l exp(-i theta_l d) for d = 0..max_shift.
std::vector<std::complex<double>> dephasing_kernel_by_quadrature(double sigma, int max_shift, int nodes,
                                                                 QuadratureMethod method = QuadratureMethod::Auto);

// The rotation-average form of the same channel, evaluated by quadrature.
// Auto picks the periodic trapezoid rule on the wrapped normal when
// (nodes - n_max) * sigma >= 8, Gauss-Hermite otherwise.
HermitianOperator dephase_by_quadrature(const HermitianOperator& rho, double sigma, int quad_nodes = 96,
                                        QuadratureMethod method = QuadratureMethod::Auto);

// Bosonic amplitude damping, Kraus operators A_0..A_{n_max}; single mode.
KrausChannel amp_damp_kraus(double gamma, const TruncationConfig& trunc);

HermitianOperator apply_kraus(const KrausChannel& channel, const HermitianOperator& rho);

// Applies a single-mode channel independently to every mode of rho.
HermitianOperator apply_kraus_each_mode(const KrausChannel& single_mode, const HermitianOperator& rho);

// lambda * E_sigma + (1 - lambda) * A_gamma on every mode.
HermitianOperator mix_apply(const HermitianOperator& rho, double lambda, double sigma, double gamma);

// R_j = sum_{k>=1} |kg><kg - j|, j = 0..g-1. Complete on Fock levels
// 1..floor(n_max/g)*g, which is recorded as valid_span.
KrausChannel recovery_kraus(int g, const TruncationConfig& trunc);

// (1-p) rho + p Z rho Z.
Eigen::Matrix2cd qubit_dephasing_apply(const Eigen::Matrix2cd& rho, double p);

KrausChannel tensor_power(const KrausChannel& channel, int n);

}  // namespace bosongap
