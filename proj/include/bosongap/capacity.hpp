#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bosongap/fock.hpp"

namespace bosongap {

// Nats to bits: divide by ln 2.
inline constexpr double kNatsPerBit = 0.69314718055994530942;

// Qubit dephasing parameters induced on the code {|g>, |2g>}.
struct EffectiveDephasing {
    double p = 0.0;   // from Gaussian dephasing, 1 - 2p = exp(-g^2 sigma^2 / 2)
    double q = 0.0;   // from amplitude damping followed by recovery, 1 - 2q = xi
    double r = 0.0;   // lambda p + (1 - lambda) q
    double xi = 1.0;  // off-diagonal survival factor under damping + recovery
    double contrast = 1.0;  // 1 - 2r, accumulated without cancellation
};

double p_from_sigma(int g, double sigma);
double xi_closed_form(int g, double gamma);
double q_from_gamma(int g, double gamma);
EffectiveDephasing effective_dephasing(int g, double lambda, double sigma, double gamma);

// 1 + r log2 r + (1 - r) log2(1 - r).
double hashing_rate(double r);

// The same rate as a function of c = 1 - 2r in [0, 1]:
// (1/ln 2) sum_{k>=1} c^{2k} / (2k (2k - 1)).
double hashing_rate_contrast(double c);

// I_coh in nats of the qubit dephasing channel with flip probability p on
// the diagonal input diag(1 - r, r).
double coherent_info_diag(double p, double r);

struct ArgmaxCheck {
    double argmax_r = 0.0;
    double max_I = 0.0;
    double gradient_at_half = 0.0;
    double grid_step = 0.0;
    bool holds = false;  // |gradient| < 1e-8 and argmax within one cell of 1/2
};

ArgmaxCheck verify_argmax_half(double p, int grid_size = 10001);

struct ReductionReport {
    int g = 1;
    double gamma = 0.0;
    double xi_matrix = 0.0;        // real part of the (g, 2g) entry of the image of |g><2g|
    double xi_matrix_imag = 0.0;
    double xi_closed = 0.0;
    double error = 0.0;            // |xi_matrix - xi_closed|
    double leakage = 0.0;          // largest other entry in the image of |g><2g|
    Eigen::Matrix2d image_g;       // image of |g><g| restricted to span{|g>, |2g>}
    Eigen::Matrix2d image_2g;      // image of |2g><2g| restricted to the same span
    double completeness_defect = 0.0;
    bool holds = false;            // error <= 1e-12 and leakage <= 1e-12
};

// Composes amplitude damping with the gap-g recovery map on a single mode.
// Throws ComputationError when the recovery map fails its completeness check.
ReductionReport verify_reduction(int g, double gamma, const TruncationConfig& trunc);

struct CapacityRow {
    int g = 1;
    double lambda = 0.5;
    double sigma = 0.0;
    double gamma = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    double Q_lower = 1.0;
};

// Rows ordered sigma-major, gamma-minor.
std::vector<CapacityRow> capacity_sweep(int g, double lambda, const std::vector<double>& sigma_grid,
                                        const std::vector<double>& gamma_grid, int jobs = 1);

}  // namespace bosongap
