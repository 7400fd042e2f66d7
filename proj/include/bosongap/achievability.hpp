#pragma once

#include <vector>

namespace bosongap {

// Per-angle bound on || (e^{-i theta n} - sum_{j<=D} (-i theta n)^j / j!) |psi> ||
// over the binomial codespace.
//   Exact:    2^{-D} sum_j sqrt(C(2D+1, j)) (|theta| g j)^{D+1} / (D+1)!
//   Stirling: same with n^n/n! <= e^n / sqrt(2 pi n) applied at n = D + 1.
enum class TruncationBound { Exact, Stirling };

struct AchievabilityParams {
    int g = 9;
    int d_min = 2;
    int d_max = 50;
    // phi candidates as multiples of sigma, each in (1/2, 15).
    std::vector<double> phi_factors;
    int quad_nodes = 128;
    TruncationBound bound = TruncationBound::Exact;

    void validate() const;
};

// n log-spaced multiples of sigma strictly inside (1/2, 15). Refining n to
// 2n + 1 keeps every old point.
std::vector<double> default_phi_factors(int n = 60);

AchievabilityParams default_achievability_params(int g = 9);

// theta-independent factor c_D with epsilon_bin_theta = c_D |theta|^{D+1}.
double truncation_coefficient(int D, int g, TruncationBound bound = TruncationBound::Exact);

double epsilon_bin_theta(double theta, int D, int g, TruncationBound bound = TruncationBound::Exact);

// 2 * integral_phi^inf p(theta) dtheta = erfc(phi / (sigma sqrt 2)).
double gaussian_tail(double phi, double sigma);

// (1/2) int_{-phi}^{phi} p (eps_theta + 2 eps_theta^2) + 2 int_phi^inf p, with
// Gauss-Legendre on [0, phi] evaluated at quad_nodes and 2 * quad_nodes; a
// relative disagreement above 1e-8 raises ComputationError.
double epsilon_bin(double sigma, int g, int D, double phi, int quad_nodes = 128,
                   TruncationBound bound = TruncationBound::Exact);

struct BinomialOptimum {
    double eps = 0.0;  // raw, may exceed 1
    int D_opt = 0;
    double phi_opt = 0.0;
};

// Exhaustive scan over [d_min, d_max] x phi_factors * sigma; ties go to the
// smaller D, then the smaller phi.
BinomialOptimum optimize_epsilon_bin(double sigma, const AchievabilityParams& params, int jobs = 1);

struct RegionRow {
    double sigma = 0.0;
    double eps_bin_raw = 0.0;
    double eps_bin_clipped = 0.0;
    int D_opt = 0;
    double phi_opt = 0.0;
    double eps_nogo = 0.0;
};

std::vector<RegionRow> region_sweep(const std::vector<double>& sigma_grid, const AchievabilityParams& params,
                                    int jobs = 1);

}  // namespace bosongap
