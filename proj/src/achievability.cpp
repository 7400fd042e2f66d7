#include "bosongap/achievability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bosongap/error.hpp"
#include "bosongap/nogo.hpp"
#include "bosongap/parallel.hpp"
#include "bosongap/special.hpp"

namespace bosongap {

namespace {

void require_D(int D) {
    if (D < 2) throw ValidationError("binomial truncation order D must be >= 2, got " + std::to_string(D));
}

double log_truncation_coefficient(int D, int g, TruncationBound bound) {
    const int n = 2 * D + 1;
    const double order = D + 1.0;
    std::vector<double> terms;
    for (int j = 1; j <= n; ++j) {
        const double log_gj = std::log(static_cast<double>(g) * j);
        double t = 0.5 * log_binomial(n, j) - D * std::numbers::ln2;
        if (bound == TruncationBound::Exact) {
            t += order * log_gj - log_factorial(D + 1);
        } else {
            t += order * (1.0 + log_gj - std::log(order)) - 0.5 * std::log(2.0 * std::numbers::pi * order);
        }
        terms.push_back(t);
    }
    return log_sum_exp(terms);
}

bool agrees(double a, double b) {
    if (std::isinf(a) && std::isinf(b)) return true;
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 || std::abs(a - b) <= 1e-8 * scale;
}

}  // namespace

void AchievabilityParams::validate() const {
    if (g < 1) throw ValidationError("g must be >= 1");
    if (d_min < 2) throw ValidationError("d_min must be >= 2, got " + std::to_string(d_min));
    if (d_max < d_min) throw ValidationError("d_max must be >= d_min");
    if (phi_factors.empty()) throw ValidationError("phi grid is empty");
    for (double f : phi_factors) {
        if (!(f > 0.5 && f < 15.0)) {
            std::ostringstream os;
            os << "phi factor " << f << " lies outside (1/2, 15)";
            throw ValidationError(os.str());
        }
    }
    if (quad_nodes < 8) throw ValidationError("quad_nodes must be >= 8");
}

std::vector<double> default_phi_factors(int n) {
    if (n < 1) throw ValidationError("phi grid needs at least one point");
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(0.5 * std::pow(30.0, (i + 1.0) / (n + 1.0)));
    return out;
}

AchievabilityParams default_achievability_params(int g) {
    AchievabilityParams p;
    p.g = g;
    p.phi_factors = default_phi_factors();
    return p;
}

double truncation_coefficient(int D, int g, TruncationBound bound) {
    require_D(D);
    if (g < 1) throw ValidationError("g must be >= 1");
    return std::exp(log_truncation_coefficient(D, g, bound));
}

double epsilon_bin_theta(double theta, int D, int g, TruncationBound bound) {
    require_D(D);
    if (g < 1) throw ValidationError("g must be >= 1");
    if (theta == 0.0) return 0.0;
    return std::exp(log_truncation_coefficient(D, g, bound) + (D + 1.0) * std::log(std::abs(theta)));
}

double gaussian_tail(double phi, double sigma) {
    if (!(phi > 0.0)) throw ValidationError("phi must be > 0");
    if (!(sigma > 0.0)) throw ValidationError("sigma must be > 0");
    return std::erfc(phi / (sigma * std::numbers::sqrt2));
}

namespace {

// epsilon_bin with phi = factor * sigma, integrated in t = theta / sigma so
// sigma enters only through sigma^{D+1}.
double epsilon_bin_scaled(double sigma, int g, int D, double factor, int quad_nodes, TruncationBound bound) {
    const double log_c = log_truncation_coefficient(D, g, bound) + (D + 1.0) * std::log(sigma);
    const double order = D + 1.0;
    const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi);

    // The integrand is even in theta: fold [-phi, phi] onto [0, phi], which
    // cancels the leading 1/2.
    auto integral = [&](int n) {
        const QuadratureRule& rule = gauss_legendre_cached(n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = 0.5 * factor * (rule.nodes[i] + 1.0);
            const double log_p = log_norm - 0.5 * t * t;
            const double log_eps = log_c + order * std::log(t);
            const double f = std::exp(log_eps + log_p) + 2.0 * std::exp(2.0 * log_eps + log_p);
            acc += 0.5 * factor * rule.weights[i] * f;
        }
        return acc;
    };
    const double tail = std::erfc(factor / std::numbers::sqrt2);
    const double coarse = integral(quad_nodes) + tail;
    const double fine = integral(2 * quad_nodes) + tail;
    if (!agrees(coarse, fine)) {
        std::ostringstream os;
        os.precision(17);
        os << "epsilon_bin quadrature did not converge (sigma=" << sigma << ", g=" << g << ", D=" << D
           << ", phi=" << factor * sigma << "): " << quad_nodes << " nodes -> " << coarse << ", "
           << 2 * quad_nodes << " nodes -> " << fine;
        throw ComputationError(os.str());
    }
    return fine;
}

}  // namespace

double epsilon_bin(double sigma, int g, int D, double phi, int quad_nodes, TruncationBound bound) {
    require_D(D);
    if (g < 1) throw ValidationError("g must be >= 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be finite and > 0");
    if (!(phi > 0.0) || !std::isfinite(phi)) throw ValidationError("phi must be finite and > 0");
    if (quad_nodes < 8) throw ValidationError("quad_nodes must be >= 8");
    return epsilon_bin_scaled(sigma, g, D, phi / sigma, quad_nodes, bound);
}

BinomialOptimum optimize_epsilon_bin(double sigma, const AchievabilityParams& params, int jobs) {
    params.validate();
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be finite and > 0");
    std::vector<double> factors = params.phi_factors;
    std::sort(factors.begin(), factors.end());
    const auto n_d = static_cast<std::size_t>(params.d_max - params.d_min + 1);
    std::vector<BinomialOptimum> per_d(n_d);
    parallel_for(n_d, jobs, [&](std::size_t i) {
        const int D = params.d_min + static_cast<int>(i);
        BinomialOptimum best{std::numeric_limits<double>::infinity(), D, sigma * factors.front()};
        bool first = true;
        for (double f : factors) {
            const double eps = epsilon_bin_scaled(sigma, params.g, D, f, params.quad_nodes, params.bound);
            if (first || eps < best.eps) best = {eps, D, f * sigma};
            first = false;
        }
        per_d[i] = best;
    });
    BinomialOptimum best = per_d.front();
    for (const auto& cand : per_d) {
        if (cand.eps < best.eps) best = cand;
    }
    return best;
}

std::vector<RegionRow> region_sweep(const std::vector<double>& sigma_grid, const AchievabilityParams& params,
                                    int jobs) {
    params.validate();
    std::vector<RegionRow> rows(sigma_grid.size());
    parallel_for(sigma_grid.size(), jobs, [&](std::size_t i) {
        const double sigma = sigma_grid[i];
        const BinomialOptimum opt = optimize_epsilon_bin(sigma, params, 1);
        rows[i] = {sigma, opt.eps, std::min(opt.eps, 1.0), opt.D_opt, opt.phi_opt,
                   epsilon_g_sigma(params.g, sigma, 1).value};
    });
    return rows;
}

}  // namespace bosongap
