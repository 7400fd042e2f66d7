#include "bosongap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bosongap/channels.hpp"
#include "bosongap/error.hpp"
#include "bosongap/parallel.hpp"
#include "bosongap/special.hpp"

namespace bosongap {

namespace {

void require_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os << name << " must lie in [0, 1], got " << x;
        throw ValidationError(os.str());
    }
}

void require_gap(int g) {
    if (g < 1) throw ValidationError("g must be >= 1, got " + std::to_string(g));
}

}  // namespace

double p_from_sigma(int g, double sigma) {
    require_gap(g);
    if (!(sigma >= 0.0)) throw ValidationError("sigma must be >= 0");
    const double gs = g * sigma;
    return -0.5 * std::expm1(-0.5 * gs * gs);
}

double xi_closed_form(int g, double gamma) {
    require_gap(g);
    require_unit(gamma, "gamma");
    if (gamma == 0.0) return 1.0;
    if (gamma == 1.0) return 0.0;
    const double log_keep = std::log1p(-gamma);
    const double log_loss = std::log(gamma);
    std::vector<double> terms;
    for (int k = 0; k < g; ++k) {
        terms.push_back(0.5 * (log_binomial(g, k) + log_binomial(2 * g, k)) + (1.5 * g - k) * log_keep +
                        k * log_loss);
    }
    return std::exp(log_sum_exp(terms));
}

double q_from_gamma(int g, double gamma) { return 0.5 * (1.0 - xi_closed_form(g, gamma)); }

EffectiveDephasing effective_dephasing(int g, double lambda, double sigma, double gamma) {
    require_unit(lambda, "lambda");
    EffectiveDephasing e;
    e.p = p_from_sigma(g, sigma);
    e.xi = xi_closed_form(g, gamma);
    e.q = 0.5 * (1.0 - e.xi);
    e.r = lambda * e.p + (1.0 - lambda) * e.q;
    const double gs = g * sigma;
    e.contrast = lambda * std::exp(-0.5 * gs * gs) + (1.0 - lambda) * e.xi;
    return e;
}

double hashing_rate(double r) {
    require_unit(r, "r");
    return hashing_rate_contrast(std::abs(1.0 - 2.0 * r));
}

double hashing_rate_contrast(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw ValidationError("contrast must lie in [0, 1]");
    if (c == 1.0) return 1.0;
    if (c > 0.5) return (c * std::atanh(c) + 0.5 * std::log1p(-c * c)) / kNatsPerBit;
    // Every term is positive and nondecreasing in c.
    const double c2 = c * c;
    double power = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 40; ++k) {
        power *= c2;
        sum += power / (2.0 * k * (2.0 * k - 1.0));
    }
    return sum / kNatsPerBit;
}

double coherent_info_diag(double p, double r) {
    if (!(p >= 0.0 && p <= 0.5)) throw ValidationError("p must lie in [0, 1/2]");
    require_unit(r, "r");
    // The output equals the input; the environment state is
    // [[1-p, c], [c, p]] with c = sqrt(p(1-p)) (1-2r).
    const double z = 1.0 - 2.0 * r;
    const double c2 = p * (1.0 - p) * z * z;
    const double d = 1.0 - 2.0 * p;
    const double s = std::sqrt(d * d + 4.0 * c2);
    const double lam = std::clamp(0.5 * (1.0 - s), 0.0, 0.5);
    return binary_entropy_nats(r) - binary_entropy_nats(lam);
}

ArgmaxCheck verify_argmax_half(double p, int grid_size) {
    if (!(p > 0.0 && p < 0.5)) throw ValidationError("p must lie in (0, 1/2)");
    if (grid_size < 3) throw ValidationError("grid_size must be >= 3");
    ArgmaxCheck out;
    out.grid_step = 1.0 / (grid_size - 1);
    out.max_I = -1.0;
    for (int i = 0; i < grid_size; ++i) {
        const double r = static_cast<double>(i) / (grid_size - 1);
        const double v = coherent_info_diag(p, r);
        if (v > out.max_I) {
            out.max_I = v;
            out.argmax_r = r;
        }
    }
    const double h = std::ldexp(1.0, -14);
    out.gradient_at_half = (coherent_info_diag(p, 0.5 + h) - coherent_info_diag(p, 0.5 - h)) / (2.0 * h);
    out.holds = std::abs(out.gradient_at_half) < 1e-8 && std::abs(out.argmax_r - 0.5) <= out.grid_step;
    return out;
}

ReductionReport verify_reduction(int g, double gamma, const TruncationConfig& trunc) {
    require_gap(g);
    require_unit(gamma, "gamma");
    trunc.validate();
    if (trunc.modes != 1) throw ValidationError("verify_reduction works on a single mode");
    if (trunc.n_max < 2 * g) {
        throw ValidationError("n_max must be >= 2g = " + std::to_string(2 * g));
    }
    const KrausChannel recovery = recovery_kraus(g, trunc);
    const KrausChannel damping = amp_damp_kraus(gamma, trunc);

    ReductionReport rep;
    rep.g = g;
    rep.gamma = gamma;
    rep.completeness_defect = recovery.completeness_defect();
    if (rep.completeness_defect > 1e-12) {
        std::ostringstream os;
        os << "recovery map completeness defect " << rep.completeness_defect << " exceeds 1e-12";
        throw ComputationError(os.str());
    }

    const auto dim = static_cast<Eigen::Index>(trunc.levels());
    auto compose = [&](const ComplexMatrix& x) {
        ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
        for (const auto& a : damping.kraus) {
            const ComplexMatrix damped = a * x * a.adjoint();
            for (const auto& rk : recovery.kraus) out += rk * damped * rk.adjoint();
        }
        return out;
    };
    auto unit = [&](int i, int j) {
        ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
        m(i, j) = 1.0;
        return m;
    };
    auto restrict = [&](const ComplexMatrix& m) {
        Eigen::Matrix2d s;
        s << m(g, g).real(), m(g, 2 * g).real(), m(2 * g, g).real(), m(2 * g, 2 * g).real();
        return s;
    };

    const ComplexMatrix off = compose(unit(g, 2 * g));
    rep.xi_matrix = off(g, 2 * g).real();
    rep.xi_matrix_imag = off(g, 2 * g).imag();
    rep.xi_closed = xi_closed_form(g, gamma);
    rep.error = std::abs(off(g, 2 * g) - std::complex<double>(rep.xi_closed, 0.0));
    ComplexMatrix rest = off;
    rest(g, 2 * g) = 0.0;
    rep.leakage = rest.cwiseAbs().maxCoeff();
    rep.image_g = restrict(compose(unit(g, g)));
    rep.image_2g = restrict(compose(unit(2 * g, 2 * g)));
    rep.holds = rep.error <= 1e-12 && rep.leakage <= 1e-12;
    return rep;
}

std::vector<CapacityRow> capacity_sweep(int g, double lambda, const std::vector<double>& sigma_grid,
                                        const std::vector<double>& gamma_grid, int jobs) {
    require_gap(g);
    require_unit(lambda, "lambda");
    for (double s : sigma_grid) {
        if (!(s >= 0.0) || !std::isfinite(s)) throw ValidationError("sigma grid values must be finite and >= 0");
    }
    for (double gm : gamma_grid) require_unit(gm, "gamma");
    const std::size_t n_gamma = gamma_grid.size();
    std::vector<CapacityRow> rows(sigma_grid.size() * n_gamma);
    parallel_for(rows.size(), jobs, [&](std::size_t idx) {
        const double sigma = sigma_grid[idx / n_gamma];
        const double gamma = gamma_grid[idx % n_gamma];
        const EffectiveDephasing e = effective_dephasing(g, lambda, sigma, gamma);
        rows[idx] = {g, lambda, sigma, gamma, e.p, e.q, e.r, std::max(0.0, hashing_rate_contrast(e.contrast))};
    });
    return rows;
}

}  // namespace bosongap
