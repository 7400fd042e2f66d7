#include "bosongap/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bosongap/special.hpp"

namespace bosongap {

namespace {

void require_sigma(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        std::ostringstream os;
        os << "sigma must be finite and >= 0, got " << sigma;
        throw ValidationError(os.str());
    }
}

void require_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << name << " must lie in [0, 1], got " << v;
        throw ValidationError(os.str());
    }
}

std::vector<MultiIndex> all_indices(const TruncationConfig& trunc) {
    const std::size_t d = trunc.dim();
    std::vector<MultiIndex> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) out.push_back(trunc.unflatten(i));
    return out;
}

// Scales entry (j, k) by factor[mode][|j_m - k_m|] for the listed modes.
ComplexMatrix scale_by_mode_kernel(const HermitianOperator& rho, const std::vector<std::complex<double>>& kernel,
                                   int only_mode = -1) {
    const auto idx = all_indices(rho.trunc());
    ComplexMatrix out = rho.entries();
    const auto d = static_cast<Eigen::Index>(idx.size());
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            std::complex<double> f = 1.0;
            for (int m = 0; m < rho.trunc().modes; ++m) {
                if (only_mode >= 0 && m != only_mode) continue;
                const int diff = idx[j][m] - idx[k][m];
                const auto c = kernel[static_cast<std::size_t>(std::abs(diff))];
                f *= diff >= 0 ? c : std::conj(c);
            }
            out(j, k) *= f;
        }
    }
    return out;
}

ComplexMatrix embed_on_mode(const ComplexMatrix& op, int mode, const TruncationConfig& trunc) {
    const auto idx = all_indices(trunc);
    const auto d = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
        MultiIndex target = idx[col];
        const int src = idx[col][mode];
        for (Eigen::Index r = 0; r < op.rows(); ++r) {
            const auto v = op(r, src);
            if (v == std::complex<double>(0.0)) continue;
            target[mode] = static_cast<int>(r);
            out(static_cast<Eigen::Index>(trunc.flatten(target)), col) += v;
        }
    }
    return out;
}

HermitianOperator apply_on_mode(const KrausChannel& single_mode, const HermitianOperator& rho, int mode) {
    ComplexMatrix acc = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& k : single_mode.kraus) {
        const ComplexMatrix big = embed_on_mode(k, mode, rho.trunc());
        acc += big * rho.entries() * big.adjoint();
    }
    return {rho.trunc(), std::move(acc)};
}

}  // namespace

ComplexMatrix KrausChannel::completeness() const {
    const auto d = static_cast<Eigen::Index>(trunc.dim());
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& k : kraus) sum += k.adjoint() * k;
    return sum;
}

double KrausChannel::completeness_defect() const {
    const ComplexMatrix c = completeness();
    const auto d = c.rows();
    Eigen::Index lo = 0;
    Eigen::Index hi = d - 1;
    if (valid_span) {
        lo = valid_span->first;
        hi = valid_span->second;
    }
    double worst = 0.0;
    for (Eigen::Index i = lo; i <= hi; ++i) {
        for (Eigen::Index j = lo; j <= hi; ++j) {
            const std::complex<double> target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(c(i, j) - target));
        }
    }
    return worst;
}

void DephasingParams::validate() const {
    require_sigma(sigma);
    if (g < 1) throw ValidationError("gap g must be >= 1");
    if (modes < 1) throw ValidationError("modes must be >= 1");
}

HermitianOperator dephase_apply(const HermitianOperator& rho, double sigma) {
    require_sigma(sigma);
    const auto idx = all_indices(rho.trunc());
    ComplexMatrix out = rho.entries();
    const auto d = static_cast<Eigen::Index>(idx.size());
    const double half_s2 = 0.5 * sigma * sigma;
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            if (j == k) continue;
            long dist2 = 0;
            for (std::size_t m = 0; m < idx[j].size(); ++m) {
                const long diff = idx[j][m] - idx[k][m];
                dist2 += diff * diff;
            }
            out(j, k) *= std::exp(-half_s2 * static_cast<double>(dist2));
        }
    }
    return {rho.trunc(), std::move(out)};
}

std::vector<std::complex<double>> dephasing_kernel_by_quadrature(double sigma, int max_shift, int nodes,
                                                                 QuadratureMethod method) {
    require_sigma(sigma);
    if (nodes < 16) throw ValidationError("quadrature needs at least 16 nodes, got " + std::to_string(nodes));
    if (max_shift < 0) throw ValidationError("max_shift must be >= 0");
    if (method == QuadratureMethod::Auto) {
        method = (nodes - max_shift) * sigma >= 8.0 ? QuadratureMethod::WrappedTrapezoid
                                                     : QuadratureMethod::GaussHermite;
    }

    std::vector<double> thetas;
    std::vector<double> weights;
    if (method == QuadratureMethod::GaussHermite) {
        // theta = sigma sqrt(2) x turns the normal density into exp(-x^2)/sqrt(pi).
        const QuadratureRule rule = gauss_hermite(nodes);
        for (int i = 0; i < nodes; ++i) {
            thetas.push_back(sigma * std::numbers::sqrt2 * rule.nodes[i]);
            weights.push_back(rule.weights[i] / std::sqrt(std::numbers::pi));
        }
    } else {
        if (!(sigma > 0.0)) throw ValidationError("wrapped trapezoid rule needs sigma > 0");
        // e^{-i theta n} is 2 pi periodic, so integrate over one period against
        // the wrapped normal density.
        const double two_pi = 2.0 * std::numbers::pi;
        const int wraps = static_cast<int>(std::ceil(40.0 * sigma / two_pi)) + 1;
        const double norm = 1.0 / (sigma * std::sqrt(two_pi));
        for (int l = 0; l < nodes; ++l) {
            const double theta = two_pi * l / nodes;
            double density = 0.0;
            for (int w = -wraps; w <= wraps; ++w) {
                const double x = theta + two_pi * w;
                density += std::exp(-x * x / (2.0 * sigma * sigma));
            }
            thetas.push_back(theta);
            weights.push_back(two_pi / nodes * norm * density);
        }
    }

    std::vector<std::complex<double>> kernel(static_cast<std::size_t>(max_shift) + 1);
    for (int d = 0; d <= max_shift; ++d) {
        std::complex<double> acc = 0.0;
        for (std::size_t l = 0; l < thetas.size(); ++l) {
            acc += weights[l] * std::polar(1.0, -thetas[l] * d);
        }
        kernel[static_cast<std::size_t>(d)] = acc;
    }
    return kernel;
}

HermitianOperator dephase_by_quadrature(const HermitianOperator& rho, double sigma, int quad_nodes,
                                        QuadratureMethod method) {
    const auto kernel = dephasing_kernel_by_quadrature(sigma, rho.trunc().n_max, quad_nodes, method);
    return {rho.trunc(), scale_by_mode_kernel(rho, kernel)};
}

KrausChannel amp_damp_kraus(double gamma, const TruncationConfig& trunc) {
    require_unit_interval(gamma, "gamma");
    if (trunc.modes != 1) throw ValidationError("amp_damp_kraus builds a single-mode channel");
    const auto d = static_cast<Eigen::Index>(trunc.dim());
    KrausChannel ch{{}, "amplitude_damping", trunc, std::nullopt};
    if (gamma == 0.0) {
        ch.kraus.push_back(ComplexMatrix::Identity(d, d));
        return ch;
    }
    const double log_keep = gamma < 1.0 ? std::log1p(-gamma) : 0.0;
    const double log_loss = std::log(gamma);
    for (int k = 0; k <= trunc.n_max; ++k) {
        ComplexMatrix a = ComplexMatrix::Zero(d, d);
        for (int m = k; m <= trunc.n_max; ++m) {
            double amp = 0.0;
            if (gamma == 1.0) {
                amp = m == k ? 1.0 : 0.0;
            } else {
                amp = std::exp(0.5 * (log_binomial(m, k) + (m - k) * log_keep + k * log_loss));
            }
            a(m - k, m) = amp;
        }
        ch.kraus.push_back(std::move(a));
    }
    return ch;
}

HermitianOperator apply_kraus(const KrausChannel& channel, const HermitianOperator& rho) {
    if (!same_space(channel.trunc, rho.trunc())) {
        throw ValidationError("apply_kraus: channel acts on dimension " + std::to_string(channel.trunc.dim()) +
                              " but rho has dimension " + std::to_string(rho.dim()));
    }
    ComplexMatrix acc = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& k : channel.kraus) acc += k * rho.entries() * k.adjoint();
    return {rho.trunc(), std::move(acc)};
}

HermitianOperator apply_kraus_each_mode(const KrausChannel& single_mode, const HermitianOperator& rho) {
    if (single_mode.trunc.modes != 1 || single_mode.trunc.n_max != rho.trunc().n_max) {
        throw ValidationError("apply_kraus_each_mode needs a single-mode channel with the same cutoff");
    }
    if (rho.trunc().modes == 1) return apply_kraus(single_mode, rho);
    HermitianOperator cur = rho;
    for (int m = 0; m < rho.trunc().modes; ++m) cur = apply_on_mode(single_mode, cur, m);
    return cur;
}

HermitianOperator mix_apply(const HermitianOperator& rho, double lambda, double sigma, double gamma) {
    require_unit_interval(lambda, "lambda");
    require_sigma(sigma);
    TruncationConfig one = rho.trunc();
    one.modes = 1;
    const KrausChannel damp = amp_damp_kraus(gamma, one);
    if (rho.trunc().modes == 1) {
        const HermitianOperator a = dephase_apply(rho, sigma);
        const HermitianOperator b = apply_kraus(damp, rho);
        return {rho.trunc(), lambda * a.entries() + (1.0 - lambda) * b.entries()};
    }
    std::vector<std::complex<double>> mask(static_cast<std::size_t>(rho.trunc().n_max) + 1);
    for (std::size_t dd = 0; dd < mask.size(); ++dd) {
        mask[dd] = std::exp(-0.5 * sigma * sigma * static_cast<double>(dd * dd));
    }
    HermitianOperator cur = rho;
    for (int m = 0; m < rho.trunc().modes; ++m) {
        const ComplexMatrix a = scale_by_mode_kernel(cur, mask, m);
        const HermitianOperator b = apply_on_mode(damp, cur, m);
        cur = HermitianOperator(rho.trunc(), lambda * a + (1.0 - lambda) * b.entries());
    }
    return cur;
}

KrausChannel recovery_kraus(int g, const TruncationConfig& trunc) {
    if (g < 1) throw ValidationError("recovery_kraus needs g >= 1");
    if (trunc.modes != 1) throw ValidationError("recovery_kraus builds a single-mode channel");
    if (trunc.n_max < 2 * g) {
        throw ValidationError("recovery_kraus needs n_max >= 2g = " + std::to_string(2 * g) + ", got n_max " +
                              std::to_string(trunc.n_max));
    }
    const auto d = static_cast<Eigen::Index>(trunc.dim());
    const int top = trunc.n_max / g;
    KrausChannel ch{{}, "recovery", trunc, std::make_pair(1, top * g)};
    for (int j = 0; j < g; ++j) {
        ComplexMatrix r = ComplexMatrix::Zero(d, d);
        for (int k = 1; k <= top; ++k) r(k * g, k * g - j) = 1.0;
        ch.kraus.push_back(std::move(r));
    }
    return ch;
}

Eigen::Matrix2cd qubit_dephasing_apply(const Eigen::Matrix2cd& rho, double p) {
    if (!(p >= 0.0 && p <= 0.5)) {
        std::ostringstream os;
        os << "dephasing probability must lie in [0, 1/2], got " << p;
        throw ValidationError(os.str());
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw ValidationError("qubit state is not Hermitian");
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return (1.0 - p) * rho + p * z * rho * z;
}

KrausChannel tensor_power(const KrausChannel& channel, int n) {
    if (n < 1) throw ValidationError("tensor_power needs n >= 1");
    if (channel.trunc.modes != 1) throw ValidationError("tensor_power expects a single-mode channel");
    TruncationConfig out_trunc = channel.trunc;
    out_trunc.modes = n;
    out_trunc.dim();
    std::vector<ComplexMatrix> ops = channel.kraus;
    for (int m = 1; m < n; ++m) {
        std::vector<ComplexMatrix> next;
        for (const auto& a : ops) {
            for (const auto& b : channel.kraus) {
                ComplexMatrix kr(a.rows() * b.rows(), a.cols() * b.cols());
                for (Eigen::Index i = 0; i < a.rows(); ++i) {
                    for (Eigen::Index j = 0; j < a.cols(); ++j) {
                        kr.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
                    }
                }
                next.push_back(std::move(kr));
            }
        }
        ops = std::move(next);
    }
    return {std::move(ops), channel.label + "^" + std::to_string(n), out_trunc, std::nullopt};
}

}  // namespace bosongap
