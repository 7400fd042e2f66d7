#include "bosongap/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bosongap/channels.hpp"

namespace bosongap {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_bound_params(int g, double sigma, int modes) {
    if (g < 1) throw ValidationError("g must be >= 1, got " + std::to_string(g));
    if (modes < 1) throw ValidationError("mode count must be >= 1, got " + std::to_string(modes));
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        std::ostringstream os;
        os << "sigma must be finite and > 0 (the lattice sum diverges at 0), got " << sigma;
        throw ValidationError(os.str());
    }
}

}  // namespace

std::string to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::LatticeSum:
            return "lattice_sum";
        case BoundMethod::Geometric:
            return "geometric";
        case BoundMethod::Threshold:
            return "threshold";
    }
    return "unknown";
}

LatticeSum lattice_sum(int g, double sigma, int modes, double tail_tol) {
    require_bound_params(g, sigma, modes);
    if (!(tail_tol > 0.0)) throw ValidationError("tail_tol must be > 0");
    const double a = 0.5 * static_cast<double>(g) * g * sigma * sigma;

    // Past K the terms fall faster than the geometric series with ratio
    // exp(-a (2K + 3)), which bounds the one-dimensional tail.
    auto tail_after = [a](long k) {
        const double kp = static_cast<double>(k + 1);
        return std::exp(-a * kp * kp) / -std::expm1(-a * (2.0 * k + 3.0));
    };
    constexpr long kMaxCutoff = 100'000'000;
    long cutoff = 0;
    while (tail_after(cutoff) >= tail_tol) {
        if (++cutoff > kMaxCutoff) throw ComputationError("lattice_sum: sigma too small for a truncated sum");
    }
    long double s1 = 0.0L;
    for (long k = cutoff; k >= 1; --k) {
        const double kd = static_cast<double>(k);
        s1 += std::exp(-a * kd * kd);
    }
    const double one_d = static_cast<double>(s1);
    const double t1 = tail_after(cutoff);

    // The N-dimensional sum factorizes: sum_{k != 0} = (1 + S_1)^N - 1.
    const double log_base = std::log1p(one_d);
    LatticeSum out;
    out.sum = std::expm1(modes * log_base);
    out.tail_bound = std::exp(modes * log_base) * std::expm1(modes * std::log1p(t1 / (1.0 + one_d)));
    out.cutoff = static_cast<int>(cutoff);
    return out;
}

BoundResult epsilon_g_sigma(int g, double sigma, int modes) {
    const LatticeSum s = lattice_sum(g, sigma, modes);
    return {1.0 - kInvSqrt2 * (1.0 + 2.0 * s.sum), std::numbers::sqrt2 * s.tail_bound, g, sigma, modes,
            BoundMethod::LatticeSum};
}

BoundResult epsilon_geometric(int g, double sigma, int modes, Form form) {
    require_bound_params(g, sigma, modes);
    const double e = std::exp(-0.5 * static_cast<double>(g) * g * sigma * sigma);
    double value = 0.0;
    if (form == Form::Corrected) {
        const double inv_pow = std::exp(-modes * std::log1p(-e));  // (1 - e)^{-N}
        value = 1.0 - kInvSqrt2 * (2.0 * inv_pow - 1.0);
    } else {
        const double denom = 1.0 - modes * e;
        value = denom > 0.0 ? 1.0 - kInvSqrt2 * (1.0 + 2.0 * (1.0 / denom - 1.0))
                            : std::numeric_limits<double>::quiet_NaN();
    }
    return {value, 0.0, g, sigma, modes, BoundMethod::Geometric};
}

double g_sigma_threshold(int modes, Form form) {
    if (modes < 1) throw ValidationError("mode count must be >= 1");
    const double n = modes;
    double arg = 0.0;
    if (form == Form::Corrected) {
        // (1 - e^{-x^2/2})^N = 2 sqrt(2) - 2 at the crossing.
        arg = 1.0 - std::pow(2.0 * std::numbers::sqrt2 - 2.0, 1.0 / n);
    } else {
        arg = 1.0 - std::pow(2.0, 1.5 * n) * std::pow(2.0 + std::numbers::sqrt2, -1.0 / n);
    }
    if (!(arg > 0.0 && arg < 1.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(-2.0 * std::log(arg));
}

double sigma_thres(int g, int modes, Form form) {
    if (g < 1) throw ValidationError("g must be >= 1");
    return g_sigma_threshold(modes, form) / g;
}

double lemma4_bound(int g, double sigma, int modes) {
    const LatticeSum s = lattice_sum(g, sigma, modes);
    return std::numbers::sqrt2 + 2.0 * std::numbers::sqrt2 * s.sum;
}

Lemma4Check verify_lemma4(const GappedCode& code, double sigma) {
    require_bound_params(code.gap(), sigma, code.modes());
    const auto& a = code.zero().amplitudes();
    const auto& b = code.one().amplitudes();
    const std::complex<double> i(0.0, 1.0);
    const auto& trunc = code.trunc();
    auto state = [&](const ComplexVector& v) { return FockVector(trunc, v * kInvSqrt2); };

    const FockVector plus = state(a + b);
    const FockVector minus = state(a - b);
    const FockVector plus_i = state(a + i * b);
    const FockVector minus_i = state(a - i * b);

    Lemma4Check out;
    out.norm_pm = trace_norm(dephase_apply(outer_difference(plus, minus), sigma));
    out.norm_pmi = trace_norm(dephase_apply(outer_difference(plus_i, minus_i), sigma));
    const LatticeSum s = lattice_sum(code.gap(), sigma, code.modes());
    out.bound = std::numbers::sqrt2 + 2.0 * std::numbers::sqrt2 * s.sum;
    const double slack = 1e-9 + 2.0 * std::numbers::sqrt2 * s.tail_bound;
    out.holds = std::min(out.norm_pm, out.norm_pmi) <= out.bound + slack;
    return out;
}

}  // namespace bosongap
