#include "bosongap/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "bosongap/error.hpp"

namespace bosongap {

namespace {

constexpr int kMaxNewton = 200;

void sort_rule(QuadratureRule& rule) {
    std::vector<std::size_t> order(rule.nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rule.nodes[a] < rule.nodes[b]; });
    QuadratureRule sorted;
    for (auto i : order) {
        sorted.nodes.push_back(rule.nodes[i]);
        sorted.weights.push_back(rule.weights[i]);
    }
    rule = std::move(sorted);
}

}  // namespace

QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw ValidationError("gauss_hermite needs n >= 1");
    // Newton iteration on orthonormal Hermite polynomials, with the classic
    // asymptotic starting guesses for the largest roots.
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ComputationError("gauss_hermite: Newton iteration did not converge");
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    sort_rule(rule);
    return rule;
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw ValidationError("gauss_legendre needs n >= 1");
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ComputationError("gauss_legendre: Newton iteration did not converge");
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    sort_rule(rule);
    return rule;
}

const QuadratureRule& gauss_legendre_cached(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(gauss_legendre(n));
    return *slot;
}

double log_factorial(int n) {
    if (n < 0) throw ValidationError("log_factorial of negative argument");
    constexpr int kTable = 4096;
    static const std::vector<double> table = [] {
        std::vector<double> t(kTable + 1, 0.0);
        for (int i = 2; i <= kTable; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    if (n <= kTable) return table[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_sum_exp(const std::vector<double>& terms) {
    double hi = -std::numeric_limits<double>::infinity();
    for (double t : terms) hi = std::max(hi, t);
    if (!std::isfinite(hi)) return hi;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - hi);
    return hi + std::log(acc);
}

double binary_entropy_nats(double x) {
    auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
    return -xlogx(x) - xlogx(1.0 - x);
}

double binary_entropy_bits(double x) { return binary_entropy_nats(x) / std::numbers::ln2; }

}  // namespace bosongap
