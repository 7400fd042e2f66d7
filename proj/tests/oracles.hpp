#pragma once

// Reference computations for the tests. Each one is written from the
// defining formula, by a different route than the library code.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

// Sum over k in {0..K}^N \ {0} of exp(-g^2 sigma^2 |k|^2 / 2), by enumeration.
inline long double lattice_sum(int g, double sigma, int N, int K = 60) {
    const long double a = 0.5L * g * g * static_cast<long double>(sigma) * sigma;
    std::vector<int> k(static_cast<std::size_t>(N), 0);
    long double total = 0.0L;
    while (true) {
        std::size_t i = 0;
        while (i < k.size() && k[i] == K) k[i++] = 0;
        if (i == k.size()) break;
        ++k[i];
        long double r2 = 0.0L;
        for (int v : k) r2 += static_cast<long double>(v) * v;
        total += std::exp(-a * r2);
    }
    return total;
}

inline long double binomial(int n, int k) {
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

inline long double factorial(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// 2^{-D} sum_{j=1}^{2D+1} sqrt(C(2D+1, j)) (|theta| g j)^{D+1} / (D+1)!
inline long double epsilon_bin_theta(double theta, int D, int g) {
    long double s = 0.0L;
    for (int j = 1; j <= 2 * D + 1; ++j) {
        s += std::sqrt(binomial(2 * D + 1, j)) * std::pow(std::fabs(static_cast<long double>(theta)) * g * j, D + 1);
    }
    return s / factorial(D + 1) / std::pow(2.0L, D);
}

// Lower incomplete gamma by its power series.
inline long double lower_gamma(long double s, long double x) {
    long double term = 1.0L / s;
    long double sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= x / (s + k);
        sum += term;
        if (term < 1e-30L * sum) break;
    }
    return std::exp(s * std::log(x) - x) * sum;
}

// int_0^phi theta^m p(theta) dtheta for p the N(0, sigma^2) density.
inline long double gaussian_moment(int m, double sigma, double phi) {
    const long double s = sigma;
    const long double x = static_cast<long double>(phi) * phi / (2.0L * s * s);
    return std::pow(s, m) * std::pow(2.0L, 0.5L * m) / (2.0L * std::sqrt(3.14159265358979323846264338L)) *
           lower_gamma(0.5L * (m + 1), x);
}

// epsilon_bin via the moment formula: c theta^{D+1} integrates to
// c M_{D+1}, 2 c^2 theta^{2D+2} to 2 c^2 M_{2D+2}.
inline long double epsilon_bin(double sigma, int g, int D, double phi) {
    const long double c = epsilon_bin_theta(1.0, D, g);
    return c * gaussian_moment(D + 1, sigma, phi) + 2.0L * c * c * gaussian_moment(2 * D + 2, sigma, phi) +
           std::erfc(static_cast<long double>(phi) / (static_cast<long double>(sigma) * std::sqrt(2.0L)));
}

inline long double h2_bits(long double x) {
    if (x <= 0.0L || x >= 1.0L) return 0.0L;
    return -(x * std::log2(x) + (1.0L - x) * std::log2(1.0L - x));
}

// S(output) - S(environment) in nats for dephasing with Kraus operators
// sqrt(1-p) I and sqrt(p) Z on diag(1-r, r); environment from
// rho_E[i][j] = tr(D_i rho D_j^dagger), diagonalized numerically.
inline double coherent_info(double p, double r) {
    Eigen::Matrix2d rho;
    rho << 1.0 - r, 0.0, 0.0, r;
    Eigen::Matrix2d Z;
    Z << 1.0, 0.0, 0.0, -1.0;
    const Eigen::Matrix2d d[2] = {std::sqrt(1.0 - p) * Eigen::Matrix2d::Identity(), std::sqrt(p) * Z};
    Eigen::Matrix2d env;
    Eigen::Matrix2d out = Eigen::Matrix2d::Zero();
    for (int i = 0; i < 2; ++i) {
        out += d[i] * rho * d[i].transpose();
        for (int j = 0; j < 2; ++j) env(i, j) = (d[i] * rho * d[j].transpose()).trace();
    }
    auto entropy = [](const Eigen::Matrix2d& m) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
        double s = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double l = es.eigenvalues()[i];
            if (l > 0.0) s -= l * std::log(l);
        }
        return s;
    };
    return entropy(out) - entropy(env);
}

// Off-diagonal factor of |g><2g| under amplitude damping then the gap-g
// recovery, by explicit matrices on levels 0..n_max.
inline std::complex<double> reduction_offdiag(int g, double gamma, int n_max) {
    const int n = n_max + 1;
    std::vector<Eigen::MatrixXd> damp;
    for (int l = 0; l <= n_max; ++l) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int m = l; m <= n_max; ++m) {
            a(m - l, m) = std::sqrt(static_cast<double>(binomial(m, l)) * std::pow(1.0 - gamma, m - l) *
                                    std::pow(gamma, l));
        }
        damp.push_back(a);
    }
    std::vector<Eigen::MatrixXd> rec;
    for (int j = 0; j < g; ++j) {
        Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k * g <= n_max; ++k) {
            if (k * g - j >= 0) r(k * g, k * g - j) = 1.0;
        }
        rec.push_back(r);
    }
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
    x(g, 2 * g) = 1.0;
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
    for (const auto& a : damp) {
        for (const auto& r : rec) y += r * a * x * a.transpose() * r.transpose();
    }
    return y(g, 2 * g);
}

}  // namespace oracle
