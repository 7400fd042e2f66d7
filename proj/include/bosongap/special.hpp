#pragma once

#include <vector>

namespace bosongap {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Hermite rule for the weight exp(-x^2); nodes ascending.
QuadratureRule gauss_hermite(int n);

// n-point Gauss-Legendre rule on [-1, 1]; nodes ascending.
QuadratureRule gauss_legendre(int n);

// Process-wide memoized Gauss-Legendre rule; the reference stays valid.
const QuadratureRule& gauss_legendre_cached(int n);

double log_factorial(int n);
double log_binomial(int n, int k);

// ln(sum_i exp(terms_i)); -inf for an empty or all -inf input.
double log_sum_exp(const std::vector<double>& terms);

// -x ln x - (1-x) ln(1-x) in nats, with 0 ln 0 = 0.
double binary_entropy_nats(double x);
double binary_entropy_bits(double x);

}  // namespace bosongap
