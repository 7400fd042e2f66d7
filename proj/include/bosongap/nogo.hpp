#pragma once

#include <string>

#include "bosongap/codes.hpp"

namespace bosongap {

enum class BoundMethod { LatticeSum, Geometric, Threshold };

std::string to_string(BoundMethod m);

// Which algebraic form of the closed-form bound and threshold to evaluate,
// with e = exp(-g^2 sigma^2 / 2).
//   Corrected: 1 - (2 (1 - e)^{-N} - 1) / sqrt(2)
//   Literal:   1 - (1 + 2 ((1 - N e)^{-1} - 1)) / sqrt(2), threshold from
//              1 - 2^{3N/2} (2 + sqrt(2))^{-1/N}; NaN outside its domain.
// The two agree for N = 1.
enum class Form { Corrected, Literal };

struct BoundResult {
    double value = 0.0;
    double truncation_error = 0.0;
    int g = 1;
    double sigma = 0.0;
    int modes = 1;
    BoundMethod method = BoundMethod::LatticeSum;
};

struct LatticeSum {
    double sum = 0.0;         // sum over k in N^modes, k != 0, of exp(-g^2 |k|^2 sigma^2 / 2)
    double tail_bound = 0.0;  // rigorous bound on the neglected part
    int cutoff = 0;           // per-coordinate truncation K
};

LatticeSum lattice_sum(int g, double sigma, int modes, double tail_tol = 1e-18);

// 1 - (1 + 2 S) / sqrt(2); truncation_error bounds how far the true value
// can sit below the reported one.
BoundResult epsilon_g_sigma(int g, double sigma, int modes);

// Closed-form relaxation of epsilon_g_sigma; never exceeds it.
BoundResult epsilon_geometric(int g, double sigma, int modes, Form form = Form::Corrected);

// The product g * sigma at which epsilon_geometric crosses zero.
double g_sigma_threshold(int modes, Form form = Form::Corrected);
double sigma_thres(int g, int modes, Form form = Form::Corrected);

// sqrt(2) + 2 sqrt(2) S: the trace-norm budget one of the two
// logical-basis pairs must fall under after dephasing.
double lemma4_bound(int g, double sigma, int modes);

struct Lemma4Check {
    double norm_pm = 0.0;   // || E(rho_+ - rho_-) ||_1
    double norm_pmi = 0.0;  // || E(rho_+i - rho_-i) ||_1
    double bound = 0.0;
    bool holds = false;
};

Lemma4Check verify_lemma4(const GappedCode& code, double sigma);

}  // namespace bosongap
