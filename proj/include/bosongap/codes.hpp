#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bosongap/fock.hpp"

namespace bosongap {

// A single-qubit g-gapped code: both codewords are supported on
// base_shift + g * k, k in N^modes.
class GappedCode {
public:
    GappedCode(FockVector zero_l, FockVector one_l, int g, MultiIndex base_shift);

    const FockVector& zero() const { return zero_; }
    const FockVector& one() const { return one_; }
    int gap() const { return g_; }
    const MultiIndex& base_shift() const { return base_shift_; }
    int modes() const { return zero_.trunc().modes; }
    const TruncationConfig& trunc() const { return zero_.trunc(); }

private:
    FockVector zero_;
    FockVector one_;
    int g_;
    MultiIndex base_shift_;
};

using SparseAmplitudes = std::vector<std::pair<MultiIndex, std::complex<double>>>;

// Normalizes both codewords and validates lattice support and orthogonality.
GappedCode make_gapped_code(const SparseAmplitudes& zero_l, const SparseAmplitudes& one_l, int g,
                            const MultiIndex& base_shift, const TruncationConfig& trunc);

// Binomial code correcting D phase errors on the lattice {0, g, ..., (2D+1)g}.
// n_max defaults to the required (2D+1)g.
GappedCode binomial_codewords(int D, int g, std::optional<int> n_max = std::nullopt);

// Random orthonormal pair on the gapped lattice, for property checks.
GappedCode random_gapped_code(std::mt19937_64& rng, int g, const TruncationConfig& trunc,
                              std::optional<MultiIndex> base_shift = std::nullopt);

enum class ShiftDirection { Gain, Loss };

// Number-shift Kraus operator: gain sum_j k_j |j+u><j|, loss sum_j k_j |j><j+u|.
// Empty coefficients mean ladder powers, (a^dagger)^u or a^u.
struct ShiftError {
    ShiftDirection direction = ShiftDirection::Loss;
    int shift = 1;
    std::vector<std::complex<double>> coefficients;

    static ShiftError lowering(int u) { return {ShiftDirection::Loss, u, {}}; }
    static ShiftError raising(int u) { return {ShiftDirection::Gain, u, {}}; }

    std::complex<double> coefficient(int j) const;
    // K|m> as (target level, amplitude); nullopt when K|m> = 0.
    std::optional<std::pair<int, std::complex<double>>> apply(int m) const;
    std::string name() const;
};

// The identity is always included implicitly.
struct ErrorSet {
    std::vector<ShiftError> ops;

    int max_shift() const;
    int max_gain() const;
    // Throws unless every shift satisfies 2u <= g.
    void validate_for_gap(int g) const;
    std::vector<std::string> names() const;
};

// {a^l : 1 <= l <= L} union {(a^dagger)^m : 1 <= m <= G}.
ErrorSet ladder_error_set(int L, int G);

// Parses "loss:1,gain:2" (also "a", "a^2", "ad", "ad^2").
ErrorSet parse_error_set(const std::string& spec);

struct KLReport {
    double max_offdiagonal_violation = 0.0;
    double max_deformation_violation = 0.0;
    bool pass = false;
};

KLReport kl_check(const GappedCode& code, const ErrorSet& errs, double tol);

struct ARow {
    int k_left = 0;   // index into {I} + errs.ops, 0 = identity
    int k_right = 0;
    bool imaginary = false;
    bool all_zero = false;
};

struct AMatrix {
    Eigen::MatrixXd values;
    std::vector<ARow> rows;
    int nonzero_rows() const;
};

// Rows (K, K', Re|Im) over ordered pairs of {I} + errs, columns k = 0..k_max,
// entries Re/Im <gk| K^dagger K' |gk>.
AMatrix build_A_matrix(const ErrorSet& errs, int g, int k_max);

// Default k_max: twice the number of rows.
int default_k_max(const ErrorSet& errs);

// Nonzero x with A x = 0: right singular vector of the smallest singular
// value, sign fixed so the first nonzero entry is positive.
Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& a);

enum class AmplitudeConvention { Sqrt, Literal };

GappedCode code_from_kernel(const Eigen::VectorXd& x, int g, AmplitudeConvention convention = AmplitudeConvention::Sqrt,
                            std::optional<int> n_max = std::nullopt);

nlohmann::json code_to_json(const GappedCode& code);
GappedCode code_from_json(const nlohmann::json& j);

double mean_photon_number(const FockVector& v);

}  // namespace bosongap
