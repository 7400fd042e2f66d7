#include "bosongap/codes.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bosongap/special.hpp"

namespace bosongap {

namespace {

bool on_lattice(const MultiIndex& k, const MultiIndex& base, int g) {
    for (std::size_t i = 0; i < k.size(); ++i) {
        const int off = k[i] - base[i];
        if (off < 0 || off % g != 0) return false;
    }
    return true;
}

std::string format_index(const MultiIndex& k) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << ")";
    return os.str();
}

std::vector<MultiIndex> lattice_points(const TruncationConfig& trunc, const MultiIndex& base, int g) {
    std::vector<MultiIndex> pts;
    const std::size_t d = trunc.dim();
    for (std::size_t f = 0; f < d; ++f) {
        MultiIndex k = trunc.unflatten(f);
        if (on_lattice(k, base, g)) pts.push_back(std::move(k));
    }
    return pts;
}

FockVector from_sparse(const SparseAmplitudes& amps, const TruncationConfig& trunc) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(trunc.dim()));
    for (const auto& [k, a] : amps) v[static_cast<Eigen::Index>(trunc.flatten(k))] += a;
    return {trunc, std::move(v)};
}

void require_gap(int g) {
    if (g < 1) throw ValidationError("gap g must be >= 1, got " + std::to_string(g));
}

std::vector<ShiftError> with_identity(const ErrorSet& errs) {
    std::vector<ShiftError> ops;
    ops.push_back(ShiftError::lowering(0));  // a^0 = identity
    ops.insert(ops.end(), errs.ops.begin(), errs.ops.end());
    return ops;
}

// K|psi> on a cutoff large enough to hold every gain.
ComplexVector apply_shift(const ShiftError& k, const FockVector& psi, int n_work) {
    ComplexVector out = ComplexVector::Zero(n_work + 1);
    for (Eigen::Index m = 0; m < psi.dim(); ++m) {
        if (psi[m] == std::complex<double>(0.0)) continue;
        if (auto hit = k.apply(static_cast<int>(m))) out[hit->first] += hit->second * psi[m];
    }
    return out;
}

}  // namespace

GappedCode::GappedCode(FockVector zero_l, FockVector one_l, int g, MultiIndex base_shift)
    : zero_(std::move(zero_l)), one_(std::move(one_l)), g_(g), base_shift_(std::move(base_shift)) {
    require_gap(g_);
    require_same_space(zero_.trunc(), one_.trunc(), "GappedCode");
    if (static_cast<int>(base_shift_.size()) != zero_.trunc().modes) {
        throw ValidationError("base shift has " + std::to_string(base_shift_.size()) + " components for " +
                              std::to_string(zero_.trunc().modes) + " modes");
    }
    for (const auto* v : {&zero_, &one_}) {
        if (std::abs(v->norm() - 1.0) > 1e-10) {
            std::ostringstream os;
            os << "codeword norm " << v->norm() << " is not 1";
            throw ValidationError(os.str());
        }
        for (Eigen::Index f = 0; f < v->dim(); ++f) {
            if (std::abs((*v)[f]) == 0.0) continue;
            const MultiIndex k = v->trunc().unflatten(static_cast<std::size_t>(f));
            if (!on_lattice(k, base_shift_, g_)) {
                throw ValidationError("codeword has support off the gapped lattice at " + format_index(k));
            }
        }
    }
    const double overlap = std::abs(inner_product(zero_, one_));
    if (overlap > 1e-10) {
        std::ostringstream os;
        os << "codewords are not orthogonal: |<0_L|1_L>| = " << overlap;
        throw ValidationError(os.str());
    }
}

GappedCode make_gapped_code(const SparseAmplitudes& zero_l, const SparseAmplitudes& one_l, int g,
                            const MultiIndex& base_shift, const TruncationConfig& trunc) {
    require_gap(g);
    trunc.validate();
    if (static_cast<int>(base_shift.size()) != trunc.modes) {
        throw ValidationError("base shift has " + std::to_string(base_shift.size()) + " components for " +
                              std::to_string(trunc.modes) + " modes");
    }
    std::vector<std::string> offending;
    for (const auto* list : {&zero_l, &one_l}) {
        for (const auto& [k, a] : *list) {
            if (a != std::complex<double>(0.0) && !on_lattice(k, base_shift, g)) offending.push_back(format_index(k));
        }
    }
    if (!offending.empty()) {
        std::string msg = "support off the g=" + std::to_string(g) + " lattice at";
        for (const auto& s : offending) msg += " " + s;
        throw ValidationError(msg);
    }
    const FockVector z = from_sparse(zero_l, trunc);
    const FockVector o = from_sparse(one_l, trunc);
    if (!(z.norm() > 0.0) || !(o.norm() > 0.0)) throw ValidationError("codewords must be nonzero");
    return {z.normalized(), o.normalized(), g, base_shift};
}

GappedCode binomial_codewords(int D, int g, std::optional<int> n_max) {
    if (D < 0) throw ValidationError("binomial code needs D >= 0");
    require_gap(g);
    const int need = (2 * D + 1) * g;
    const int cutoff = n_max.value_or(need);
    if (cutoff < need) {
        throw ValidationError("binomial code with D=" + std::to_string(D) + ", g=" + std::to_string(g) +
                              " needs n_max >= " + std::to_string(need) + ", got " + std::to_string(cutoff));
    }
    TruncationConfig trunc{cutoff, 1};
    ComplexVector zero = ComplexVector::Zero(cutoff + 1);
    ComplexVector one = ComplexVector::Zero(cutoff + 1);
    for (int j = 0; j <= 2 * D + 1; ++j) {
        const double amp = std::exp(0.5 * (log_binomial(2 * D + 1, j) - 2.0 * D * std::numbers::ln2));
        (j % 2 == 0 ? zero : one)[g * j] = amp;
    }
    return {FockVector(trunc, std::move(zero)), FockVector(trunc, std::move(one)), g, MultiIndex{0}};
}

GappedCode random_gapped_code(std::mt19937_64& rng, int g, const TruncationConfig& trunc,
                              std::optional<MultiIndex> base_shift) {
    require_gap(g);
    MultiIndex base = base_shift.value_or(MultiIndex{});
    if (!base_shift) {
        std::uniform_int_distribution<int> pick(0, std::min(g - 1, trunc.n_max - g));
        for (int m = 0; m < trunc.modes; ++m) base.push_back(std::max(0, pick(rng)));
    }
    const auto pts = lattice_points(trunc, base, g);
    if (pts.size() < 2) throw ValidationError("cutoff too small for two codewords on the lattice");
    std::normal_distribution<double> normal;
    std::bernoulli_distribution keep(0.7);
    for (int attempt = 0; attempt < 100; ++attempt) {
        ComplexVector v0 = ComplexVector::Zero(static_cast<Eigen::Index>(trunc.dim()));
        ComplexVector v1 = v0;
        for (const auto& k : pts) {
            const auto f = static_cast<Eigen::Index>(trunc.flatten(k));
            if (keep(rng)) v0[f] = {normal(rng), normal(rng)};
            if (keep(rng)) v1[f] = {normal(rng), normal(rng)};
        }
        if (v0.norm() < 1e-8) continue;
        v0.normalize();
        v1 -= v0.dot(v1) * v0;
        if (v1.norm() < 1e-6) continue;
        v1.normalize();
        return {FockVector(trunc, std::move(v0)), FockVector(trunc, std::move(v1)), g, base};
    }
    throw ComputationError("random_gapped_code: failed to draw independent codewords");
}

std::complex<double> ShiftError::coefficient(int j) const {
    if (j < 0) return 0.0;
    if (coefficients.empty()) return std::exp(0.5 * (log_factorial(j + shift) - log_factorial(j)));
    return static_cast<std::size_t>(j) < coefficients.size() ? coefficients[static_cast<std::size_t>(j)] : 0.0;
}

std::optional<std::pair<int, std::complex<double>>> ShiftError::apply(int m) const {
    int target = 0;
    std::complex<double> amp;
    if (direction == ShiftDirection::Gain) {
        target = m + shift;
        amp = coefficient(m);
    } else {
        if (m < shift) return std::nullopt;
        target = m - shift;
        amp = coefficient(target);
    }
    if (amp == std::complex<double>(0.0)) return std::nullopt;
    return std::make_pair(target, amp);
}

std::string ShiftError::name() const {
    if (shift == 0 && coefficients.empty()) return "I";
    std::string base = direction == ShiftDirection::Gain ? "ad" : "a";
    if (!coefficients.empty()) base = direction == ShiftDirection::Gain ? "gain" : "loss";
    if (!coefficients.empty()) return base + ":" + std::to_string(shift) + "*";
    return shift == 1 ? base : base + "^" + std::to_string(shift);
}

int ErrorSet::max_shift() const {
    int u = 0;
    for (const auto& op : ops) u = std::max(u, op.shift);
    return u;
}

int ErrorSet::max_gain() const {
    int u = 0;
    for (const auto& op : ops) {
        if (op.direction == ShiftDirection::Gain) u = std::max(u, op.shift);
    }
    return u;
}

void ErrorSet::validate_for_gap(int g) const {
    for (const auto& op : ops) {
        if (op.shift < 0) throw ValidationError("shift must be >= 0 for " + op.name());
        if (2 * op.shift > g) {
            throw ValidationError("error " + op.name() + " shifts by u=" + std::to_string(op.shift) +
                                  ", which breaks the gap assumption u <= g/2 for g=" + std::to_string(g));
        }
    }
}

std::vector<std::string> ErrorSet::names() const {
    std::vector<std::string> out;
    for (const auto& op : ops) out.push_back(op.name());
    return out;
}

ErrorSet ladder_error_set(int L, int G) {
    if (L < 0 || G < 0) throw ValidationError("ladder_error_set needs L, G >= 0");
    ErrorSet errs;
    for (int l = 1; l <= L; ++l) errs.ops.push_back(ShiftError::lowering(l));
    for (int m = 1; m <= G; ++m) errs.ops.push_back(ShiftError::raising(m));
    return errs;
}

ErrorSet parse_error_set(const std::string& spec) {
    ErrorSet errs;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        if (tok.empty()) continue;
        ShiftError e;
        std::string head = tok;
        int u = 1;
        if (auto pos = tok.find_first_of(":^"); pos != std::string::npos) {
            head = tok.substr(0, pos);
            try {
                std::size_t used = 0;
                u = std::stoi(tok.substr(pos + 1), &used);
                if (used != tok.size() - pos - 1) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ValidationError("bad shift in error term '" + tok + "'");
            }
        }
        if (head == "loss" || head == "a") {
            e = ShiftError::lowering(u);
        } else if (head == "gain" || head == "ad") {
            e = ShiftError::raising(u);
        } else {
            throw ValidationError("unknown error term '" + tok + "' (use loss:u, gain:u, a^u or ad^u)");
        }
        if (u < 1) throw ValidationError("shift must be >= 1 in '" + tok + "'");
        errs.ops.push_back(e);
    }
    return errs;
}

KLReport kl_check(const GappedCode& code, const ErrorSet& errs, double tol) {
    if (code.modes() != 1) throw ValidationError("kl_check handles single-mode codes");
    if (!(tol > 0.0)) throw ValidationError("kl_check needs tol > 0");
    errs.validate_for_gap(code.gap());
    const auto ops = with_identity(errs);
    const int n_work = code.trunc().n_max + errs.max_gain();
    std::vector<std::array<ComplexVector, 2>> images;
    for (const auto& k : ops) images.push_back({apply_shift(k, code.zero(), n_work), apply_shift(k, code.one(), n_work)});

    KLReport rep;
    for (const auto& left : images) {
        for (const auto& right : images) {
            const auto o01 = left[0].dot(right[1]);
            const auto o10 = left[1].dot(right[0]);
            const auto d = left[0].dot(right[0]) - left[1].dot(right[1]);
            rep.max_offdiagonal_violation = std::max({rep.max_offdiagonal_violation, std::abs(o01), std::abs(o10)});
            rep.max_deformation_violation = std::max(rep.max_deformation_violation, std::abs(d));
        }
    }
    rep.pass = rep.max_offdiagonal_violation <= tol && rep.max_deformation_violation <= tol;
    return rep;
}

int AMatrix::nonzero_rows() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const ARow& r) { return !r.all_zero; }));
}

AMatrix build_A_matrix(const ErrorSet& errs, int g, int k_max) {
    require_gap(g);
    if (k_max < 1) throw ValidationError("k_max must be >= 1");
    const auto ops = with_identity(errs);
    const auto n_ops = static_cast<int>(ops.size());
    AMatrix out;
    out.values = Eigen::MatrixXd::Zero(2 * n_ops * n_ops, k_max + 1);
    int row = 0;
    for (int a = 0; a < n_ops; ++a) {
        for (int b = 0; b < n_ops; ++b) {
            for (int k = 0; k <= k_max; ++k) {
                const auto left = ops[a].apply(g * k);
                const auto right = ops[b].apply(g * k);
                if (!left || !right || left->first != right->first) continue;
                const auto v = std::conj(left->second) * right->second;
                out.values(row, k) = v.real();
                out.values(row + 1, k) = v.imag();
            }
            for (int part = 0; part < 2; ++part) {
                const bool zero = (out.values.row(row + part).array() == 0.0).all();
                out.rows.push_back({a, b, part == 1, zero});
            }
            row += 2;
        }
    }
    const int needed = out.nonzero_rows();
    if (k_max < needed) {
        throw ValidationError("k_max=" + std::to_string(k_max) + " is below the " + std::to_string(needed) +
                              " nonzero rows of A; no kernel guaranteed");
    }
    return out;
}

int default_k_max(const ErrorSet& errs) {
    const auto n = static_cast<int>(errs.ops.size()) + 1;
    return 2 * (2 * n * n);
}

Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& a) {
    const auto cols = a.cols();
    if (cols == 0) throw ValidationError("kernel_vector needs at least one column");
    if (a.rows() == 0 || (a.array() == 0.0).all()) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(cols);
        e[0] = 1.0;
        return e;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    Eigen::VectorXd x = svd.matrixV().col(cols - 1);
    const double xmax = x.cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double residual = (a * x).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-10 * xmax * scale)) {
        std::ostringstream os;
        os << "A has numerically full column rank (residual " << residual << "); increase k_max";
        throw ComputationError(os.str());
    }
    for (Eigen::Index i = 0; i < cols; ++i) {
        if (std::abs(x[i]) > 1e-12 * xmax) {
            if (x[i] < 0.0) x = -x;
            break;
        }
    }
    return x;
}

GappedCode code_from_kernel(const Eigen::VectorXd& x, int g, AmplitudeConvention convention, std::optional<int> n_max) {
    require_gap(g);
    if (x.size() < 2) throw ValidationError("kernel vector needs at least two entries");
    const double xmax = x.cwiseAbs().maxCoeff();
    if (!(xmax > 0.0)) throw ValidationError("kernel vector is zero");
    Eigen::VectorXd plus = Eigen::VectorXd::Zero(x.size());
    Eigen::VectorXd minus = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (std::abs(x[k]) <= 1e-13 * xmax) continue;
        (x[k] > 0.0 ? plus[k] : minus[k]) = std::abs(x[k]);
    }
    if (plus.sum() == 0.0 || minus.sum() == 0.0) {
        throw ValidationError("kernel vector does not change sign; cannot split into two codewords");
    }
    const int cutoff = n_max.value_or(static_cast<int>(g * (x.size() - 1)));
    if (cutoff < g * (x.size() - 1)) throw ValidationError("n_max too small for the kernel vector support");
    TruncationConfig trunc{std::max(1, cutoff), 1};
    auto make = [&](const Eigen::VectorXd& part) {
        ComplexVector v = ComplexVector::Zero(trunc.n_max + 1);
        for (Eigen::Index k = 0; k < part.size(); ++k) {
            const double amp = convention == AmplitudeConvention::Sqrt ? std::sqrt(part[k] / part.sum()) : part[k];
            v[g * k] = amp;
        }
        if (convention == AmplitudeConvention::Literal) v /= v.norm();
        return FockVector(trunc, std::move(v));
    };
    return {make(plus), make(minus), g, MultiIndex{0}};
}

nlohmann::json code_to_json(const GappedCode& code) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto* v : {&code.zero(), &code.one()}) {
        nlohmann::json entries = nlohmann::json::array();
        for (Eigen::Index f = 0; f < v->dim(); ++f) {
            const auto a = (*v)[f];
            if (a == std::complex<double>(0.0)) continue;
            entries.push_back({f, a.real(), a.imag()});
        }
        words.push_back(std::move(entries));
    }
    return {{"g", code.gap()},
            {"n", code.base_shift()},
            {"modes", code.modes()},
            {"n_max", code.trunc().n_max},
            {"codewords", std::move(words)}};
}

GappedCode code_from_json(const nlohmann::json& j) {
    try {
        TruncationConfig trunc{j.at("n_max").get<int>(), j.at("modes").get<int>()};
        trunc.validate();
        const int g = j.at("g").get<int>();
        const auto base = j.at("n").get<MultiIndex>();
        const auto& words = j.at("codewords");
        if (!words.is_array() || words.size() != 2) throw ValidationError("codewords must hold exactly two lists");
        std::array<ComplexVector, 2> vecs;
        for (std::size_t w = 0; w < 2; ++w) {
            vecs[w] = ComplexVector::Zero(static_cast<Eigen::Index>(trunc.dim()));
            for (const auto& e : words[w]) {
                const auto f = e.at(0).get<long long>();
                if (f < 0 || f >= vecs[w].size()) throw ValidationError("codeword index out of range");
                vecs[w][f] = {e.at(1).get<double>(), e.at(2).get<double>()};
            }
        }
        return {FockVector(trunc, vecs[0]), FockVector(trunc, vecs[1]), g, base};
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed code JSON: ") + e.what());
    }
}

double mean_photon_number(const FockVector& v) {
    double acc = 0.0;
    for (Eigen::Index f = 0; f < v.dim(); ++f) {
        const auto k = v.trunc().unflatten(static_cast<std::size_t>(f));
        int total = 0;
        for (int x : k) total += x;
        acc += std::norm(v[f]) * total;
    }
    return acc;
}

}  // namespace bosongap
