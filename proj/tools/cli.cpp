#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "bosongap/achievability.hpp"
#include "bosongap/capacity.hpp"
#include "bosongap/codes.hpp"
#include "bosongap/error.hpp"
#include "bosongap/nogo.hpp"
#include "bosongap/parallel.hpp"
#include "table.hpp"

namespace bosongap::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string g;
    std::string sigma;
    std::string sigma_grid;
    std::string gamma;
    std::string gamma_grid;
    std::string modes;
    std::string errors = "loss:1";
    std::string convention = "sqrt";
    std::string code;
    std::string truncation = "exact";
    std::string format = "csv";
    std::string out;
    std::string config;
    double lambda = 0.5;
    double tol = 1e-10;
    int cutoff = -1;
    int d_min = 2;
    int d_max = 50;
    int phi_points = 60;
    int quad_nodes = 128;
    int jobs = 1;
    int kmax = -1;
    int binomial_d = -1;
    int trials = 100;
    std::uint64_t seed = 0;
    bool paper_literal = false;
    bool dry_run = false;
    bool json_errors = false;
};

double parse_double(const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ValidationError("not a number: '" + text + "'");
    }
    if (pos != text.size() || !std::isfinite(v)) throw ValidationError("not a finite number: '" + text + "'");
    return v;
}

int parse_int(const std::string& text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError("not an integer: '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

std::vector<int> int_list_or(const std::string& spec, const std::string& fallback) {
    return parse_int_list(spec.empty() ? fallback : spec);
}

int single_int(const std::string& spec, int fallback, const char* name) {
    if (spec.empty()) return fallback;
    const auto v = parse_int_list(spec);
    if (v.size() != 1) throw ValidationError(std::string(name) + " takes a single value here");
    return v.front();
}

// --x and --x-grid are alternatives; --x is a one-point grid.
std::vector<double> resolve_grid(const std::string& single, const std::string& grid, const std::string& fallback,
                                 const char* name) {
    if (!single.empty() && !grid.empty()) {
        throw ValidationError(std::string("give either --") + name + " or --" + name + "-grid, not both");
    }
    if (!single.empty()) return {parse_double(single)};
    return parse_grid(grid.empty() ? fallback : grid);
}

void require_positive(const std::vector<double>& xs, const char* name) {
    for (double x : xs) {
        if (!(x > 0.0)) throw ValidationError(std::string(name) + " must be > 0, got " + format_number(x));
    }
}

void require_nonnegative(const std::vector<double>& xs, const char* name) {
    for (double x : xs) {
        if (!(x >= 0.0)) throw ValidationError(std::string(name) + " must be >= 0, got " + format_number(x));
    }
}

void require_gaps(const std::vector<int>& gs) {
    for (int g : gs) {
        if (g < 1) throw ValidationError("g must be >= 1, got " + std::to_string(g));
    }
}

ojson to_json_list(const std::vector<double>& xs) {
    ojson a = ojson::array();
    for (double x : xs) a.push_back(std::stod(format_number(x)));
    return a;
}

AmplitudeConvention parse_convention(const std::string& name) {
    if (name == "sqrt") return AmplitudeConvention::Sqrt;
    if (name == "literal") return AmplitudeConvention::Literal;
    throw ValidationError("unknown amplitude convention '" + name + "' (expected sqrt or literal)");
}

TruncationBound parse_truncation(const std::string& name) {
    if (name == "exact") return TruncationBound::Exact;
    if (name == "stirling") return TruncationBound::Stirling;
    throw ValidationError("unknown truncation bound '" + name + "' (expected exact or stirling)");
}

// Outcome of one subcommand: a plan (always) and a table (unless dry run).
struct Outcome {
    ojson plan;
    Table table;
    int exit_code = kOk;
    std::string failure;
};

Outcome cmd_bounds(const Options& o) {
    Outcome r;
    const auto gs = int_list_or(o.g, "1:10");
    const auto sigmas = resolve_grid(o.sigma, o.sigma_grid, "log:0.01:3:50", "sigma");
    const auto modes = int_list_or(o.modes, "1");
    require_gaps(gs);
    require_positive(sigmas, "sigma");
    for (int n : modes) {
        if (n < 1) throw ValidationError("modes must be >= 1");
    }
    r.plan = {{"command", "bounds"}, {"g", gs}, {"sigma", to_json_list(sigmas)}, {"modes", modes},
              {"paper_literal", o.paper_literal}, {"rows", gs.size() * sigmas.size() * modes.size()}};
    if (o.dry_run) return r;

    r.table.columns = {"g", "sigma", "N", "epsilon_lattice", "epsilon_geometric", "tail_bound"};
    if (o.paper_literal) r.table.columns.push_back("epsilon_geometric_literal");
    const std::size_t n = gs.size() * sigmas.size() * modes.size();
    std::vector<std::vector<Cell>> rows(n);
    parallel_for(n, o.jobs, [&](std::size_t idx) {
        const int g = gs[idx / (sigmas.size() * modes.size())];
        const double sigma = sigmas[(idx / modes.size()) % sigmas.size()];
        const int N = modes[idx % modes.size()];
        const BoundResult lattice = epsilon_g_sigma(g, sigma, N);
        const BoundResult geo = epsilon_geometric(g, sigma, N);
        std::vector<Cell> row{std::int64_t{g}, sigma,          std::int64_t{N}, lattice.value,
                              geo.value,       lattice.truncation_error};
        if (o.paper_literal) row.emplace_back(epsilon_geometric(g, sigma, N, Form::Literal).value);
        rows[idx] = std::move(row);
    });
    for (auto& row : rows) r.table.add(std::move(row));
    return r;
}

Outcome cmd_threshold(const Options& o) {
    Outcome r;
    const auto modes = int_list_or(o.modes, "1:5");
    const auto gs = int_list_or(o.g, "1");
    require_gaps(gs);
    for (int n : modes) {
        if (n < 1) throw ValidationError("modes must be >= 1");
    }
    r.plan = {{"command", "threshold"},
              {"modes", modes},
              {"g", gs},
              {"paper_literal", o.paper_literal},
              {"rows", modes.size() * gs.size()}};
    if (o.dry_run) return r;

    r.table.columns = {"N", "g", "g_sigma_thres", "sigma_thres"};
    if (o.paper_literal) r.table.columns.push_back("g_sigma_thres_literal");
    for (int N : modes) {
        for (int g : gs) {
            std::vector<Cell> row{std::int64_t{N}, std::int64_t{g}, g_sigma_threshold(N), sigma_thres(g, N)};
            if (o.paper_literal) row.emplace_back(g_sigma_threshold(N, Form::Literal));
            r.table.add(std::move(row));
        }
    }
    return r;
}

Outcome cmd_binomial(const Options& o) {
    Outcome r;
    AchievabilityParams p;
    p.g = single_int(o.g, 9, "--g");
    p.d_min = o.d_min;
    p.d_max = o.d_max;
    p.phi_factors = default_phi_factors(o.phi_points);
    p.quad_nodes = o.quad_nodes;
    p.bound = parse_truncation(o.truncation);
    p.validate();
    const auto sigmas = resolve_grid(o.sigma, o.sigma_grid, "log:0.001:1:50", "sigma");
    require_positive(sigmas, "sigma");
    r.plan = {{"command", "binomial"}, {"g", p.g},
              {"d_min", p.d_min},      {"d_max", p.d_max},
              {"phi_points", o.phi_points}, {"quad_nodes", p.quad_nodes},
              {"truncation", o.truncation}, {"sigma", to_json_list(sigmas)},
              {"rows", sigmas.size()}};
    if (o.dry_run) return r;

    r.table.columns = {"sigma", "eps_bin_raw", "eps_bin_clipped", "D_opt", "phi_opt", "eps_nogo"};
    for (const auto& row : region_sweep(sigmas, p, o.jobs)) {
        r.table.add({row.sigma, row.eps_bin_raw, row.eps_bin_clipped, std::int64_t{row.D_opt}, row.phi_opt,
                     row.eps_nogo});
    }
    return r;
}

Outcome cmd_capacity(const Options& o) {
    Outcome r;
    const auto gs = int_list_or(o.g, "1,10,60");
    const auto sigmas = resolve_grid(o.sigma, o.sigma_grid, "log:0.001:3:64", "sigma");
    const auto gammas = resolve_grid(o.gamma, o.gamma_grid, "lin:0:1:64", "gamma");
    require_gaps(gs);
    require_nonnegative(sigmas, "sigma");
    for (double gm : gammas) {
        if (!(gm >= 0.0 && gm <= 1.0)) throw ValidationError("gamma must lie in [0, 1], got " + format_number(gm));
    }
    if (!(o.lambda >= 0.0 && o.lambda <= 1.0)) throw ValidationError("lambda must lie in [0, 1]");
    r.plan = {{"command", "capacity"},
              {"g", gs},
              {"lambda", o.lambda},
              {"sigma", to_json_list(sigmas)},
              {"gamma", to_json_list(gammas)},
              {"rows", gs.size() * sigmas.size() * gammas.size()}};
    if (o.dry_run) return r;

    r.table.columns = {"g", "lambda", "sigma", "gamma", "p", "q", "r", "Q_lower"};
    for (int g : gs) {
        for (const auto& row : capacity_sweep(g, o.lambda, sigmas, gammas, o.jobs)) {
            r.table.add({std::int64_t{row.g}, row.lambda, row.sigma, row.gamma, row.p, row.q, row.r, row.Q_lower});
        }
    }
    return r;
}

Outcome cmd_verify(const Options& o) {
    Outcome r;
    const auto gs = int_list_or(o.g, "2:8");
    require_gaps(gs);
    const int modes = single_int(o.modes, 1, "--modes");
    if (modes < 1) throw ValidationError("modes must be >= 1");
    std::vector<double> sigmas;
    if (!o.sigma.empty() || !o.sigma_grid.empty()) {
        sigmas = resolve_grid(o.sigma, o.sigma_grid, "", "sigma");
        require_positive(sigmas, "sigma");
    }
    const int cutoff = o.cutoff >= 0 ? o.cutoff : (modes == 1 ? 40 : 12);
    for (int g : gs) {
        if (cutoff < g) throw ValidationError("cutoff must be >= g for two lattice points");
    }
    if (o.trials < 1) throw ValidationError("trials must be >= 1");
    TruncationConfig trunc;
    trunc.n_max = cutoff;
    trunc.modes = modes;
    trunc.dim();
    r.plan = {{"command", "verify"}, {"g", gs},         {"modes", modes},
              {"cutoff", cutoff},    {"trials", o.trials}, {"seed", o.seed},
              {"sigma", sigmas.empty() ? ojson("uniform:0.1:2") : to_json_list(sigmas)},
              {"rows", o.trials}};
    if (o.dry_run) return r;

    // One stream draws the per-trial parameters and code seeds in order.
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::size_t> pick_g(0, gs.size() - 1);
    std::uniform_real_distribution<double> pick_sigma(0.1, 2.0);
    struct Trial {
        int g;
        double sigma;
        std::uint64_t seed;
    };
    std::vector<Trial> trials;
    for (int t = 0; t < o.trials; ++t) {
        const int g = gs[pick_g(rng)];
        const double sigma =
            sigmas.empty() ? pick_sigma(rng) : sigmas[std::uniform_int_distribution<std::size_t>(0, sigmas.size() - 1)(rng)];
        trials.push_back({g, sigma, rng()});
    }
    std::vector<Lemma4Check> checks(trials.size());
    parallel_for(trials.size(), o.jobs, [&](std::size_t i) {
        std::mt19937_64 local(trials[i].seed);
        const GappedCode code = random_gapped_code(local, trials[i].g, trunc);
        checks[i] = verify_lemma4(code, trials[i].sigma);
    });

    r.table.columns = {"trial", "g", "modes", "n_max", "sigma", "norm_pm", "norm_pmi", "bound", "holds"};
    int failures = 0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& c = checks[i];
        if (!c.holds) ++failures;
        r.table.add({static_cast<std::int64_t>(i), std::int64_t{trials[i].g}, std::int64_t{modes},
                     std::int64_t{cutoff}, trials[i].sigma, c.norm_pm, c.norm_pmi, c.bound, c.holds});
    }
    if (failures > 0) {
        r.exit_code = kComputation;
        r.failure = std::to_string(failures) + " of " + std::to_string(trials.size()) + " trials violate the bound";
    }
    return r;
}

GappedCode kernel_code(const Options& o, int g, const ErrorSet& errs) {
    const int k_max = o.kmax >= 0 ? o.kmax : default_k_max(errs);
    const AMatrix a = build_A_matrix(errs, g, k_max);
    std::optional<int> n_max;
    if (o.cutoff >= 0) n_max = o.cutoff;
    return code_from_kernel(kernel_vector(a.values), g, parse_convention(o.convention), n_max);
}

Outcome cmd_construct(const Options& o) {
    Outcome r;
    const int g = single_int(o.g, 2, "--g");
    const ErrorSet errs = parse_error_set(o.errors);
    errs.validate_for_gap(g);
    parse_convention(o.convention);
    const int k_max = o.kmax >= 0 ? o.kmax : default_k_max(errs);
    r.plan = {{"command", "construct"}, {"g", g},       {"errors", errs.names()},
              {"k_max", k_max},         {"convention", o.convention}};
    if (o.cutoff >= 0) r.plan["cutoff"] = o.cutoff;
    if (o.dry_run) return r;

    const GappedCode code = kernel_code(o, g, errs);
    r.table.columns = {"level", "zero_re", "zero_im", "one_re", "one_im"};
    for (Eigen::Index i = 0; i < code.zero().dim(); ++i) {
        const auto z = code.zero()[i];
        const auto w = code.one()[i];
        r.table.add({static_cast<std::int64_t>(i), z.real(), z.imag(), w.real(), w.imag()});
    }
    r.plan["code"] = code_to_json(code);
    return r;
}

Outcome cmd_klcheck(const Options& o) {
    Outcome r;
    const ErrorSet errs = parse_error_set(o.errors);
    if (!(o.tol > 0.0)) throw ValidationError("tol must be > 0");
    std::string source = "kernel";
    std::optional<GappedCode> code;
    int g = single_int(o.g, 2, "--g");
    if (!o.code.empty() && o.binomial_d >= 0) throw ValidationError("give either --code or --binomial-d, not both");
    if (!o.code.empty()) {
        std::ifstream in(o.code);
        if (!in) throw IoError("cannot read code file " + o.code);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("malformed code file " + o.code + ": " + e.what());
        }
        code = code_from_json(j);
        g = code->gap();
        source = "file";
    } else if (o.binomial_d >= 0) {
        source = "binomial";
    }
    errs.validate_for_gap(g);
    r.plan = {{"command", "klcheck"}, {"source", source}, {"g", g}, {"errors", errs.names()}, {"tol", o.tol}};
    if (source == "binomial") r.plan["D"] = o.binomial_d;
    if (o.dry_run) return r;

    if (source == "binomial") code = binomial_codewords(o.binomial_d, g);
    if (source == "kernel") code = kernel_code(o, g, errs);
    const KLReport rep = kl_check(*code, errs, o.tol);
    r.table.columns = {"source", "g", "errors", "max_offdiagonal_violation", "max_deformation_violation", "pass"};
    r.table.add({source, std::int64_t{g}, join(errs.names(), ";"), rep.max_offdiagonal_violation,
                 rep.max_deformation_violation, rep.pass});
    if (!rep.pass) {
        r.exit_code = kComputation;
        r.failure = "Knill-Laflamme conditions violated beyond tol " + format_number(o.tol);
    }
    return r;
}

void emit(const Outcome& outcome, const Options& o, Format format, std::ostream& out) {
    std::ostringstream body;
    if (o.dry_run) {
        body << outcome.plan.dump(2) << '\n';
    } else if (o.command == "construct" && format == Format::Json) {
        body << outcome.plan["code"].dump(2) << '\n';
    } else {
        write_table(outcome.table, format, body);
    }
    if (o.out.empty() || o.dry_run) {
        out << body.str();
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open output file " + o.out);
    f << body.str();
    f.flush();
    if (!f) throw IoError("failed writing output file " + o.out);
}

void report(std::ostream& err, bool as_json, int code, const std::string& kind, const std::string& message) {
    if (as_json) {
        ojson j = {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
        err << j.dump() << '\n';
    } else {
        err << "bosongap: " << kind << " error: " << message << '\n';
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw ValidationError("empty grid");
    const auto parts = split(spec, ':');
    if (parts.size() == 4 && (parts[0] == "log" || parts[0] == "lin")) {
        const double lo = parse_double(parts[1]);
        const double hi = parse_double(parts[2]);
        const int n = parse_int(parts[3]);
        if (n < 1) throw ValidationError("grid needs at least one point: " + spec);
        if (hi < lo) throw ValidationError("grid upper end below lower end: " + spec);
        if (n == 1 && lo != hi) throw ValidationError("a one-point grid needs lo == hi: " + spec);
        const bool log = parts[0] == "log";
        if (log && !(lo > 0.0)) throw ValidationError("log grid needs lo > 0: " + spec);
        std::vector<double> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            out[static_cast<std::size_t>(i)] =
                log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
        }
        out.front() = lo;
        out.back() = hi;
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split(spec, ',')) out.push_back(parse_double(p));
    return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
    if (spec.empty()) throw ValidationError("empty integer list");
    std::vector<int> out;
    for (const auto& item : split(spec, ',')) {
        const auto range = split(item, ':');
        if (range.size() == 1) {
            out.push_back(parse_int(item));
        } else if (range.size() == 2) {
            const int a = parse_int(range[0]);
            const int b = parse_int(range[1]);
            if (b < a) throw ValidationError("descending range " + item);
            if (b - a > 100000) throw ValidationError("range too long: " + item);
            for (int v = a; v <= b; ++v) out.push_back(v);
        } else {
            throw ValidationError("bad integer list item '" + item + "'");
        }
    }
    return out;
}

std::vector<std::string> config_tokens(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed config: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    auto scalar = [](const nlohmann::json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number()) return v.dump();
        throw ValidationError("config values must be strings, numbers, booleans or arrays of those");
    };
    std::vector<std::string> tokens;
    for (const auto& [key, value] : j.items()) {
        if (key == "config") throw ValidationError("config files cannot name another config");
        const std::string flag = "--" + key;
        if (value.is_null()) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back(flag);
            continue;
        }
        std::string text;
        if (value.is_array()) {
            std::vector<std::string> items;
            for (const auto& v : value) items.push_back(scalar(v));
            text = join(items, ",");
        } else {
            text = scalar(value);
        }
        tokens.push_back(flag);
        tokens.push_back(text);
    }
    return tokens;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const bool json_errors = std::find(args.begin(), args.end(), "--json-errors") != args.end();
    Options o;
    CLI::App app{"Bounds, channels and codes for gapped bosonic quantum codes.", "bosongap"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("command", o.command, "bounds | threshold | binomial | capacity | verify | construct | klcheck")
        ->required()
        ->check(CLI::IsMember({"bounds", "threshold", "binomial", "capacity", "verify", "construct", "klcheck"}));
    app.add_option("--g", o.g, "gap or list of gaps, e.g. 9, 1,10,60 or 1:10");
    app.add_option("--sigma", o.sigma, "single dephasing strength");
    app.add_option("--sigma-grid", o.sigma_grid, "log:lo:hi:n, lin:lo:hi:n or a comma list");
    app.add_option("--gamma", o.gamma, "single damping probability");
    app.add_option("--gamma-grid", o.gamma_grid, "log:lo:hi:n, lin:lo:hi:n or a comma list");
    app.add_option("--lambda", o.lambda, "dephasing weight in the mixed channel");
    app.add_option("--modes", o.modes, "number of modes N, or a list for bounds and threshold");
    app.add_option("--cutoff", o.cutoff, "Fock cutoff n_max");
    app.add_option("--d-min", o.d_min, "smallest binomial order D");
    app.add_option("--d-max", o.d_max, "largest binomial order D");
    app.add_option("--phi-points", o.phi_points, "number of phi candidates per (sigma, D)");
    app.add_option("--quad-nodes", o.quad_nodes, "Gauss-Legendre nodes for the binomial integral");
    app.add_option("--truncation", o.truncation, "exact | stirling");
    app.add_option("--errors", o.errors, "error set, e.g. loss:1,gain:1 or a,ad");
    app.add_option("--kmax", o.kmax, "columns of the A matrix minus one");
    app.add_option("--convention", o.convention, "sqrt | literal");
    app.add_option("--code", o.code, "code JSON file for klcheck");
    app.add_option("--binomial-d", o.binomial_d, "check the binomial code of order D");
    app.add_option("--tol", o.tol, "tolerance for klcheck");
    app.add_option("--trials", o.trials, "random codes drawn by verify");
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--format", o.format, "csv | json");
    app.add_option("--jobs", o.jobs, "worker threads");
    app.add_option("--seed", o.seed, "seed for randomized checks");
    app.add_option("--config", o.config, "JSON config; flags override its values");
    app.add_flag("--paper-literal,--literal", o.paper_literal, "also report the literal closed-form variants");
    app.add_flag("--dry-run", o.dry_run, "print the resolved plan and exit");
    app.add_flag("--json-errors", o.json_errors, "report errors as JSON objects");

    try {
        std::string config_path;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
        }
        if (config_path.empty()) {
            if (const char* env = std::getenv("BOSONGAP_CONFIG"); env != nullptr && *env != '\0') config_path = env;
        }
        std::vector<std::string> tokens;
        if (!config_path.empty()) tokens = config_tokens(read_file(config_path));
        tokens.insert(tokens.end(), args.begin(), args.end());
        std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
        app.parse(reversed);

        if (o.jobs < 1) throw ValidationError("jobs must be >= 1");
        const Format format = parse_format(o.format);
        Outcome outcome;
        if (o.command == "bounds") outcome = cmd_bounds(o);
        else if (o.command == "threshold") outcome = cmd_threshold(o);
        else if (o.command == "binomial") outcome = cmd_binomial(o);
        else if (o.command == "capacity") outcome = cmd_capacity(o);
        else if (o.command == "verify") outcome = cmd_verify(o);
        else if (o.command == "construct") outcome = cmd_construct(o);
        else outcome = cmd_klcheck(o);
        emit(outcome, o, format, out);
        if (outcome.exit_code != kOk) {
            report(err, o.json_errors, outcome.exit_code, "check", outcome.failure);
        }
        return outcome.exit_code;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        report(err, json_errors, kValidation, "usage", e.what());
        return kValidation;
    } catch (const ValidationError& e) {
        report(err, json_errors, kValidation, "validation", e.what());
        return kValidation;
    } catch (const IoError& e) {
        report(err, json_errors, kIo, "io", e.what());
        return kIo;
    } catch (const ComputationError& e) {
        report(err, json_errors, kComputation, "computation", e.what());
        return kComputation;
    } catch (const std::exception& e) {
        report(err, json_errors, kComputation, "internal", e.what());
        return kComputation;
    }
}

}  // namespace bosongap::cli
