#include "hsf/cli.hpp"

#include "hsf/checks.hpp"
#include "hsf/csv.hpp"
#include "hsf/error.hpp"
#include "hsf/junta.hpp"
#include "hsf/ltf.hpp"
#include "hsf/noise.hpp"
#include "hsf/random.hpp"
#include "hsf/restriction.hpp"
#include "hsf/sweep.hpp"
#include "hsf/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace hsf {

namespace {

struct GlobalOptions {
    std::uint64_t seed = 1;
    int max_n = kDefaultArityCap;
    std::string out_path;
    bool quiet = false;
};

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
    if (seed_opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("HSF_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InvalidInput(std::string("HSF_SEED is not an unsigned integer: '") + env + "'");
    }
    return 1;
}

Ltf load_ltf(const std::string& path, int max_n) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open ltf file '" + path + "'");
    const LtfFile file = read_ltf_file(in);
    if (static_cast<int>(file.weights.size()) > max_n) {
        throw CapExceeded("ltf has " + std::to_string(file.weights.size()) + " weights, above --max-n " +
                          std::to_string(max_n));
    }
    return canonicalize(file.weights, file.theta);
}

std::string coordinate_list(VarMask m) {
    std::string s = "{";
    bool first = true;
    for (int c : mask_members(m)) {
        if (!first) s += ",";
        s += std::to_string(c + 1);
        first = false;
    }
    return s + "}";
}

std::string coordinate_list(const std::vector<int>& coords) {
    VarMask m = 0;
    for (int c : coords) m |= VarMask{1} << c;
    return coordinate_list(m);
}

/// CSV destination: --out when given, otherwise the main stream.
class CsvSink {
public:
    CsvSink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidInput("cannot write output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string ltf_path;
    std::vector<double> taus{0.05, 0.1, 0.25, 0.5, 1.0};
    std::vector<double> epsilons{0.01, 0.05, 0.1, 0.25, 0.5};
    double head_tau = 0.1;
};

void write_analysis(std::ostream& os, const Ltf& ltf, const AnalyzeOptions& opt, int head_cap) {
    const LtfInstance inst = LtfInstance::build(ltf, kMaxArityCap);
    const RegularityProfile prof = regularity_profile(ltf);

    os << "ltf:\n";
    os << "  input_arity: " << ltf.input_arity << "\n";
    os << "  relevant: " << ltf.size() << "\n";
    os << "  dropped: " << coordinate_list(ltf.dropped) << "\n";
    os << "  threshold: " << format_real(ltf.threshold) << "\n";
    os << "  tau_star: " << format_real(prof.tau_star) << "\n";
    os << "  mean: " << format_real(inst.spectrum[0]) << "\n";

    os << "weights:\n  position,coordinate,weight,sigma\n";
    for (int j = 0; j < ltf.size(); ++j) {
        os << "  " << j + 1 << "," << ltf.original_index[static_cast<std::size_t>(j)] + 1 << ","
           << format_real(ltf.weights[j]) << "," << format_real(prof.tail_norms[j]) << "\n";
    }

    os << "critical_index:\n";
    for (double tau : opt.taus) {
        os << "  tau=" << format_real(tau) << ": " << format_index(critical_index(ltf, tau)) << "\n";
    }

    os << "noise_sensitivity:\n";
    for (double eps : opt.epsilons) {
        os << "  epsilon=" << format_real(eps) << ": " << format_real(ns_from_degree_weights(inst.degree_weights, eps))
           << "\n";
    }

    os << "spectral_weight:\n";
    for (Eigen::Index d = 0; d < inst.degree_weights.size(); ++d) {
        os << "  degree=" << d << ": " << format_real(inst.degree_weights[d]) << "\n";
    }

    os << "bias_profile:\n";
    const int ell = critical_index(ltf, opt.head_tau);
    os << "  head_tau: " << format_real(opt.head_tau) << "\n";
    os << "  critical_index: " << format_index(ell) << "\n";
    if (ell == kInfiniteIndex || ell > head_cap) {
        os << "  head: none\n";
        return;
    }
    const VarMask head = head_mask(ltf, ell);
    const BiasProfile p = bias_profile(inst.table, head, head_cap);
    os << "  head: " << coordinate_list(head) << "\n";
    os << "  min_abs_bias: " << format_real(p.biases.cwiseAbs().minCoeff()) << "\n";
    for (double delta : {0.05, 0.1, 0.2}) {
        os << "  frac_unbiased(delta=" << format_real(delta) << "): " << format_real(p.frac_unbiased(delta)) << "\n";
    }
    if (p.biases.size() <= 64) {
        os << "  biases:";
        for (Eigen::Index a = 0; a < p.biases.size(); ++a) os << " " << format_real(p.biases[a]);
        os << "\n";
    }
}

int cmd_analyze(const AnalyzeOptions& opt, const GlobalOptions& g, std::ostream& out) {
    const Ltf ltf = load_ltf(opt.ltf_path, g.max_n);
    std::ostringstream report;
    write_analysis(report, ltf, opt, kDefaultHeadCap);
    if (!g.quiet) out << report.str();
    if (!g.out_path.empty()) {
        CsvSink sink(g.out_path, out);
        sink.stream() << report.str();
    }
    return kExitOk;
}

// ------------------------------------------------------------------ junta

struct JuntaOptions {
    std::string ltf_path;
    double epsilon = 0.1;
    double delta = 0.1;
    double c_ns = 1.0;
    double c_L = 1.0;
};

void write_junta_report(std::ostream& os, const JuntaReport& r, const TheoremVerdict& v) {
    const JuntaDiagnostics& d = r.diag;
    os << "case: " << case_name(r.case_taken) << "\n";
    os << "junta_set: " << coordinate_list(r.junta_set) << "\n";
    os << "junta_size: " << r.junta_size() << "\n";
    os << "L: " << d.L << "\n";
    os << "critical_index: " << format_index(d.ell) << "\n";
    os << "ns: " << format_real(d.ns_value) << "\n";
    os << "premise_bound: " << format_real(d.premise_bound) << "\n";
    os << "premise_holds: " << format_bool(d.premise_holds) << "\n";
    os << "small_delta_split: " << format_bool(d.small_delta_split) << "\n";
    os << "iia_condition: " << format_bool(d.iia_condition) << "\n";
    os << "iia_reference: " << format_real(d.iia_reference) << "\n";
    if (d.bias_head_size > 0) {
        os << "bias_head: " << coordinate_list(d.bias_head) << "\n";
        os << "frac_unbiased: " << format_real(d.frac_unbiased) << "\n";
        os << "min_abs_bias: " << format_real(d.min_abs_bias) << "\n";
    }
    if (d.projection_residual) os << "projection_residual: " << format_real(*d.projection_residual) << "\n";
    os << "guarantee: " << format_real(d.guarantee_bound) << "\n";
    os << "distance: " << format_real(r.distance) << "\n";
    os << "in_validity_range: " << format_bool(d.in_validity_range) << "\n";
    os << "verdict: " << verdict_name(v.verdict) << " (" << v.label << ")\n";
}

int cmd_junta(const JuntaOptions& opt, const GlobalOptions& g, std::ostream& out) {
    TheoremConfig cfg;
    cfg.c_ns = opt.c_ns;
    cfg.c_L = opt.c_L;
    cfg.arity_cap = g.max_n;
    const Ltf ltf = load_ltf(opt.ltf_path, g.max_n);
    const JuntaReport r = extract_junta(ltf, opt.epsilon, opt.delta, cfg);
    const TheoremVerdict v = theorem_verify(r, opt.delta);

    if (!g.quiet) write_junta_report(out, r, v);
    CsvSink sink(g.out_path, out);
    std::ostream& csv = sink.stream();
    write_csv_row(csv, {"case", "junta_size", "L", "ell", "ns", "premise_bound", "premise_holds", "distance",
                        "guarantee", "verdict"});
    write_csv_row(csv, {case_name(r.case_taken), std::to_string(r.junta_size()), std::to_string(r.diag.L),
                        format_index(r.diag.ell), format_real(r.diag.ns_value), format_real(r.diag.premise_bound),
                        format_bool(r.diag.premise_holds), format_real(r.distance),
                        format_real(r.diag.guarantee_bound), verdict_name(v.verdict)});
    write_csv_metadata(csv, g.seed);
    return v.failed() ? kExitCheckFailed : kExitOk;
}

// ------------------------------------------------------------------ sweep

struct SweepOptions {
    std::vector<std::string> families{"gaussian", "geometric", "equal"};
    int n = 10;
    std::optional<int> min_n;
    std::size_t count = 10;
    std::vector<double> epsilons{0.05, 0.1, 0.25};
    std::vector<double> deltas{0.05, 0.1, 0.2};
    double rate = 0.6;
    double theta_scale = 1.0;
    double c_ns = 1.0;
    double c_L = 1.0;
};

int cmd_sweep(const SweepOptions& opt, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
    SweepConfig cfg;
    cfg.families.clear();
    for (const auto& name : opt.families) cfg.families.push_back({parse_family(name), opt.rate});
    cfg.max_n = opt.n;
    cfg.min_n = opt.min_n.value_or(opt.n);
    if (cfg.max_n > g.max_n) throw CapExceeded("--n above --max-n");
    cfg.count = opt.count;
    cfg.epsilons = opt.epsilons;
    cfg.deltas = opt.deltas;
    cfg.seed = g.seed;
    cfg.theta_law = {ThetaLawKind::Gaussian, opt.theta_scale};
    cfg.theorem.c_ns = opt.c_ns;
    cfg.theorem.c_L = opt.c_L;
    cfg.theorem.arity_cap = g.max_n;

    const auto rows = run_sweep(cfg);
    CsvSink sink(g.out_path, out);
    write_sweep_csv(sink.stream(), rows, g.seed);

    std::size_t failures = 0, vacuous = 0;
    for (const auto& r : rows) {
        failures += r.verdict.failed();
        vacuous += r.verdict.verdict == Verdict::PassVacuous;
    }
    if (!g.quiet) {
        err << "sweep: " << rows.size() << " rows, " << rows.size() - vacuous - failures << " pass, " << vacuous
            << " vacuous, " << failures << " fail\n";
    }
    return failures ? kExitCheckFailed : kExitOk;
}

// --------------------------------------------------------------- gaussian

struct GaussianOptions {
    std::optional<double> theta;
    std::optional<double> epsilon;
    std::uint64_t samples = 1000000;
};

int cmd_gaussian(const GaussianOptions& opt, const GlobalOptions& g, std::ostream& out) {
    std::vector<double> thetas{0.0, 0.5, 1.0, 2.0};
    std::vector<double> epsilons{0.5, 0.25, 0.05};
    if (opt.theta) thetas = {*opt.theta};
    if (opt.epsilon) epsilons = {*opt.epsilon};
    for (double e : epsilons) {
        if (!(e > 0.0 && e <= 0.5)) throw InvalidInput("--epsilon must lie in (0, 1/2]");
    }

    CsvSink sink(g.out_path, out);
    std::ostream& csv = sink.stream();
    write_csv_row(csv, {"theta", "rho", "bound", "mc_value", "mc_radius", "holds"});
    bool all = true;
    std::uint64_t row = 0;
    for (double theta : thetas) {
        for (double eps : epsilons) {
            const double rho = 1.0 - 2.0 * eps;
            const double bound = gaussian_ns_bound(theta, eps);
            const McEstimate e = gaussian_ns_mc(theta, rho, opt.samples, derive_seed(g.seed, row++));
            const bool holds = e.value >= bound - kMcSlack * e.radius;
            all = all && holds;
            write_csv_row(csv, {format_real(theta), format_real(rho), format_real(bound), format_real(e.value),
                                format_real(e.radius), format_bool(holds)});
        }
    }
    write_csv_metadata(csv, g.seed);
    return all ? kExitOk : kExitCheckFailed;
}

// ----------------------------------------------------------------- checks

int cmd_checks(ChecksConfig cfg, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
    cfg.seed = g.seed;
    const auto rows = run_checks(cfg);
    CsvSink sink(g.out_path, out);
    write_checks_csv(sink.stream(), rows, g.seed);
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.holds) {
            ++failed;
            err << "check failed: " << r.check << " seed=" << r.instance_seed << "\n";
        }
    }
    return failed ? kExitCheckFailed : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fourier, noise-sensitivity and junta analysis of linear threshold functions", "hsf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GlobalOptions g;
    std::uint64_t seed_flag = 1;
    const CLI::Option* seed_opt = app.add_option("--seed", seed_flag, "Base seed (falls back to HSF_SEED)");
    app.add_option("--max-n", g.max_n, "Arity cap for exact operations")->check(CLI::Range(1, kMaxArityCap));
    app.add_option("--out", g.out_path, "Write the CSV/report to this path");
    app.add_flag("--quiet", g.quiet, "Suppress the human-readable report");

    AnalyzeOptions analyze;
    auto* a = app.add_subcommand("analyze", "Profile an LTF: weights, critical indices, NS curve, spectrum");
    a->fallthrough();
    a->add_option("--ltf", analyze.ltf_path, "LTF file {\"weights\": [...], \"theta\": t}")->required();
    a->add_option("--taus", analyze.taus, "Critical-index thresholds")->delimiter(',');
    a->add_option("--epsilons", analyze.epsilons, "Noise rates")->delimiter(',');
    a->add_option("--head-tau", analyze.head_tau, "Threshold defining the head for the bias profile");

    JuntaOptions junta;
    auto* j = app.add_subcommand("junta", "Extract a junta approximator and verify the guarantee");
    j->fallthrough();
    j->add_option("--ltf", junta.ltf_path, "LTF file")->required();
    j->add_option("--epsilon", junta.epsilon, "Noise rate")->required();
    j->add_option("--delta", junta.delta, "Target distance")->required();
    j->add_option("--c-ns", junta.c_ns, "Premise constant");
    j->add_option("--c-l", junta.c_L, "Budget constant");

    SweepOptions sweep;
    auto* s = app.add_subcommand("sweep", "Run the junta extraction over seeded random LTFs");
    s->fallthrough();
    s->add_option("--families", sweep.families, "gaussian, geometric, equal")->delimiter(',');
    s->add_option("--n", sweep.n, "Arity (largest arity when --min-n is given)");
    s->add_option("--min-n", sweep.min_n, "Smallest arity; instances cycle through [min-n, n]");
    s->add_option("--count", sweep.count, "Number of instances");
    s->add_option("--epsilons", sweep.epsilons, "Noise rates")->delimiter(',');
    s->add_option("--deltas", sweep.deltas, "Target distances")->delimiter(',');
    s->add_option("--rate", sweep.rate, "Geometric decay rate");
    s->add_option("--theta-scale", sweep.theta_scale, "Thresholds are theta-scale * N(0,1)");
    s->add_option("--c-ns", sweep.c_ns, "Premise constant");
    s->add_option("--c-l", sweep.c_L, "Budget constant");

    GaussianOptions gauss;
    auto* ga = app.add_subcommand("gaussian", "Compare Gaussian NS against its closed-form lower bound");
    ga->fallthrough();
    ga->add_option("--theta", gauss.theta, "Threshold (default grid 0, 0.5, 1, 2)");
    ga->add_option("--epsilon", gauss.epsilon, "Noise rate (default grid 0.5, 0.25, 0.05)");
    ga->add_option("--samples", gauss.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);

    ChecksConfig checks;
    auto* c = app.add_subcommand("checks", "Run the identity and inequality suites");
    c->fallthrough();
    c->add_option("--count", checks.count, "Random instances per exact suite");
    c->add_option("--samples", checks.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    c->add_option("--fn-max-n", checks.max_n, "Largest arity of random functions")->check(CLI::Range(2, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        g.seed = resolve_seed(seed_opt, seed_flag);
        if (*a) return cmd_analyze(analyze, g, out);
        if (*j) return cmd_junta(junta, g, out);
        if (*s) return cmd_sweep(sweep, g, out, err);
        if (*ga) return cmd_gaussian(gauss, g, out);
        if (*c) return cmd_checks(checks, g, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace hsf
