// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
//
//   acceptance [--write-golden]
//
// Exit status is nonzero when a criterion fails, except for criteria listed
// in kUnattainable, whose failure is reported but expected.

#include "hsf/checks.hpp"
#include "hsf/junta.hpp"
#include "hsf/ltf.hpp"
#include "hsf/noise.hpp"
#include "hsf/random.hpp"
#include "hsf/restriction.hpp"
#include "hsf/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

using namespace hsf;

namespace {

constexpr double kExactTol = 1e-9;
constexpr double kIneqTol = 1e-12;
constexpr std::uint64_t kSeed = 20261018;
constexpr std::uint64_t kGaussianSamples = 1000000;

// Criterion 9 asks for n = 16 weights with max |w_i| <= 0.1 after
// normalization, but every unit vector in 16 dimensions has a coordinate of
// size at least 1/4.
const std::set<int> kUnattainable{9};

const char* kGoldenSweep = HSF_GOLDEN_DIR "/sweep_theorem.csv";

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

VarMask random_head(CounterRng& rng, int n, int max_size) {
    const int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(max_size, n - 1)));
    VarMask head = 0;
    while (mask_size(head) < size) head |= VarMask{1} << (rng() % static_cast<std::uint64_t>(n));
    return head;
}

Outcome transforms() {
    double parseval = 0.0, round_trip = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(i % 14);
        const auto f = random_function(n, derive_seed(derive_seed(kSeed, 1), i));
        const auto s = wht(f);
        parseval = std::max(parseval, std::abs(s.coefficients.squaredNorm() - 1.0));
        round_trip = std::max(round_trip, (synthesize(s) - f.to_vector()).cwiseAbs().maxCoeff());
    }
    return {parseval <= kExactTol && round_trip <= kExactTol,
            fmt("200 functions, n in [1,14]: max Parseval gap %.3g, max round-trip error %.3g", parseval,
                round_trip)};
}

Outcome ns_oracle() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const int n = 1 + static_cast<int>(i % 10);
        const auto f = random_function(n, derive_seed(derive_seed(kSeed, 2), i));
        const auto s = wht(f);
        for (double eps : {0.05, 0.1, 0.25, 0.5}) worst = std::max(worst, std::abs(ns_exact(s, eps) - ns_bruteforce(f, eps)));
    }
    return {worst <= kExactTol, fmt("50 functions x 4 eps: max |spectral - brute force| %.3g", worst)};
}

Outcome closed_forms() {
    double dict = 0.0, par = 0.0;
    for (double eps : {0.01, 0.05, 0.1, 0.25, 0.4, 0.5}) {
        dict = std::max(dict, std::abs(ns_exact(wht(dictator(5, 3)), eps) - eps));
        par = std::max(par, std::abs(ns_exact(wht(parity(2, 0b11)), eps) - 2 * eps * (1 - eps)));
    }
    const double maj_brute = ns_bruteforce(majority(3), 0.1);
    const double maj = std::abs(ns_exact(wht(majority(3)), 0.1) - maj_brute);
    const bool ok = dict <= 1e-12 && par <= 1e-12 && maj <= kExactTol && std::abs(maj_brute - 0.136) <= 1e-12;
    return {ok, fmt("dictator gap %.3g, parity gap %.3g, MAJ3(0.1) = %.17g (gap %.3g)", dict, par, maj_brute, maj)};
}

Outcome constant_bound() {
    int violations = 0;
    double slack = 1.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto s = wht(random_function(1 + static_cast<int>(i % 10), derive_seed(derive_seed(kSeed, 4), i)));
        for (double eps : {0.05, 0.25}) {
            const auto c = constant_bound_check(s, eps);
            violations += c.lhs < c.rhs - kIneqTol;
            slack = std::min(slack, c.lhs - c.rhs);
        }
    }
    return {violations == 0, fmt("100 functions x 2 eps: %d violations, min lhs - rhs %.3g", violations, slack)};
}

Outcome fact_restrict() {
    double worst = 0.0;
    int triples = 0;
    for (std::uint64_t i = 0; i < 30; ++i) {
        CounterRng rng(derive_seed(derive_seed(kSeed, 5), i));
        const int n = 2 + static_cast<int>(rng() % 9);
        const auto f = random_function(n, rng());
        const VarMask head = random_head(rng, n, 4);
        const VarMask rest = full_mask(n) & ~head;
        for (VarMask s = rest;; s = (s - 1) & rest) {
            worst = std::max(worst, verify_fact_restrict(f, head, s).gap);
            ++triples;
            if (s == 0) break;
        }
    }
    return {worst <= kExactTol, fmt("30 (f, H) pairs, %d subsets S: max gap %.3g", triples, worst)};
}

Outcome ns_aggregation() {
    int violations = 0, threshold_violations = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        CounterRng rng(derive_seed(derive_seed(kSeed, 6), i));
        const int n = 2 + static_cast<int>(rng() % 9);
        const auto f = random_function(n, rng());
        const VarMask head = random_head(rng, n, 4);
        const double eps = 0.5 * (1 - rng.uniform());
        const auto c = ns_aggregation_check(f, head, eps);
        violations += c.ns_f < c.expected_restricted_ns - kIneqTol;
        threshold_violations += !c.threshold_holds;
        for (double v : {0.01, 0.05, 0.1, 0.2, 0.3}) {
            const double frac = (c.restricted_ns.array() > v).cast<double>().mean();
            threshold_violations += c.ns_f < v * frac - kIneqTol;
        }
    }
    return {violations == 0 && threshold_violations == 0,
            fmt("100 triples: %d violations, %d thresholded contradictions", violations, threshold_violations)};
}

Outcome gaussian_lower_bound() {
    int failures = 0;
    double worst_margin = 1.0, worst_sheppard = 0.0;
    std::uint64_t k = 0;
    for (double theta : {0.0, 0.5, 1.0, 2.0}) {
        for (double rho : {0.0, 0.5, 0.9}) {
            const auto e = gaussian_ns_mc(theta, rho, kGaussianSamples, derive_seed(derive_seed(kSeed, 7), k++));
            const double bound = gaussian_ns_bound(theta, (1 - rho) / 2);
            const double margin = (e.value - bound) / e.radius;
            worst_margin = std::min(worst_margin, margin);
            failures += e.value < bound - kMcSlack * e.radius;
            if (theta == 0.0) {
                const double z = std::abs(e.value - std::acos(rho) / std::numbers::pi) / e.radius;
                worst_sheppard = std::max(worst_sheppard, z);
                failures += z > kMcSlack;
            }
        }
    }
    return {failures == 0, fmt("12 grid points, 1e6 samples: min (mc - bound)/radius %.3g, "
                               "max Sheppard |mc - exact|/radius %.3g (limit 4)",
                               worst_margin, worst_sheppard)};
}

Outcome tail_ratio_band() {
    const auto r = tail_ratio_check(default_tail_grid());
    const bool ok = r.min >= kTailRatioBandMin - kIneqTol && r.max <= kTailRatioBandMax + kIneqTol && r.min > 0 &&
                    r.max < 1;
    return {ok, fmt("r in [%.17g, %.17g] (argmin %.2f, argmax %.2f); frozen band [%.17g, %.17g]", r.min, r.max,
                    r.argmin, r.argmax, kTailRatioBandMin, kTailRatioBandMax)};
}

Outcome cdf_gap() {
    const auto grid = default_cdf_grid();
    const Ltf maj16 = random_ltf(16, {WeightFamily::Equal, 0.5}, {}, 0);
    const double tau_maj = regularity_profile(maj16).tau_star;
    const double gap_maj = regular_cdf_gap(maj16, grid);
    const bool maj_ok = gap_maj <= 2 * tau_maj;

    // The literal instance: geometric decay at n = 16 with the flattest rate
    // the family allows still has tau* near 1/4.
    double best_tau = 1.0;
    for (double rate = 0.50; rate < 0.9999; rate += 0.0001) {
        const Ltf g = random_ltf(16, {WeightFamily::GeometricDecay, rate}, {}, kSeed);
        best_tau = std::min(best_tau, regularity_profile(g).tau_star);
    }
    const bool literal_ok = best_tau <= 0.1;

    const Eigen::VectorXd tail = geometric_tail_weights();
    const double tau_tail = tail.cwiseAbs().maxCoeff();
    const double gap_tail = regular_cdf_gap(tail, grid);
    const bool tail_ok = gap_tail <= 2 * tau_tail;

    return {maj_ok && literal_ok && tail_ok,
            fmt("Majority16 gap %.4f <= %.2f: %s; geometric n=16 needs tau* <= 0.1 but min tau* = %.4f "
                "(>= 1/sqrt(16)): unattainable; geometric-head tail, n=%d, tau* %.4f: gap %.4f <= %.4f: %s",
                gap_maj, 2 * tau_maj, maj_ok ? "ok" : "NO", best_tau, static_cast<int>(tail.size()), tau_tail,
                gap_tail, 2 * tau_tail, tail_ok ? "ok" : "NO")};
}

Outcome projection_lemma() {
    int certified = 0, distance_fail = 0, residual_fail = 0;
    double worst_ratio = 0.0, worst_residual = 0.0;
    for (std::uint64_t i = 0; certified < 20 && i < 1000; ++i) {
        CounterRng rng(derive_seed(derive_seed(kSeed, 10), i));
        const int head = 1 + static_cast<int>(rng() % 4);
        const int n = head + 4 + static_cast<int>(rng() % 7);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = j < head ? 1.5 + rng.uniform() : 0.25 * rng.uniform();
        const Ltf l = canonicalize(w, 0.5 * rng.normal());
        const auto f = to_truth_table(l);
        const double delta = 0.05 + 0.15 * rng.uniform();
        const VarMask h = head_mask(l, head);
        const auto c = lemma_iib_construct(f, h, delta);
        if (!c.certified) continue;
        ++certified;
        const double dist = distance(f, extend(c.approximator, h, n));
        worst_ratio = std::max(worst_ratio, dist / delta);
        worst_residual = std::max(worst_residual, c.residual_spectral / delta);
        distance_fail += dist > 3 * delta;
        residual_fail += !(c.residual_spectral < 2 * delta);
    }
    return {certified == 20 && distance_fail == 0 && residual_fail == 0,
            fmt("%d certified instances: max distance/delta %.3g (limit 3), max ||h-g||^2/delta %.3g (limit 2)",
                certified, worst_ratio, worst_residual)};
}

Outcome best_junta_optimal() {
    int comparisons = 0, beaten = 0;
    for (int n = 1; n <= 6; ++n) {
        for (std::uint64_t i = 0; i < 8; ++i) {
            const auto f = random_function(n, derive_seed(derive_seed(kSeed, 11), 100 * n + i));
            for (VarMask head = 1; head <= full_mask(n); ++head) {
                const int size = mask_size(head);
                if (size > 3) continue;
                const double best = distance(f, extend(best_junta_on(f, head), head, n));
                const std::uint64_t rows = std::uint64_t{1} << size;
                for (std::uint64_t t = 0; t < (std::uint64_t{1} << rows); ++t) {
                    const auto g = BooleanFunction::tabulate(size, [&](std::uint64_t k) { return (t >> k) & 1 ? -1 : 1; });
                    beaten += distance(f, extend(g, head, n)) < best;
                    ++comparisons;
                }
            }
        }
    }
    return {beaten == 0, fmt("%d junta comparisons over n <= 6, |H| <= 3: beaten %d times", comparisons, beaten)};
}

SweepConfig theorem_sweep() {
    SweepConfig c;
    c.families = {{WeightFamily::Gaussian, 0.6}, {WeightFamily::GeometricDecay, 0.6}, {WeightFamily::Equal, 0.6}};
    c.min_n = 6;
    c.max_n = 18;
    c.count = 510;
    c.seed = kSeed;
    return c;
}

Outcome end_to_end(bool write_golden) {
    const SweepConfig cfg = theorem_sweep();
    const auto rows = run_sweep(cfg);
    std::ostringstream csv;
    write_sweep_csv(csv, rows, cfg.seed);

    int held = 0, failures = 0, vacuous = 0, max_n = 0;
    for (const auto& r : rows) {
        max_n = std::max(max_n, r.n);
        if (r.verdict.verdict == Verdict::PassVacuous) ++vacuous;
        if (r.verdict.failed()) ++failures;
        if (r.premise_holds) {
            ++held;
            if (r.distance > r.guarantee + kIneqTol || r.junta_size > r.L) ++failures;
        }
    }

    if (write_golden) std::ofstream(kGoldenSweep) << csv.str();
    std::ifstream in(kGoldenSweep);
    std::stringstream golden;
    golden << in.rdbuf();
    const bool identical = in.good() || in.eof() ? golden.str() == csv.str() : false;

    return {failures == 0 && identical && cfg.count >= 500 && max_n <= 18,
            fmt("%zu LTFs x 9 (eps, delta), n <= %d: %d premise-holding rows, %d vacuous, %d failures; "
                "golden CSV %s",
                cfg.count, max_n, held, vacuous, failures, identical ? "byte-identical" : "MISMATCH")};
}

}  // namespace

int main(int argc, char** argv) {
    const bool write_golden = argc > 1 && std::string(argv[1]) == "--write-golden";

    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"transform correctness", transforms},
        {"NS oracle equivalence", ns_oracle},
        {"closed forms", closed_forms},
        {"constant-function bound", constant_bound},
        {"restriction identity", fact_restrict},
        {"restricted NS aggregation", ns_aggregation},
        {"Gaussian NS lower bound", gaussian_lower_bound},
        {"Gaussian tail ratio band", tail_ratio_band},
        {"regular CDF gap", cdf_gap},
        {"projection lemma", projection_lemma},
        {"best junta optimality", best_junta_optimal},
        {"end-to-end theorem sweep", [&] { return end_to_end(write_golden); }},
    };

    int unexpected = 0, passed = 0, id = 0;
    for (const auto& [name, check] : criteria) {
        ++id;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const bool expected_fail = kUnattainable.count(id) > 0;
        std::printf("%s %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                    !o.pass && expected_fail ? " [unattainable as stated]" : "");
        passed += o.pass;
        if (!o.pass && !expected_fail) ++unexpected;
        if (o.pass && expected_fail) std::printf("     %2d was expected to fail; update kUnattainable\n", id);
    }
    std::printf("%d/%d criteria pass, %d unexpected failures\n", passed, id, unexpected);
    std::fflush(stdout);
    return unexpected == 0 ? 0 : 1;
}
