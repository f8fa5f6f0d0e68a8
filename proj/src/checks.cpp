#include "hsf/checks.hpp"

#include "hsf/csv.hpp"
#include "hsf/junta.hpp"
#include "hsf/ltf.hpp"
#include "hsf/noise.hpp"
#include "hsf/random.hpp"
#include "hsf/restriction.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace hsf {

BooleanFunction random_function(int n, std::uint64_t seed) {
    CounterRng rng(seed, 0xf00d);
    switch (rng() % 3) {
        case 0:
            return BooleanFunction::tabulate(n, [&](std::uint64_t) { return rng.sign(); });
        case 1: {
            const double p_minus = rng.uniform();
            return BooleanFunction::tabulate(n, [&](std::uint64_t) { return rng.uniform() < p_minus ? -1 : 1; });
        }
        default: {
            const Ltf ltf = random_ltf(n, {WeightFamily::Gaussian, 0.5}, {ThetaLawKind::Gaussian, 1.0}, rng());
            return to_truth_table(ltf);
        }
    }
}

Eigen::VectorXd geometric_tail_weights() {
    constexpr int kHead = 8;
    constexpr int kTail = 620;
    Eigen::VectorXd w(kHead + kTail);
    double mag = 1.0;
    for (int i = 0; i < kHead; ++i) {
        mag *= 0.9;
        w[i] = mag;
    }
    w.tail(kTail).setConstant(0.4);
    return w / w.norm();
}

namespace {

struct Suite {
    std::vector<CheckRow>& rows;
    std::uint64_t base;

    std::uint64_t seed_for(std::uint64_t suite, std::uint64_t i) const {
        return derive_seed(derive_seed(base, suite), i);
    }
    void add(const std::string& name, std::uint64_t seed, double lhs, double rhs, double gap, bool holds) {
        rows.push_back({name, seed, lhs, rhs, gap, holds});
    }
};

int arity_for(CounterRng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Nonempty proper head of size at most `max_size`.
VarMask random_head(CounterRng& rng, int n, int max_size) {
    const int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(max_size, n - 1)));
    VarMask head = 0;
    while (mask_size(head) < size) head |= VarMask{1} << (rng() % static_cast<std::uint64_t>(n));
    return head;
}

}  // namespace

std::vector<CheckRow> run_checks(const ChecksConfig& config) {
    std::vector<CheckRow> rows;
    Suite suite{rows, config.seed};
    const int max_n = std::max(2, config.max_n);

    for (std::uint64_t i = 0; i < config.count; ++i) {
        const std::uint64_t seed = suite.seed_for(1, i);
        CounterRng rng(seed);
        const int n = arity_for(rng, 2, max_n);
        const BooleanFunction f = random_function(n, rng());
        const VarMask head = random_head(rng, n, 4);
        const VarMask rest = full_mask(n) & ~head;
        IdentityCheck worst{0.0, 0.0, -1.0};
        // Every S inside the complement of the head.
        for (VarMask s = rest;; s = (s - 1) & rest) {
            const IdentityCheck c = verify_fact_restrict(f, head, s);
            if (c.gap > worst.gap) worst = c;
            if (s == 0) break;
        }
        suite.add("fact_restrict", seed, worst.lhs, worst.rhs, worst.gap, worst.gap <= 1e-9);
    }

    for (std::uint64_t i = 0; i < config.count; ++i) {
        const std::uint64_t seed = suite.seed_for(2, i);
        CounterRng rng(seed);
        const int n = arity_for(rng, 2, max_n);
        const BooleanFunction f = random_function(n, rng());
        const VarMask head = random_head(rng, n, 4);
        const double eps = 0.5 * (1.0 - rng.uniform());
        const AggregationCheck c = ns_aggregation_check(f, head, eps);
        suite.add("ns_expected", seed, c.ns_f, c.expected_restricted_ns, c.ns_f - c.expected_restricted_ns,
                  c.holds);
        suite.add("ns_expected_threshold", seed, c.ns_f, c.threshold_bound, c.ns_f - c.threshold_bound,
                  c.threshold_holds);
    }

    for (std::uint64_t i = 0; i < config.count; ++i) {
        const std::uint64_t seed = suite.seed_for(3, i);
        CounterRng rng(seed);
        const int n = arity_for(rng, 1, max_n);
        const FourierSpectrum s = wht(random_function(n, rng()));
        for (double eps : {0.05, 0.25}) {
            const ConstantBoundCheck c = constant_bound_check(s, eps);
            suite.add("constant_bound", seed, c.lhs, c.rhs, c.lhs - c.rhs, c.holds);
        }
    }

    const auto cdf_grid = default_cdf_grid();
    const Ltf maj16 = random_ltf(16, {WeightFamily::Equal, 0.5}, {}, 0);
    const Eigen::VectorXd geo_tail = geometric_tail_weights();
    {
        const double tau = regularity_profile(maj16).tau_star;
        const double gap = regular_cdf_gap(maj16, cdf_grid);
        suite.add("cdf_gap_majority16", 0, gap, 2.0 * tau, 2.0 * tau - gap, gap <= 2.0 * tau);
        const double tau_geo = geo_tail.cwiseAbs().maxCoeff();
        const double gap_geo = regular_cdf_gap(geo_tail, cdf_grid);
        suite.add("cdf_gap_geometric_tail", 0, gap_geo, 2.0 * tau_geo, 2.0 * tau_geo - gap_geo,
                  gap_geo <= 2.0 * tau_geo);
    }

    {
        const Interval upper{0.0, std::numeric_limits<double>::infinity()};
        const double tau = regularity_profile(maj16).tau_star;
        for (double eps : {0.1, 0.25}) {
            const std::uint64_t seed = suite.seed_for(5, static_cast<std::uint64_t>(eps * 100));
            const QuadrantComparison q = boolean_pair_quadrant_mc(maj16, upper, upper, eps, config.samples, seed);
            const double allowed = 2.0 * tau + q.boolean.radius + q.gaussian.radius;
            suite.add("quadrant_majority16", seed, q.boolean.value, q.gaussian.value, q.gap, q.gap <= allowed);
        }
    }

    {
        const TailRatioRange r = tail_ratio_check(default_tail_grid());
        const bool inside = r.min >= kTailRatioBandMin - 1e-12 && r.max <= kTailRatioBandMax + 1e-12;
        suite.add("tail_ratio_band", 0, r.min, r.max, r.max - r.min, inside);
    }

    std::uint64_t k = 0;
    for (double theta : {0.0, 0.5, 1.0, 2.0}) {
        for (double rho : {0.0, 0.5, 0.9}) {
            const std::uint64_t seed = suite.seed_for(7, k++);
            const double eps = (1.0 - rho) / 2.0;
            const McEstimate e = gaussian_ns_mc(theta, rho, config.samples, seed);
            const double bound = gaussian_ns_bound(theta, eps);
            suite.add("gaussian_ns_lower_bound", seed, e.value, bound, e.value - bound,
                      e.value >= bound - kMcSlack * e.radius);
            if (theta == 0.0) {
                const double exact = std::acos(rho) / std::numbers::pi;
                suite.add("gaussian_ns_centered", seed, e.value, exact, std::abs(e.value - exact),
                          std::abs(e.value - exact) <= kMcSlack * e.radius);
            }
        }
    }
    return rows;
}

void write_checks_csv(std::ostream& out, const std::vector<CheckRow>& rows, std::uint64_t seed) {
    write_csv_row(out, {"check", "instance_seed", "lhs", "rhs", "gap", "holds"});
    for (const auto& r : rows) {
        write_csv_row(out, {r.check, std::to_string(r.instance_seed), format_real(r.lhs), format_real(r.rhs),
                            format_real(r.gap), format_bool(r.holds)});
    }
    write_csv_metadata(out, seed);
}

}  // namespace hsf
