#include "hsf/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <numbers>

namespace hsf {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
        throw InvalidInput("epsilon must lie in [0, 1/2], got " + std::to_string(epsilon));
    }
}

}  // namespace

double ns_from_degree_weights(const Eigen::VectorXd& degree_weights, double epsilon) {
    check_epsilon(epsilon);
    const double rho = 1.0 - 2.0 * epsilon;
    double poly = 0.0;
    for (Eigen::Index d = degree_weights.size() - 1; d >= 0; --d) {
        poly = poly * rho + degree_weights[d];
    }
    return 0.5 - 0.5 * poly;
}

double ns_exact(const FourierSpectrum& s, double epsilon) {
    return ns_from_degree_weights(weight_by_degree(s), epsilon);
}

double ns_bruteforce(const BooleanFunction& f, double epsilon, int cap) {
    check_epsilon(epsilon);
    const int n = f.arity();
    if (n > cap) {
        throw CapExceeded("brute-force NS limited to n <= " + std::to_string(cap));
    }
    // disagree[d] counts (x, m) pairs with |m| = d and f(x) != f(x xor m).
    std::vector<std::uint64_t> disagree(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        for (std::size_t m = 0; m < f.size(); ++m) {
            if (f[x] != f[x ^ m]) ++disagree[static_cast<std::size_t>(std::popcount(m))];
        }
    }
    double total = 0.0;
    for (int d = 0; d <= n; ++d) {
        const double pattern = std::pow(epsilon, d) * std::pow(1.0 - epsilon, n - d);
        total += static_cast<double>(disagree[static_cast<std::size_t>(d)]) * pattern;
    }
    return total / static_cast<double>(f.size());
}

McEstimate ns_mc(const BooleanFunction& f, double epsilon, std::uint64_t samples, std::uint64_t seed) {
    return ns_mc(f.arity(), f, epsilon, samples, seed);
}

McEstimate ns_mc(const Ltf& f, double epsilon, std::uint64_t samples, std::uint64_t seed) {
    return ns_mc(
        f.input_arity, [&](std::span<const std::int8_t> x) { return evaluate(f, x); }, epsilon,
        samples, seed);
}

double gaussian_tail(double theta) { return 0.5 * std::erfc(theta / std::numbers::sqrt2); }

double gaussian_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double gaussian_ns_bound(double theta, double epsilon) {
    const double rho = 1.0 - 2.0 * epsilon;
    const double t = std::abs(theta);
    return std::acos(rho) / std::numbers::pi * std::exp(-t * t / (1.0 + rho));
}

McEstimate gaussian_ns_mc(double theta, double rho, std::uint64_t samples, std::uint64_t seed) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [-1, 1]");
    const double orth = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    return monte_carlo(samples, seed, [&](CounterRng& rng, std::uint64_t count) {
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < count; ++s) {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            const double x = z1;
            const double y = rho * z1 + orth * z2;
            hits += (x >= theta) != (y >= theta);
        }
        return hits;
    });
}

double tail_ratio(double theta) {
    return gaussian_tail(theta) * (theta + 1.0) * std::exp(0.5 * theta * theta);
}

TailRatioRange tail_ratio_check(std::span<const double> theta_grid) {
    if (theta_grid.empty()) throw InvalidInput("tail ratio grid is empty");
    TailRatioRange out{std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (double t : theta_grid) {
        const double r = tail_ratio(t);
        if (r < out.min) {
            out.min = r;
            out.argmin = t;
        }
        if (r > out.max) {
            out.max = r;
            out.argmax = t;
        }
    }
    return out;
}

std::vector<double> default_tail_grid() {
    std::vector<double> g(1001);
    for (int k = 0; k <= 1000; ++k) g[static_cast<std::size_t>(k)] = k / 100.0;
    return g;
}

ConstantBoundCheck constant_bound_check(const FourierSpectrum& s, double epsilon) {
    const double lhs = ns_exact(s, epsilon);
    const double mean = s[0];
    const double rhs = epsilon * (1.0 - mean * mean);
    return {lhs, rhs, lhs >= rhs - 1e-12};
}

std::vector<double> default_cdf_grid() {
    std::vector<double> g(401);
    for (int k = 0; k <= 400; ++k) g[static_cast<std::size_t>(k)] = -4.0 + k / 50.0;
    return g;
}

std::vector<std::pair<double, double>> linear_form_distribution(const Eigen::VectorXd& w) {
    constexpr double kMergeTol = 1e-12;
    // Smallest magnitudes first keeps the atom list short while repeated
    // tail weights collapse.
    std::vector<double> order(w.data(), w.data() + w.size());
    std::sort(order.begin(), order.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });

    using Atom = std::pair<double, double>;
    std::vector<Atom> atoms{{0.0, 1.0}}, lo, hi, merged;
    for (double wi : order) {
        const double step = std::abs(wi);
        lo.resize(atoms.size());
        hi.resize(atoms.size());
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            lo[k] = {atoms[k].first - step, 0.5 * atoms[k].second};
            hi[k] = {atoms[k].first + step, 0.5 * atoms[k].second};
        }
        merged.clear();
        std::merge(lo.begin(), lo.end(), hi.begin(), hi.end(), std::back_inserter(merged),
                   [](const Atom& a, const Atom& b) { return a.first < b.first; });
        atoms.clear();
        for (const auto& a : merged) {
            if (!atoms.empty() && a.first - atoms.back().first <= kMergeTol) {
                atoms.back().second += a.second;
            } else {
                atoms.push_back(a);
            }
        }
    }
    return atoms;
}

double regular_cdf_gap(const Eigen::VectorXd& w, std::span<const double> t_grid) {
    const auto atoms = linear_form_distribution(w);
    std::vector<double> cdf(atoms.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        acc += atoms[k].second;
        cdf[k] = acc;
    }
    double gap = 0.0;
    for (double t : t_grid) {
        // Atoms within rounding of t count as <= t.
        const auto it = std::upper_bound(atoms.begin(), atoms.end(), t + 1e-12,
                                         [](double v, const auto& a) { return v < a.first; });
        const double below = it == atoms.begin() ? 0.0 : cdf[static_cast<std::size_t>(it - atoms.begin()) - 1];
        gap = std::max(gap, std::abs(below - gaussian_cdf(t)));
    }
    return gap;
}

double regular_cdf_gap(const Ltf& ltf, std::span<const double> t_grid) {
    return regular_cdf_gap(ltf.weights, t_grid);
}

QuadrantComparison boolean_pair_quadrant_mc(const Eigen::VectorXd& w, const Interval& i1,
                                            const Interval& i2, double epsilon,
                                            std::uint64_t samples, std::uint64_t seed) {
    check_epsilon(epsilon);
    const double rho = 1.0 - 2.0 * epsilon;
    QuadrantComparison out;
    out.boolean = monte_carlo(samples, derive_seed(seed, 0), [&](CounterRng& rng, std::uint64_t count) {
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < count; ++s) {
            double sx = 0.0, sy = 0.0;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                const int xi = rng.sign();
                const int yi = rng.uniform() < epsilon ? -xi : xi;
                sx += w[i] * xi;
                sy += w[i] * yi;
            }
            hits += i1.contains(sx) && i2.contains(sy);
        }
        return hits;
    });
    const double orth = std::sqrt(1.0 - rho * rho);
    out.gaussian = monte_carlo(samples, derive_seed(seed, 1), [&](CounterRng& rng, std::uint64_t count) {
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < count; ++s) {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            hits += i1.contains(z1) && i2.contains(rho * z1 + orth * z2);
        }
        return hits;
    });
    out.gap = std::abs(out.boolean.value - out.gaussian.value);
    return out;
}

QuadrantComparison boolean_pair_quadrant_mc(const Ltf& ltf, const Interval& i1, const Interval& i2,
                                            double epsilon, std::uint64_t samples,
                                            std::uint64_t seed) {
    return boolean_pair_quadrant_mc(ltf.weights, i1, i2, epsilon, samples, seed);
}

}  // namespace hsf
