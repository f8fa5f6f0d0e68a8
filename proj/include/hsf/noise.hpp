#pragma once

#include "hsf/boolean_function.hpp"
#include "hsf/error.hpp"
#include "hsf/ltf.hpp"
#include "hsf/parallel.hpp"
#include "hsf/random.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace hsf {

inline constexpr int kBruteForceCap = 12;

/// Failure probability behind every Monte Carlo radius.
inline constexpr double kMcFailureProbability = 1e-6;

/// Samples per independently seeded Monte Carlo chunk.
inline constexpr std::uint64_t kMcChunk = std::uint64_t{1} << 14;

struct NoiseParams {
    double epsilon;
    double rho;

    static NoiseParams from_epsilon(double epsilon) { return {epsilon, 1.0 - 2.0 * epsilon}; }
};

/// Additive Hoeffding half-width for the mean of `samples` {0,1} summands.
inline double hoeffding_radius(std::uint64_t samples,
                               double failure = kMcFailureProbability) {
    return std::sqrt(std::log(2.0 / failure) / (2.0 * static_cast<double>(samples)));
}

struct McEstimate {
    double value = 0.0;
    std::uint64_t samples = 0;
    double radius = 0.0;
    std::uint64_t hits = 0;
};

/// Runs `chunk(rng, count) -> hits` over fixed-size chunks, chunk c seeded by
/// (seed, c). The estimate is identical for every worker count.
template <typename ChunkFn>
McEstimate monte_carlo(std::uint64_t samples, std::uint64_t seed, ChunkFn&& chunk) {
    if (samples == 0) throw InvalidInput("Monte Carlo needs at least one sample");
    const std::uint64_t chunks = (samples + kMcChunk - 1) / kMcChunk;
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
        const std::uint64_t begin = c * kMcChunk;
        const std::uint64_t count = std::min(kMcChunk, samples - begin);
        CounterRng rng(seed, c);
        hits[c] = chunk(rng, count);
    });
    McEstimate e;
    e.samples = samples;
    for (auto h : hits) e.hits += h;
    e.value = static_cast<double>(e.hits) / static_cast<double>(samples);
    e.radius = hoeffding_radius(samples);
    return e;
}

/// Spectral formula 1/2 - 1/2 sum_S (1-2 eps)^|S| f^(S)^2, with squared
/// coefficients bucketed by degree first. eps in [0, 1/2].
double ns_exact(const FourierSpectrum& s, double epsilon);

/// Same formula from precomputed degree weights (see weight_by_degree).
double ns_from_degree_weights(const Eigen::VectorXd& degree_weights, double epsilon);

/// Exact NS by summing over all inputs and all flip patterns; O(4^n).
double ns_bruteforce(const BooleanFunction& f, double epsilon, int cap = kBruteForceCap);

/// Empirical Pr[f(x) != f(y)] over seeded eps-noisy pairs. `f` maps a ±1
/// assignment of length n to ±1.
template <typename Fn>
McEstimate ns_mc(int n, const Fn& f, double epsilon, std::uint64_t samples, std::uint64_t seed) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw InvalidInput("epsilon must lie in [0, 1/2]");
    return monte_carlo(samples, seed, [&](CounterRng& rng, std::uint64_t count) {
        std::vector<std::int8_t> x(static_cast<std::size_t>(n)), y(x.size());
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < count; ++s) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] = static_cast<std::int8_t>(rng.sign());
                y[i] = rng.uniform() < epsilon ? static_cast<std::int8_t>(-x[i]) : x[i];
            }
            hits += f(std::span<const std::int8_t>(x)) != f(std::span<const std::int8_t>(y));
        }
        return hits;
    });
}

McEstimate ns_mc(const BooleanFunction& f, double epsilon, std::uint64_t samples, std::uint64_t seed);
McEstimate ns_mc(const Ltf& f, double epsilon, std::uint64_t samples, std::uint64_t seed);

/// Upper tail Pr[X >= theta] of a standard Gaussian.
double gaussian_tail(double theta);

/// Pr[X <= t] of a standard Gaussian.
double gaussian_cdf(double t);

/// Closed-form lower bound (1/pi) arccos(rho) exp(-theta^2 / (1 + rho)) on
/// Pr[sign(X - theta) != sign(Y - theta)], rho = 1 - 2 eps, eps in (0, 1/2].
double gaussian_ns_bound(double theta, double epsilon);

/// Empirical Pr[sign(X - theta) != sign(Y - theta)] with X = Z1 and
/// Y = rho Z1 + sqrt(1 - rho^2) Z2.
McEstimate gaussian_ns_mc(double theta, double rho, std::uint64_t samples, std::uint64_t seed);

/// r(theta) = tail(theta) (theta + 1) exp(theta^2 / 2).
double tail_ratio(double theta);

struct TailRatioRange {
    double min;
    double max;
    double argmin;
    double argmax;
};

TailRatioRange tail_ratio_check(std::span<const double> theta_grid);

/// Extrema of r over default_tail_grid(), from a 40-digit reference
/// evaluation of the Gaussian tail. The maximum sits at theta = 0.68 and the
/// minimum at the right end, theta = 10.
inline constexpr double kTailRatioBandMin = 0.43457363511524603;
inline constexpr double kTailRatioBandMax = 0.52554671413395517;

/// The grid 0, 0.01, ..., 10 (1001 points).
std::vector<double> default_tail_grid();

struct ConstantBoundCheck {
    double lhs;  // NS_eps(f)
    double rhs;  // eps (1 - f^(empty)^2)
    bool holds;
};

ConstantBoundCheck constant_bound_check(const FourierSpectrum& s, double epsilon);

/// The grid -4, -3.98, ..., 4 (401 points).
std::vector<double> default_cdf_grid();

/// Exact law of w.x over uniform x as sorted (value, probability) atoms.
/// Built by convolving one weight at a time and merging coincident sums, so
/// repeated weights stay cheap.
std::vector<std::pair<double, double>> linear_form_distribution(const Eigen::VectorXd& w);

/// sup over the grid of |Pr[w.x <= t] - Phi(t)| for the unit-norm vector w.
double regular_cdf_gap(const Eigen::VectorXd& w, std::span<const double> t_grid);
double regular_cdf_gap(const Ltf& ltf, std::span<const double> t_grid);

/// Closed real interval; infinite endpoints allowed.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double v) const { return v >= lo && v <= hi; }
};

struct QuadrantComparison {
    McEstimate boolean;   // Pr[(w.x, w.y) in I1 x I2], rho-correlated bits
    McEstimate gaussian;  // Pr[(X, Y) in I1 x I2], rho-correlated Gaussians
    double gap;
};

/// Both estimates use independent streams derived from `seed`.
QuadrantComparison boolean_pair_quadrant_mc(const Eigen::VectorXd& w, const Interval& i1,
                                            const Interval& i2, double epsilon,
                                            std::uint64_t samples, std::uint64_t seed);
QuadrantComparison boolean_pair_quadrant_mc(const Ltf& ltf, const Interval& i1, const Interval& i2,
                                            double epsilon, std::uint64_t samples,
                                            std::uint64_t seed);

}  // namespace hsf
