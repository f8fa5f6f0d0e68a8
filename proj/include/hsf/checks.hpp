#pragma once

#include "hsf/boolean_function.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hsf {

struct ChecksConfig {
    std::uint64_t seed = 1;
    /// Random instances per exact suite.
    std::size_t count = 30;
    /// Largest arity of random functions in the exact suites.
    int max_n = 10;
    /// Monte Carlo samples per estimate.
    std::uint64_t samples = 200000;
};

struct CheckRow {
    std::string check;
    std::uint64_t instance_seed;
    double lhs;
    double rhs;
    double gap;
    bool holds;
};

/// Slack multiplier on Hoeffding radii in Monte Carlo comparisons.
inline constexpr double kMcSlack = 4.0;

/// Random ±1 function for property suites: uniform, biased or LTF-shaped
/// depending on the stream.
BooleanFunction random_function(int n, std::uint64_t seed);

/// Unit-norm weights with a geometric head (0.9^1 .. 0.9^8) and 620 equal
/// tail weights 0.4; max weight / norm is about 0.089.
Eigen::VectorXd geometric_tail_weights();

/// Runs every suite: restriction identity, restricted-NS aggregation,
/// constant bound, CDF gap, 2D quadrant comparison, tail-ratio band, Gaussian
/// lower bound and the theta = 0 exact case.
std::vector<CheckRow> run_checks(const ChecksConfig& config);

void write_checks_csv(std::ostream& out, const std::vector<CheckRow>& rows, std::uint64_t seed);

}  // namespace hsf
