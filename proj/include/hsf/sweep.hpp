#pragma once

#include "hsf/junta.hpp"
#include "hsf/ltf.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hsf {

struct SweepConfig {
    /// Instance i uses families[i % families.size()].
    std::vector<FamilySpec> families{{WeightFamily::Gaussian, 0.5},
                                     {WeightFamily::GeometricDecay, 0.6},
                                     {WeightFamily::Equal, 0.5}};
    /// Arity cycles over [min_n, max_n] as instances advance.
    int min_n = 10;
    int max_n = 10;
    std::size_t count = 0;
    std::vector<double> epsilons{0.05, 0.1, 0.25};
    std::vector<double> deltas{0.05, 0.1, 0.2};
    std::uint64_t seed = 1;
    ThetaLaw theta_law{ThetaLawKind::Gaussian, 1.0};
    TheoremConfig theorem;
};

struct SweepRow {
    std::size_t instance;
    std::string family;
    int n;
    std::uint64_t instance_seed;
    double epsilon;
    double delta;
    JuntaCase case_taken;
    int junta_size;
    int L;
    int ell;
    double ns;
    double premise_bound;
    bool premise_holds;
    double distance;
    double guarantee;
    TheoremVerdict verdict;
};

/// Instance i is generated from derive_seed(seed, i); rows come back in
/// (instance, epsilon, delta) order whatever the worker count.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::uint64_t seed);

/// "inf" for kInfiniteIndex.
std::string format_index(int ell);

}  // namespace hsf
