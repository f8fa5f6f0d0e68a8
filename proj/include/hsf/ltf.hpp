#pragma once

#include "hsf/boolean_function.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hsf {

/// Returned by critical_index when no position qualifies.
inline constexpr int kInfiniteIndex = std::numeric_limits<int>::max();

/// Relative slack in |w_i| <= tau * sigma_i, absorbing normalization rounding.
inline constexpr double kRegularityTolerance = 1e-12;

/// sign(w.x - theta) with canonical weights: unit norm, nonzero, sorted by
/// magnitude descending (ties by smaller input coordinate).
///
/// Coordinates are 0-based input positions throughout; `original_index[j]`
/// is the input coordinate of sorted position j.
struct Ltf {
    Eigen::VectorXd weights;
    double threshold = 0.0;
    std::vector<int> original_index;
    std::vector<int> dropped;
    int input_arity = 0;
    /// |w.x - theta| at or below this counts as a tie, so sign(0) = +1 is
    /// applied consistently despite rounding.
    double tie_slack = 0.0;

    int size() const { return static_cast<int>(weights.size()); }
};

Ltf canonicalize(std::span<const double> weights, double theta);
Ltf canonicalize(const Eigen::VectorXd& weights, double theta);

/// w.x - theta for a ±1 assignment over the input coordinates.
double linear_form(const Ltf& ltf, std::span<const std::int8_t> x);

/// sign(w.x - theta), sign(0) = +1.
int evaluate(const Ltf& ltf, std::span<const std::int8_t> x);

/// Truth table over the input arity (dropped coordinates are irrelevant).
BooleanFunction to_truth_table(const Ltf& ltf, int cap = kDefaultArityCap);

struct RegularityProfile {
    Eigen::VectorXd tail_norms;  // entry k-1 holds sigma_k
    double tau_star = 0.0;       // max_i |w_i| / ||w||
};

RegularityProfile regularity_profile(const Ltf& ltf);

/// max |w_i| <= tau * ||w||, with kRegularityTolerance slack.
bool is_regular(const Eigen::VectorXd& w, double tau);

/// Smallest 1-based i with |w_i| <= tau * sigma_i, or kInfiniteIndex.
/// Throws InvalidInput for tau <= 0.
int critical_index(const Ltf& ltf, double tau);

struct WeightTerm {
    int position;    // 1-based sorted position
    int coordinate;  // 0-based input coordinate
    double weight;
};

struct HeadTailSplit {
    std::vector<WeightTerm> head;
    std::vector<WeightTerm> tail;
    /// Tail weights divided by their norm; empty when the tail is empty.
    Eigen::VectorXd tail_normalized;
    double tail_norm = 0.0;
    double tail_tau_star = 0.0;
};

/// Splits the linear form at the first `ell` sorted positions (1 <= ell <= n).
HeadTailSplit head_split(const Ltf& ltf, int ell);

/// Input-coordinate mask of the first k sorted positions (k clipped to n).
VarMask head_mask(const Ltf& ltf, int k);

enum class WeightFamily { Gaussian, GeometricDecay, Equal };

struct FamilySpec {
    WeightFamily family = WeightFamily::Gaussian;
    double rate = 0.5;  // geometric decay only, in (0, 1)
};

enum class ThetaLawKind { Zero, Fixed, Gaussian };

/// Threshold law in units of ||w||: Fixed uses `value`, Gaussian draws
/// value * N(0, 1).
struct ThetaLaw {
    ThetaLawKind kind = ThetaLawKind::Zero;
    double value = 0.0;
};

/// Deterministic in (n, family, theta law, seed). Gaussian weights are i.i.d.
/// N(0,1); geometric weights are ±rate^i placed on a shuffled coordinate
/// order; equal weights are all +1.
Ltf random_ltf(int n, const FamilySpec& family, const ThetaLaw& theta, std::uint64_t seed,
               int cap = kDefaultArityCap);

std::string family_name(WeightFamily f);
WeightFamily parse_family(const std::string& name);

/// Raw contents of an LTF file: {"weights": [...], "theta": <real>}.
struct LtfFile {
    std::vector<double> weights;
    double theta = 0.0;
};

LtfFile parse_ltf_file(const std::string& text);
LtfFile read_ltf_file(std::istream& in);

}  // namespace hsf
