#pragma once

#include "hsf/boolean_function.hpp"
#include "hsf/ltf.hpp"
#include "hsf/restriction.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>

namespace hsf {

struct TheoremConfig {
    /// Constant in front of the noise-sensitivity premise bound.
    double c_ns = 1.0;
    /// Constant in front of the junta budget L(eps, delta).
    double c_L = 1.0;
    /// Replaces the premise exponent (2 - eps) / (1 - eps) when set.
    std::optional<double> premise_exponent;
    int arity_cap = kDefaultArityCap;
    int head_cap = kDefaultHeadCap;
    /// Parameter range treated as "sufficiently small"; reports outside it
    /// are flagged, not rejected.
    double max_epsilon = 0.25;
    double max_delta = 0.25;
};

enum class JuntaCase { SmallDeltaConstant, I_Constant, IIa_PremiseViolated, IIb_Projection, III_HeadJunta };

std::string case_name(JuntaCase c);

struct JuntaDiagnostics {
    int ell = kInfiniteIndex;  // eps-critical index, 1-based
    int L = 0;
    double ns_value = 0.0;
    double premise_bound = 0.0;
    bool premise_holds = false;
    /// The delta-multiple promised by the branch that fired.
    double guarantee_bound = 0.0;
    /// delta^(1/(1-eps)) < sqrt(eps): the constant-function split.
    bool small_delta_split = false;
    /// delta^2 >= sqrt(eps), required by the unbiased-restriction lemma.
    bool iia_condition = false;
    /// delta^((2-eps)/(1-eps)) sqrt(ln(1/delta)) sqrt(eps): the NS scale that
    /// the unbiased-restriction lemma forces, with unit constant.
    double iia_reference = 0.0;
    /// Head used for the bias profile (0 when no head was examined).
    VarMask bias_head = 0;
    int bias_head_size = 0;
    double frac_unbiased = 0.0;
    double min_abs_bias = 1.0;
    /// ||h - g||_2^2 from the projection construction (IIb only).
    std::optional<double> projection_residual;
    bool in_validity_range = true;
};

struct JuntaReport {
    JuntaCase case_taken = JuntaCase::SmallDeltaConstant;
    int arity = 0;
    /// Junta set in input coordinates.
    VarMask junta_set = 0;
    /// Function of the junta variables in ascending coordinate order.
    BooleanFunction approximator;
    /// Exact Pr[f != approximator] over [n].
    double distance = 0.0;
    JuntaDiagnostics diag;

    int junta_size() const { return mask_size(junta_set); }
};

/// ceil(c_L / eps^2 * ln(1/eps) * ln(1/delta)), at least 1.
/// eps, delta in (0, 1/2]; throws InvalidInput otherwise.
int junta_budget(double epsilon, double delta, double c_L = 1.0);

/// c_ns * delta^((2-eps)/(1-eps)) * sqrt(eps).
double premise_bound(double epsilon, double delta, double c_ns = 1.0,
                     std::optional<double> exponent = std::nullopt);

/// sign(E[f_rho]) per head assignment (sign(0) = +1): the closest junta on H.
BooleanFunction best_junta_on(const BooleanFunction& f, VarMask head, int head_cap = kDefaultHeadCap);

struct ProjectionConstruction {
    /// sign(h) as a function of the head variables.
    BooleanFunction approximator;
    /// Bad-restriction fraction is at most delta, so distance <= 3 delta.
    bool certified = false;
    double frac_unbiased = 0.0;
    /// f with every bad restriction block overwritten by +1.
    BooleanFunction repaired;
    /// sum over T not inside H of g^(T)^2.
    double residual_spectral = 0.0;
    /// E[(h - g)^2] evaluated row by row.
    double residual_direct = 0.0;
};

/// Repairs bad restrictions, projects the repaired spectrum onto subsets of
/// the head and rounds.
ProjectionConstruction lemma_iib_construct(const BooleanFunction& f, VarMask head, double delta,
                                           int head_cap = kDefaultHeadCap);

/// Truth table and spectrum of an LTF, computed once and reused across
/// (eps, delta) pairs.
struct LtfInstance {
    Ltf ltf;
    BooleanFunction table;
    FourierSpectrum spectrum;
    Eigen::VectorXd degree_weights;

    static LtfInstance build(const Ltf& ltf, int arity_cap = kDefaultArityCap);
};

JuntaReport extract_junta(const LtfInstance& instance, double epsilon, double delta,
                          const TheoremConfig& config = {});
JuntaReport extract_junta(const Ltf& ltf, double epsilon, double delta,
                          const TheoremConfig& config = {});

enum class Verdict { Pass, PassVacuous, Fail };

struct TheoremVerdict {
    Verdict verdict;
    std::string label;

    bool failed() const { return verdict == Verdict::Fail; }
};

std::string verdict_name(Verdict v);

/// Pass iff premise_holds implies distance <= guarantee and |J| <= L.
TheoremVerdict theorem_verify(const JuntaReport& report, double delta);

}  // namespace hsf
