#include "hsf/junta.hpp"

#include "hsf/error.hpp"
#include "hsf/noise.hpp"

#include <climits>
#include <cmath>

namespace hsf {

std::string case_name(JuntaCase c) {
    switch (c) {
        case JuntaCase::SmallDeltaConstant: return "SmallDeltaConstant";
        case JuntaCase::I_Constant: return "I_Constant";
        case JuntaCase::IIa_PremiseViolated: return "IIa_PremiseViolated";
        case JuntaCase::IIb_Projection: return "IIb_Projection";
        case JuntaCase::III_HeadJunta: return "III_HeadJunta";
    }
    return "?";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::PassVacuous: return "vacuous";
        case Verdict::Fail: return "fail";
    }
    return "?";
}

int junta_budget(double epsilon, double delta, double c_L) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw InvalidInput("budget needs eps in (0, 1/2]");
    if (!(delta > 0.0 && delta <= 0.5)) throw InvalidInput("budget needs delta in (0, 1/2]");
    if (!(c_L > 0.0)) throw InvalidInput("budget constant must be positive");
    const double raw = c_L / (epsilon * epsilon) * std::log(1.0 / epsilon) * std::log(1.0 / delta);
    const double up = std::ceil(raw);
    if (up >= static_cast<double>(INT_MAX)) return INT_MAX;
    return std::max(1, static_cast<int>(up));
}

double premise_bound(double epsilon, double delta, double c_ns, std::optional<double> exponent) {
    const double e = exponent.value_or((2.0 - epsilon) / (1.0 - epsilon));
    return c_ns * std::pow(delta, e) * std::sqrt(epsilon);
}

namespace {

// |h| below this is a tie and rounds to +1.
constexpr double kSignSlack = 1e-12;

BooleanFunction signs_of(int n, const Eigen::VectorXd& v) {
    return BooleanFunction::tabulate(n, [&](std::uint64_t k) {
        return v[static_cast<Eigen::Index>(k)] >= -kSignSlack ? 1 : -1;
    }, kMaxArityCap);
}

BooleanFunction constant_approximator(double mean_value) {
    return BooleanFunction::from_values(0, {static_cast<std::int8_t>(mean_value >= 0.0 ? 1 : -1)});
}

}  // namespace

BooleanFunction best_junta_on(const BooleanFunction& f, VarMask head, int head_cap) {
    const BiasProfile p = bias_profile(f, head, head_cap);
    // Biases are exact ratios of integers, so a zero bias is exactly 0.
    return signs_of(mask_size(head), p.biases);
}

ProjectionConstruction lemma_iib_construct(const BooleanFunction& f, VarMask head, double delta,
                                           int head_cap) {
    const RestrictionPlan plan(f.arity(), head, head_cap);
    const BiasProfile profile = bias_profile(f, head, head_cap);
    const std::uint64_t tails = std::uint64_t{1} << plan.tail_size();

    ProjectionConstruction out;
    out.frac_unbiased = profile.frac_unbiased(delta);
    out.certified = out.frac_unbiased <= delta;

    std::vector<std::int8_t> g(f.values().begin(), f.values().end());
    for (std::uint64_t a = 0; a < plan.assignments(); ++a) {
        if (std::abs(profile.biases[static_cast<Eigen::Index>(a)]) <= 1.0 - delta) {
            for (std::uint64_t t = 0; t < tails; ++t) g[plan.row(a, t)] = 1;
        }
    }
    out.repaired = BooleanFunction::from_values(f.arity(), std::move(g), kMaxArityCap);

    FourierSpectrum projected = wht(out.repaired);
    out.residual_spectral = 0.0;
    for (Eigen::Index s = 0; s < projected.coefficients.size(); ++s) {
        if ((static_cast<VarMask>(s) & ~head) != 0) {
            out.residual_spectral += projected.coefficients[s] * projected.coefficients[s];
            projected.coefficients[s] = 0.0;
        }
    }
    const Eigen::VectorXd h = synthesize(projected);
    out.residual_direct = (h - out.repaired.to_vector()).squaredNorm() / static_cast<double>(h.size());

    // h is constant on each head block; read it at tail row 0.
    Eigen::VectorXd block_values(static_cast<Eigen::Index>(plan.assignments()));
    for (std::uint64_t a = 0; a < plan.assignments(); ++a) {
        block_values[static_cast<Eigen::Index>(a)] = h[static_cast<Eigen::Index>(plan.row(a, 0))];
    }
    out.approximator = signs_of(plan.head_size(), block_values);
    return out;
}

LtfInstance LtfInstance::build(const Ltf& ltf, int arity_cap) {
    LtfInstance inst{ltf, to_truth_table(ltf, arity_cap), {}, {}};
    inst.spectrum = wht(inst.table);
    inst.degree_weights = weight_by_degree(inst.spectrum);
    return inst;
}

JuntaReport extract_junta(const LtfInstance& instance, double epsilon, double delta,
                          const TheoremConfig& config) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw InvalidInput("epsilon must lie in (0, 1/2]");
    if (!(delta > 0.0 && delta <= 0.5)) throw InvalidInput("delta must lie in (0, 1/2]");
    if (!(config.c_ns > 0.0 && config.c_L > 0.0)) throw InvalidInput("theorem constants must be positive");

    const Ltf& ltf = instance.ltf;
    const BooleanFunction& f = instance.table;
    const int n = f.arity();

    JuntaReport r;
    r.arity = n;
    JuntaDiagnostics& d = r.diag;
    d.ns_value = ns_from_degree_weights(instance.degree_weights, epsilon);
    d.premise_bound = premise_bound(epsilon, delta, config.c_ns, config.premise_exponent);
    d.premise_holds = d.ns_value <= d.premise_bound;
    d.small_delta_split = std::pow(delta, 1.0 / (1.0 - epsilon)) < std::sqrt(epsilon);
    d.iia_condition = delta * delta >= std::sqrt(epsilon);
    d.iia_reference = std::pow(delta, (2.0 - epsilon) / (1.0 - epsilon)) *
                      std::sqrt(std::log(1.0 / delta)) * std::sqrt(epsilon);
    d.in_validity_range = epsilon <= config.max_epsilon && delta <= config.max_delta;
    d.ell = critical_index(ltf, epsilon);
    d.L = junta_budget(epsilon, delta, config.c_L);

    const double f_mean = instance.spectrum[0];
    auto finish_constant = [&](JuntaCase c) {
        r.case_taken = c;
        r.junta_set = 0;
        r.approximator = constant_approximator(f_mean);
        d.guarantee_bound = delta;
    };
    // Heads that cover every relevant coordinate cost 2^n like any other
    // step, so the head cap does not apply to them.
    auto cap_for = [&](VarMask head) {
        return head == head_mask(ltf, ltf.size()) ? kMaxArityCap : config.head_cap;
    };
    auto attach_profile = [&](VarMask head) {
        const BiasProfile p = bias_profile(f, head, cap_for(head));
        d.bias_head = head;
        d.bias_head_size = mask_size(head);
        d.frac_unbiased = p.frac_unbiased(delta);
        d.min_abs_bias = p.biases.cwiseAbs().minCoeff();
        return p;
    };

    // The constant shortcut only carries a guarantee under the premise; a
    // premise-violating instance continues to the structural analysis.
    if (d.premise_holds && d.small_delta_split) {
        finish_constant(JuntaCase::SmallDeltaConstant);
    } else if (d.ell == 1) {
        finish_constant(JuntaCase::I_Constant);
    } else if (d.ell <= d.L) {
        const VarMask head = head_mask(ltf, d.ell);
        const BiasProfile p = attach_profile(head);
        r.junta_set = head;
        if (p.frac_unbiased(delta) <= delta) {
            const ProjectionConstruction iib = lemma_iib_construct(f, head, delta, cap_for(head));
            r.case_taken = JuntaCase::IIb_Projection;
            r.approximator = iib.approximator;
            d.projection_residual = iib.residual_spectral;
            d.guarantee_bound = 3.0 * delta;
        } else {
            r.case_taken = JuntaCase::IIa_PremiseViolated;
            r.approximator = best_junta_on(f, head, cap_for(head));
            d.guarantee_bound = delta;
        }
    } else {
        const VarMask head = head_mask(ltf, d.L);
        attach_profile(head);
        r.case_taken = JuntaCase::III_HeadJunta;
        r.junta_set = head;
        r.approximator = best_junta_on(f, head, cap_for(head));
        d.guarantee_bound = delta;
    }

    r.distance = distance(f, extend(r.approximator, r.junta_set, n));
    return r;
}

JuntaReport extract_junta(const Ltf& ltf, double epsilon, double delta, const TheoremConfig& config) {
    return extract_junta(LtfInstance::build(ltf, config.arity_cap), epsilon, delta, config);
}

TheoremVerdict theorem_verify(const JuntaReport& report, double delta) {
    const JuntaDiagnostics& d = report.diag;
    if (!d.premise_holds) return {Verdict::PassVacuous, "premise-violated"};
    if (report.case_taken == JuntaCase::IIa_PremiseViolated) {
        return {Verdict::Fail, "unbiased-restrictions-under-premise: constants need calibration"};
    }
    const double tol = 1e-12;
    if (report.distance > d.guarantee_bound + tol) {
        return {Verdict::Fail, "distance " + std::to_string(report.distance) + " exceeds guarantee " +
                                   std::to_string(d.guarantee_bound) + " (delta " +
                                   std::to_string(delta) + ")"};
    }
    if (report.junta_size() > d.L) return {Verdict::Fail, "junta larger than budget"};
    return {Verdict::Pass, "ok"};
}

}  // namespace hsf
