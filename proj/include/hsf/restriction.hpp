#pragma once

#include "hsf/boolean_function.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace hsf {

inline constexpr int kDefaultHeadCap = 16;

/// Fixes the variables of `head` to ±1 values, listed by ascending variable.
///
/// Assignments are also addressed by index: bit j of the index set means the
/// j-th head variable is -1, the same convention as truth-table rows.
struct Restriction {
    VarMask head = 0;
    std::vector<std::int8_t> assignment;

    static Restriction from_index(VarMask head, std::uint64_t index);
    std::uint64_t index() const;
};

/// f restricted by r, as a function of the remaining variables in their
/// original relative order.
BooleanFunction restrict(const BooleanFunction& f, const Restriction& r);

/// Splits row indices into head and tail parts for repeated restrictions.
class RestrictionPlan {
public:
    RestrictionPlan(int n, VarMask head, int head_cap = kDefaultHeadCap);

    int arity() const { return n_; }
    VarMask head() const { return head_; }
    int head_size() const { return static_cast<int>(head_vars_.size()); }
    int tail_size() const { return n_ - head_size(); }
    std::uint64_t assignments() const { return std::uint64_t{1} << head_size(); }

    /// Parent row for head assignment `a` and tail row `t`.
    std::uint64_t row(std::uint64_t a, std::uint64_t t) const { return head_rows_[a] | tail_rows_[t]; }

    BooleanFunction apply(const BooleanFunction& f, std::uint64_t a) const;

    /// Parent mask for subsets S of the tail (tail-local) and T of the head (head-local).
    VarMask lift(std::uint64_t head_local, std::uint64_t tail_local) const;

private:
    int n_;
    VarMask head_;
    std::vector<int> head_vars_;
    std::vector<std::uint64_t> head_rows_;
    std::vector<std::uint64_t> tail_rows_;
};

struct BiasProfile {
    VarMask head = 0;
    /// E[f_rho] for every assignment index rho.
    Eigen::VectorXd biases;

    /// Fraction of assignments with |E[f_rho]| <= 1 - delta.
    double frac_unbiased(double delta) const;
};

BiasProfile bias_profile(const BooleanFunction& f, VarMask head, int head_cap = kDefaultHeadCap);

struct IdentityCheck {
    double lhs;
    double rhs;
    double gap;
};

/// E_rho[f_rho^(S)^2] against sum_{T subset of H} f^(S u T)^2, for S
/// disjoint from H (S in parent coordinates).
IdentityCheck verify_fact_restrict(const BooleanFunction& f, VarMask head, VarMask s,
                                   int head_cap = kDefaultHeadCap);

struct AggregationCheck {
    double ns_f;
    double expected_restricted_ns;
    bool holds;  // ns_f >= expected - 1e-12
    /// NS_eps(f_rho) per assignment index.
    Eigen::VectorXd restricted_ns;
    /// max over t of t * Pr_rho[NS(f_rho) > t]; the thresholded form says
    /// ns_f is at least this.
    double threshold_bound;
    bool threshold_holds;
};

AggregationCheck ns_aggregation_check(const BooleanFunction& f, VarMask head, double epsilon,
                                      int head_cap = kDefaultHeadCap);

}  // namespace hsf
