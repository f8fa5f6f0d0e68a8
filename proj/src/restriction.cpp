#include "hsf/restriction.hpp"

#include "hsf/error.hpp"
#include "hsf/noise.hpp"

#include <algorithm>
#include <cmath>

namespace hsf {

namespace {

std::vector<std::uint64_t> scatter_table(const std::vector<int>& vars) {
    std::vector<std::uint64_t> rows(std::size_t{1} << vars.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::uint64_t r = 0;
        for (std::size_t j = 0; j < vars.size(); ++j) {
            if ((k >> j) & 1) r |= std::uint64_t{1} << vars[j];
        }
        rows[k] = r;
    }
    return rows;
}

}  // namespace

Restriction Restriction::from_index(VarMask head, std::uint64_t index) {
    Restriction r{head, {}};
    const int h = mask_size(head);
    r.assignment.resize(static_cast<std::size_t>(h));
    for (int j = 0; j < h; ++j) r.assignment[static_cast<std::size_t>(j)] = (index >> j) & 1 ? -1 : 1;
    return r;
}

std::uint64_t Restriction::index() const {
    std::uint64_t a = 0;
    for (std::size_t j = 0; j < assignment.size(); ++j) {
        if (assignment[j] < 0) a |= std::uint64_t{1} << j;
    }
    return a;
}

RestrictionPlan::RestrictionPlan(int n, VarMask head, int head_cap) : n_(n), head_(head) {
    if ((head & ~full_mask(n)) != 0) throw InvalidInput("head set is not a subset of [n]");
    if (mask_size(head) > head_cap) {
        throw CapExceeded("head size " + std::to_string(mask_size(head)) + " exceeds cap " +
                          std::to_string(head_cap));
    }
    head_vars_ = mask_members(head);
    head_rows_ = scatter_table(head_vars_);
    tail_rows_ = scatter_table(mask_members(full_mask(n) & ~head));
}

BooleanFunction RestrictionPlan::apply(const BooleanFunction& f, std::uint64_t a) const {
    if (f.arity() != n_) throw InvalidInput("restriction plan built for a different arity");
    std::vector<std::int8_t> values(tail_rows_.size());
    const std::uint64_t base = head_rows_[a];
    for (std::size_t t = 0; t < tail_rows_.size(); ++t) {
        values[t] = static_cast<std::int8_t>(f[base | tail_rows_[t]]);
    }
    return BooleanFunction::from_values(tail_size(), std::move(values), kMaxArityCap);
}

VarMask RestrictionPlan::lift(std::uint64_t head_local, std::uint64_t tail_local) const {
    return head_rows_[head_local] | tail_rows_[tail_local];
}

BooleanFunction restrict(const BooleanFunction& f, const Restriction& r) {
    if (static_cast<int>(r.assignment.size()) != mask_size(r.head)) {
        throw InvalidInput("restriction assignment does not cover the head exactly");
    }
    for (auto v : r.assignment) {
        if (v != 1 && v != -1) throw InvalidInput("restriction assignment entry is not ±1");
    }
    const RestrictionPlan plan(f.arity(), r.head, kMaxArityCap);
    return plan.apply(f, r.index());
}

double BiasProfile::frac_unbiased(double delta) const {
    if (biases.size() == 0) return 0.0;
    const auto bad = (biases.array().abs() <= 1.0 - delta).count();
    return static_cast<double>(bad) / static_cast<double>(biases.size());
}

BiasProfile bias_profile(const BooleanFunction& f, VarMask head, int head_cap) {
    const RestrictionPlan plan(f.arity(), head, head_cap);
    const std::uint64_t tails = std::uint64_t{1} << plan.tail_size();
    BiasProfile p{head, Eigen::VectorXd(static_cast<Eigen::Index>(plan.assignments()))};
    for (std::uint64_t a = 0; a < plan.assignments(); ++a) {
        std::int64_t sum = 0;
        for (std::uint64_t t = 0; t < tails; ++t) sum += f[plan.row(a, t)];
        p.biases[static_cast<Eigen::Index>(a)] = static_cast<double>(sum) / static_cast<double>(tails);
    }
    return p;
}

IdentityCheck verify_fact_restrict(const BooleanFunction& f, VarMask head, VarMask s, int head_cap) {
    if ((s & head) != 0) throw InvalidInput("S must be disjoint from the head");
    if ((s & ~full_mask(f.arity())) != 0) throw InvalidInput("S is not a subset of [n]");
    const RestrictionPlan plan(f.arity(), head, head_cap);

    // S in tail-local coordinates.
    const auto tail_vars = mask_members(full_mask(f.arity()) & ~head);
    std::uint64_t s_local = 0;
    for (std::size_t j = 0; j < tail_vars.size(); ++j) {
        if ((s >> tail_vars[j]) & 1) s_local |= std::uint64_t{1} << j;
    }

    double lhs = 0.0;
    for (std::uint64_t a = 0; a < plan.assignments(); ++a) {
        const double c = wht(plan.apply(f, a))[s_local];
        lhs += c * c;
    }
    lhs /= static_cast<double>(plan.assignments());

    const FourierSpectrum spec = wht(f);
    double rhs = 0.0;
    for (std::uint64_t t = 0; t < plan.assignments(); ++t) {
        const double c = spec[plan.lift(t, 0) | s];
        rhs += c * c;
    }
    return {lhs, rhs, std::abs(lhs - rhs)};
}

AggregationCheck ns_aggregation_check(const BooleanFunction& f, VarMask head, double epsilon,
                                      int head_cap) {
    const RestrictionPlan plan(f.arity(), head, head_cap);
    AggregationCheck out;
    out.ns_f = ns_exact(wht(f), epsilon);
    out.restricted_ns.resize(static_cast<Eigen::Index>(plan.assignments()));
    for (std::uint64_t a = 0; a < plan.assignments(); ++a) {
        out.restricted_ns[static_cast<Eigen::Index>(a)] = ns_exact(wht(plan.apply(f, a)), epsilon);
    }
    out.expected_restricted_ns = out.restricted_ns.mean();
    out.holds = out.ns_f >= out.expected_restricted_ns - 1e-12;

    // sup_t t * Pr[NS > t] is approached as t rises to each attained value v,
    // where it equals v * Pr[NS >= v].
    std::vector<double> sorted(out.restricted_ns.data(),
                               out.restricted_ns.data() + out.restricted_ns.size());
    std::sort(sorted.begin(), sorted.end());
    out.threshold_bound = 0.0;
    const double count = static_cast<double>(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        out.threshold_bound = std::max(out.threshold_bound, sorted[k] * (count - static_cast<double>(k)) / count);
    }
    out.threshold_holds = out.ns_f >= out.threshold_bound - 1e-12;
    return out;
}

}  // namespace hsf
