#include <doctest.h>

#include "hsf/checks.hpp"
#include "hsf/error.hpp"
#include "hsf/noise.hpp"
#include "hsf/random.hpp"
#include "hsf/restriction.hpp"

#include <cmath>

using namespace hsf;

namespace {

Restriction assign(VarMask head, std::vector<std::int8_t> values) { return {head, std::move(values)}; }

}  // namespace

TEST_CASE("restrict examples") {
    CHECK(restrict(dictator(1, 1), assign(0b1, {1})) == constant_function(0, 1));

    const auto p = restrict(parity(2, 0b11), assign(0b01, {-1}));
    CHECK(p == BooleanFunction::from_values(1, {-1, 1}));

    const auto m = restrict(majority(3), assign(0b001, {1}));
    CHECK(m.arity() == 2);
    CHECK(distance(m, constant_function(2, 1)) == 0.25);

    CHECK_THROWS_AS(restrict(majority(3), assign(0b011, {1})), InvalidInput);
    CHECK_THROWS_AS(restrict(majority(3), assign(0b1000, {1})), InvalidInput);
}

TEST_CASE("restriction keeps tail order") {
    // f = x2 * x4 on 4 variables, fix x1 and x3.
    const auto f = parity(4, 0b1010);
    const auto g = restrict(f, assign(0b0101, {1, -1}));
    CHECK(g == parity(2, 0b11));
    const auto d = restrict(dictator(5, 4), assign(0b00101, {-1, -1}));
    CHECK(d == dictator(3, 2));
}

TEST_CASE("restriction index round trip") {
    const VarMask head = 0b10110;
    for (std::uint64_t a = 0; a < 8; ++a) CHECK(Restriction::from_index(head, a).index() == a);
}

TEST_CASE("restriction plan") {
    CHECK_THROWS_AS(RestrictionPlan(3, 0b1000), InvalidInput);
    CHECK_THROWS_AS(RestrictionPlan(20, full_mask(17)), CapExceeded);
    const RestrictionPlan plan(5, 0b01001);
    CHECK(plan.head_size() == 2);
    CHECK(plan.tail_size() == 3);
    CHECK(plan.assignments() == 4);
    CHECK(plan.lift(0b11, 0) == 0b01001);
    CHECK(plan.lift(0, 0b101) == 0b10010);
}

TEST_CASE("bias profiles") {
    const auto junta = extend(majority(3), 0b10101, 6);
    const auto j = bias_profile(junta, 0b10101);
    CHECK(j.biases.cwiseAbs().minCoeff() == 1.0);
    CHECK(j.frac_unbiased(0.9) == 0.0);

    const auto p = bias_profile(parity(5, full_mask(5)), 0b00110);
    CHECK(p.biases.isZero());
    CHECK(p.frac_unbiased(0.1) == 1.0);

    const auto m = bias_profile(majority(3), 0b001);
    REQUIRE(m.biases.size() == 2);
    CHECK(m.biases[0] == 0.5);   // x1 = +1
    CHECK(m.biases[1] == -0.5);  // x1 = -1
    CHECK(m.biases.mean() == 0.0);

    CHECK_THROWS_AS(bias_profile(majority(3), 0b1000), InvalidInput);
}

TEST_CASE("fact restrict examples") {
    const auto a = verify_fact_restrict(parity(2, 0b11), 0b01, 0b10);
    CHECK(a.lhs == doctest::Approx(1.0));
    CHECK(a.rhs == doctest::Approx(1.0));

    const auto f = majority(5);
    const auto b = verify_fact_restrict(f, 0b00011, 0);
    const auto prof = bias_profile(f, 0b00011);
    CHECK(b.lhs == doctest::Approx(prof.biases.squaredNorm() / 4));
    const auto s = wht(f);
    CHECK(b.rhs == doctest::Approx(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]));

    CHECK_THROWS_AS(verify_fact_restrict(f, 0b011, 0b010), InvalidInput);
}

TEST_CASE("fact restrict on random functions") {
    for (std::uint64_t i = 0; i < 10; ++i) {
        CounterRng rng(derive_seed(40, i));
        const auto f = random_function(10, rng());
        VarMask head = 0;
        while (mask_size(head) < 4) head |= VarMask{1} << (rng() % 10);
        const VarMask rest = full_mask(10) & ~head;
        int count = 0;
        for (VarMask s = rest;; s = (s - 1) & rest) {
            CHECK(verify_fact_restrict(f, head, s).gap <= 1e-9);
            ++count;
            if (s == 0) break;
        }
        CHECK(count == 64);
    }
}

TEST_CASE("ns aggregation") {
    const auto junta = extend(majority(3), 0b111, 6);
    const auto j = ns_aggregation_check(junta, 0b111, 0.2);
    CHECK(j.expected_restricted_ns == 0.0);
    CHECK(j.holds);

    for (int k : {1, 2, 3}) {
        const int n = 5;
        const VarMask head = full_mask(k);
        const double eps = 0.15;
        const auto c = ns_aggregation_check(parity(n, full_mask(n)), head, eps);
        const double tail_ns = (1 - std::pow(1 - 2 * eps, n - k)) / 2;
        CHECK(c.restricted_ns.minCoeff() == doctest::Approx(tail_ns));
        CHECK(c.restricted_ns.maxCoeff() == doctest::Approx(tail_ns));
        CHECK(c.ns_f > c.expected_restricted_ns);
        CHECK(c.ns_f == doctest::Approx((1 - std::pow(1 - 2 * eps, n)) / 2));
    }
}

TEST_CASE("ns aggregation on random functions") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        CounterRng rng(derive_seed(41, i));
        const int n = 2 + static_cast<int>(rng() % 9);
        const auto f = random_function(n, rng());
        const int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(4, n - 1)));
        VarMask head = 0;
        while (mask_size(head) < size) head |= VarMask{1} << (rng() % static_cast<std::uint64_t>(n));
        const double eps = 0.5 * (1 - rng.uniform());
        const auto c = ns_aggregation_check(f, head, eps);
        CHECK(c.holds);
        CHECK(c.threshold_holds);
        CHECK(c.ns_f >= c.expected_restricted_ns - 1e-12);
        CHECK(c.ns_f == doctest::Approx(ns_exact(wht(f), eps)).epsilon(1e-12));

        // Direct cross-check of the thresholded form.
        for (double v : {0.05, 0.1, 0.2}) {
            const double frac = (c.restricted_ns.array() > v).cast<double>().mean();
            CHECK(c.ns_f >= v * frac - 1e-12);
        }
    }
}

TEST_CASE("restriction invariants") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        const auto f = random_function(7, derive_seed(42, i));
        const VarMask h1 = 0b0000101, h2 = 0b0110000;
        const auto prof = bias_profile(f, h1);
        CHECK(std::abs(prof.biases.mean() - mean(f)) <= 1e-12);
        CHECK(prof.biases.cwiseAbs().maxCoeff() <= 1.0);

        for (std::uint64_t a = 0; a < 4; ++a) {
            for (std::uint64_t b = 0; b < 4; ++b) {
                const auto r1 = Restriction::from_index(h1, a);
                const auto step = restrict(f, r1);
                // h2 = {x5, x6} sits at local positions 3 and 4 once x1, x3 are fixed.
                const auto two = restrict(step, Restriction::from_index(0b01100, b));
                const auto r2 = Restriction::from_index(h2, b);
                std::vector<std::int8_t> combined{r1.assignment[0], r1.assignment[1], r2.assignment[0],
                                                  r2.assignment[1]};
                const auto once = restrict(f, assign(h1 | h2, combined));
                CHECK(two == once);
            }
        }
    }
}
