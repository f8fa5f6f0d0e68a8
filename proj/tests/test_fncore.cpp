#include <doctest.h>

#include "hsf/boolean_function.hpp"
#include "hsf/checks.hpp"
#include "hsf/error.hpp"
#include "hsf/random.hpp"
#include "hsf/walsh_hadamard.hpp"

#include <sstream>

using namespace hsf;

namespace {

const BooleanFunction maj3 = majority(3);

BooleanFunction negate(const BooleanFunction& f) {
    return BooleanFunction::tabulate(f.arity(), [&](std::uint64_t k) { return -f[k]; });
}

}  // namespace

TEST_CASE("from_values follows the row convention") {
    const auto f = BooleanFunction::from_values(1, {1, -1});
    CHECK(f == dictator(1, 1));
    const std::int8_t minus[] = {-1};
    CHECK(f(minus) == -1);

    const auto c = BooleanFunction::from_values(0, {1});
    CHECK(c.arity() == 0);
    CHECK(c[0] == 1);

    CHECK_THROWS_AS(BooleanFunction::from_values(2, {1, 1, 1}), InvalidInput);
    CHECK_THROWS_AS(BooleanFunction::from_values(1, {1, 0}), InvalidInput);
    CHECK_THROWS_AS(BooleanFunction::from_values(21, {}), CapExceeded);
    CHECK_THROWS_AS(BooleanFunction::from_values(25, {}, 25), CapExceeded);
}

TEST_CASE("row index and assignment are inverse") {
    for (std::uint64_t k = 0; k < 32; ++k) CHECK(row_index(row_assignment(k, 5)) == k);
    const auto x = row_assignment(0b101, 3);
    CHECK(x == std::vector<std::int8_t>{-1, 1, -1});
}

TEST_CASE("wht of basic functions") {
    const auto d = wht(dictator(3, 1));
    for (VarMask s = 0; s < 8; ++s) CHECK(d[s] == doctest::Approx(s == 1 ? 1.0 : 0.0));

    const auto c = wht(constant_function(4, 1));
    CHECK(c[0] == 1.0);
    CHECK(c.coefficients.tail(15).cwiseAbs().maxCoeff() == 0.0);

    const auto m = wht(maj3);
    for (VarMask s = 0; s < 8; ++s) {
        double expect = 0.0;
        if (mask_size(s) == 1) expect = 0.5;
        if (s == 7) expect = -0.5;
        CHECK(m[s] == doctest::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("parity spectrum is a single coefficient") {
    const auto p = wht(parity(5, 0b10110));
    for (VarMask s = 0; s < 32; ++s) CHECK(p[s] == (s == 0b10110 ? 1.0 : 0.0));
}

TEST_CASE("synthesize") {
    const Eigen::VectorXd d = synthesize(wht(dictator(1, 1)));
    CHECK(d[0] == 1.0);
    CHECK(d[1] == -1.0);

    FourierSpectrum zero;
    zero.arity = 3;
    zero.coefficients = Eigen::VectorXd::Zero(8);
    CHECK(synthesize(zero).isZero());

    CHECK((synthesize(wht(maj3)) - maj3.to_vector()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("unnormalized transform is an involution up to 2^n") {
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(16, -3.0, 5.0);
    Eigen::VectorXd u = v;
    fwht_inplace(u);
    fwht_inplace(u);
    CHECK((u / 16.0 - v).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("distance, mean and junta checks") {
    CHECK(distance(maj3, maj3) == 0.0);
    CHECK(distance(dictator(1, 1), negate(dictator(1, 1))) == 1.0);
    CHECK(distance(maj3, dictator(3, 1)) == 0.25);
    CHECK_THROWS_AS(distance(maj3, dictator(2, 1)), InvalidInput);

    CHECK(mean(constant_function(3, 1)) == 1.0);
    CHECK(mean(dictator(3, 2)) == 0.0);
    CHECK(mean(maj3) == 0.0);

    CHECK(is_junta_on(dictator(1, 1), 0b1));
    CHECK_FALSE(is_junta_on(dictator(1, 1), 0));
    CHECK_FALSE(is_junta_on(maj3, 0b011));
    CHECK(is_junta_on(maj3, 0b111));
    CHECK(is_junta_on(dictator(6, 4), 0b001000));
}

TEST_CASE("extend embeds a junta at its coordinates") {
    const auto g = dictator(2, 2);  // depends on its second local variable
    const auto f = extend(g, 0b10100, 5);  // local 2 -> coordinate 5
    CHECK(f == dictator(5, 5));
    CHECK(is_junta_on(f, 0b10100));
}

TEST_CASE("text round trip and parse errors") {
    const auto text = to_text(maj3);
    CHECK(text == "n=3\n+1 +1 +1 -1 +1 -1 -1 -1\n");
    CHECK(parse_truth_table(text) == maj3);
    std::istringstream in("n=1\n+1 -1\n");
    CHECK(read_truth_table(in) == dictator(1, 1));

    CHECK_THROWS_AS(parse_truth_table("m=1\n1 -1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_truth_table("n=2\n1 -1 1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_truth_table("n=1\n1 2\n"), InvalidInput);
    CHECK_THROWS_AS(parse_truth_table("n=30\n"), CapExceeded);
}

TEST_CASE("spectral invariants on random functions") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        const int n = 1 + static_cast<int>(i % 12);
        const auto f = random_function(n, derive_seed(77, i));
        const auto g = random_function(n, derive_seed(78, i));
        const auto sf = wht(f);
        const auto sg = wht(g);
        CHECK(std::abs(sf.coefficients.squaredNorm() - 1.0) <= 1e-9);
        CHECK(std::abs(correlation(f, g) - sf.coefficients.dot(sg.coefficients)) <= 1e-9);
        CHECK((synthesize(sf) - f.to_vector()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(std::abs(distance(f, g) - (1.0 - correlation(f, g)) / 2.0) <= 1e-12);
        CHECK(std::abs(weight_by_degree(sf).sum() - 1.0) <= 1e-9);
        CHECK(mean(f) == doctest::Approx(sf[0]).epsilon(1e-12));
    }
}
