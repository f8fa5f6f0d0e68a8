#pragma once

#include <Eigen/Core>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hsf {

/// Variable set over [n]: bit (i-1) set means variable i is a member.
using VarMask = std::uint64_t;

inline constexpr int kDefaultArityCap = 20;
inline constexpr int kMaxArityCap = 24;

inline constexpr VarMask full_mask(int n) {
    return n >= 64 ? ~VarMask{0} : (VarMask{1} << n) - 1;
}

inline int mask_size(VarMask m) { return std::popcount(m); }

/// Variables of a mask as 0-based positions, ascending.
std::vector<int> mask_members(VarMask m);

/// Dense ±1 truth table over n variables.
///
/// Row k holds f(x) with x_i = -1 exactly when bit (i-1) of k is set, so
/// chi_S(row k) = (-1)^popcount(k & S).
class BooleanFunction {
public:
    /// The arity-0 constant +1.
    BooleanFunction();

    /// Validates length, entries and cap. Throws InvalidInput / CapExceeded.
    static BooleanFunction from_values(int n, std::vector<std::int8_t> values,
                                       int cap = kDefaultArityCap);

    /// Builds a table by calling `row_value(k)` for every row index k. Any
    /// nonnegative value maps to +1, negative to -1.
    template <typename RowFn>
    static BooleanFunction tabulate(int n, RowFn&& row_value, int cap = kDefaultArityCap) {
        check_arity(n, cap);
        std::vector<std::int8_t> values(std::size_t{1} << n);
        for (std::size_t k = 0; k < values.size(); ++k) {
            values[k] = row_value(static_cast<std::uint64_t>(k)) >= 0 ? 1 : -1;
        }
        return BooleanFunction(n, std::move(values));
    }

    int arity() const { return arity_; }
    std::size_t size() const { return values_.size(); }
    int operator[](std::size_t row) const { return values_[row]; }
    std::span<const std::int8_t> values() const { return values_; }

    /// Evaluates on a ±1 assignment of length arity().
    int operator()(std::span<const std::int8_t> x) const;

    Eigen::VectorXd to_vector() const;

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

    static void check_arity(int n, int cap);

private:
    BooleanFunction(int n, std::vector<std::int8_t> values)
        : arity_(n), values_(std::move(values)) {}

    int arity_;
    std::vector<std::int8_t> values_;
};

/// Row index of a ±1 assignment under the fixed bit convention.
std::uint64_t row_index(std::span<const std::int8_t> x);

/// ±1 assignment of row k over n variables.
std::vector<std::int8_t> row_assignment(std::uint64_t row, int n);

/// 2^n Fourier coefficients; entry S holds f^(S).
struct FourierSpectrum {
    int arity = 0;
    Eigen::VectorXd coefficients = Eigen::VectorXd::Ones(1);

    double operator[](VarMask s) const { return coefficients[static_cast<Eigen::Index>(s)]; }
};

FourierSpectrum wht(const BooleanFunction& f);

/// Spectrum of an arbitrary real-valued table of length 2^n.
FourierSpectrum wht(int n, const Eigen::VectorXd& table);

/// Real table sum_S f^(S) chi_S(x), one entry per row.
Eigen::VectorXd synthesize(const FourierSpectrum& s);

/// Sum of squared coefficients bucketed by |S|; entry d is W^d[f].
Eigen::VectorXd weight_by_degree(const FourierSpectrum& s);

/// Pr[f(x) != g(x)] under the uniform distribution.
double distance(const BooleanFunction& f, const BooleanFunction& g);

/// E[f].
double mean(const BooleanFunction& f);

/// E[f g].
double correlation(const BooleanFunction& f, const BooleanFunction& g);

/// True iff flipping any coordinate outside `head` never changes f.
bool is_junta_on(const BooleanFunction& f, VarMask head);

/// Lifts a function over the variables of `junta` (ascending order) to a
/// function over [n] that ignores every other coordinate.
BooleanFunction extend(const BooleanFunction& g, VarMask junta, int n);

// Named functions used throughout tests and examples.
BooleanFunction constant_function(int n, int value);
BooleanFunction dictator(int n, int variable);  // variable is 1-based
BooleanFunction parity(int n, VarMask s);
BooleanFunction majority(int n);                // sign(sum x_i), sign(0) = +1

/// Text format: "n=<int>" line, then 2^n entries of +1/-1 separated by spaces.
std::string to_text(const BooleanFunction& f);
BooleanFunction parse_truth_table(const std::string& text, int cap = kDefaultArityCap);
BooleanFunction read_truth_table(std::istream& in, int cap = kDefaultArityCap);

}  // namespace hsf
