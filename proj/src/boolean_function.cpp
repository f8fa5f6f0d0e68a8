#include "hsf/boolean_function.hpp"

#include "hsf/error.hpp"
#include "hsf/walsh_hadamard.hpp"

#include <istream>
#include <sstream>

namespace hsf {

std::vector<int> mask_members(VarMask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::popcount(m)));
    while (m != 0) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

BooleanFunction::BooleanFunction() : arity_(0), values_{1} {}

void BooleanFunction::check_arity(int n, int cap) {
    if (n < 0) throw InvalidInput("arity must be nonnegative, got " + std::to_string(n));
    if (cap > kMaxArityCap) cap = kMaxArityCap;
    if (n > cap) {
        throw CapExceeded("arity " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
}

BooleanFunction BooleanFunction::from_values(int n, std::vector<std::int8_t> values, int cap) {
    check_arity(n, cap);
    const std::size_t expected = std::size_t{1} << n;
    if (values.size() != expected) {
        throw InvalidInput("truth table for n=" + std::to_string(n) + " needs " +
                           std::to_string(expected) + " entries, got " +
                           std::to_string(values.size()));
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] != 1 && values[k] != -1) {
            throw InvalidInput("entry " + std::to_string(k) + " is not +1 or -1");
        }
    }
    return BooleanFunction(n, std::move(values));
}

int BooleanFunction::operator()(std::span<const std::int8_t> x) const {
    if (static_cast<int>(x.size()) != arity_) {
        throw InvalidInput("assignment length does not match arity");
    }
    return values_[row_index(x)];
}

Eigen::VectorXd BooleanFunction::to_vector() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values_.size()));
    for (std::size_t k = 0; k < values_.size(); ++k) v[static_cast<Eigen::Index>(k)] = values_[k];
    return v;
}

std::uint64_t row_index(std::span<const std::int8_t> x) {
    std::uint64_t row = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0) row |= std::uint64_t{1} << i;
    }
    return row;
}

std::vector<std::int8_t> row_assignment(std::uint64_t row, int n) {
    std::vector<std::int8_t> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (row >> i) & 1 ? -1 : 1;
    return x;
}

FourierSpectrum wht(const BooleanFunction& f) {
    return wht(f.arity(), f.to_vector());
}

FourierSpectrum wht(int n, const Eigen::VectorXd& table) {
    if (table.size() != (Eigen::Index{1} << n)) {
        throw InvalidInput("table length is not 2^n");
    }
    return FourierSpectrum{n, fwht(table)};
}

Eigen::VectorXd synthesize(const FourierSpectrum& s) {
    return ifwht(s.coefficients);
}

Eigen::VectorXd weight_by_degree(const FourierSpectrum& s) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(s.arity + 1);
    for (Eigen::Index m = 0; m < s.coefficients.size(); ++m) {
        const double c = s.coefficients[m];
        w[std::popcount(static_cast<std::uint64_t>(m))] += c * c;
    }
    return w;
}

namespace {

void require_same_arity(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.arity() != g.arity()) {
        throw InvalidInput("arity mismatch: " + std::to_string(f.arity()) + " vs " +
                           std::to_string(g.arity()));
    }
}

}  // namespace

double distance(const BooleanFunction& f, const BooleanFunction& g) {
    require_same_arity(f, g);
    std::size_t differ = 0;
    for (std::size_t k = 0; k < f.size(); ++k) differ += f[k] != g[k];
    return static_cast<double>(differ) / static_cast<double>(f.size());
}

double mean(const BooleanFunction& f) {
    std::int64_t sum = 0;
    for (auto v : f.values()) sum += v;
    return static_cast<double>(sum) / static_cast<double>(f.size());
}

double correlation(const BooleanFunction& f, const BooleanFunction& g) {
    require_same_arity(f, g);
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < f.size(); ++k) sum += f[k] * g[k];
    return static_cast<double>(sum) / static_cast<double>(f.size());
}

bool is_junta_on(const BooleanFunction& f, VarMask head) {
    for (int i = 0; i < f.arity(); ++i) {
        const std::size_t bit = std::size_t{1} << i;
        if (head & bit) continue;
        for (std::size_t k = 0; k < f.size(); ++k) {
            if (!(k & bit) && f[k] != f[k | bit]) return false;
        }
    }
    return true;
}

BooleanFunction extend(const BooleanFunction& g, VarMask junta, int n) {
    const auto members = mask_members(junta);
    if (static_cast<int>(members.size()) != g.arity()) {
        throw InvalidInput("junta set size does not match approximator arity");
    }
    if ((junta & ~full_mask(n)) != 0) throw InvalidInput("junta set outside [n]");
    return BooleanFunction::tabulate(n, [&](std::uint64_t row) {
        std::size_t sub = 0;
        for (std::size_t j = 0; j < members.size(); ++j) {
            if ((row >> members[j]) & 1) sub |= std::size_t{1} << j;
        }
        return g[sub];
    }, kMaxArityCap);
}

BooleanFunction constant_function(int n, int value) {
    return BooleanFunction::tabulate(n, [=](std::uint64_t) { return value; });
}

BooleanFunction dictator(int n, int variable) {
    if (variable < 1 || variable > n) throw InvalidInput("dictator variable out of range");
    return BooleanFunction::tabulate(n, [=](std::uint64_t row) {
        return (row >> (variable - 1)) & 1 ? -1 : 1;
    });
}

BooleanFunction parity(int n, VarMask s) {
    return BooleanFunction::tabulate(n, [=](std::uint64_t row) {
        return std::popcount(row & s) & 1 ? -1 : 1;
    });
}

BooleanFunction majority(int n) {
    return BooleanFunction::tabulate(n, [=](std::uint64_t row) {
        return n - 2 * std::popcount(row);
    });
}

std::string to_text(const BooleanFunction& f) {
    std::string out = "n=" + std::to_string(f.arity()) + "\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k) out += ' ';
        out += f[k] > 0 ? "+1" : "-1";
    }
    out += '\n';
    return out;
}

BooleanFunction read_truth_table(std::istream& in, int cap) {
    std::string header;
    if (!std::getline(in, header)) throw InvalidInput("truth table: missing 'n=' line");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.rfind("n=", 0) != 0) throw InvalidInput("truth table: first line must be n=<int>");
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(header.substr(2), &used);
        if (used != header.size() - 2) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw InvalidInput("truth table: bad arity in '" + header + "'");
    }
    BooleanFunction::check_arity(n, cap);
    std::vector<std::int8_t> values;
    values.reserve(std::size_t{1} << n);
    std::string token;
    while (in >> token) {
        if (token == "+1" || token == "1") {
            values.push_back(1);
        } else if (token == "-1") {
            values.push_back(-1);
        } else {
            throw InvalidInput("truth table: entry '" + token + "' is not +1 or -1");
        }
    }
    return BooleanFunction::from_values(n, std::move(values), cap);
}

BooleanFunction parse_truth_table(const std::string& text, int cap) {
    std::istringstream in(text);
    return read_truth_table(in, cap);
}

}  // namespace hsf
