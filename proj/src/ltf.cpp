#include "hsf/ltf.hpp"

#include "hsf/error.hpp"
#include "hsf/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <istream>
#include <iterator>
#include <numeric>

namespace hsf {

Ltf canonicalize(std::span<const double> weights, double theta) {
    Ltf out;
    out.input_arity = static_cast<int>(weights.size());
    std::vector<int> kept;
    for (int i = 0; i < out.input_arity; ++i) {
        const double w = weights[static_cast<std::size_t>(i)];
        if (!std::isfinite(w)) throw InvalidInput("weight " + std::to_string(i) + " is not finite");
        if (w == 0.0) {
            out.dropped.push_back(i);
        } else {
            kept.push_back(i);
        }
    }
    if (kept.empty()) throw DegenerateLtf("all weights are zero");
    if (!std::isfinite(theta)) throw InvalidInput("threshold is not finite");

    std::stable_sort(kept.begin(), kept.end(), [&](int a, int b) {
        return std::abs(weights[static_cast<std::size_t>(a)]) >
               std::abs(weights[static_cast<std::size_t>(b)]);
    });

    // Norm accumulated smallest-first for accuracy.
    double sq = 0.0;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
        const double w = weights[static_cast<std::size_t>(*it)];
        sq += w * w;
    }
    // Leave an already-normalized vector bit-for-bit alone.
    const double norm = std::abs(sq - 1.0) <= 4 * DBL_EPSILON ? 1.0 : std::sqrt(sq);

    out.weights.resize(static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        out.weights[static_cast<Eigen::Index>(j)] = weights[static_cast<std::size_t>(kept[j])] / norm;
    }
    out.threshold = theta / norm;
    out.original_index = std::move(kept);
    out.tie_slack = 64 * DBL_EPSILON * (out.weights.cwiseAbs().sum() + std::abs(out.threshold));
    return out;
}

Ltf canonicalize(const Eigen::VectorXd& weights, double theta) {
    return canonicalize(std::span<const double>(weights.data(), static_cast<std::size_t>(weights.size())),
                        theta);
}

double linear_form(const Ltf& ltf, std::span<const std::int8_t> x) {
    if (static_cast<int>(x.size()) != ltf.input_arity) {
        throw InvalidInput("assignment length does not match LTF arity");
    }
    double z = 0.0;
    for (int j = 0; j < ltf.size(); ++j) {
        z += ltf.weights[j] * x[static_cast<std::size_t>(ltf.original_index[static_cast<std::size_t>(j)])];
    }
    return z - ltf.threshold;
}

int evaluate(const Ltf& ltf, std::span<const std::int8_t> x) {
    return linear_form(ltf, x) >= -ltf.tie_slack ? 1 : -1;
}

BooleanFunction to_truth_table(const Ltf& ltf, int cap) {
    const int n = ltf.input_arity;
    BooleanFunction::check_arity(n, cap);
    // Same summation order as linear_form, with x read off the row bits.
    return BooleanFunction::tabulate(n, [&](std::uint64_t row) {
        double z = 0.0;
        for (int j = 0; j < ltf.size(); ++j) {
            const int c = ltf.original_index[static_cast<std::size_t>(j)];
            z += ltf.weights[j] * ((row >> c) & 1 ? -1.0 : 1.0);
        }
        return z - ltf.threshold >= -ltf.tie_slack ? 1 : -1;
    }, cap);
}

namespace {

Eigen::VectorXd suffix_norms(const Eigen::VectorXd& w) {
    Eigen::VectorXd sigma(w.size());
    double acc = 0.0;
    for (Eigen::Index k = w.size() - 1; k >= 0; --k) {
        acc += w[k] * w[k];
        sigma[k] = std::sqrt(acc);
    }
    return sigma;
}

}  // namespace

RegularityProfile regularity_profile(const Ltf& ltf) {
    RegularityProfile p;
    p.tail_norms = suffix_norms(ltf.weights);
    p.tau_star = ltf.weights.cwiseAbs().maxCoeff() / ltf.weights.norm();
    return p;
}

bool is_regular(const Eigen::VectorXd& w, double tau) {
    if (w.size() == 0) return true;
    return w.cwiseAbs().maxCoeff() <= tau * w.norm() * (1.0 + kRegularityTolerance);
}

int critical_index(const Ltf& ltf, double tau) {
    if (!(tau > 0.0)) throw InvalidInput("critical index needs tau > 0");
    const Eigen::VectorXd sigma = suffix_norms(ltf.weights);
    for (Eigen::Index i = 0; i < ltf.weights.size(); ++i) {
        if (std::abs(ltf.weights[i]) <= tau * sigma[i] * (1.0 + kRegularityTolerance)) {
            return static_cast<int>(i) + 1;
        }
    }
    return kInfiniteIndex;
}

HeadTailSplit head_split(const Ltf& ltf, int ell) {
    if (ell < 1 || ell > ltf.size()) {
        throw InvalidInput("head size " + std::to_string(ell) + " outside [1, " +
                           std::to_string(ltf.size()) + "]");
    }
    HeadTailSplit s;
    for (int j = 0; j < ltf.size(); ++j) {
        WeightTerm t{j + 1, ltf.original_index[static_cast<std::size_t>(j)], ltf.weights[j]};
        (j < ell ? s.head : s.tail).push_back(t);
    }
    if (!s.tail.empty()) {
        const Eigen::VectorXd tail = ltf.weights.tail(ltf.size() - ell);
        s.tail_norm = tail.norm();
        s.tail_normalized = tail / s.tail_norm;
        s.tail_tau_star = s.tail_normalized.cwiseAbs().maxCoeff();
    }
    return s;
}

VarMask head_mask(const Ltf& ltf, int k) {
    VarMask m = 0;
    const int limit = std::min(k, ltf.size());
    for (int j = 0; j < limit; ++j) m |= VarMask{1} << ltf.original_index[static_cast<std::size_t>(j)];
    return m;
}

Ltf random_ltf(int n, const FamilySpec& family, const ThetaLaw& theta, std::uint64_t seed, int cap) {
    if (n < 1) throw InvalidInput("random LTF needs n >= 1");
    BooleanFunction::check_arity(n, cap);
    CounterRng rng(seed);
    std::vector<double> w(static_cast<std::size_t>(n));
    switch (family.family) {
        case WeightFamily::Gaussian:
            for (auto& v : w) {
                do {
                    v = rng.normal();
                } while (v == 0.0);
            }
            break;
        case WeightFamily::GeometricDecay: {
            if (!(family.rate > 0.0 && family.rate < 1.0)) {
                throw InvalidInput("geometric decay rate must lie in (0, 1)");
            }
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            // Fisher-Yates with the counter stream, so the order is portable.
            for (std::size_t i = order.size() - 1; i > 0; --i) {
                const std::size_t j = rng() % (i + 1);
                std::swap(order[i], order[j]);
            }
            double mag = family.rate;
            for (int i = 0; i < n; ++i) {
                w[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = rng.sign() * mag;
                mag *= family.rate;
            }
            break;
        }
        case WeightFamily::Equal:
            std::fill(w.begin(), w.end(), 1.0);
            break;
    }
    double norm = 0.0;
    for (double v : w) norm += v * v;
    norm = std::sqrt(norm);
    double t = 0.0;
    switch (theta.kind) {
        case ThetaLawKind::Zero: t = 0.0; break;
        case ThetaLawKind::Fixed: t = theta.value; break;
        case ThetaLawKind::Gaussian: t = theta.value * rng.normal(); break;
    }
    return canonicalize(w, t * norm);
}

std::string family_name(WeightFamily f) {
    switch (f) {
        case WeightFamily::Gaussian: return "gaussian";
        case WeightFamily::GeometricDecay: return "geometric";
        case WeightFamily::Equal: return "equal";
    }
    return "?";
}

WeightFamily parse_family(const std::string& name) {
    if (name == "gaussian" || name == "gaussian-weights") return WeightFamily::Gaussian;
    if (name == "geometric" || name == "geometric-decay") return WeightFamily::GeometricDecay;
    if (name == "equal" || name == "equal-weights") return WeightFamily::Equal;
    throw InvalidInput("unknown weight family '" + name + "'");
}

LtfFile parse_ltf_file(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("ltf file: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidInput("ltf file: top level must be an object");

    LtfFile out;
    if (!doc.contains("weights")) throw InvalidInput("ltf file: missing field 'weights'");
    const auto& w = doc.at("weights");
    if (!w.is_array()) throw InvalidInput("ltf file: field 'weights' must be an array");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_number()) {
            throw InvalidInput("ltf file: field 'weights[" + std::to_string(i) + "]' is not a number");
        }
        out.weights.push_back(w[i].get<double>());
    }
    if (out.weights.empty()) throw InvalidInput("ltf file: field 'weights' is empty");

    if (!doc.contains("theta")) throw InvalidInput("ltf file: missing field 'theta'");
    if (!doc.at("theta").is_number()) throw InvalidInput("ltf file: field 'theta' is not a number");
    out.theta = doc.at("theta").get<double>();
    return out;
}

LtfFile read_ltf_file(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_ltf_file(text);
}

}  // namespace hsf
