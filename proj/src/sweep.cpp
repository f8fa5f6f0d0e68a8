#include "hsf/sweep.hpp"

#include "hsf/csv.hpp"
#include "hsf/error.hpp"
#include "hsf/parallel.hpp"
#include "hsf/random.hpp"

#include <ostream>

namespace hsf {

std::string format_index(int ell) { return ell == kInfiniteIndex ? "inf" : std::to_string(ell); }

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    if (config.families.empty()) throw InvalidInput("sweep needs at least one family");
    if (config.min_n < 1 || config.max_n < config.min_n) throw InvalidInput("sweep arity range is empty");
    const std::size_t per_instance = config.epsilons.size() * config.deltas.size();
    const int span = config.max_n - config.min_n + 1;

    std::vector<std::vector<SweepRow>> slots(config.count);
    parallel_for(config.count, [&](std::size_t i) {
        const FamilySpec& family = config.families[i % config.families.size()];
        const int n = config.min_n + static_cast<int>((i / config.families.size()) % static_cast<std::size_t>(span));
        const std::uint64_t seed = derive_seed(config.seed, i);
        const Ltf ltf = random_ltf(n, family, config.theta_law, seed, config.theorem.arity_cap);
        const LtfInstance inst = LtfInstance::build(ltf, config.theorem.arity_cap);

        auto& rows = slots[i];
        rows.reserve(per_instance);
        for (double eps : config.epsilons) {
            for (double delta : config.deltas) {
                const JuntaReport r = extract_junta(inst, eps, delta, config.theorem);
                rows.push_back(SweepRow{i, family_name(family.family), n, seed, eps, delta, r.case_taken,
                                        r.junta_size(), r.diag.L, r.diag.ell, r.diag.ns_value,
                                        r.diag.premise_bound, r.diag.premise_holds, r.distance,
                                        r.diag.guarantee_bound, theorem_verify(r, delta)});
            }
        }
    });

    std::vector<SweepRow> out;
    out.reserve(config.count * per_instance);
    for (auto& s : slots) {
        for (auto& row : s) out.push_back(std::move(row));
    }
    return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::uint64_t seed) {
    write_csv_row(out, {"instance", "family", "n", "instance_seed", "epsilon", "delta", "case",
                        "junta_size", "L", "ell", "ns", "premise_bound", "premise_holds", "distance",
                        "guarantee", "verdict"});
    for (const auto& r : rows) {
        write_csv_row(out, {std::to_string(r.instance), r.family, std::to_string(r.n),
                            std::to_string(r.instance_seed), format_real(r.epsilon),
                            format_real(r.delta), case_name(r.case_taken), std::to_string(r.junta_size),
                            std::to_string(r.L), format_index(r.ell), format_real(r.ns),
                            format_real(r.premise_bound), format_bool(r.premise_holds),
                            format_real(r.distance), format_real(r.guarantee),
                            verdict_name(r.verdict.verdict)});
    }
    write_csv_metadata(out, seed);
}

}  // namespace hsf
