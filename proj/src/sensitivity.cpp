#include "infoflow/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

constexpr std::string_view kDi = "DI";

bool is_absorbing_label(const std::string& s) { return parse_absorbing(s).has_value(); }

SweepPoint evaluate_point(const NetworkSpec& spec, double n_di, std::size_t iterations, std::uint64_t seed,
                          SweepMode mode, const SweepOptions& options) {
    if (mode == SweepMode::PlugIn) {
        const AbsorptionResult res = absorption_probabilities(plug_in_chain(spec, PlugInMode::RawFrequency));
        const std::size_t s = *spec.index_of(spec.start);
        return {n_di, res.b(s, absorbing_index(AbsorbingKind::DI)), res.b(s, absorbing_index(AbsorbingKind::S)),
                res.b(s, absorbing_index(AbsorbingKind::US))};
    }
    SimulationOptions sim;
    sim.threads = options.threads;
    const SimulationSummary summary = run(spec, iterations, seed, sim);
    return {n_di, summary.mean_di, summary.mean_s, summary.mean_us};
}

}  // namespace

CountVector reallocate(const CountVector& counts, double di_value) {
    std::vector<std::string> labels = counts.labels();
    std::vector<double> values = counts.counts();

    auto di = std::find(labels.begin(), labels.end(), kDi);
    if (di == labels.end()) {
        // Keep counts_for ordering: stakeholders, then DI, S, US.
        auto pos = std::find_if(labels.begin(), labels.end(), is_absorbing_label);
        const auto offset = pos - labels.begin();
        labels.insert(pos, std::string(kDi));
        values.insert(values.begin() + offset, 0.0);
        di = labels.begin() + offset;
    }
    const std::size_t di_idx = static_cast<std::size_t>(di - labels.begin());

    const double total = counts.total();
    if (!(di_value >= 0.0) || di_value > total)
        throw ExceedsTotalError("discarded frequency must lie in [0, total outflow]");
    const double others = total - values[di_idx];
    if (labels.size() < 2 || !(others > 0.0))
        throw NoNonDiTargetsError("no non-DI flow to reallocate proportionally");

    const double remaining = total - di_value;
    if (remaining != others)
        for (std::size_t j = 0; j < values.size(); ++j)
            if (j != di_idx) values[j] = values[j] * remaining / others;
    values[di_idx] = di_value;
    return CountVector(std::move(labels), std::move(values));
}

double impact_ratio(double p_s_at_min_di, double p_s_at_max_di, double n_max, double n_min) {
    if (n_max == n_min) throw DegenerateRangeError("impact ratio needs n_max != n_min");
    return (p_s_at_min_di - p_s_at_max_di) / (n_max - n_min);
}

SweepResult sweep_ineffective(const NetworkSpec& spec, std::string_view stakeholder, std::size_t iterations,
                              std::uint64_t seed, SweepMode mode, const SweepOptions& options) {
    require_valid(spec);
    if (!(options.increment > 0.0)) throw InvalidParameterError("sweep increment must be positive");
    const CountVector base = counts_for(spec, stakeholder);

    SweepResult out;
    out.stakeholder = std::string(stakeholder);
    out.n_min = 0.0;
    out.n_max = base.total();

    std::vector<double> grid;
    const auto steps = static_cast<std::size_t>(std::floor(out.n_max / options.increment + 1e-9));
    for (std::size_t k = 0; k <= steps; ++k) grid.push_back(std::min(out.n_max, static_cast<double>(k) * options.increment));
    if (grid.back() < out.n_max) grid.push_back(out.n_max);

    for (double n_di : grid) {
        const NetworkSpec modified = with_counts(spec, stakeholder, reallocate(base, n_di));
        out.points.push_back(evaluate_point(modified, n_di, iterations, seed, mode, options));
    }
    out.p_s_at_min_di = out.points.front().mean_p_s;
    out.p_s_at_max_di = out.points.back().mean_p_s;
    out.impact_ratio = impact_ratio(out.p_s_at_min_di, out.p_s_at_max_di, out.n_max, out.n_min);
    return out;
}

std::vector<RankEntry> rank_stakeholders(const NetworkSpec& spec, std::size_t iterations, std::uint64_t seed,
                                         SweepMode mode, const SweepOptions& options) {
    require_valid(spec);
    std::vector<RankEntry> out;
    for (const auto& s : spec.stakeholders) {
        if (s.id == spec.start) continue;
        SweepResult sweep = sweep_ineffective(spec, s.id, iterations, seed, mode, options);
        const double ratio = sweep.impact_ratio;
        out.push_back({s.id, ratio, std::move(sweep)});
    }
    std::stable_sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.impact_ratio != b.impact_ratio) return a.impact_ratio > b.impact_ratio;
        return a.stakeholder < b.stakeholder;
    });
    return out;
}

}  // namespace infoflow
