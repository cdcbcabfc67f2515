#include "infoflow/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <utility>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::string fmt_number(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

// Column of a target in the (Q | R) layout, or kNone for unknown stakeholders.
std::size_t target_column(const NetworkSpec& spec, const FlowTarget& t) {
    if (const auto* kind = std::get_if<AbsorbingKind>(&t)) return spec.stakeholders.size() + absorbing_index(*kind);
    return spec.index_of(std::get<std::string>(t)).value_or(kNone);
}

// Flow indices out of stakeholder `row`, sorted by target column.
std::vector<std::size_t> outgoing(const NetworkSpec& spec, std::size_t row) {
    std::vector<std::pair<std::size_t, std::size_t>> keyed;
    for (std::size_t f = 0; f < spec.flows.size(); ++f) {
        if (spec.index_of(spec.flows[f].from) != row) continue;
        keyed.emplace_back(target_column(spec, spec.flows[f].to), f);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> out;
    for (const auto& [col, f] : keyed) out.push_back(f);
    return out;
}

}  // namespace

std::string_view to_string(Level level) noexcept {
    switch (level) {
        case Level::Federal: return "federal";
        case Level::State: return "state";
        case Level::Local: return "local";
    }
    return "?";
}

std::string_view to_string(AbsorbingKind kind) noexcept {
    switch (kind) {
        case AbsorbingKind::DI: return "DI";
        case AbsorbingKind::S: return "S";
        case AbsorbingKind::US: return "US";
    }
    return "?";
}

std::optional<Level> parse_level(std::string_view s) noexcept {
    for (Level l : {Level::Federal, Level::State, Level::Local})
        if (s == to_string(l)) return l;
    return std::nullopt;
}

std::optional<AbsorbingKind> parse_absorbing(std::string_view s) noexcept {
    for (AbsorbingKind k : kAbsorbingOrder)
        if (s == to_string(k)) return k;
    return std::nullopt;
}

std::string target_label(const FlowTarget& t) {
    if (const auto* kind = std::get_if<AbsorbingKind>(&t)) return std::string(to_string(*kind));
    return std::get<std::string>(t);
}

std::optional<std::size_t> NetworkSpec::index_of(std::string_view id) const noexcept {
    for (std::size_t i = 0; i < stakeholders.size(); ++i)
        if (stakeholders[i].id == id) return i;
    return std::nullopt;
}

std::vector<std::string> ValidationReport::messages() const {
    std::vector<std::string> out;
    for (const auto& v : violations) out.push_back(v.message);
    return out;
}

ValidationReport validate(const NetworkSpec& spec) {
    ValidationReport report;
    auto add = [&](std::string code, std::string message) {
        report.violations.push_back({std::move(code), std::move(message)});
    };

    const std::size_t n = spec.stakeholders.size();
    if (n == 0) add("no-stakeholders", "network declares no stakeholders");

    std::set<std::string> seen;
    for (const auto& s : spec.stakeholders) {
        if (s.id.empty()) add("empty-id", "stakeholder with empty id");
        if (parse_absorbing(s.id)) add("reserved-id", "stakeholder id '" + s.id + "' is a reserved absorbing-state name");
        if (!seen.insert(s.id).second) add("duplicate-stakeholder", "duplicate stakeholder id '" + s.id + "'");
    }
    if (!spec.index_of(spec.start)) add("unknown-start", "start stakeholder '" + spec.start + "' is not declared");

    std::set<std::pair<std::string, std::string>> pairs;
    std::vector<double> outflow(n, 0.0);
    bool endpoints_ok = true;
    for (const auto& f : spec.flows) {
        const std::string to = target_label(f.to);
        const auto from_idx = spec.index_of(f.from);
        if (!from_idx) {
            add("unknown-endpoint", "flow source '" + f.from + "' is not a declared stakeholder");
            endpoints_ok = false;
        }
        if (const auto* id = std::get_if<std::string>(&f.to); id && !spec.index_of(*id)) {
            add("unknown-endpoint", "flow target '" + *id + "' is not a declared stakeholder");
            endpoints_ok = false;
        }
        if (!pairs.insert({f.from, to}).second)
            add("duplicate-flow", "duplicate flow " + f.from + " -> " + to);
        if (const auto* id = std::get_if<std::string>(&f.to); id && *id == f.from)
            add("self-loop", "self-loop on stakeholder '" + f.from + "'");
        if (!(f.frequency >= 0.0) || !std::isfinite(f.frequency))
            add("negative-frequency", "negative frequency " + fmt_number(f.frequency) + " on flow " + f.from + " -> " + to);
        else if (from_idx)
            outflow[*from_idx] += f.frequency;
    }

    // Every stakeholder becomes a transient row, so each needs outflow.
    for (std::size_t i = 0; i < n; ++i)
        if (!(outflow[i] > 0.0))
            add("dead-end", "dead-end transient state '" + spec.stakeholders[i].id + "' has zero total outflow");

    if (endpoints_ok && n > 0) {
        std::vector<bool> reaches(n, false);
        std::deque<std::size_t> frontier;
        for (const auto& f : spec.flows)
            if (std::holds_alternative<AbsorbingKind>(f.to) && f.frequency > 0.0) {
                const std::size_t i = *spec.index_of(f.from);
                if (!reaches[i]) {
                    reaches[i] = true;
                    frontier.push_back(i);
                }
            }
        while (!frontier.empty()) {
            const std::string& target = spec.stakeholders[frontier.front()].id;
            frontier.pop_front();
            for (const auto& f : spec.flows) {
                const auto* id = std::get_if<std::string>(&f.to);
                if (!id || *id != target || !(f.frequency > 0.0)) continue;
                const std::size_t i = *spec.index_of(f.from);
                if (!reaches[i]) {
                    reaches[i] = true;
                    frontier.push_back(i);
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!reaches[i] && outflow[i] > 0.0)
                add("absorption-unreachable",
                    "no absorbing state reachable from '" + spec.stakeholders[i].id + "'");
    }
    return report;
}

void require_valid(const NetworkSpec& spec) {
    const ValidationReport report = validate(spec);
    if (!report.ok()) throw ValidationError(report.messages());
}

CountVector counts_for(const NetworkSpec& spec, std::string_view id) {
    const auto row = spec.index_of(id);
    if (!row) throw UnknownStakeholderError("unknown stakeholder '" + std::string(id) + "'");
    std::vector<std::string> labels;
    std::vector<double> counts;
    for (std::size_t f : outgoing(spec, *row)) {
        labels.push_back(target_label(spec.flows[f].to));
        counts.push_back(spec.flows[f].frequency);
    }
    if (counts.empty()) throw ValidationError({"dead-end transient state '" + std::string(id) + "' has no outgoing flows"});
    return CountVector(std::move(labels), std::move(counts));
}

NetworkSpec with_counts(const NetworkSpec& spec, std::string_view id, const CountVector& counts) {
    if (!spec.index_of(id)) throw UnknownStakeholderError("unknown stakeholder '" + std::string(id) + "'");
    NetworkSpec out = spec;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const std::string& label = counts.labels()[j];
        FlowTarget target = parse_absorbing(label) ? FlowTarget(*parse_absorbing(label)) : FlowTarget(label);
        auto it = std::find_if(out.flows.begin(), out.flows.end(),
                               [&](const FlowRecord& f) { return f.from == id && f.to == target; });
        if (it != out.flows.end())
            it->frequency = counts[j];
        else
            out.flows.push_back({std::string(id), std::move(target), counts[j]});
    }
    return out;
}

TransitionMatrix plug_in_chain(const NetworkSpec& spec, PlugInMode mode) {
    require_valid(spec);
    const std::size_t n = spec.stakeholders.size();
    Matrix q(n, n), r(n, kAbsorbingOrder.size());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(spec.stakeholders[i].id);
        const auto flows = outgoing(spec, i);
        std::vector<double> counts;
        for (std::size_t f : flows) counts.push_back(spec.flows[f].frequency);
        std::vector<double> theta;
        if (mode == PlugInMode::PosteriorMean) {
            theta = mean(noninformative_posterior(CountVector(counts))).theta();
        } else {
            double total = 0.0;
            for (double c : counts) total += c;
            for (double c : counts) theta.push_back(c / total);
        }
        for (std::size_t k = 0; k < flows.size(); ++k) {
            const std::size_t col = target_column(spec, spec.flows[flows[k]].to);
            if (col < n) q(i, col) = theta[k];
            else r(i, col - n) = theta[k];
        }
    }
    return build_canonical(std::move(q), std::move(r), std::move(labels));
}

PosteriorModel::PosteriorModel(const NetworkSpec& spec) {
    require_valid(spec);
    start_ = *spec.index_of(spec.start);
    for (std::size_t i = 0; i < spec.stakeholders.size(); ++i) {
        labels_.push_back(spec.stakeholders[i].id);
        Row row;
        for (std::size_t f : outgoing(spec, i)) {
            row.alpha.push_back(1.0 + spec.flows[f].frequency);
            row.column.push_back(target_column(spec, spec.flows[f].to));
        }
        rows_.push_back(std::move(row));
    }
}

TransitionMatrix PosteriorModel::sample(RandomStream& rng) const {
    const std::size_t n = rows_.size();
    Matrix q(n, n), r(n, kAbsorbingOrder.size());
    std::vector<double> theta;
    for (std::size_t i = 0; i < n; ++i) {
        const Row& row = rows_[i];
        theta.resize(row.alpha.size());
        sample_into(row.alpha, rng, theta);
        for (std::size_t k = 0; k < theta.size(); ++k) {
            if (row.column[k] < n) q(i, row.column[k]) = theta[k];
            else r(i, row.column[k] - n) = theta[k];
        }
    }
    return build_canonical(std::move(q), std::move(r), labels_);
}

TransitionMatrix sampled_chain(const NetworkSpec& spec, RandomStream& rng) {
    return PosteriorModel(spec).sample(rng);
}

NetworkSpec reference_network() {
    using K = AbsorbingKind;
    NetworkSpec spec;
    spec.comment =
        "Five-stakeholder example network. A->B, A->C and B's outflows are given values; "
        "the C, D and E outflows are reconstructed (fitted to target Monte Carlo results), not observed data.";
    spec.start = "A";
    spec.stakeholders = {{"A", Level::Federal}, {"B", Level::State}, {"C", Level::State},
                         {"D", Level::Local},   {"E", Level::Local}};
    spec.flows = {
        {"A", "B", 60}, {"A", "C", 40},
        {"B", "D", 30}, {"B", "E", 20}, {"B", K::DI, 10},
        {"C", "E", 35}, {"C", K::DI, 5},
        {"D", K::S, 15}, {"D", K::US, 10}, {"D", K::DI, 5},
        {"E", K::S, 35}, {"E", K::US, 10}, {"E", K::DI, 10},
    };
    return spec;
}

}  // namespace infoflow
