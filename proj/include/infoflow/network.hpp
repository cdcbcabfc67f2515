#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "infoflow/dirichlet.hpp"
#include "infoflow/markov_core.hpp"
#include "infoflow/random.hpp"

namespace infoflow {

enum class Level { Federal, State, Local };

/// End states of the response process: information discarded, community
/// satisfied, community unsatisfied.
enum class AbsorbingKind { DI, S, US };

inline constexpr std::array<AbsorbingKind, 3> kAbsorbingOrder{AbsorbingKind::DI, AbsorbingKind::S,
                                                              AbsorbingKind::US};

std::string_view to_string(Level level) noexcept;
std::string_view to_string(AbsorbingKind kind) noexcept;
std::optional<Level> parse_level(std::string_view s) noexcept;
std::optional<AbsorbingKind> parse_absorbing(std::string_view s) noexcept;
inline std::size_t absorbing_index(AbsorbingKind k) noexcept { return static_cast<std::size_t>(k); }

struct Stakeholder {
    std::string id;
    Level level = Level::Local;
    friend bool operator==(const Stakeholder&, const Stakeholder&) = default;
};

/// Destination of a flow: another stakeholder (by id) or an absorbing state.
using FlowTarget = std::variant<std::string, AbsorbingKind>;

std::string target_label(const FlowTarget& t);

struct FlowRecord {
    std::string from;
    FlowTarget to;
    double frequency = 0.0;
    friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

/// Stakeholder graph with observed flow frequencies. Plain data; call
/// validate() before use, or let the downstream operations do it.
struct NetworkSpec {
    std::vector<Stakeholder> stakeholders;
    std::vector<FlowRecord> flows;
    std::string start;
    std::string comment;  // free text carried through the document format

    std::optional<std::size_t> index_of(std::string_view id) const noexcept;

    friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::vector<std::string> messages() const;
};

ValidationReport validate(const NetworkSpec& spec);

/// Throws ValidationError carrying the report's messages if it is not empty.
void require_valid(const NetworkSpec& spec);

/// Outgoing frequencies of `id`, ordered by stakeholder declaration order and
/// then DI, S, US. Only targets with a flow record appear.
CountVector counts_for(const NetworkSpec& spec, std::string_view id);

/// Returns a copy of `spec` whose flows out of `id` are replaced by `counts`
/// (labels as produced by counts_for). Flow records keep their original
/// position; new targets are appended.
NetworkSpec with_counts(const NetworkSpec& spec, std::string_view id, const CountVector& counts);

enum class PlugInMode { RawFrequency, PosteriorMean };

/// Deterministic chain from normalized frequencies or Dir(1 + N) means.
TransitionMatrix plug_in_chain(const NetworkSpec& spec, PlugInMode mode);

/// Validated network with per-stakeholder Dir(1 + N) posteriors laid out for
/// repeated sampling.
class PosteriorModel {
public:
    explicit PosteriorModel(const NetworkSpec& spec);

    std::size_t n_transient() const noexcept { return rows_.size(); }
    std::size_t start_index() const noexcept { return start_; }
    const std::vector<std::string>& transient_labels() const noexcept { return labels_; }

    /// One chain with every row drawn independently from its posterior.
    TransitionMatrix sample(RandomStream& rng) const;

private:
    struct Row {
        std::vector<double> alpha;
        std::vector<std::size_t> column;  // < n: Q column, else n + absorbing index
    };
    std::vector<Row> rows_;
    std::vector<std::string> labels_;
    std::size_t start_ = 0;
};

TransitionMatrix sampled_chain(const NetworkSpec& spec, RandomStream& rng);

/// The bundled reference network (five stakeholders A..E).
NetworkSpec reference_network();

}  // namespace infoflow
