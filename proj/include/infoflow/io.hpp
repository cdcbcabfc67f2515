#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infoflow/markov_core.hpp"
#include "infoflow/network.hpp"
#include "infoflow/sensitivity.hpp"
#include "infoflow/simulation.hpp"

namespace infoflow::io {

// ---------------------------------------------------------------------------
// Network documents
//
//   {
//     "comment": "optional free text",
//     "stakeholders": [{"id": "A", "level": "federal"}, ...],
//     "start": "A",
//     "flows": [{"from": "A", "to": "B", "frequency": 60}, ...]
//   }
//
// "to" is a stakeholder id or one of the reserved names "DI", "S", "US".
// ---------------------------------------------------------------------------

/// Structural parse only: throws ParseError (malformed JSON) or SchemaError
/// (missing, extra or mistyped fields, reserved ids, undeclared start or
/// endpoints). Semantic checks are left to validate().
NetworkSpec parse_network_document(std::string_view bytes);

/// parse_network_document() followed by validate(); throws ValidationError
/// with the full report when violations remain.
NetworkSpec parse_network(std::string_view bytes);

std::string emit_network(const NetworkSpec& spec);

/// "fnv1a64:" followed by 16 hex digits of the FNV-1a hash of `bytes`.
std::string input_digest(std::string_view bytes);

// ---------------------------------------------------------------------------
// Reports. JSON numbers and CSV cells use shortest round-trip formatting, so
// every double reparses to the identical value.
// ---------------------------------------------------------------------------

enum class Format { Json, Csv };

struct ReportHeader {
    std::string command;
    std::string input_digest;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iterations;
};

std::string format_double(double v);

std::string validation_report(const ReportHeader& h, const ValidationReport& report, Format format);
std::string evaluation_report(const ReportHeader& h, const NetworkSpec& spec, PlugInMode mode,
                              const AbsorptionResult& result, Format format);
std::string simulation_report(const ReportHeader& h, const NetworkSpec& spec, const SimulationSummary& summary,
                              Format format);
std::string sweep_report(const ReportHeader& h, const SweepResult& sweep, SweepMode mode, Format format);
std::string ranking_report(const ReportHeader& h, const std::vector<RankEntry>& ranking, SweepMode mode,
                           Format format);

std::string_view to_string(PlugInMode mode) noexcept;
std::string_view to_string(SweepMode mode) noexcept;

}  // namespace infoflow::io
