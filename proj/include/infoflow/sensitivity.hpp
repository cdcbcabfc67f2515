#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "infoflow/network.hpp"
#include "infoflow/simulation.hpp"

namespace infoflow {

enum class SweepMode { MonteCarlo, PlugIn };

struct SweepPoint {
    double n_di = 0.0;
    double mean_p_di = 0.0;
    double mean_p_s = 0.0;
    double mean_p_us = 0.0;
    friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// Absorption means from the start stakeholder as one stakeholder's discarded
/// flow goes from 0 to its total outflow.
struct SweepResult {
    std::string stakeholder;
    double n_min = 0.0;
    double n_max = 0.0;
    std::vector<SweepPoint> points;
    double p_s_at_min_di = 0.0;  // P_S at n_min: the higher end of the curve
    double p_s_at_max_di = 0.0;
    double impact_ratio = 0.0;
    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct SweepOptions {
    double increment = 1.0;
    std::size_t threads = 0;
};

/// Sets the DI entry to `di_value` and spreads the rest of the total over the
/// other entries in proportion to their current values. A missing DI entry
/// is inserted (before S and US, after stakeholder targets).
///
/// Throws ExceedsTotalError if di_value is outside [0, total] and
/// NoNonDiTargetsError if there is nothing to reallocate to.
CountVector reallocate(const CountVector& counts, double di_value);

/// Drop in P_S per unit of added discarded flow:
/// (p_s_at_min_di - p_s_at_max_di) / (n_max - n_min).
/// Throws DegenerateRangeError if n_max == n_min.
double impact_ratio(double p_s_at_min_di, double p_s_at_max_di, double n_max, double n_min);

/// Monte Carlo mode runs `iterations` posterior draws per increment using
/// the same streams at every increment (common random numbers). Plug-in mode
/// evaluates the raw-frequency chain and ignores iterations and seed.
SweepResult sweep_ineffective(const NetworkSpec& spec, std::string_view stakeholder, std::size_t iterations,
                              std::uint64_t seed, SweepMode mode, const SweepOptions& options = {});

struct RankEntry {
    std::string stakeholder;
    double impact_ratio = 0.0;
    SweepResult sweep;
};

/// Sweeps every stakeholder except the start one; sorted by descending
/// impact ratio, ties by ascending id.
std::vector<RankEntry> rank_stakeholders(const NetworkSpec& spec, std::size_t iterations, std::uint64_t seed,
                                         SweepMode mode, const SweepOptions& options = {});

}  // namespace infoflow
