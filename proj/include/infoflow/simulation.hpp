#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infoflow/network.hpp"

namespace infoflow {

/// Absorption probabilities from the start stakeholder in one iteration.
struct AbsorptionSample {
    double p_di = 0.0;
    double p_s = 0.0;
    double p_us = 0.0;
    friend bool operator==(const AbsorptionSample&, const AbsorptionSample&) = default;
};

/// Fixed-width bins over [0, 1]; the last bin is closed on the right.
struct Histogram {
    std::vector<double> edges;  // bins + 1 entries
    std::vector<std::size_t> counts;
    friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct SampleSummary {
    Histogram histogram;
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation (n - 1); 0 for one sample
};

inline constexpr std::size_t kDefaultBins = 50;

/// Throws EmptySampleError on empty input.
SampleSummary summarize(std::span<const double> values, std::size_t bins = kDefaultBins);

struct SimulationSummary {
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    std::vector<AbsorptionSample> samples;
    double mean_di = 0.0;
    double mean_s = 0.0;
    double mean_us = 0.0;
    double std_s = 0.0;
    Histogram histogram;  // of P_S
    friend bool operator==(const SimulationSummary&, const SimulationSummary&) = default;
};

struct SimulationOptions {
    std::size_t bins = kDefaultBins;
    std::size_t threads = 0;  // 0: default_thread_count()
};

/// Monte Carlo over posterior chains. Iteration t draws from the stream
/// RandomStream(seed, t), so the result depends only on (spec, iterations,
/// seed) and not on the thread count.
SimulationSummary run(const NetworkSpec& spec, std::size_t iterations, std::uint64_t seed,
                      const SimulationOptions& options = {});

/// Same as run() for an already-built posterior model.
SimulationSummary run(const PosteriorModel& model, std::size_t iterations, std::uint64_t seed,
                      const SimulationOptions& options = {});

}  // namespace infoflow
