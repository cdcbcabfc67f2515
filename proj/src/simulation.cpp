#include "infoflow/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infoflow/errors.hpp"
#include "infoflow/kernels/batched_solve.hpp"
#include "infoflow/parallel.hpp"

namespace infoflow {

namespace {

// Iterations per batched solve; also the parallel grain.
constexpr std::size_t kBlock = 64;

void simulate_block(const PosteriorModel& model, std::uint64_t seed, std::size_t begin, std::size_t end,
                    std::span<AbsorptionSample> out) {
    std::vector<TransitionMatrix> chains;
    chains.reserve(end - begin);
    for (std::size_t t = begin; t < end; ++t) {
        RandomStream rng(seed, t);
        chains.push_back(model.sample(rng));
    }
    std::vector<Matrix> b;
    try {
        b = kernels::absorption_batch(chains);
    } catch (const SingularSystemError&) {
        // Locate the failing iteration with the scalar path for the report.
        for (std::size_t t = begin; t < end; ++t) {
            try {
                absorption_probabilities(chains[t - begin]);
            } catch (const SingularSystemError& e) {
                throw SingularSystemError("iteration " + std::to_string(t) + ": " + e.what());
            }
        }
        throw;
    }
    const std::size_t s = model.start_index();
    for (std::size_t t = begin; t < end; ++t) {
        const Matrix& row = b[t - begin];
        out[t] = {row(s, absorbing_index(AbsorbingKind::DI)), row(s, absorbing_index(AbsorbingKind::S)),
                  row(s, absorbing_index(AbsorbingKind::US))};
    }
}

}  // namespace

SampleSummary summarize(std::span<const double> values, std::size_t bins) {
    if (values.empty()) throw EmptySampleError("cannot summarize an empty sample");
    if (bins == 0) throw InvalidParameterError("histogram needs at least one bin");
    SampleSummary out;
    out.histogram.edges.resize(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k) out.histogram.edges[k] = static_cast<double>(k) / static_cast<double>(bins);
    out.histogram.counts.assign(bins, 0);

    double sum = 0.0;
    for (double v : values) {
        sum += v;
        const double scaled = std::clamp(v, 0.0, 1.0) * static_cast<double>(bins);
        const auto idx = std::min(static_cast<std::size_t>(scaled), bins - 1);
        ++out.histogram.counts[idx];
    }
    const double n = static_cast<double>(values.size());
    out.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std_dev = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

SimulationSummary run(const PosteriorModel& model, std::size_t iterations, std::uint64_t seed,
                      const SimulationOptions& options) {
    if (iterations == 0) throw InvalidParameterError("iterations must be at least 1");

    SimulationSummary out;
    out.iterations = iterations;
    out.seed = seed;
    out.samples.resize(iterations);
    parallel_for(iterations, options.threads, kBlock, [&](std::size_t begin, std::size_t end) {
        simulate_block(model, seed, begin, end, out.samples);
    });

    std::vector<double> p_s(iterations);
    double sum_di = 0.0, sum_us = 0.0;
    for (std::size_t t = 0; t < iterations; ++t) {
        p_s[t] = out.samples[t].p_s;
        sum_di += out.samples[t].p_di;
        sum_us += out.samples[t].p_us;
    }
    SampleSummary s = summarize(p_s, options.bins);
    out.mean_di = sum_di / static_cast<double>(iterations);
    out.mean_s = s.mean;
    out.mean_us = sum_us / static_cast<double>(iterations);
    out.std_s = s.std_dev;
    out.histogram = std::move(s.histogram);
    return out;
}

SimulationSummary run(const NetworkSpec& spec, std::size_t iterations, std::uint64_t seed,
                      const SimulationOptions& options) {
    return run(PosteriorModel(spec), iterations, seed, options);
}

}  // namespace infoflow
