#include "infoflow/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

std::vector<std::string> index_labels(std::size_t k) {
    std::vector<std::string> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) out.push_back(std::to_string(j));
    return out;
}

}  // namespace

CountVector::CountVector(std::vector<std::string> labels, std::vector<double> counts)
    : labels_(std::move(labels)), counts_(std::move(counts)) {
    if (counts_.empty()) throw InvalidParameterError("count vector must have K >= 1 entries");
    if (labels_.size() != counts_.size())
        throw DimensionMismatchError("count labels and values differ in length");
    for (double c : counts_) {
        if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidParameterError("counts must be finite and >= 0");
        total_ += c;
    }
}

CountVector::CountVector(std::vector<double> counts) : CountVector(index_labels(counts.size()), counts) {}

DirichletParams::DirichletParams(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw InvalidParameterError("Dirichlet needs K >= 1 parameters");
    for (double a : alpha_)
        if (!(a > 0.0) || !std::isfinite(a))
            throw InvalidParameterError("Dirichlet parameters must be positive and finite");
}

double DirichletParams::concentration() const noexcept {
    return std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
}

SimplexVector::SimplexVector(std::vector<double> theta) : theta_(std::move(theta)) {
    if (theta_.empty()) throw InvalidParameterError("simplex vector must be non-empty");
    double sum = 0.0;
    for (double t : theta_) {
        if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameterError("simplex entries must lie in [0, 1]");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidParameterError("simplex entries must sum to 1");
}

double multinomial_pmf(const CountVector& counts, const SimplexVector& theta) {
    if (counts.size() != theta.size())
        throw DimensionMismatchError("counts and theta have different lengths");
    double log_p = std::lgamma(counts.total() + 1.0);
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const double n = counts[j];
        if (n != std::floor(n)) throw NonIntegerCountError("multinomial counts must be integers");
        if (n == 0.0) continue;
        if (theta[j] == 0.0) return 0.0;
        log_p += n * std::log(theta[j]) - std::lgamma(n + 1.0);
    }
    return std::exp(log_p);
}

DirichletParams posterior(const DirichletParams& prior, const CountVector& counts) {
    if (prior.size() != counts.size())
        throw DimensionMismatchError("prior and counts have different lengths");
    std::vector<double> alpha(prior.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) alpha[j] = prior[j] + counts[j];
    return DirichletParams(std::move(alpha));
}

DirichletParams noninformative_posterior(const CountVector& counts) {
    return posterior(DirichletParams::uniform_prior(counts.size()), counts);
}

SimplexVector mean(const DirichletParams& params) {
    const double total = params.concentration();
    std::vector<double> theta(params.size());
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = params[j] / total;
    return SimplexVector(std::move(theta));
}

void sample_into(std::span<const double> alpha, RandomStream& rng, std::span<double> out) {
    // Work with log-gamma variates and shift by the maximum so that tiny
    // shapes, whose variates underflow in linear space, still normalize.
    double max_log = -HUGE_VAL;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        out[j] = rng.log_gamma(alpha[j]);
        max_log = std::max(max_log, out[j]);
    }
    double sum = 0.0;
    for (double& v : out) {
        v = std::exp(v - max_log);
        sum += v;
    }
    for (double& v : out) v /= sum;
}

SimplexVector sample(const DirichletParams& params, RandomStream& rng) {
    std::vector<double> theta(params.size());
    sample_into(params.alpha(), rng, theta);
    return SimplexVector(std::move(theta));
}

}  // namespace infoflow
