#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "infoflow/random.hpp"

namespace infoflow {

/// Observed flow frequencies from one stakeholder to its K interacting states.
/// Counts are real-valued; only multinomial_pmf requires integers.
class CountVector {
public:
    CountVector(std::vector<std::string> labels, std::vector<double> counts);
    /// Unlabeled counts; labels default to "0".."K-1".
    explicit CountVector(std::vector<double> counts);

    std::size_t size() const noexcept { return counts_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<double>& counts() const noexcept { return counts_; }
    double operator[](std::size_t j) const noexcept { return counts_[j]; }
    double total() const noexcept { return total_; }

    friend bool operator==(const CountVector&, const CountVector&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<double> counts_;
    double total_ = 0.0;
};

/// Strictly positive concentration parameters.
class DirichletParams {
public:
    explicit DirichletParams(std::vector<double> alpha);
    static DirichletParams uniform_prior(std::size_t k) { return DirichletParams(std::vector<double>(k, 1.0)); }

    std::size_t size() const noexcept { return alpha_.size(); }
    const std::vector<double>& alpha() const noexcept { return alpha_; }
    double operator[](std::size_t j) const noexcept { return alpha_[j]; }
    double concentration() const noexcept;

    friend bool operator==(const DirichletParams&, const DirichletParams&) = default;

private:
    std::vector<double> alpha_;
};

/// Point on the probability simplex; entries in [0,1] summing to 1.
class SimplexVector {
public:
    explicit SimplexVector(std::vector<double> theta);

    std::size_t size() const noexcept { return theta_.size(); }
    const std::vector<double>& theta() const noexcept { return theta_; }
    double operator[](std::size_t j) const noexcept { return theta_[j]; }

private:
    std::vector<double> theta_;
};

/// Multinomial probability mass of integer counts under theta, evaluated in
/// log space.
double multinomial_pmf(const CountVector& counts, const SimplexVector& theta);

/// Conjugate update: alpha_j + N_j.
DirichletParams posterior(const DirichletParams& prior, const CountVector& counts);

/// Posterior under the uniform Dir(1) prior: 1 + N_j.
DirichletParams noninformative_posterior(const CountVector& counts);

SimplexVector mean(const DirichletParams& params);

/// One Dirichlet draw as K normalized Gamma(alpha_j, 1) variates.
SimplexVector sample(const DirichletParams& params, RandomStream& rng);

/// Writes a draw into `out` (size K) without allocating.
void sample_into(std::span<const double> alpha, RandomStream& rng, std::span<double> out);

}  // namespace infoflow
