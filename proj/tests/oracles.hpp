#pragma once

// Test-only reference computations, kept independent of the library's solver
// and sampler code paths.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "infoflow/matrix.hpp"

namespace oracle {

/// Absorption probabilities by summing path probabilities length by length:
/// the transient mass vector is pushed through Q and the mass leaving through
/// R is accumulated until the remaining transient mass drops below
/// `residual`. Returns n x m.
inline infoflow::Matrix absorption_by_paths(const infoflow::Matrix& q, const infoflow::Matrix& r,
                                            double residual = 1e-10, std::size_t max_len = 10'000'000) {
    const std::size_t n = q.rows(), m = r.cols();
    infoflow::Matrix out(n, m);
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<double> mass(n, 0.0), next(n);
        mass[start] = 1.0;
        for (std::size_t len = 0; len < max_len; ++len) {
            double left = 0.0;
            for (double v : mass) left += v;
            if (left < residual) break;
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (mass[i] == 0.0) continue;
                for (std::size_t k = 0; k < m; ++k) out(start, k) += mass[i] * r(i, k);
                for (std::size_t j = 0; j < n; ++j) next[j] += mass[i] * q(i, j);
            }
            mass.swap(next);
        }
    }
    return out;
}

struct RandomChain {
    infoflow::Matrix q;
    infoflow::Matrix r;
};

/// Random absorbing chain with n transient states and m absorbing states.
/// Every row gets a random support; at least one row exits directly and
/// every row links toward a row with a lower index or an absorbing state, so
/// absorption is reachable from everywhere. Back edges create cycles.
inline RandomChain random_chain(std::mt19937_64& gen, std::size_t n, std::size_t m, double density = 0.6) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RandomChain c{infoflow::Matrix(n, n), infoflow::Matrix(n, m)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> w(n + m, 0.0);
        for (std::size_t j = 0; j < n + m; ++j)
            if (j != i && u(gen) < density) w[j] = u(gen);
        // Guarantee a step toward absorption: either a direct exit or an edge
        // to a lower-index state (which by induction reaches absorption).
        if (i == 0 || u(gen) < 0.3) w[n + std::uniform_int_distribution<std::size_t>(0, m - 1)(gen)] += 0.05 + u(gen);
        else w[std::uniform_int_distribution<std::size_t>(0, i - 1)(gen)] += 0.05 + u(gen);
        double total = 0.0;
        for (double v : w) total += v;
        for (std::size_t j = 0; j < n; ++j) c.q(i, j) = w[j] / total;
        for (std::size_t k = 0; k < m; ++k) c.r(i, k) = w[n + k] / total;
    }
    return c;
}

}  // namespace oracle
