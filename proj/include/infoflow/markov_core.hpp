#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "infoflow/matrix.hpp"

namespace infoflow {

inline constexpr double kRowSumTolerance = 1e-9;

/// Absorbing chain in canonical form. Only the transient rows (Q | R) are
/// stored; the absorbing block (O | I) is implicit. Instances are created by
/// build_canonical() and are immutable afterwards.
class TransitionMatrix {
public:
    std::size_t n_transient() const noexcept { return q_.rows(); }
    std::size_t n_absorbing() const noexcept { return r_.cols(); }
    const Matrix& q() const noexcept { return q_; }
    const Matrix& r() const noexcept { return r_; }

    /// Transient labels in declaration order, then absorbing labels.
    const std::vector<std::string>& state_order() const noexcept { return state_order_; }

private:
    friend TransitionMatrix build_canonical(Matrix q, Matrix r,
                                            std::vector<std::string> transient_labels,
                                            std::vector<std::string> absorbing_labels);
    Matrix q_;
    Matrix r_;
    std::vector<std::string> state_order_;
};

struct AbsorptionResult {
    Matrix b;  // n_transient x n_absorbing
    std::vector<std::string> state_order;
};

/// Validates and assembles a canonical chain. Rows whose sum is within
/// kRowSumTolerance of 1 are rescaled to sum to 1.
///
/// Empty label vectors get defaults: transient states "0".."n-1", absorbing
/// states "DI", "S", "US" when m == 3 and "abs0".. otherwise.
///
/// Throws NegativeEntryError, RowSumError, AbsorptionUnreachableError, or
/// std::invalid_argument on inconsistent dimensions.
TransitionMatrix build_canonical(Matrix q, Matrix r,
                                 std::vector<std::string> transient_labels = {},
                                 std::vector<std::string> absorbing_labels = {});

/// B = (I - Q)^-1 R, computed by one LU factorization of I - Q and m solves.
AbsorptionResult absorption_probabilities(const TransitionMatrix& tm);

/// Fundamental matrix N = (I - Q)^-1.
Matrix expected_visits(const TransitionMatrix& tm);

}  // namespace infoflow
