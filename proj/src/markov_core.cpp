#include "infoflow/markov_core.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

// Pivots below this magnitude are treated as a singular I - Q. Entries of
// I - Q are bounded by 1 in magnitude, so an absolute threshold is adequate.
constexpr double kPivotFloor = 1e-13;

std::vector<std::string> default_absorbing_labels(std::size_t m) {
    if (m == 3) return {"DI", "S", "US"};
    std::vector<std::string> out;
    for (std::size_t k = 0; k < m; ++k) out.push_back("abs" + std::to_string(k));
    return out;
}

// LU factorization with partial pivoting of a square matrix, in place.
class LuFactorization {
public:
    explicit LuFactorization(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
        const std::size_t n = lu_.rows();
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
            if (std::abs(lu_(p, k)) < kPivotFloor)
                throw SingularSystemError("I - Q is numerically singular (pivot " +
                                          std::to_string(k) + ")");
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(perm_[k], perm_[p]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const double f = lu_(i, k) / lu_(k, k);
                lu_(i, k) = f;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
    }

    // Solves A X = rhs for every column of rhs.
    Matrix solve(const Matrix& rhs) const {
        const std::size_t n = lu_.rows();
        Matrix x(n, rhs.cols());
        for (std::size_t c = 0; c < rhs.cols(); ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                double s = rhs(perm_[i], c);
                for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x(j, c);
                x(i, c) = s;
            }
            for (std::size_t i = n; i-- > 0;) {
                double s = x(i, c);
                for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x(j, c);
                x(i, c) = s / lu_(i, i);
            }
        }
        return x;
    }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

Matrix identity_minus(const Matrix& q) {
    Matrix a(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) a(i, j) = (i == j ? 1.0 : 0.0) - q(i, j);
    return a;
}

}  // namespace

TransitionMatrix build_canonical(Matrix q, Matrix r, std::vector<std::string> transient_labels,
                                 std::vector<std::string> absorbing_labels) {
    const std::size_t n = q.rows();
    if (n == 0) throw std::invalid_argument("build_canonical: no transient states");
    if (q.cols() != n) throw std::invalid_argument("build_canonical: Q must be square");
    if (r.rows() != n) throw std::invalid_argument("build_canonical: R row count differs from Q");
    const std::size_t m = r.cols();
    if (m == 0) throw std::invalid_argument("build_canonical: no absorbing states");

    if (transient_labels.empty())
        for (std::size_t i = 0; i < n; ++i) transient_labels.push_back(std::to_string(i));
    if (absorbing_labels.empty()) absorbing_labels = default_absorbing_labels(m);
    if (transient_labels.size() != n || absorbing_labels.size() != m)
        throw std::invalid_argument("build_canonical: label count does not match dimensions");

    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (double v : q.row(i)) {
            if (!(v >= 0.0)) throw NegativeEntryError("negative or NaN entry in Q row " + transient_labels[i]);
            sum += v;
        }
        for (double v : r.row(i)) {
            if (!(v >= 0.0)) throw NegativeEntryError("negative or NaN entry in R row " + transient_labels[i]);
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance)
            throw RowSumError("row " + transient_labels[i] + " sums to " + std::to_string(sum));
        if (sum != 1.0) {
            for (double& v : q.row(i)) v /= sum;
            for (double& v : r.row(i)) v /= sum;
        }
    }

    // Backward search from the states with a direct absorbing exit.
    std::vector<bool> reaches(n, false);
    std::deque<std::size_t> frontier;
    for (std::size_t i = 0; i < n; ++i) {
        for (double v : r.row(i)) {
            if (v > 0.0) {
                reaches[i] = true;
                frontier.push_back(i);
                break;
            }
        }
    }
    while (!frontier.empty()) {
        const std::size_t j = frontier.front();
        frontier.pop_front();
        for (std::size_t i = 0; i < n; ++i) {
            if (!reaches[i] && q(i, j) > 0.0) {
                reaches[i] = true;
                frontier.push_back(i);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!reaches[i])
            throw AbsorptionUnreachableError("no absorbing state reachable from " + transient_labels[i]);

    TransitionMatrix tm;
    tm.q_ = std::move(q);
    tm.r_ = std::move(r);
    tm.state_order_ = std::move(transient_labels);
    tm.state_order_.insert(tm.state_order_.end(), absorbing_labels.begin(), absorbing_labels.end());
    return tm;
}

AbsorptionResult absorption_probabilities(const TransitionMatrix& tm) {
    const LuFactorization lu(identity_minus(tm.q()));
    return {lu.solve(tm.r()), tm.state_order()};
}

Matrix expected_visits(const TransitionMatrix& tm) {
    const LuFactorization lu(identity_minus(tm.q()));
    return lu.solve(Matrix::identity(tm.n_transient()));
}

}  // namespace infoflow
