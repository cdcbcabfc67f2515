#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace infoflow {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// markov_core
class RowSumError : public Error { using Error::Error; };
class NegativeEntryError : public Error { using Error::Error; };
class AbsorptionUnreachableError : public Error { using Error::Error; };
class SingularSystemError : public Error { using Error::Error; };

// dirichlet
class DimensionMismatchError : public Error { using Error::Error; };
class NonIntegerCountError : public Error { using Error::Error; };
class InvalidParameterError : public Error { using Error::Error; };

// network / interface
class UnknownStakeholderError : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class SchemaError : public Error { using Error::Error; };

/// Carries the full list of violation messages from a failed validation.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

// simulation / sensitivity
class EmptySampleError : public Error { using Error::Error; };
class ExceedsTotalError : public Error { using Error::Error; };
class NoNonDiTargetsError : public Error { using Error::Error; };
class DegenerateRangeError : public Error { using Error::Error; };

}  // namespace infoflow
