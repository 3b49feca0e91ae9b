#ifndef REGCERT_ERRORS_HPP
#define REGCERT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regcert {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller broke a documented precondition (ordering, sign convention, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class UnsupportedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Quadrature could not meet its error budget; carries what was achieved.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// A hypothesis of a bound (e.g. g(4/d3) >= 0) does not hold for the given input.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientUnitsError : public std::runtime_error {
public:
    InsufficientUnitsError(const std::string& what, int rank)
        : std::runtime_error(what), rank_(rank) {}

    int rank() const noexcept { return rank_; }

private:
    int rank_;
};

} // namespace regcert

#endif
