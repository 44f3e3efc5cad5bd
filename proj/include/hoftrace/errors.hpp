#pragma once

#include <stdexcept>
#include <string>

namespace hoftrace {

// Every error raised by the library derives from one of the standard
// exception families so callers can catch broadly or precisely.

struct InvalidFlux : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateTerm : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegeneratePolynomial : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct RangeError : std::range_error {
    using std::range_error::range_error;
};

struct TooLarge : std::length_error {
    using std::length_error::length_error;
};

}  // namespace hoftrace
