#ifndef ITERSUM_ERRORS_HPP
#define ITERSUM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itersum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MonoidMismatch : Error {
    MonoidMismatch() : Error("monoid tags differ") {}
};

struct CapExceeded : Error {
    std::size_t cap;
    explicit CapExceeded(std::size_t c)
        : Error("element cap exceeded: " + std::to_string(c)), cap(c) {}
};

struct ZeroDilation : Error {
    ZeroDilation() : Error("dilation by zero") {}
};

struct TooSmall : Error {
    using Error::Error;
};

struct DomainViolation : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct NotMonotone : Error {
    using Error::Error;
};

struct EmptyDomain : Error {
    using Error::Error;
};

struct NotKConvex : Error {
    using Error::Error;
};

struct NotKConvexFunction : Error {
    using Error::Error;
};

struct SqueezeViolated : Error {
    using Error::Error;
};

struct HypothesisViolated : Error {
    using Error::Error;
};

struct BadFamily : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace itersum

#endif
