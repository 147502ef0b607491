#ifndef PUISEUX_ERRORS_HPP
#define PUISEUX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace puiseux {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Ambient dimension of two operands differs.
class dimension_error : public error {
public:
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

// Rational and symbolic scalars mixed in one computation.
class mode_error : public error {
public:
    explicit mode_error(const std::string& msg) : error(msg) {}
};

// A coefficient beyond the trusted truncation bound was requested.
class truncation_error : public error {
public:
    explicit truncation_error(const std::string& msg) : error(msg) {}
};

// An exact division failed (violated integrality or divisibility invariant).
class divisibility_error : public error {
public:
    explicit divisibility_error(const std::string& msg) : error(msg) {}
};

// Precondition of an operation does not hold for the given inputs.
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& msg) : error(msg) {}
};

// No annihilator could be assembled at the probed depth.
class no_reconstruction_error : public error {
public:
    explicit no_reconstruction_error(const std::string& msg) : error(msg) {}
};

// Exact arithmetic exceeded the configured resource limits.
class resource_error : public error {
public:
    explicit resource_error(const std::string& msg) : error(msg) {}
};

class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

// Resource guard configured via PUISEUX_MAX_BIGINT_BITS (0 = unlimited).
std::size_t max_bigint_bits();

} // namespace puiseux

#endif
