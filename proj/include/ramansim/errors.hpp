// errors.hpp — Exception taxonomy shared by the library and the CLI exit-code mapping

#pragma once

#include <stdexcept>
#include <string>

namespace ramansim {

// Malformed configuration / CLI input (exit code 1)
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A physics contract was violated, e.g. a builder precondition such as
// two-photon resonance, or a singular parameter (exit code 2)
class contract_error : public std::runtime_error {
public:
    explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical machinery failed, e.g. step-size underflow in the integrator
// (exit code 3)
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ramansim
