#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qslit {

// A parameter or state field outside its physical domain. Carries the
// offending field name so callers can report it.
class domain_error : public std::domain_error {
public:
    domain_error(std::string field, const std::string& what)
        : std::domain_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Casimir (or reconstructed moment product) below hbar^2/4.
class heisenberg_error : public domain_error {
public:
    using domain_error::domain_error;
};

class empty_input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qslit
