#pragma once

#include <stdexcept>
#include <string>

namespace lgs {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A denominator Pochhammer symbol vanished before the series terminated.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

}  // namespace lgs
