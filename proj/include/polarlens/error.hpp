#pragma once

#include <stdexcept>
#include <string>

namespace polarlens {

// Parameter outside its mathematical domain (probability not in [0,1], α ≤ 0, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Total joint mass differs from 1 by more than the distribution's tolerance.
class NormalizationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An atom-count or state-space budget would be exceeded. Never silently truncated.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed file, flag value or order token.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace polarlens
