#pragma once

#include <stdexcept>
#include <string>

namespace avgcase {

/// Input violates an operation's precondition. The CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An exhaustive computation would exceed its enumeration budget. CLI exit code 3.
class budget_exceeded : public std::runtime_error {
public:
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw validation_error(what);
}

inline void require_budget(bool ok, const std::string& what) {
    if (!ok) throw budget_exceeded(what);
}

}  // namespace detail
}  // namespace avgcase
