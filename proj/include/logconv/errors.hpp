#pragma once

#include <stdexcept>
#include <string>

namespace logconv {

// Malformed or ill-typed input (bad dimensions, unparsable rationals, schema
// violations). CLI maps this to exit code 2.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally valid input evaluated outside the operation's domain
// (e.g. a query point not interior to U).
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// An internal cross-check failed: two routes that must agree exactly did not.
// This always signals a bug, never an expected runtime condition.
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace logconv
