#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

// Input that cannot be parsed or violates a file-format rule.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A caller-supplied value breaks a documented hypothesis, e.g. the level
// lambda is not above ||f||_1/||mu||, or doubling parameters out of range.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

// A quantity the library guarantees internally came out wrong.  This is not
// a user error: a covering or decomposition invariant failed, and the
// computation must stop loudly instead of repairing itself.
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dyadic
