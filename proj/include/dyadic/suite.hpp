#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dyadic {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs one verification criterion (1..8) at full scale.
CriterionResult run_criterion(int index);

// Runs all criteria, printing one pass/fail line per criterion to `out`.
// Returns the results; the run passes iff every criterion does.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

}  // namespace dyadic
