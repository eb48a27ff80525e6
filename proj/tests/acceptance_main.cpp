// Runs every verification criterion at full scale and prints one pass/fail
// line per criterion; nonzero exit if any fails.

#include <iostream>

#include "dyadic/suite.hpp"

int main() {
    const auto results = dyadic::run_acceptance(std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
