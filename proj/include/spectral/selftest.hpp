#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spectral {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // worst observed values, one line
};

// Runs the full verification suite (partition of unity, convexity and
// inclusion characterizations, disk collapse, jump relations, calculus
// identities, mapping theorems, inequality slacks, extremal bounds and the
// smooth-approximation pipeline). Progress lines go to `progress` when given.
std::vector<CriterionResult> run_acceptance_suite(std::ostream* progress = nullptr);

} // namespace spectral
