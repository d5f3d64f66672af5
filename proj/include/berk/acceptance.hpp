#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace berk {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail; // counts, timings, or the first failure witness
};

// Runs the ten acceptance criteria; deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance(uint64_t seed);

} // namespace berk
