#pragma once

#include "uninorm/sampler.hpp"

namespace uninorm {

struct LawResult {
    std::string law;
    uint64_t samples = 0;
    uint64_t violations = 0;
    std::string counterexample; // first failure, printed operands
    bool ok() const { return violations == 0; }
};

struct SuiteOptions {
    uint64_t samples = 1000;
    uint64_t seed = 0;
    bool break_negation = false; // debug hook: plant a bug, the suite must catch it
};

/// Randomized law suite for the chain named by a valid term:
/// commutativity, associativity, unit, monotonicity, residuation,
/// involution, oddness, order reversal of negation, closure.
std::vector<LawResult> run_law_suite(const TermPtr& t, const SuiteOptions& opt);

nlohmann::ordered_json laws_to_json(const std::vector<LawResult>& results);

} // namespace uninorm
