#pragma once

#include "uninorm/ops.hpp"

namespace uninorm {

/// An adjacent pair lower < upper with nothing in between.
struct GapWitness {
    Element lower, upper;
    std::string clause; // which structural case produced it
};

struct Census {
    long long positive = 0; // idempotents >= unit, unit included
    long long negative = 0; // idempotents <= unit, unit included
};

struct Analysis {
    bool valid = false;
    std::optional<Violation> violation;
    std::string group_part;
    bool group_gap = false; // adjacent invertible pair exists
    std::optional<GapWitness> group_gap_witness;
    std::optional<GapWitness> outside_gap; // adjacent pair off the group part
    Census census;
    bool realizable = false; // order isomorphic to the reals
    std::vector<std::string> notes;
};

/// Static well-definedness and order analysis of a term. Never throws
/// on invalid terms; the violation is reported in the result.
Analysis analyze(const TermPtr& t);

/// All idempotents of a valid term, sorted ascending. The count is
/// finite: leaves contribute one, each node at most one more.
std::vector<Element> enumerate_idempotents(const TermPtr& t);

nlohmann::ordered_json analysis_to_json(const TermPtr& t, const Analysis& a);

} // namespace uninorm
