#pragma once

#include <functional>

#include "uninorm/analysis.hpp"

namespace uninorm {

// Rewrite rules on construction terms. Both preserve the named chain up
// to an order isomorphism that also respects the monoid structure:
//   reassociate: PLP2(PLP2(A;B);C)   -> PLP2(A;PLP2(B;C))
//   hoist:       PLP2(PLP1(A;H;L);B) -> PLP1(A;H;PLP2(L;B))
//   alias:       PLP3 with V = W     -> PLP1,   PLP4 with V = gr(X) -> PLP2
// Either side of reassociate/hoist is well defined exactly when the
// other is; alias needs a well defined node to resolve its descriptors.

enum class Rule { Reassociate, Hoist, Alias };
enum class Dir { LtoR, RtoL };

struct RewriteStep {
    Rule rule;
    Dir dir;
    std::vector<int> path; // 0 = first factor, 1 = second factor
};

/// Order isomorphism on elements, both directions.
struct Bijection {
    std::function<Element(const Element&)> fwd, inv;
};

struct RewriteOutcome {
    TermPtr source, target;
    bool source_valid = false, target_valid = false;
    RewriteStep step;
    Bijection map;
};

/// Applies one rule at a path; throws PatternMismatch when the subterm
/// does not have the required shape. Works on invalid terms too, so the
/// well-definedness transfer can be observed on both sides.
RewriteOutcome apply_rewrite(const TermPtr& t, const RewriteStep& step);

/// Segment h joins this block to the next one via a two sided product.
struct Segment {
    int k = 0; // index of the basic chain
    std::optional<SubgroupDescriptor> h;
};

struct CanonicalForm {
    std::vector<Segment> segments;
};

TermPtr expand(const CanonicalForm& form);
std::string canonical_form_string(const CanonicalForm& form);

struct NormalizeResult {
    TermPtr canonical;
    CanonicalForm form;
    std::vector<RewriteStep> trace;
    Bijection map; // composed over the trace, source term -> canonical
};

/// Drives alias/hoist/reassociate left to right to their fixpoint and
/// reads off the canonical layered form. Throws InvalidTerm on ill
/// defined input, NotRealizable when the chain is not order isomorphic
/// to the reals, NotCanonicalizable when the fixpoint is not a left
/// nested product of basic chains.
NormalizeResult normalize(const TermPtr& t);

const char* rule_name(Rule r);
nlohmann::ordered_json normalize_to_json(const TermPtr& t, const NormalizeResult& r);

} // namespace uninorm
