#pragma once

#include <span>
#include <vector>

#include "uninorm/term.hpp"

namespace uninorm {

// Elements are stored as a flat layer vector, one entry per leaf of the
// term unless a sentinel cuts a second factor short. The fragment of a
// leaf is a single scalar; the fragment of a PLP node is the fragment of
// X followed by either a sentinel (T, or B for two sided nodes) or the
// fragment of Y. Fragments start with a scalar, so splitting is
// unambiguous.

struct LayerValue {
    enum class Kind { Bottom, Scalar, Top };
    Kind kind = Kind::Scalar;
    Rat value = 0;

    static LayerValue scalar(Rat v) { return {Kind::Scalar, std::move(v)}; }
    static LayerValue top() { return {Kind::Top, 0}; }
    static LayerValue bottom() { return {Kind::Bottom, 0}; }

    friend bool operator==(const LayerValue& a, const LayerValue& b) {
        return a.kind == b.kind && (a.kind != Kind::Scalar || a.value == b.value);
    }
};

struct Element {
    std::vector<LayerValue> layers;
    friend bool operator==(const Element& a, const Element& b) = default;
};

using LayerSpan = std::span<const LayerValue>;

/// A PLP fragment split at its root: the X fragment plus either a
/// sentinel kind or the Y fragment (rest == Kind::Scalar).
struct Decomp {
    LayerSpan x;
    LayerValue::Kind rest;
    LayerSpan y; // meaningful only when rest == Kind::Scalar
};

/// Splits the fragment of a PLP node. Checks structure (sentinel
/// placement, fragment lengths) but not subgroup membership.
Decomp decompose(const TermPtr& t, LayerSpan frag);

/// True when every entry is a scalar lying in the matching coordinate.
/// Any sentinel makes the fragment fall outside a subgroup.
bool in_coords(const std::vector<CoordGroup>& coords, LayerSpan frag);

bool all_scalar(LayerSpan frag);

/// Full static check of an element against its term: structure, leaf
/// domains (Z wants integers) and subgroup membership at every node.
/// Throws MalformedElement. The term must be valid.
void validate_element(const TermPtr& t, const Element& a);
bool is_wellformed(const TermPtr& t, const Element& a);

std::string element_to_string(const TermPtr& t, const Element& a);

/// Parses an element literal against the shape of t and validates it.
/// Syntax errors raise ParseError, semantic ones MalformedElement.
Element parse_element(const TermPtr& t, std::string_view text);

} // namespace uninorm
