#pragma once

#include <optional>

#include "uninorm/element.hpp"

namespace uninorm {

// Pointwise operations of the odd involutive chain named by a term.
// Inputs are validated; outputs are closed by construction.

Element unit(const TermPtr& t);

/// Lexicographic order: -1, 0 or 1. B < scalar < T at the first
/// diverging layer.
int compare(const TermPtr& t, const Element& a, const Element& b);

/// Monoid product: scalars add, B absorbs its fiber, T absorbs
/// everything above B.
Element mul(const TermPtr& t, const Element& a, const Element& b);

/// Involutive order reversing negation fixing the unit.
Element neg(const TermPtr& t, const Element& a);

/// Residual: the largest v with mul(a, v) <= z. Equals neg(mul(a, neg(z))).
Element res(const TermPtr& t, const Element& a, const Element& z);

bool is_idempotent(const TermPtr& t, const Element& a);

/// Invertible means mul(a, neg(a)) equals the unit; for well formed
/// elements this holds exactly when no layer is a sentinel.
bool is_invertible(const TermPtr& t, const Element& a);

/// Cover of a above/below, when one exists.
std::optional<Element> successor(const TermPtr& t, const Element& a);
std::optional<Element> predecessor(const TermPtr& t, const Element& a);

/// Convenience forms returning a itself when there is no cover.
Element succ(const TermPtr& t, const Element& a);
Element pred(const TermPtr& t, const Element& a);

} // namespace uninorm
