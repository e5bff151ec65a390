#include "uninorm/ops.hpp"

namespace uninorm {

namespace {

using Layers = std::vector<LayerValue>;
using Kind = LayerValue::Kind;

int kind_rank(Kind k) {
    switch (k) {
    case Kind::Bottom: return 0;
    case Kind::Scalar: return 1;
    case Kind::Top: return 2;
    }
    return 1;
}

void mul_rec(const TermPtr& t, LayerSpan a, LayerSpan b, Layers& out) {
    if (t->is_leaf()) {
        out.push_back(LayerValue::scalar(a[0].value + b[0].value));
        return;
    }
    Decomp da = decompose(t, a);
    Decomp db = decompose(t, b);
    mul_rec(t->x, da.x, db.x, out);
    if (da.rest == Kind::Bottom || db.rest == Kind::Bottom) {
        out.push_back(LayerValue::bottom());
    } else if (da.rest == Kind::Top || db.rest == Kind::Top) {
        out.push_back(LayerValue::top());
    } else {
        mul_rec(t->y, da.y, db.y, out);
    }
}

std::optional<Layers> succ_rec(const TermPtr& t, LayerSpan a);
std::optional<Layers> pred_rec(const TermPtr& t, LayerSpan a);

void neg_rec(const TermPtr& t, LayerSpan a, Layers& out) {
    if (t->is_leaf()) {
        out.push_back(LayerValue::scalar(-a[0].value));
        return;
    }
    Decomp d = decompose(t, a);
    if (t->two_sided()) {
        if (in_coords(t->eff_v, d.x)) {
            neg_rec(t->x, d.x, out);
            switch (d.rest) {
            case Kind::Top: out.push_back(LayerValue::bottom()); break;
            case Kind::Bottom: out.push_back(LayerValue::top()); break;
            case Kind::Scalar: neg_rec(t->y, d.y, out); break;
            }
        } else {
            // outside V the fiber is the single point B, which is the
            // negation image of the whole fiber over the negated base
            neg_rec(t->x, d.x, out);
            out.push_back(LayerValue::bottom());
        }
        return;
    }
    // one sided: T over a group element steps down one fiber
    if (d.rest == Kind::Top) {
        Layers nx;
        neg_rec(t->x, d.x, nx);
        if (all_scalar(d.x)) {
            auto px = pred_rec(t->x, nx);
            if (!px) throw Error("neg: group element without predecessor");
            out.insert(out.end(), px->begin(), px->end());
        } else {
            out.insert(out.end(), nx.begin(), nx.end());
        }
        out.push_back(LayerValue::top());
    } else {
        neg_rec(t->x, d.x, out);
        neg_rec(t->y, d.y, out);
    }
}

std::optional<Layers> succ_rec(const TermPtr& t, LayerSpan a) {
    if (t->is_leaf()) {
        if (t->kind == NodeKind::R) return std::nullopt;
        return Layers{LayerValue::scalar(a[0].value + 1)};
    }
    Decomp d = decompose(t, a);
    if (t->two_sided()) {
        switch (d.rest) {
        case Kind::Bottom:
            if (in_coords(t->eff_w, d.x)) return std::nullopt; // full fiber, no least entry
            if (in_coords(t->eff_v, d.x)) {
                Layers out(d.x.begin(), d.x.end());
                out.push_back(LayerValue::top());
                return out;
            }
            break; // singleton fiber, cross to the next one
        case Kind::Scalar: {
            auto sy = succ_rec(t->y, d.y);
            if (!sy) return std::nullopt;
            Layers out(d.x.begin(), d.x.end());
            out.insert(out.end(), sy->begin(), sy->end());
            return out;
        }
        case Kind::Top:
            break; // cross to the next fiber
        }
        auto sx = succ_rec(t->x, d.x);
        if (!sx) return std::nullopt;
        Layers out = *sx;
        out.push_back(LayerValue::bottom()); // every fiber starts at B
        return out;
    }
    switch (d.rest) {
    case Kind::Scalar: {
        auto sy = succ_rec(t->y, d.y);
        if (!sy) return std::nullopt;
        Layers out(d.x.begin(), d.x.end());
        out.insert(out.end(), sy->begin(), sy->end());
        return out;
    }
    case Kind::Top: {
        auto sx = succ_rec(t->x, d.x);
        if (!sx) return std::nullopt;
        if (in_coords(t->eff_v, *sx)) return std::nullopt; // next fiber copies Y, no least entry
        Layers out = *sx;
        out.push_back(LayerValue::top());
        return out;
    }
    default:
        throw MalformedElement("B sentinel under a one sided product");
    }
}

std::optional<Layers> pred_rec(const TermPtr& t, LayerSpan a) {
    if (t->is_leaf()) {
        if (t->kind == NodeKind::R) return std::nullopt;
        return Layers{LayerValue::scalar(a[0].value - 1)};
    }
    Decomp d = decompose(t, a);
    if (t->two_sided()) {
        switch (d.rest) {
        case Kind::Top:
            if (in_coords(t->eff_w, d.x)) return std::nullopt; // full fiber, no greatest entry below T
            {
                Layers out(d.x.begin(), d.x.end());
                out.push_back(LayerValue::bottom());
                return out;
            }
        case Kind::Scalar: {
            auto py = pred_rec(t->y, d.y);
            if (!py) return std::nullopt;
            Layers out(d.x.begin(), d.x.end());
            out.insert(out.end(), py->begin(), py->end());
            return out;
        }
        case Kind::Bottom: {
            auto px = pred_rec(t->x, d.x);
            if (!px) return std::nullopt;
            Layers out = *px;
            out.push_back(in_coords(t->eff_v, *px) ? LayerValue::top()
                                                   : LayerValue::bottom());
            return out;
        }
        }
        return std::nullopt;
    }
    switch (d.rest) {
    case Kind::Scalar: {
        auto py = pred_rec(t->y, d.y);
        if (!py) return std::nullopt;
        Layers out(d.x.begin(), d.x.end());
        out.insert(out.end(), py->begin(), py->end());
        return out;
    }
    case Kind::Top: {
        if (in_coords(t->eff_v, d.x)) return std::nullopt; // Y below T is unbounded above
        auto px = pred_rec(t->x, d.x);
        if (!px) return std::nullopt;
        Layers out = *px;
        out.push_back(LayerValue::top()); // every fiber ends at T
        return out;
    }
    default:
        throw MalformedElement("B sentinel under a one sided product");
    }
}

} // namespace

Element unit(const TermPtr& t) {
    require_valid(t);
    Element e;
    e.layers.assign(t->leaves, LayerValue::scalar(0));
    return e;
}

int compare(const TermPtr& t, const Element& a, const Element& b) {
    validate_element(t, a);
    validate_element(t, b);
    size_t n = std::min(a.layers.size(), b.layers.size());
    for (size_t i = 0; i < n; ++i) {
        const LayerValue& p = a.layers[i];
        const LayerValue& q = b.layers[i];
        if (p.kind != q.kind)
            return kind_rank(p.kind) < kind_rank(q.kind) ? -1 : 1;
        if (p.kind == Kind::Scalar && p.value != q.value)
            return p.value < q.value ? -1 : 1;
    }
    if (a.layers.size() != b.layers.size())
        throw Error("compare: equal prefixes of different length");
    return 0;
}

Element mul(const TermPtr& t, const Element& a, const Element& b) {
    validate_element(t, a);
    validate_element(t, b);
    Element out;
    out.layers.reserve(std::max(a.layers.size(), b.layers.size()));
    mul_rec(t, a.layers, b.layers, out.layers);
    return out;
}

Element neg(const TermPtr& t, const Element& a) {
    validate_element(t, a);
    Element out;
    out.layers.reserve(a.layers.size());
    neg_rec(t, a.layers, out.layers);
    return out;
}

Element res(const TermPtr& t, const Element& a, const Element& z) {
    return neg(t, mul(t, a, neg(t, z)));
}

bool is_idempotent(const TermPtr& t, const Element& a) {
    return mul(t, a, a) == a;
}

bool is_invertible(const TermPtr& t, const Element& a) {
    validate_element(t, a);
    return all_scalar(a.layers);
}

std::optional<Element> successor(const TermPtr& t, const Element& a) {
    validate_element(t, a);
    auto s = succ_rec(t, a.layers);
    if (!s) return std::nullopt;
    return Element{std::move(*s)};
}

std::optional<Element> predecessor(const TermPtr& t, const Element& a) {
    validate_element(t, a);
    auto p = pred_rec(t, a.layers);
    if (!p) return std::nullopt;
    return Element{std::move(*p)};
}

Element succ(const TermPtr& t, const Element& a) {
    auto s = successor(t, a);
    return s ? *s : a;
}

Element pred(const TermPtr& t, const Element& a) {
    auto p = predecessor(t, a);
    return p ? *p : a;
}

} // namespace uninorm
