#include "uninorm/realize.hpp"

#include "uninorm/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace uninorm {

double to_unit_interval(double x) {
    return std::atan(x) / std::numbers::pi + 0.5;
}

double from_unit_interval(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw DomainError("from_unit_interval needs a point strictly inside (0,1)");
    return std::tan(std::numbers::pi * (u - 0.5));
}

namespace {

Int rat_floor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r))
        --q;
    return q;
}

// Order preserving squash of R onto (0,1). Rational, so it saturates
// slowly, the inverse stays well conditioned and exact arithmetic can
// undo it.
double squash(double x) {
    return 0.5 + x / (2.0 * (1.0 + std::abs(x)));
}

Rat unsquash_exact(const Rat& s) {
    if (s >= Rat(1, 2))
        return (2 * s - 1) / (2 - 2 * s);
    return (2 * s - 1) / (2 * s);
}

// 0, 1, -1, 2, -2, ...
Rat zigzag(uint64_t i) {
    Rat n((i + 1) / 2);
    return (i % 2 == 0) ? -n : n;
}

// Reduced rationals ordered by |p| + q, then by q, positive first:
// 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, -1/3, ...
Rat rat_diag(uint64_t idx) {
    uint64_t seen = 0;
    for (uint64_t s = 1;; ++s) {
        for (uint64_t q = 1; q <= s; ++q) {
            uint64_t ap = s - q;
            if (ap == 0) {
                if (q == 1 && seen++ == idx)
                    return Rat(0);
                continue;
            }
            if (std::gcd(ap, q) != 1)
                continue;
            if (seen++ == idx)
                return Rat(Int(ap), Int(q));
            if (seen++ == idx)
                return Rat(-Int(ap), Int(q));
        }
    }
}

// Cantor pairing, inverted.
std::pair<uint64_t, uint64_t> unpair(uint64_t z) {
    auto t = (uint64_t)((std::sqrt(8.0 * (double)z + 1.0) - 1.0) / 2.0);
    while (t * (t + 1) / 2 > z)
        --t;
    while ((t + 1) * (t + 2) / 2 <= z)
        ++t;
    uint64_t b = z - t * (t + 1) / 2;
    return {t - b, b};
}

void unrank(uint64_t idx, size_t k, std::vector<uint64_t>& out) {
    if (k == 1) {
        out.push_back(idx);
        return;
    }
    auto [a, b] = unpair(idx);
    out.push_back(a);
    unrank(b, k - 1, out);
}

// idx-th point of the subgroup described by coords, walking the non
// trivial coordinates along a diagonal so every point has a finite
// index.
Element subgroup_point(const std::vector<CoordGroup>& coords,
                       const std::vector<size_t>& free_pos, uint64_t idx) {
    std::vector<LayerValue> ls(coords.size(), LayerValue::scalar(0));
    if (!free_pos.empty()) {
        std::vector<uint64_t> per;
        per.reserve(free_pos.size());
        unrank(idx, free_pos.size(), per);
        for (size_t j = 0; j < free_pos.size(); ++j) {
            const CoordGroup& g = coords[free_pos[j]];
            ls[free_pos[j]] = LayerValue::scalar(
                g.kind == CoordGroup::Kind::Cyclic ? g.step * zigzag(per[j])
                                                   : rat_diag(per[j]));
        }
    }
    return Element{std::move(ls)};
}

} // namespace

Rat snap_rational(const Rat& target, const Rat& atol, const Int& den_cap) {
    Rat frac = target;
    Int a = rat_floor(frac);
    Int p0 = 1, q0 = 0, p1 = a, q1 = 1;
    for (;;) {
        Rat conv(p1, q1);
        if (abs(conv - target) <= atol)
            return conv;
        frac -= a;
        if (frac == 0)
            return conv;
        frac = 1 / frac;
        a = rat_floor(frac);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > den_cap)
            return conv;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
}

Rat snap_rational(double u, const Rat& atol, const Int& den_cap) {
    if (!std::isfinite(u))
        throw DomainError("snap_rational needs a finite value");
    return snap_rational(Rat(u), atol, den_cap);
}

Realization::Realization(TermPtr term, int table_size)
    : term_(std::move(term)), norm_(normalize(term_)), table_size_(table_size) {
    if (table_size_ < 1)
        throw DomainError("realization table size must be positive");
    root_ = build(norm_.canonical);
}

std::unique_ptr<Realization::Node> Realization::build(const TermPtr& t) {
    auto n = std::make_unique<Node>();
    n->t = t;
    if (t->is_leaf())
        return n;
    n->ynode = build(t->y);
    if (t->kind == NodeKind::P2)
        return n; // the first factor is the integer leaf, read directly
    if (t->kind != NodeKind::P1)
        throw Error("realization reached a non canonical node");
    n->xnode = build(t->x);
    const auto& coords = t->eff_v;
    std::vector<size_t> free_pos;
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i].kind != CoordGroup::Kind::Trivial)
            free_pos.push_back(i);
    uint64_t count = free_pos.empty() ? 1 : (uint64_t)table_size_;
    n->fibers.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        Fiber f;
        f.h = subgroup_point(coords, free_pos, i);
        f.width = 1.0 / ((1.0 + (double)i) * (1.0 + (double)i));
        n->fibers.push_back(std::move(f));
    }
    std::sort(n->fibers.begin(), n->fibers.end(),
              [&](const Fiber& a, const Fiber& b) {
                  return compare(t->x, a.h, b.h) < 0;
              });
    double acc = 0.0;
    for (auto& f : n->fibers) {
        f.base = fwd(*n->xnode, LayerSpan(f.h.layers));
        f.below = acc;
        acc += f.width;
    }
    return n;
}

double Realization::fwd(const Node& n, LayerSpan frag) const {
    const TermPtr& t = n.t;
    if (t->is_leaf())
        return frag[0].value.convert_to<double>();
    Decomp d = decompose(t, frag);
    if (t->kind == NodeKind::P2) {
        double base = d.x[0].value.convert_to<double>();
        if (d.rest == LayerValue::Kind::Top)
            return base + 1.0;
        return base + squash(fwd(*n.ynode, d.y));
    }
    Element ax{{d.x.begin(), d.x.end()}};
    auto it = std::lower_bound(n.fibers.begin(), n.fibers.end(), ax,
                               [&](const Fiber& f, const Element& a) {
                                   return compare(t->x, f.h, a) < 0;
                               });
    double below = it == n.fibers.end()
                       ? n.fibers.back().below + n.fibers.back().width
                       : it->below;
    double bottom = fwd(*n.xnode, d.x) + below;
    if (d.rest == LayerValue::Kind::Bottom)
        return bottom;
    // fibers beyond the table degrade to width zero
    double width =
        (it != n.fibers.end() && compare(t->x, it->h, ax) == 0) ? it->width : 0.0;
    if (d.rest == LayerValue::Kind::Top)
        return bottom + width;
    return bottom + width * squash(fwd(*n.ynode, d.y));
}

// u is an exact position: either the dyadic image of the incoming
// double, or a snapped residual from the level above. Sentinel and
// fiber boundaries are matched in double arithmetic, bit for bit
// against what fwd produces; everything recursing further is peeled off
// exactly and snapped once per edge.
void Realization::bwd(const Node& n, const Rat& u, const Rat& atol,
                      const Int& den_cap, std::vector<LayerValue>& out) const {
    const TermPtr& t = n.t;
    if (t->is_leaf()) {
        out.push_back(LayerValue::scalar(snap_rational(u, atol, den_cap)));
        return;
    }
    if (t->kind == NodeKind::P2) {
        Int fl = rat_floor(u);
        Rat f = u - fl;
        if (f == 0) {
            out.push_back(LayerValue::scalar(Rat(fl - 1)));
            out.push_back(LayerValue::top());
            return;
        }
        out.push_back(LayerValue::scalar(Rat(fl)));
        bwd(*n.ynode, snap_rational(unsquash_exact(f), atol, den_cap), atol,
            den_cap, out);
        return;
    }
    double ud = u.convert_to<double>();
    // first fiber starting strictly above u
    auto it = std::upper_bound(n.fibers.begin(), n.fibers.end(), ud,
                               [](double v, const Fiber& f) {
                                   return v < f.base + f.below;
                               });
    if (it != n.fibers.begin()) {
        const Fiber& f = *std::prev(it);
        double pb = f.base + f.below;
        double pt = pb + f.width;
        if (ud == pb) {
            out.insert(out.end(), f.h.layers.begin(), f.h.layers.end());
            out.push_back(LayerValue::bottom());
            return;
        }
        if (ud == pt) {
            out.insert(out.end(), f.h.layers.begin(), f.h.layers.end());
            out.push_back(LayerValue::top());
            return;
        }
        if (ud < pt) {
            Rat ratio = (u - Rat(pb)) / Rat(f.width);
            out.insert(out.end(), f.h.layers.begin(), f.h.layers.end());
            if (ratio <= 0)
                out.push_back(LayerValue::bottom());
            else if (ratio >= 1)
                out.push_back(LayerValue::top());
            else
                bwd(*n.ynode,
                    snap_rational(unsquash_exact(ratio), atol, den_cap), atol,
                    den_cap, out);
            return;
        }
    }
    // between fibers: remove the widths fwd inserted below u
    double shift = it == n.fibers.end()
                       ? n.fibers.back().below + n.fibers.back().width
                       : it->below;
    bwd(*n.xnode, snap_rational(u - Rat(shift), atol, den_cap), atol, den_cap,
        out);
    out.push_back(LayerValue::bottom());
}

Element Realization::backward_policy(double u, const Rat& atol,
                                     const Int& den_cap) const {
    if (!std::isfinite(u))
        throw DomainError("backward needs a finite position");
    std::vector<LayerValue> ls;
    bwd(*root_, Rat(u), atol, den_cap, ls);
    return Element{std::move(ls)};
}

double Realization::forward(const Element& a) const {
    Element c = norm_.map.fwd(a);
    return fwd(*root_, LayerSpan(c.layers));
}

Element Realization::backward(double u) const {
    Element c = backward_policy(u, Rat(1, 500000), Int(1000000));
    return norm_.map.inv(c);
}

double Realization::eval(double x, double y) const {
    if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0))
        throw DomainError("eval needs coordinates in the unit square");
    if (x == 0.0 || y == 0.0)
        return 0.0;
    if (x == 1.0 || y == 1.0)
        return 1.0;
    const Rat atol(0);
    const Int cap("1000000000000");
    Element a = backward_policy(from_unit_interval(x), atol, cap);
    Element b = backward_policy(from_unit_interval(y), atol, cap);
    Element r = mul(norm_.canonical, a, b);
    return to_unit_interval(fwd(*root_, LayerSpan(r.layers)));
}

} // namespace uninorm
