#include "uninorm/rewrite.hpp"

#include <sstream>

namespace uninorm {

namespace {

using Layers = std::vector<LayerValue>;
using Kind = LayerValue::Kind;

const TermPtr& subterm_at(const TermPtr& t, const std::vector<int>& path) {
    const TermPtr* cur = &t;
    for (int step : path) {
        if ((*cur)->is_leaf()) throw PatternMismatch("path descends through a leaf");
        cur = step == 0 ? &(*cur)->x : &(*cur)->y;
    }
    return *cur;
}

TermPtr rebuild(const TermPtr& t, const std::vector<int>& path, size_t depth,
                const std::function<TermPtr(const TermPtr&)>& local) {
    if (depth == path.size()) return local(t);
    if (t->is_leaf()) throw PatternMismatch("path descends through a leaf");
    if (path[depth] == 0)
        return build_raw(t->kind, rebuild(t->x, path, depth + 1, local), t->v, t->w, t->y);
    return build_raw(t->kind, t->x, t->v, t->w, rebuild(t->y, path, depth + 1, local));
}

Layers copy_of(LayerSpan s) { return Layers(s.begin(), s.end()); }

Layers with(LayerSpan s, std::initializer_list<LayerValue> tail) {
    Layers out(s.begin(), s.end());
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

// Element translation at the redex. node is the subterm on the side the
// fragment lives on; the flat encoding makes everything but sentinel
// collapses the identity.
Layers local_map(Rule rule, Dir dir, const TermPtr& node, LayerSpan frag) {
    if (rule == Rule::Alias) return copy_of(frag);
    if (rule == Rule::Reassociate) {
        if (dir == Dir::LtoR) {
            Decomp d = decompose(node, frag);
            if (d.rest == Kind::Top) {
                Decomp di = decompose(node->x, d.x);
                if (di.rest == Kind::Top)
                    return with(di.x, {LayerValue::top()}); // ((a,T),T) -> (a,T)
            }
            return copy_of(frag);
        }
        Decomp d = decompose(node, frag);
        if (d.rest == Kind::Top)
            return with(d.x, {LayerValue::top(), LayerValue::top()});
        return copy_of(frag);
    }
    // hoist
    if (dir == Dir::LtoR) {
        Decomp d = decompose(node, frag);
        if (d.rest == Kind::Top) {
            Decomp di = decompose(node->x, d.x);
            if (di.rest == Kind::Top)
                return with(di.x, {LayerValue::top()}); // ((a,T),T) -> (a,T)
            if (di.rest == Kind::Bottom)
                return with(di.x, {LayerValue::bottom()}); // ((a,B),T) -> (a,B)
        }
        return copy_of(frag);
    }
    Decomp d = decompose(node, frag);
    if (d.rest == Kind::Top)
        return with(d.x, {LayerValue::top(), LayerValue::top()});
    if (d.rest == Kind::Bottom)
        return with(d.x, {LayerValue::bottom(), LayerValue::top()});
    return copy_of(frag);
}

Layers map_rec(const TermPtr& t, const std::vector<int>& path, size_t depth,
               LayerSpan frag, Rule rule, Dir dir) {
    if (depth == path.size()) return local_map(rule, dir, t, frag);
    Decomp d = decompose(t, frag);
    if (path[depth] == 0) {
        Layers out = map_rec(t->x, path, depth + 1, d.x, rule, dir);
        if (d.rest == Kind::Scalar)
            out.insert(out.end(), d.y.begin(), d.y.end());
        else
            out.push_back(d.rest == Kind::Top ? LayerValue::top() : LayerValue::bottom());
        return out;
    }
    Layers out = copy_of(d.x);
    if (d.rest == Kind::Scalar) {
        Layers ny = map_rec(t->y, path, depth + 1, d.y, rule, dir);
        out.insert(out.end(), ny.begin(), ny.end());
    } else {
        out.push_back(d.rest == Kind::Top ? LayerValue::top() : LayerValue::bottom());
    }
    return out;
}

bool coords_equal(const std::vector<CoordGroup>& a, const std::vector<CoordGroup>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!coord_equal(a[i], b[i])) return false;
    return true;
}

TermPtr transform(Rule rule, Dir dir, const TermPtr& n) {
    auto want = [&](bool cond, const char* msg) {
        if (!cond) throw PatternMismatch(msg);
    };
    switch (rule) {
    case Rule::Reassociate:
        if (dir == Dir::LtoR) {
            want(n->kind == NodeKind::P2 && n->x->kind == NodeKind::P2,
                 "reassociate wants PLP2(PLP2(A;B);C)");
            return build_raw(NodeKind::P2, n->x->x, {}, {},
                             build_raw(NodeKind::P2, n->x->y, {}, {}, n->y));
        }
        want(n->kind == NodeKind::P2 && n->y->kind == NodeKind::P2,
             "reassociate wants PLP2(A;PLP2(B;C))");
        return build_raw(NodeKind::P2,
                         build_raw(NodeKind::P2, n->x, {}, {}, n->y->x), {}, {}, n->y->y);
    case Rule::Hoist:
        if (dir == Dir::LtoR) {
            want(n->kind == NodeKind::P2 && n->x->kind == NodeKind::P1,
                 "hoist wants PLP2(PLP1(A;H;L);B)");
            return build_raw(NodeKind::P1, n->x->x, n->x->v, {},
                             build_raw(NodeKind::P2, n->x->y, {}, {}, n->y));
        }
        want(n->kind == NodeKind::P1 && n->y->kind == NodeKind::P2,
             "hoist wants PLP1(A;H;PLP2(L;B))");
        return build_raw(NodeKind::P2,
                         build_raw(NodeKind::P1, n->x, n->v, {}, n->y->x), {}, {}, n->y->y);
    case Rule::Alias:
        want(dir == Dir::LtoR, "alias only runs left to right");
        if (n->kind == NodeKind::P3) {
            want(n->valid() && coords_equal(n->eff_v, n->eff_w),
                 "alias wants PLP3 with V = W");
            return build_raw(NodeKind::P1, n->x, n->v, {}, n->y);
        }
        if (n->kind == NodeKind::P4) {
            want(n->valid() && coords_equal(n->eff_v, n->x->gr),
                 "alias wants PLP4 with V = gr(X)");
            return build_raw(NodeKind::P2, n->x, {}, {}, n->y);
        }
        throw PatternMismatch("alias wants PLP3 or PLP4");
    }
    throw PatternMismatch("unknown rule");
}

} // namespace

const char* rule_name(Rule r) {
    switch (r) {
    case Rule::Reassociate: return "reassociate";
    case Rule::Hoist: return "hoist";
    case Rule::Alias: return "alias";
    }
    return "?";
}

RewriteOutcome apply_rewrite(const TermPtr& t, const RewriteStep& step) {
    RewriteOutcome out;
    out.source = t;
    out.step = step;
    subterm_at(t, step.path); // fail early on bad paths
    out.target = rebuild(t, step.path, 0,
                         [&](const TermPtr& n) { return transform(step.rule, step.dir, n); });
    out.source_valid = t->valid();
    out.target_valid = out.target->valid();
    TermPtr src = t, tgt = out.target;
    Rule rule = step.rule;
    Dir dir = step.dir;
    std::vector<int> path = step.path;
    Dir rdir = dir == Dir::LtoR ? Dir::RtoL : Dir::LtoR;
    out.map.fwd = [src, path, rule, dir](const Element& e) {
        return Element{map_rec(src, path, 0, e.layers, rule, dir)};
    };
    out.map.inv = [tgt, path, rule, rdir](const Element& e) {
        return Element{map_rec(tgt, path, 0, e.layers, rule, rdir)};
    };
    return out;
}

TermPtr expand(const CanonicalForm& form) {
    if (form.segments.empty()) throw DomainError("empty canonical form");
    TermPtr u = build_basic(form.segments[0].k);
    for (size_t i = 1; i < form.segments.size(); ++i) {
        const auto& h = form.segments[i - 1].h;
        if (!h) throw DomainError("canonical form misses a joining subgroup");
        u = make_plp1(u, *h, build_basic(form.segments[i].k));
    }
    return u;
}

std::string canonical_form_string(const CanonicalForm& form) {
    std::string out = "[";
    for (size_t i = 0; i < form.segments.size(); ++i) {
        if (i) out += ", ";
        out += "(k=" + std::to_string(form.segments[i].k);
        if (form.segments[i].h) out += ", H=" + descriptor_to_string(*form.segments[i].h);
        out += ")";
    }
    return out + "]";
}

namespace {

std::optional<int> basic_index(const TermPtr& t) {
    if (t->kind == NodeKind::R) return 0;
    if (t->kind == NodeKind::P2 && t->x->kind == NodeKind::Z) {
        auto k = basic_index(t->y);
        if (k) return *k + 1;
    }
    return std::nullopt;
}

std::vector<Segment> parse_canonical(const TermPtr& t) {
    if (auto k = basic_index(t)) return {{*k, std::nullopt}};
    if (t->kind == NodeKind::P1) {
        auto k = basic_index(t->y);
        if (!k)
            throw NotCanonicalizable(
                "rewrite fixpoint is not a left nested product of basic chains: the second"
                " factor of " + term_to_string(t) + " is not a basic chain");
        std::vector<Segment> segs = parse_canonical(t->x);
        segs.back().h = t->v;
        segs.push_back({*k, std::nullopt});
        return segs;
    }
    throw NotCanonicalizable(
        "rewrite fixpoint is not a left nested product of basic chains: " +
        term_to_string(t));
}

std::optional<RewriteStep> find_redex(const TermPtr& t, std::vector<int>& path) {
    if (t->is_leaf()) return std::nullopt;
    if (t->kind == NodeKind::P3 && coords_equal(t->eff_v, t->eff_w))
        return RewriteStep{Rule::Alias, Dir::LtoR, path};
    if (t->kind == NodeKind::P4 && coords_equal(t->eff_v, t->x->gr))
        return RewriteStep{Rule::Alias, Dir::LtoR, path};
    if (t->kind == NodeKind::P2 && t->x->kind == NodeKind::P1)
        return RewriteStep{Rule::Hoist, Dir::LtoR, path};
    if (t->kind == NodeKind::P2 && t->x->kind == NodeKind::P2)
        return RewriteStep{Rule::Reassociate, Dir::LtoR, path};
    path.push_back(0);
    if (auto s = find_redex(t->x, path)) return s;
    path.back() = 1;
    if (auto s = find_redex(t->y, path)) return s;
    path.pop_back();
    return std::nullopt;
}

} // namespace

NormalizeResult normalize(const TermPtr& t) {
    require_valid(t);
    Analysis a = analyze(t);
    if (!a.realizable) {
        std::string why = a.group_gap ? a.notes.front() : "";
        for (const auto& n : a.notes)
            if (n.rfind("fails:", 0) == 0) { why = n; break; }
        throw NotRealizable("term is not order isomorphic to the reals; " + why);
    }

    NormalizeResult r;
    TermPtr cur = t;
    auto maps = std::make_shared<std::vector<Bijection>>();
    while (true) {
        std::vector<int> path;
        auto step = find_redex(cur, path);
        if (!step) break;
        RewriteOutcome out = apply_rewrite(cur, *step);
        r.trace.push_back(*step);
        maps->push_back(out.map);
        cur = out.target;
    }
    r.canonical = cur;
    r.form.segments = parse_canonical(cur);
    r.map.fwd = [maps](const Element& e) {
        Element x = e;
        for (const auto& m : *maps) x = m.fwd(x);
        return x;
    };
    r.map.inv = [maps](const Element& e) {
        Element x = e;
        for (auto it = maps->rbegin(); it != maps->rend(); ++it) x = it->inv(x);
        return x;
    };
    return r;
}

nlohmann::ordered_json normalize_to_json(const TermPtr& t, const NormalizeResult& r) {
    nlohmann::ordered_json j;
    j["term"] = term_to_string(t);
    j["canonical"] = term_to_string(r.canonical);
    nlohmann::ordered_json segs = nlohmann::ordered_json::array();
    for (const auto& s : r.form.segments) {
        nlohmann::ordered_json e;
        e["k"] = s.k;
        if (s.h) e["h"] = descriptor_to_string(*s.h);
        segs.push_back(e);
    }
    j["segments"] = segs;
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& s : r.trace) {
        nlohmann::ordered_json e;
        e["rule"] = rule_name(s.rule);
        e["dir"] = s.dir == Dir::LtoR ? "ltr" : "rtl";
        e["path"] = s.path;
        trace.push_back(e);
    }
    j["trace"] = trace;
    return j;
}

} // namespace uninorm
