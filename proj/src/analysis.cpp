#include "uninorm/analysis.hpp"

#include <algorithm>

namespace uninorm {

namespace {

using Layers = std::vector<LayerValue>;

Layers zeros(int n) { return Layers(n, LayerValue::scalar(0)); }

Layers with_sentinel(LayerSpan head, LayerValue s) {
    Layers out(head.begin(), head.end());
    out.push_back(s);
    return out;
}

Layers concat(LayerSpan head, LayerSpan tail) {
    Layers out(head.begin(), head.end());
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

/// A scalar tuple inside outer but outside inner (first proper
/// coordinate carries the separating value, the rest are 0).
Layers between_coords(const std::vector<CoordGroup>& outer,
                      const std::vector<CoordGroup>& inner) {
    Layers out = zeros(static_cast<int>(outer.size()));
    for (size_t i = 0; i < outer.size(); ++i) {
        if (coord_equal(inner[i], outer[i])) continue;
        Rat v;
        if (outer[i].kind == CoordGroup::Kind::Dense)
            v = inner[i].kind == CoordGroup::Kind::Cyclic ? inner[i].step / 2 : Rat(1);
        else
            v = outer[i].step; // inner is a proper sub chain, the generator separates
        out[i] = LayerValue::scalar(v);
        return out;
    }
    throw Error("between_coords: no separating coordinate");
}

bool coords_differ(const std::vector<CoordGroup>& inner,
                   const std::vector<CoordGroup>& outer) {
    for (size_t i = 0; i < inner.size(); ++i)
        if (!coord_equal(inner[i], outer[i])) return true;
    return false;
}

std::optional<GapWitness> out_gap(const TermPtr& t) {
    if (t->is_leaf()) return std::nullopt;
    if (t->two_sided()) {
        if (coords_differ(t->eff_w, t->eff_v)) {
            Layers a = between_coords(t->eff_v, t->eff_w);
            return GapWitness{Element{with_sentinel(a, LayerValue::bottom())},
                              Element{with_sentinel(a, LayerValue::top())},
                              "two sided fiber over a V element outside W"};
        }
        if (auto g = out_gap(t->x))
            return GapWitness{Element{with_sentinel(g->lower.layers, LayerValue::bottom())},
                              Element{with_sentinel(g->upper.layers, LayerValue::bottom())},
                              "lifted from the first factor"};
        if (t->x->disc) {
            Element ux = unit(t->x);
            Element sx = *successor(t->x, ux);
            return GapWitness{Element{with_sentinel(ux.layers, LayerValue::top())},
                              Element{with_sentinel(sx.layers, LayerValue::bottom())},
                              "group gap of the first factor crosses fibers"};
        }
        if (auto gy = out_gap(t->y)) {
            Layers u = zeros(t->x->leaves);
            return GapWitness{Element{concat(u, gy->lower.layers)},
                              Element{concat(u, gy->upper.layers)},
                              "lifted from the second factor"};
        }
        return std::nullopt;
    }
    // one sided
    if (coords_differ(t->eff_v, t->x->gr)) {
        Layers a = between_coords(t->x->gr, t->eff_v);
        Element below = *predecessor(t->x, Element{a});
        return GapWitness{Element{with_sentinel(below.layers, LayerValue::top())},
                          Element{with_sentinel(a, LayerValue::top())},
                          "one sided fiber over a group element outside V"};
    }
    if (auto g = out_gap(t->x))
        return GapWitness{Element{with_sentinel(g->lower.layers, LayerValue::top())},
                          Element{with_sentinel(g->upper.layers, LayerValue::top())},
                          "lifted from the first factor"};
    if (auto gy = out_gap(t->y)) {
        Layers u = zeros(t->x->leaves);
        return GapWitness{Element{concat(u, gy->lower.layers)},
                          Element{concat(u, gy->upper.layers)},
                          "lifted from the second factor"};
    }
    return std::nullopt;
}

void idem_rec(const TermPtr& t, std::vector<Layers>& out) {
    if (t->is_leaf()) {
        out.push_back(zeros(1));
        return;
    }
    std::vector<Layers> ex, ey;
    idem_rec(t->x, ex);
    idem_rec(t->y, ey);
    Layers ux = zeros(t->x->leaves);
    if (t->two_sided()) {
        out.push_back(with_sentinel(ux, LayerValue::bottom()));
        for (auto& e : ey) out.push_back(concat(ux, e));
        out.push_back(with_sentinel(ux, LayerValue::top()));
        for (auto& e : ex)
            if (e != ux) out.push_back(with_sentinel(e, LayerValue::bottom()));
    } else {
        for (auto& e : ex) out.push_back(with_sentinel(e, LayerValue::top()));
        for (auto& e : ey) out.push_back(concat(ux, e));
    }
}

} // namespace

std::vector<Element> enumerate_idempotents(const TermPtr& t) {
    require_valid(t);
    std::vector<Layers> raw;
    idem_rec(t, raw);
    std::vector<Element> out;
    out.reserve(raw.size());
    for (auto& l : raw) out.push_back(Element{std::move(l)});
    std::sort(out.begin(), out.end(), [&](const Element& a, const Element& b) {
        return compare(t, a, b) < 0;
    });
    return out;
}

Analysis analyze(const TermPtr& t) {
    Analysis a;
    a.valid = t->valid();
    a.violation = t->violation;
    if (!a.valid) {
        a.notes.push_back("term is not well defined: " + t->violation->message);
        return a;
    }
    a.group_part = group_part_string(t);
    a.group_gap = t->disc;
    if (a.group_gap) {
        Element u = unit(t);
        a.group_gap_witness = GapWitness{u, *successor(t, u),
                                         "innermost second factor spine ends at Z"};
    }
    a.outside_gap = out_gap(t);

    auto idems = enumerate_idempotents(t);
    Element u = unit(t);
    for (const auto& e : idems) {
        int c = compare(t, e, u);
        if (c >= 0) a.census.positive++;
        if (c <= 0) a.census.negative++;
    }

    a.realizable = !a.group_gap && !a.outside_gap;
    if (a.group_gap)
        a.notes.push_back("fails: consecutive invertible elements exist, e.g. " +
                          element_to_string(t, a.group_gap_witness->lower) + " < " +
                          element_to_string(t, a.group_gap_witness->upper) +
                          " (innermost second factor spine ends at Z)");
    else
        a.notes.push_back("ok: the invertible part is densely ordered"
                          " (innermost second factor spine ends at R)");
    if (a.outside_gap)
        a.notes.push_back("fails: adjacent pair off the group part: " +
                          element_to_string(t, a.outside_gap->lower) + " < " +
                          element_to_string(t, a.outside_gap->upper) + " (" +
                          a.outside_gap->clause + ")");
    else
        a.notes.push_back("ok: no adjacent pairs off the group part");
    a.notes.push_back("ok: unbounded in both directions (every leaf chain is unbounded)");
    if (a.realizable)
        a.notes.push_back("density plus the completeness of the cut completion leave a"
                          " chain order isomorphic to the reals; countability of the"
                          " layer data is immediate over the rational model");
    else
        a.notes.push_back("not order isomorphic to the reals");
    return a;
}

nlohmann::ordered_json analysis_to_json(const TermPtr& t, const Analysis& a) {
    nlohmann::ordered_json j;
    j["term"] = term_to_string(t);
    j["valid"] = a.valid;
    if (a.violation) {
        const char* code = "subgroup_chain";
        if (a.violation->code == InvalidTerm::Code::Discreteness) code = "discreteness";
        if (a.violation->code == InvalidTerm::Code::Arity) code = "arity";
        j["violation"] = {{"code", code}, {"message", a.violation->message}};
    }
    if (a.valid) {
        j["group_part"] = a.group_part;
        j["group_gap"] = a.group_gap;
        if (a.group_gap_witness)
            j["group_gap_witness"] = {
                {"lower", element_to_string(t, a.group_gap_witness->lower)},
                {"upper", element_to_string(t, a.group_gap_witness->upper)},
                {"clause", a.group_gap_witness->clause}};
        j["outside_gap"] = a.outside_gap.has_value();
        if (a.outside_gap)
            j["outside_gap_witness"] = {
                {"lower", element_to_string(t, a.outside_gap->lower)},
                {"upper", element_to_string(t, a.outside_gap->upper)},
                {"clause", a.outside_gap->clause}};
        j["idempotents"] = {{"positive", a.census.positive},
                            {"negative", a.census.negative}};
        j["realizable"] = a.realizable;
    }
    j["notes"] = a.notes;
    return j;
}

} // namespace uninorm
