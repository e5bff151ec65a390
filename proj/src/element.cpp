#include "uninorm/element.hpp"

#include <cctype>
#include <sstream>

namespace uninorm {

namespace {

// Advances past one fragment of t inside frag, checking structure only.
// Returns the position just after the fragment.
size_t walk(const TermPtr& t, LayerSpan frag, size_t pos) {
    if (pos >= frag.size()) throw MalformedElement("element has too few layers");
    if (t->is_leaf()) {
        if (frag[pos].kind != LayerValue::Kind::Scalar)
            throw MalformedElement("sentinel found where a leaf scalar is required");
        return pos + 1;
    }
    pos = walk(t->x, frag, pos);
    if (pos >= frag.size())
        throw MalformedElement("element ends where a fiber entry is required");
    switch (frag[pos].kind) {
    case LayerValue::Kind::Top:
        return pos + 1;
    case LayerValue::Kind::Bottom:
        if (!t->two_sided())
            throw MalformedElement("B sentinel is not allowed under a one sided product");
        return pos + 1;
    case LayerValue::Kind::Scalar:
        return walk(t->y, frag, pos);
    }
    throw MalformedElement("corrupt layer value");
}

} // namespace

Decomp decompose(const TermPtr& t, LayerSpan frag) {
    if (t->is_leaf()) throw Error("decompose: leaf term");
    size_t xlen = walk(t->x, frag, 0);
    Decomp d;
    d.x = frag.subspan(0, xlen);
    if (xlen >= frag.size())
        throw MalformedElement("element ends where a fiber entry is required");
    d.rest = frag[xlen].kind;
    if (d.rest == LayerValue::Kind::Bottom && !t->two_sided())
        throw MalformedElement("B sentinel is not allowed under a one sided product");
    if (d.rest == LayerValue::Kind::Scalar) {
        size_t ylen = walk(t->y, frag, xlen);
        if (ylen != frag.size()) throw MalformedElement("element has extra layers");
        d.y = frag.subspan(xlen);
    } else if (xlen + 1 != frag.size()) {
        throw MalformedElement("element has extra layers after a sentinel");
    }
    return d;
}

bool all_scalar(LayerSpan frag) {
    for (const auto& lv : frag)
        if (lv.kind != LayerValue::Kind::Scalar) return false;
    return true;
}

bool in_coords(const std::vector<CoordGroup>& coords, LayerSpan frag) {
    if (!all_scalar(frag)) return false;
    // all scalar fragments cover every leaf, one layer each
    if (frag.size() != coords.size()) throw Error("in_coords: fragment size mismatch");
    for (size_t i = 0; i < coords.size(); ++i)
        if (!coord_contains(coords[i], frag[i].value)) return false;
    return true;
}

namespace {

void check_rec(const TermPtr& t, LayerSpan frag) {
    if (t->is_leaf()) {
        if (frag.size() != 1 || frag[0].kind != LayerValue::Kind::Scalar)
            throw MalformedElement("leaf fragment must be a single scalar");
        if (t->kind == NodeKind::Z && !is_integer(frag[0].value))
            throw MalformedElement("Z coordinate must be an integer, got " +
                                   rat_str(frag[0].value));
        return;
    }
    Decomp d = decompose(t, frag);
    check_rec(t->x, d.x);
    switch (d.rest) {
    case LayerValue::Kind::Top:
        if (t->two_sided() && !in_coords(t->eff_v, d.x))
            throw MalformedElement("T sentinel requires the first factor part to lie in V");
        break;
    case LayerValue::Kind::Bottom:
        break; // B is available over every first factor element
    case LayerValue::Kind::Scalar:
        if (!in_coords(t->two_sided() ? t->eff_w : t->eff_v, d.x))
            throw MalformedElement(t->two_sided()
                                       ? "a second factor entry requires the first factor part to lie in W"
                                       : "a second factor entry requires the first factor part to lie in V");
        check_rec(t->y, d.y);
        break;
    }
}

} // namespace

void validate_element(const TermPtr& t, const Element& a) {
    require_valid(t);
    check_rec(t, a.layers);
}

bool is_wellformed(const TermPtr& t, const Element& a) {
    try {
        validate_element(t, a);
        return true;
    } catch (const MalformedElement&) {
        return false;
    }
}

namespace {

void print_rec(const TermPtr& t, LayerSpan frag, std::string& out) {
    if (t->is_leaf()) {
        out += rat_str(frag[0].value);
        return;
    }
    Decomp d = decompose(t, frag);
    out += '(';
    print_rec(t->x, d.x, out);
    out += ',';
    switch (d.rest) {
    case LayerValue::Kind::Top: out += 'T'; break;
    case LayerValue::Kind::Bottom: out += 'B'; break;
    case LayerValue::Kind::Scalar: print_rec(t->y, d.y, out); break;
    }
    out += ')';
}

struct ElementParser {
    std::string_view s;
    size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "element parse error at offset " << i << ": " << msg;
        throw ParseError(os.str());
    }
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i;
    }

    void scalar(std::vector<LayerValue>& out) {
        skip_ws();
        size_t start = i;
        if (i < s.size() && s[i] == '-') ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i < s.size() && s[i] == '/') {
            ++i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
        if (i == start) fail("expected a number");
        try {
            out.push_back(LayerValue::scalar(parse_rat(s.substr(start, i - start))));
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

    void elem(const TermPtr& t, std::vector<LayerValue>& out) {
        if (t->is_leaf()) {
            scalar(out);
            return;
        }
        expect('(');
        elem(t->x, out);
        expect(',');
        char c = peek();
        if (c == 'T') {
            ++i;
            out.push_back(LayerValue::top());
        } else if (c == 'B') {
            ++i;
            out.push_back(LayerValue::bottom());
        } else {
            elem(t->y, out);
        }
        expect(')');
    }
};

} // namespace

std::string element_to_string(const TermPtr& t, const Element& a) {
    std::string out;
    print_rec(t, a.layers, out);
    return out;
}

Element parse_element(const TermPtr& t, std::string_view text) {
    require_valid(t);
    ElementParser p{text};
    Element a;
    p.elem(t, a.layers);
    if (p.peek() != '\0') p.fail("trailing input after element");
    validate_element(t, a);
    return a;
}

} // namespace uninorm
