#include "uninorm/term.hpp"

#include <cctype>
#include <sstream>

namespace uninorm {

Rat parse_rat(std::string_view text) {
    size_t i = 0;
    auto fail = [&] { throw ParseError("bad rational literal: '" + std::string(text) + "'"); };
    auto digits = [&]() -> std::string {
        std::string out;
        if (i < text.size() && text[i] == '-') out += text[i++];
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
        if (i == start) fail();
        return out;
    };
    std::string num = digits();
    std::string den = "1";
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = digits();
    }
    if (i != text.size()) fail();
    Int d(den);
    if (d == 0) fail();
    return Rat(Int(num), d);
}

bool coord_contains(const CoordGroup& g, const Rat& v) {
    switch (g.kind) {
    case CoordGroup::Kind::Trivial: return v == 0;
    case CoordGroup::Kind::Cyclic: return is_integer(v / g.step);
    case CoordGroup::Kind::Dense: return true;
    }
    return false;
}

bool coord_subgroup(const CoordGroup& inner, const CoordGroup& outer) {
    if (inner.kind == CoordGroup::Kind::Trivial) return true;
    if (outer.kind == CoordGroup::Kind::Dense) return true;
    if (outer.kind == CoordGroup::Kind::Trivial) return false;
    if (inner.kind == CoordGroup::Kind::Dense) return false;
    Rat q = inner.step / outer.step;
    return is_integer(q) && q > 0;
}

bool coord_equal(const CoordGroup& a, const CoordGroup& b) {
    return a.kind == b.kind && (a.kind != CoordGroup::Kind::Cyclic || a.step == b.step);
}

std::string coord_str(const CoordGroup& g) {
    switch (g.kind) {
    case CoordGroup::Kind::Trivial: return "0";
    case CoordGroup::Kind::Cyclic: return g.step == 1 ? "Z" : rat_str(g.step) + "*Z";
    case CoordGroup::Kind::Dense: return "Q";
    }
    return "?";
}

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::Z: return "Z";
    case NodeKind::R: return "R";
    case NodeKind::P1: return "PLP1";
    case NodeKind::P2: return "PLP2";
    case NodeKind::P3: return "PLP3";
    case NodeKind::P4: return "PLP4";
    }
    return "?";
}

// Resolves a descriptor choice against the group coordinate it restricts.
CoordGroup apply_choice(const SubgroupChoice& ch, const CoordGroup& base) {
    switch (ch.kind) {
    case SubgroupChoice::Kind::Trivial: return {CoordGroup::Kind::Trivial, 0};
    case SubgroupChoice::Kind::Scaled: return {CoordGroup::Kind::Cyclic, ch.c};
    case SubgroupChoice::Kind::Full: return base;
    }
    return {};
}

std::optional<Violation> check_descriptor(const char* node, const char* name,
                                          const SubgroupDescriptor& d,
                                          const std::vector<CoordGroup>& base,
                                          std::vector<CoordGroup>& out) {
    if (d.size() != base.size()) {
        std::ostringstream os;
        os << node << ": descriptor " << name << " has " << d.size()
           << " entries but the first factor has " << base.size() << " leaves";
        return Violation{InvalidTerm::Code::Arity, os.str()};
    }
    out.clear();
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i].kind == SubgroupChoice::Kind::Scaled && d[i].c <= 0) {
            std::ostringstream os;
            os << node << ": coordinate " << i << " of " << name
               << ": scale must be positive, got " << rat_str(d[i].c);
            return Violation{InvalidTerm::Code::SubgroupChain, os.str()};
        }
        CoordGroup g = apply_choice(d[i], base[i]);
        if (!coord_subgroup(g, base[i])) {
            std::ostringstream os;
            os << node << ": coordinate " << i << " of " << name << ": " << coord_str(g)
               << " is not a subgroup of " << coord_str(base[i]);
            return Violation{InvalidTerm::Code::SubgroupChain, os.str()};
        }
        out.push_back(g);
    }
    return std::nullopt;
}

} // namespace

TermPtr z_leaf() {
    auto t = std::make_shared<Term>();
    t->kind = NodeKind::Z;
    t->leaves = 1;
    t->disc = true;
    t->gr = {{CoordGroup::Kind::Cyclic, 1}};
    return t;
}

TermPtr r_leaf() {
    auto t = std::make_shared<Term>();
    t->kind = NodeKind::R;
    t->leaves = 1;
    t->disc = false;
    t->gr = {{CoordGroup::Kind::Dense, 0}};
    return t;
}

TermPtr build_raw(NodeKind kind, TermPtr x, SubgroupDescriptor v,
                  SubgroupDescriptor w, TermPtr y) {
    auto t = std::make_shared<Term>();
    t->kind = kind;
    t->x = x;
    t->y = y;
    t->v = std::move(v);
    t->w = std::move(w);
    t->leaves = x->leaves + y->leaves;
    t->disc = y->disc;
    const char* node = kind_name(kind);

    // first violation wins: X subtree, then Y subtree, then this node
    if (x->violation) t->violation = x->violation;
    else if (y->violation) t->violation = y->violation;

    switch (kind) {
    case NodeKind::P1:
        if (!t->violation)
            t->violation = check_descriptor(node, "H", t->v, x->gr, t->eff_v);
        t->eff_w = t->eff_v;
        break;
    case NodeKind::P3:
        if (!t->violation)
            t->violation = check_descriptor(node, "V", t->v, x->gr, t->eff_v);
        if (!t->violation)
            t->violation = check_descriptor(node, "W", t->w, x->gr, t->eff_w);
        if (!t->violation) {
            for (size_t i = 0; i < t->eff_w.size(); ++i) {
                if (!coord_subgroup(t->eff_w[i], t->eff_v[i])) {
                    std::ostringstream os;
                    os << node << ": coordinate " << i << ": W=" << coord_str(t->eff_w[i])
                       << " is not contained in V=" << coord_str(t->eff_v[i]);
                    t->violation = Violation{InvalidTerm::Code::SubgroupChain, os.str()};
                    break;
                }
            }
        }
        break;
    case NodeKind::P2:
        t->eff_v = x->gr;
        if (!t->violation && !x->disc) {
            std::ostringstream os;
            os << node << ": gr(X) must be discretely embedded in X"
               << " (the innermost second factor of X is R, so fibers over"
               << " group elements would have no covers)";
            t->violation = Violation{InvalidTerm::Code::Discreteness, os.str()};
        }
        break;
    case NodeKind::P4:
        if (!t->violation)
            t->violation = check_descriptor(node, "V", t->v, x->gr, t->eff_v);
        if (!t->violation && !x->disc) {
            std::ostringstream os;
            os << node << ": gr(X) must be discretely embedded in X"
               << " (the innermost second factor of X is R, so fibers over"
               << " group elements would have no covers)";
            t->violation = Violation{InvalidTerm::Code::Discreteness, os.str()};
        }
        break;
    default:
        throw Error("build_raw: leaf kind");
    }

    // group part: two sided products keep W coordinates, one sided keep V
    if (!t->violation) {
        t->gr = t->two_sided() ? t->eff_w : t->eff_v;
        t->gr.insert(t->gr.end(), y->gr.begin(), y->gr.end());
    } else {
        t->gr.assign(t->leaves, CoordGroup{CoordGroup::Kind::Trivial, 0});
    }
    return t;
}

void require_valid(const TermPtr& t) {
    if (t->violation) throw InvalidTerm(t->violation->code, t->violation->message);
}

TermPtr make_plp1(TermPtr x, SubgroupDescriptor h, TermPtr y) {
    auto t = build_raw(NodeKind::P1, std::move(x), std::move(h), {}, std::move(y));
    require_valid(t);
    return t;
}

TermPtr make_plp2(TermPtr x, TermPtr y) {
    auto t = build_raw(NodeKind::P2, std::move(x), {}, {}, std::move(y));
    require_valid(t);
    return t;
}

TermPtr make_plp3(TermPtr x, SubgroupDescriptor v, SubgroupDescriptor w, TermPtr y) {
    auto t = build_raw(NodeKind::P3, std::move(x), std::move(v), std::move(w), std::move(y));
    require_valid(t);
    return t;
}

TermPtr make_plp4(TermPtr x, SubgroupDescriptor v, TermPtr y) {
    auto t = build_raw(NodeKind::P4, std::move(x), std::move(v), {}, std::move(y));
    require_valid(t);
    return t;
}

TermPtr build_basic(int k) {
    if (k < 0) throw DomainError("basic chain index must be >= 0");
    TermPtr t = r_leaf();
    for (int i = 0; i < k; ++i) t = make_plp2(z_leaf(), t);
    return t;
}

TermPtr build_representation(const std::vector<int>& ks,
                             const std::vector<SubgroupDescriptor>& hs) {
    if (ks.empty()) throw DomainError("need at least one basic chain");
    if (hs.size() + 1 != ks.size())
        throw DomainError("need one subgroup descriptor per product step");
    TermPtr u = build_basic(ks[0]);
    for (size_t i = 1; i < ks.size(); ++i)
        u = make_plp1(u, hs[i - 1], build_basic(ks[i]));
    return u;
}

std::string descriptor_to_string(const SubgroupDescriptor& d) {
    std::string out;
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) out += " x ";
        switch (d[i].kind) {
        case SubgroupChoice::Kind::Trivial: out += "triv"; break;
        case SubgroupChoice::Kind::Scaled: out += rat_str(d[i].c) + "*Zint"; break;
        case SubgroupChoice::Kind::Full: out += "full"; break;
        }
    }
    return out;
}

std::string term_to_string(const TermPtr& t) {
    switch (t->kind) {
    case NodeKind::Z: return "Z";
    case NodeKind::R: return "R";
    case NodeKind::P1:
        return "PLP1(" + term_to_string(t->x) + "; " + descriptor_to_string(t->v) +
               "; " + term_to_string(t->y) + ")";
    case NodeKind::P2:
        return "PLP2(" + term_to_string(t->x) + "; " + term_to_string(t->y) + ")";
    case NodeKind::P3:
        return "PLP3(" + term_to_string(t->x) + "; " + descriptor_to_string(t->v) +
               "; " + descriptor_to_string(t->w) + "; " + term_to_string(t->y) + ")";
    case NodeKind::P4:
        return "PLP4(" + term_to_string(t->x) + "; " + descriptor_to_string(t->v) +
               "; " + term_to_string(t->y) + ")";
    }
    return "?";
}

std::string group_part_string(const TermPtr& t) {
    std::string out;
    for (size_t i = 0; i < t->gr.size(); ++i) {
        if (i) out += " x ";
        out += coord_str(t->gr[i]);
    }
    return out;
}

namespace {

struct Parser {
    std::string_view s;
    size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at offset " << i << ": " << msg;
        throw ParseError(os.str());
    }
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i;
    }
    std::string word() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])))) ++i;
        return std::string(s.substr(start, i - start));
    }
    Rat rat() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && s[i] == '-') ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i < s.size() && s[i] == '/') {
            ++i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
        if (i == start) fail("expected a rational number");
        try {
            return parse_rat(s.substr(start, i - start));
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

    SubgroupChoice choice() {
        skip_ws();
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-')) {
            Rat c = rat();
            if (c <= 0) fail("subgroup scale must be positive");
            expect('*');
            if (word() != "Zint") fail("expected 'Zint' after scale");
            return {SubgroupChoice::Kind::Scaled, c};
        }
        std::string w = word();
        if (w == "triv") return {SubgroupChoice::Kind::Trivial, 0};
        if (w == "full") return {SubgroupChoice::Kind::Full, 1};
        fail("expected 'triv', 'full' or 'c*Zint', got '" + w + "'");
    }

    SubgroupDescriptor descriptor() {
        SubgroupDescriptor d;
        d.push_back(choice());
        while (true) {
            size_t save = i;
            skip_ws();
            if (i < s.size() && s[i] == 'x' &&
                (i + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 1])))) {
                ++i;
                d.push_back(choice());
            } else {
                i = save;
                break;
            }
        }
        return d;
    }

    TermPtr term() {
        std::string w = word();
        if (w == "Z") return z_leaf();
        if (w == "R") return r_leaf();
        if (w == "PLP1") {
            expect('(');
            TermPtr x = term();
            expect(';');
            SubgroupDescriptor h = descriptor();
            expect(';');
            TermPtr y = term();
            expect(')');
            return build_raw(NodeKind::P1, x, h, {}, y);
        }
        if (w == "PLP2") {
            expect('(');
            TermPtr x = term();
            expect(';');
            TermPtr y = term();
            expect(')');
            return build_raw(NodeKind::P2, x, {}, {}, y);
        }
        if (w == "PLP3") {
            expect('(');
            TermPtr x = term();
            expect(';');
            SubgroupDescriptor v = descriptor();
            expect(';');
            SubgroupDescriptor wd = descriptor();
            expect(';');
            TermPtr y = term();
            expect(')');
            return build_raw(NodeKind::P3, x, v, wd, y);
        }
        if (w == "PLP4") {
            expect('(');
            TermPtr x = term();
            expect(';');
            SubgroupDescriptor v = descriptor();
            expect(';');
            TermPtr y = term();
            expect(')');
            return build_raw(NodeKind::P4, x, v, {}, y);
        }
        fail("expected a term, got '" + w + "'");
    }
};

} // namespace

SubgroupDescriptor parse_descriptor(std::string_view text) {
    Parser p{text};
    SubgroupDescriptor d = p.descriptor();
    if (!p.eof()) p.fail("trailing input after descriptor");
    return d;
}

TermPtr parse_term(std::string_view text) {
    Parser p{text};
    TermPtr t = p.term();
    if (!p.eof()) p.fail("trailing input after term");
    return t;
}

namespace {

nlohmann::ordered_json choice_to_json(const SubgroupChoice& c) {
    switch (c.kind) {
    case SubgroupChoice::Kind::Trivial: return {{"kind", "triv"}};
    case SubgroupChoice::Kind::Scaled: return {{"kind", "scaled"}, {"c", rat_str(c.c)}};
    case SubgroupChoice::Kind::Full: return {{"kind", "full"}};
    }
    return {};
}

nlohmann::ordered_json descriptor_to_json(const SubgroupDescriptor& d) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& c : d) a.push_back(choice_to_json(c));
    return a;
}

SubgroupChoice choice_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("subgroup choice must be an object with a 'kind' string");
    std::string k = j["kind"].get<std::string>();
    if (k == "triv") return {SubgroupChoice::Kind::Trivial, 0};
    if (k == "full") return {SubgroupChoice::Kind::Full, 1};
    if (k == "scaled") {
        if (!j.contains("c") || !j["c"].is_string())
            throw ParseError("scaled subgroup choice needs a 'c' string");
        Rat c = parse_rat(j["c"].get<std::string>());
        if (c <= 0) throw ParseError("subgroup scale must be positive");
        return {SubgroupChoice::Kind::Scaled, c};
    }
    throw ParseError("unknown subgroup choice kind '" + k + "'");
}

SubgroupDescriptor descriptor_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError("subgroup descriptor must be a non empty array");
    SubgroupDescriptor d;
    for (const auto& e : j) d.push_back(choice_from_json(e));
    return d;
}

} // namespace

nlohmann::ordered_json term_to_json(const TermPtr& t) {
    nlohmann::ordered_json j;
    j["node"] = kind_name(t->kind);
    switch (t->kind) {
    case NodeKind::Z:
    case NodeKind::R:
        break;
    case NodeKind::P1:
        j["x"] = term_to_json(t->x);
        j["h"] = descriptor_to_json(t->v);
        j["y"] = term_to_json(t->y);
        break;
    case NodeKind::P2:
        j["x"] = term_to_json(t->x);
        j["y"] = term_to_json(t->y);
        break;
    case NodeKind::P3:
        j["x"] = term_to_json(t->x);
        j["v"] = descriptor_to_json(t->v);
        j["w"] = descriptor_to_json(t->w);
        j["y"] = term_to_json(t->y);
        break;
    case NodeKind::P4:
        j["x"] = term_to_json(t->x);
        j["v"] = descriptor_to_json(t->v);
        j["y"] = term_to_json(t->y);
        break;
    }
    return j;
}

TermPtr term_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("node") || !j["node"].is_string())
        throw ParseError("term json must be an object with a 'node' string");
    std::string node = j["node"].get<std::string>();
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key))
            throw ParseError("term json node '" + node + "' needs field '" + key + "'");
        return j[key];
    };
    if (node == "Z") return z_leaf();
    if (node == "R") return r_leaf();
    if (node == "PLP1")
        return build_raw(NodeKind::P1, term_from_json(need("x")),
                         descriptor_from_json(need("h")), {}, term_from_json(need("y")));
    if (node == "PLP2")
        return build_raw(NodeKind::P2, term_from_json(need("x")), {}, {},
                         term_from_json(need("y")));
    if (node == "PLP3")
        return build_raw(NodeKind::P3, term_from_json(need("x")),
                         descriptor_from_json(need("v")), descriptor_from_json(need("w")),
                         term_from_json(need("y")));
    if (node == "PLP4")
        return build_raw(NodeKind::P4, term_from_json(need("x")),
                         descriptor_from_json(need("v")), {}, term_from_json(need("y")));
    throw ParseError("unknown term node '" + node + "'");
}

bool same_term(const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind) return false;
    if (a->is_leaf()) return true;
    auto same_desc = [](const SubgroupDescriptor& p, const SubgroupDescriptor& q) {
        if (p.size() != q.size()) return false;
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i].kind != q[i].kind) return false;
            if (p[i].kind == SubgroupChoice::Kind::Scaled && p[i].c != q[i].c) return false;
        }
        return true;
    };
    if (!same_desc(a->v, b->v) || !same_desc(a->w, b->w)) return false;
    return same_term(a->x, b->x) && same_term(a->y, b->y);
}

} // namespace uninorm
