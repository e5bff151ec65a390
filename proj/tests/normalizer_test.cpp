#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uninorm/certify.hpp"

using namespace uninorm;

namespace {

Element el(const TermPtr& t, const char* s) { return parse_element(t, s); }

std::string segments_str(const TermPtr& t) {
    return canonical_form_string(normalize(t).form);
}

} // namespace

TEST_CASE("basic chains are already canonical") {
    for (int k = 0; k <= 3; ++k) {
        NormalizeResult r = normalize(build_basic(k));
        CHECK(r.trace.empty());
        CHECK(same_term(r.canonical, build_basic(k)));
        REQUIRE(r.form.segments.size() == 1);
        CHECK(r.form.segments[0].k == k);
        CHECK_FALSE(r.form.segments[0].h.has_value());
    }
}

TEST_CASE("frozen hoist example") {
    TermPtr t = parse_term("PLP2(PLP1(R; 1*Zint; Z); R)");
    NormalizeResult r = normalize(t);
    CHECK(term_to_string(r.canonical) == "PLP1(R; 1*Zint; PLP2(Z; R))");
    CHECK(canonical_form_string(r.form) == "[(k=0, H=1*Zint), (k=1)]");
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].rule == Rule::Hoist);
    CHECK(r.trace[0].path.empty());
    CHECK(same_term(expand(r.form), r.canonical));

    // frozen element translations across the hoist
    TermPtr c = r.canonical;
    CHECK(element_to_string(c, r.map.fwd(el(t, "((1,B),T)"))) == "(1,B)");
    CHECK(element_to_string(c, r.map.fwd(el(t, "((1,T),T)"))) == "(1,T)");
    CHECK(element_to_string(c, r.map.fwd(el(t, "((1,2),T)"))) == "(1,(2,T))");
    CHECK(element_to_string(c, r.map.fwd(el(t, "((1/2,B),T)"))) == "(1/2,B)");
    CHECK(element_to_string(c, r.map.fwd(el(t, "((1,2),3/4)"))) == "(1,(2,3/4))");
    for (const char* s : {"((1,B),T)", "((1,T),T)", "((1,2),T)", "((1/2,B),T)"})
        CHECK(r.map.inv(r.map.fwd(el(t, s))) == el(t, s));
}

TEST_CASE("reassociation flattens nested one sided products") {
    TermPtr t = parse_term("PLP2(PLP2(Z;Z);R)");
    NormalizeResult r = normalize(t);
    CHECK(term_to_string(r.canonical) == "PLP2(Z; PLP2(Z; R))");
    CHECK(canonical_form_string(r.form) == "[(k=2)]");
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].rule == Rule::Reassociate);

    TermPtr c = r.canonical;
    CHECK(element_to_string(c, r.map.fwd(el(t, "((0,T),T)"))) == "(0,T)");
    CHECK(element_to_string(c, r.map.fwd(el(t, "((0,5),T)"))) == "(0,(5,T))");
    CHECK(element_to_string(c, r.map.fwd(el(t, "((0,5),1/2)"))) == "(0,(5,1/2))");

    TermPtr deep = parse_term("PLP2(PLP2(Z;PLP2(Z;Z));R)");
    NormalizeResult rd = normalize(deep);
    CHECK(canonical_form_string(rd.form) == "[(k=3)]");
    CHECK(rd.trace.size() == 2);
}

TEST_CASE("aliases resolve to the generic spellings") {
    NormalizeResult r = normalize(parse_term("PLP3(R; 1*Zint; 1*Zint; R)"));
    CHECK(term_to_string(r.canonical) == "PLP1(R; 1*Zint; R)");
    CHECK(canonical_form_string(r.form) == "[(k=0, H=1*Zint), (k=0)]");

    NormalizeResult r2 = normalize(parse_term("PLP4(Z; full; R)"));
    CHECK(term_to_string(r2.canonical) == "PLP2(Z; R)");
    CHECK(canonical_form_string(r2.form) == "[(k=1)]");

    NormalizeResult r3 = normalize(parse_term("PLP2(PLP3(R; 1*Zint; 1*Zint; Z); R)"));
    CHECK(term_to_string(r3.canonical) == "PLP1(R; 1*Zint; PLP2(Z; R))");
    REQUIRE(r3.trace.size() == 2);
    CHECK(r3.trace[0].rule == Rule::Alias);
    CHECK(r3.trace[1].rule == Rule::Hoist);
}

TEST_CASE("normalization is idempotent") {
    const char* terms[] = {
        "PLP2(PLP1(R; 1*Zint; Z); R)",
        "PLP2(PLP2(Z;Z);R)",
        "PLP3(R; 1*Zint; 1*Zint; R)",
        "PLP1(PLP2(Z;R); full x triv; R)",
    };
    for (const char* s : terms) {
        NormalizeResult r = normalize(parse_term(s));
        NormalizeResult r2 = normalize(r.canonical);
        CHECK(r2.trace.empty());
        CHECK(same_term(r2.canonical, r.canonical));
    }
}

TEST_CASE("normalize rejects what it must") {
    CHECK_THROWS_AS(normalize(parse_term("PLP2(R;R)")), InvalidTerm);
    CHECK_THROWS_AS(normalize(parse_term("Z")), NotRealizable);
    CHECK_THROWS_AS(normalize(parse_term("PLP3(R; full; 1*Zint; R)")), NotRealizable);
    CHECK_THROWS_AS(normalize(parse_term("PLP4(Z; 2*Zint; R)")), NotRealizable);
    // realizable but out of reach of the left to right rules
    CHECK_THROWS_AS(normalize(parse_term("PLP1(R; 1*Zint; PLP1(R; 1*Zint; R))")),
                    NotCanonicalizable);
    CHECK_THROWS_AS(normalize(parse_term("PLP2(Z; PLP1(R; 1*Zint; R))")),
                    NotCanonicalizable);
}

TEST_CASE("rewrites undo each other") {
    TermPtr t = parse_term("PLP2(PLP1(R; 1*Zint; Z); R)");
    RewriteOutcome fwd = apply_rewrite(t, {Rule::Hoist, Dir::LtoR, {}});
    RewriteOutcome back = apply_rewrite(fwd.target, {Rule::Hoist, Dir::RtoL, {}});
    CHECK(same_term(back.target, t));

    TermPtr t2 = parse_term("PLP2(PLP2(Z;Z);R)");
    RewriteOutcome f2 = apply_rewrite(t2, {Rule::Reassociate, Dir::LtoR, {}});
    RewriteOutcome b2 = apply_rewrite(f2.target, {Rule::Reassociate, Dir::RtoL, {}});
    CHECK(same_term(b2.target, t2));

    // nested path: rewrite inside the second factor
    TermPtr t3 = parse_term("PLP1(R; 1*Zint; PLP2(PLP2(Z;Z);R))");
    RewriteOutcome f3 = apply_rewrite(t3, {Rule::Reassociate, Dir::LtoR, {1}});
    CHECK(term_to_string(f3.target) == "PLP1(R; 1*Zint; PLP2(Z; PLP2(Z; R)))");
    Element e = el(t3, "(1,((0,T),T))");
    CHECK(element_to_string(f3.target, f3.map.fwd(e)) == "(1,(0,T))");
    CHECK(f3.map.inv(f3.map.fwd(e)) == e);

    CHECK_THROWS_AS(apply_rewrite(t, {Rule::Reassociate, Dir::LtoR, {}}), PatternMismatch);
    CHECK_THROWS_AS(apply_rewrite(t, {Rule::Hoist, Dir::LtoR, {0, 0, 0}}), PatternMismatch);
    CHECK_THROWS_AS(apply_rewrite(parse_term("PLP3(R; full; 1*Zint; R)"),
                                  {Rule::Alias, Dir::LtoR, {}}),
                    PatternMismatch);
}

TEST_CASE("well definedness transfers across a rewrite in both directions") {
    struct Fixture {
        Rule rule;
        const char* term;
        bool valid;
    } fixtures[] = {
        // reassociation redexes
        {Rule::Reassociate, "PLP2(PLP2(Z;Z);R)", true},
        {Rule::Reassociate, "PLP2(PLP2(Z;Z);Z)", true},
        {Rule::Reassociate, "PLP2(PLP2(Z;PLP2(Z;Z));R)", true},
        {Rule::Reassociate, "PLP2(PLP2(Z;Z);PLP2(Z;R))", true},
        {Rule::Reassociate, "PLP2(PLP2(Z;PLP2(Z;Z));PLP2(Z;Z))", true},
        {Rule::Reassociate, "PLP2(PLP2(Z;R);R)", false},
        {Rule::Reassociate, "PLP2(PLP2(R;Z);Z)", false},
        {Rule::Reassociate, "PLP2(PLP2(Z;PLP2(Z;R));R)", false},
        {Rule::Reassociate, "PLP2(PLP2(Z;Z);PLP2(R;R))", false},
        {Rule::Reassociate, "PLP2(PLP2(R;R);R)", false},
        // hoist redexes
        {Rule::Hoist, "PLP2(PLP1(R; 1*Zint; Z); R)", true},
        {Rule::Hoist, "PLP2(PLP1(Z; full; Z); Z)", true},
        {Rule::Hoist, "PLP2(PLP1(R; triv; Z); R)", true},
        {Rule::Hoist, "PLP2(PLP1(R; 2*Zint; Z); PLP2(Z;R))", true},
        {Rule::Hoist, "PLP2(PLP1(PLP2(Z;Z); full x full; Z); R)", true},
        {Rule::Hoist, "PLP2(PLP1(R; 1*Zint; R); R)", false},
        {Rule::Hoist, "PLP2(PLP1(Z; 3/2*Zint; Z); R)", false},
        {Rule::Hoist, "PLP2(PLP1(R; full; PLP2(Z;R)); R)", false},
        {Rule::Hoist, "PLP2(PLP1(Z; 1*Zint x 1*Zint; Z); R)", false},
        {Rule::Hoist, "PLP2(PLP1(R; 1*Zint; PLP2(R;R)); R)", false},
    };
    int valid_count = 0, invalid_count = 0;
    for (const auto& f : fixtures) {
        TermPtr t = parse_term(f.term);
        RewriteOutcome out = apply_rewrite(t, {f.rule, Dir::LtoR, {}});
        CHECK_MESSAGE(out.source_valid == f.valid, f.term);
        CHECK_MESSAGE(out.source_valid == out.target_valid, f.term);
        (f.valid ? valid_count : invalid_count)++;
        // and against the stream: the reverse application transfers too
        RewriteOutcome back = apply_rewrite(out.target, {f.rule, Dir::RtoL, {}});
        CHECK(back.source_valid == back.target_valid);
        CHECK(same_term(back.target, t));
    }
    CHECK(valid_count == 10);
    CHECK(invalid_count == 10);
}

TEST_CASE("sampled isomorphism certificates") {
    const char* terms[] = {
        "PLP2(PLP1(R; 1*Zint; Z); R)",
        "PLP2(PLP2(Z;Z);R)",
        "PLP2(PLP3(R; 1*Zint; 1*Zint; Z); R)",
        "PLP2(PLP2(Z;PLP2(Z;Z));R)",
    };
    for (const char* s : terms) {
        TermPtr t = parse_term(s);
        NormalizeResult r = normalize(t);
        CertificateReport rep = certify_isomorphism(t, r.canonical, r.map, 2000, 7);
        CHECK_MESSAGE(rep.ok(), s << " " << rep.first_counterexample);
        CHECK(rep.samples == 2000);
    }
}

TEST_CASE("certification catches wrong maps") {
    TermPtr t = parse_term("PLP2(PLP2(Z;Z);R)");
    NormalizeResult r = normalize(t);

    Bijection identity;
    identity.fwd = [](const Element& e) { return e; };
    identity.inv = [](const Element& e) { return e; };
    CertificateReport rep = certify_isomorphism(t, r.canonical, identity, 2000, 7);
    CHECK(rep.violations > 0);

    Bijection skewed;
    skewed.fwd = [&](const Element& e) {
        Element out = r.map.fwd(e);
        for (auto& lv : out.layers)
            if (lv.kind == LayerValue::Kind::Scalar) {
                lv.value += 1;
                break;
            }
        return out;
    };
    skewed.inv = r.map.inv;
    CertificateReport rep2 = certify_isomorphism(t, r.canonical, skewed, 2000, 7);
    CHECK(rep2.violations > 0);
}

TEST_CASE("normalize json shape") {
    TermPtr t = parse_term("PLP2(PLP1(R; 1*Zint; Z); R)");
    auto j = normalize_to_json(t, normalize(t));
    CHECK(j["canonical"] == "PLP1(R; 1*Zint; PLP2(Z; R))");
    CHECK(j["segments"].size() == 2);
    CHECK(j["segments"][0]["k"] == 0);
    CHECK(j["segments"][0]["h"] == "1*Zint");
    CHECK(j["segments"][1]["k"] == 1);
    CHECK(j["trace"].size() == 1);
    CHECK(j["trace"][0]["rule"] == "hoist");
}
