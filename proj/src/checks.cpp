#include "uninorm/checks.hpp"

#include "uninorm/ops.hpp"

namespace uninorm {

namespace {

struct LawRunner {
    const TermPtr& t;
    const SuiteOptions& opt;
    std::vector<LawResult>& out;

    Element negate(const Element& a) const {
        Element n = neg(t, a);
        if (opt.break_negation) {
            // asymmetric shift so that a double application cannot cancel
            for (auto& lv : n.layers) {
                if (lv.kind == LayerValue::Kind::Scalar) {
                    if (lv.value >= 0) lv.value += 1;
                    break;
                }
            }
        }
        return n;
    }

    template <typename F>
    void run(const std::string& name, uint64_t n, F&& body) {
        LawResult r;
        r.law = name;
        Sampler rng(opt.seed ^ std::hash<std::string>{}(name));
        for (uint64_t i = 0; i < n; ++i) {
            r.samples++;
            std::string cex;
            bool pass;
            try {
                pass = body(rng, cex);
            } catch (const Error& e) {
                pass = false;
                cex = std::string("exception: ") + e.what();
            }
            if (!pass) {
                r.violations++;
                if (r.counterexample.empty()) r.counterexample = cex;
            }
        }
        out.push_back(std::move(r));
    }

    std::string show(const Element& a) const { return element_to_string(t, a); }
};

} // namespace

std::vector<LawResult> run_law_suite(const TermPtr& t, const SuiteOptions& opt) {
    require_valid(t);
    std::vector<LawResult> results;
    LawRunner lr{t, opt, results};
    uint64_t n = opt.samples;

    lr.run("commutativity", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t), b = rng.sample(t);
        if (mul(t, a, b) == mul(t, b, a)) return true;
        cex = "a=" + lr.show(a) + " b=" + lr.show(b);
        return false;
    });
    lr.run("associativity", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t), b = rng.sample(t), c = rng.sample(t);
        if (mul(t, mul(t, a, b), c) == mul(t, a, mul(t, b, c))) return true;
        cex = "a=" + lr.show(a) + " b=" + lr.show(b) + " c=" + lr.show(c);
        return false;
    });
    lr.run("unit", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t);
        if (mul(t, a, unit(t)) == a) return true;
        cex = "a=" + lr.show(a);
        return false;
    });
    lr.run("monotonicity", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t), b = rng.sample(t), c = rng.sample(t);
        if (compare(t, a, b) > 0) std::swap(a, b);
        if (compare(t, mul(t, a, c), mul(t, b, c)) <= 0) return true;
        cex = "a=" + lr.show(a) + " b=" + lr.show(b) + " c=" + lr.show(c);
        return false;
    });
    lr.run("residuation", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t), v = rng.sample(t), z = rng.sample(t);
        Element r = lr.negate(mul(t, a, lr.negate(z)));
        bool lhs = compare(t, mul(t, a, v), z) <= 0;
        bool rhs = compare(t, v, r) <= 0;
        if (lhs == rhs) return true;
        cex = "a=" + lr.show(a) + " v=" + lr.show(v) + " z=" + lr.show(z);
        return false;
    });
    lr.run("involution", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t);
        if (lr.negate(lr.negate(a)) == a) return true;
        cex = "a=" + lr.show(a);
        return false;
    });
    lr.run("oddness", 1, [&](Sampler&, std::string& cex) {
        if (lr.negate(unit(t)) == unit(t)) return true;
        cex = "neg(unit) != unit";
        return false;
    });
    lr.run("order reversal", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t), b = rng.sample(t);
        if (compare(t, a, b) > 0) std::swap(a, b);
        if (compare(t, lr.negate(b), lr.negate(a)) <= 0) return true;
        cex = "a=" + lr.show(a) + " b=" + lr.show(b);
        return false;
    });
    lr.run("closure", n, [&](Sampler& rng, std::string& cex) {
        Element a = rng.sample(t), b = rng.sample(t);
        for (const Element& e : {mul(t, a, b), lr.negate(a), res(t, a, b)}) {
            if (!is_wellformed(t, e)) {
                cex = "a=" + lr.show(a) + " b=" + lr.show(b);
                return false;
            }
        }
        return true;
    });
    return results;
}

nlohmann::ordered_json laws_to_json(const std::vector<LawResult>& results) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results)
        arr.push_back({{"law", r.law},
                       {"samples", r.samples},
                       {"violations", r.violations},
                       {"counterexample", r.counterexample}});
    return arr;
}

} // namespace uninorm
