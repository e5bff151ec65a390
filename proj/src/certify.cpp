#include "uninorm/certify.hpp"

namespace uninorm {

CertificateReport certify_isomorphism(const TermPtr& source, const TermPtr& target,
                                      const Bijection& map, uint64_t samples,
                                      uint64_t seed) {
    require_valid(source);
    require_valid(target);
    CertificateReport rep;
    rep.notes.push_back("residual preservation follows from product and negation");

    auto flag = [&](const std::string& what, const std::string& detail) {
        rep.violations++;
        if (rep.first_counterexample.empty())
            rep.first_counterexample = what + ": " + detail;
    };

    // the unit must map to the unit
    rep.samples++;
    try {
        if (!(map.fwd(unit(source)) == unit(target)))
            flag("unit", "fwd(unit) != unit");
    } catch (const Error& e) {
        flag("unit", e.what());
    }

    Sampler rng(seed);
    for (uint64_t i = 0; i + 1 < samples; ++i) {
        rep.samples++;
        Element a = rng.sample(source), b = rng.sample(source);
        std::string ops = "a=" + element_to_string(source, a) +
                          " b=" + element_to_string(source, b);
        try {
            Element fa = map.fwd(a), fb = map.fwd(b);
            if (!is_wellformed(target, fa) || !is_wellformed(target, fb)) {
                flag("carrier", ops);
                continue;
            }
            if (!(map.inv(fa) == a)) {
                flag("round trip", ops);
                continue;
            }
            if (compare(source, a, b) != compare(target, fa, fb)) {
                flag("order", ops);
                continue;
            }
            if (!(map.fwd(mul(source, a, b)) == mul(target, fa, fb))) {
                flag("product", ops);
                continue;
            }
            if (!(map.fwd(neg(source, a)) == neg(target, fa)))
                flag("negation", ops);
        } catch (const Error& e) {
            flag("exception", ops + " (" + e.what() + ")");
        }
    }
    return rep;
}

nlohmann::ordered_json certificate_to_json(const CertificateReport& r) {
    nlohmann::ordered_json j;
    j["samples"] = r.samples;
    j["violations"] = r.violations;
    j["ok"] = r.ok();
    if (!r.first_counterexample.empty()) j["counterexample"] = r.first_counterexample;
    j["notes"] = r.notes;
    return j;
}

} // namespace uninorm
