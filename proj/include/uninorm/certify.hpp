#pragma once

#include "uninorm/checks.hpp"
#include "uninorm/rewrite.hpp"

namespace uninorm {

struct CertificateReport {
    uint64_t samples = 0;
    uint64_t violations = 0;
    std::string first_counterexample;
    std::vector<std::string> notes;
    bool ok() const { return violations == 0; }
};

/// Samples the source chain and checks that map.fwd lands in the target
/// carrier, preserves order, product, negation and the unit, and that
/// map.inv undoes it. Preservation of the residual follows from product
/// and negation. Both terms must be valid.
CertificateReport certify_isomorphism(const TermPtr& source, const TermPtr& target,
                                      const Bijection& map, uint64_t samples,
                                      uint64_t seed);

nlohmann::ordered_json certificate_to_json(const CertificateReport& r);

} // namespace uninorm
