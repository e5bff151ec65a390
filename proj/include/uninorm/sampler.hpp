#pragma once

#include <cstdint>

#include "uninorm/element.hpp"

namespace uninorm {

/// Deterministic pseudo random elements. The stream depends only on
/// the seed and the call order, never on platform randomness, so runs
/// with equal seeds reproduce byte for byte.
class Sampler {
public:
    explicit Sampler(uint64_t seed);

    uint64_t next();
    double u01();
    long long randint(long long lo, long long hi); // inclusive

    Rat sample_coord(const CoordGroup& g);

    /// Any carrier point; sentinels appear with probability 1/4 per node.
    Element sample(const TermPtr& t);

    /// An invertible point: scalars inside the group part coordinates.
    Element sample_group(const TermPtr& t);

private:
    void sample_rec(const TermPtr& t, std::vector<LayerValue>& out);
    void sample_coords(const std::vector<CoordGroup>& coords,
                       std::vector<LayerValue>& out);
    uint64_t state_;
};

} // namespace uninorm
