#include "uninorm/sampler.hpp"

namespace uninorm {

namespace {

// splitmix64, Steele et al.; tiny, fast, good enough for test vectors
uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    uint64_t x = z;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Sampler::Sampler(uint64_t seed) : state_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

uint64_t Sampler::next() {
    uint64_t out = mix(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
}

double Sampler::u01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

long long Sampler::randint(long long lo, long long hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
}

Rat Sampler::sample_coord(const CoordGroup& g) {
    switch (g.kind) {
    case CoordGroup::Kind::Trivial: return 0;
    case CoordGroup::Kind::Cyclic: return g.step * Rat(randint(-50, 50));
    case CoordGroup::Kind::Dense: return Rat(randint(-100, 100), randint(1, 100));
    }
    return 0;
}

void Sampler::sample_coords(const std::vector<CoordGroup>& coords,
                            std::vector<LayerValue>& out) {
    for (const auto& g : coords) out.push_back(LayerValue::scalar(sample_coord(g)));
}

void Sampler::sample_rec(const TermPtr& t, std::vector<LayerValue>& out) {
    if (t->is_leaf()) {
        out.push_back(LayerValue::scalar(
            t->kind == NodeKind::Z ? Rat(randint(-50, 50))
                                   : Rat(randint(-100, 100), randint(1, 100))));
        return;
    }
    if (u01() < 0.25) {
        if (t->two_sided() && u01() < 0.5) {
            sample_rec(t->x, out); // B sits over every first factor point
            out.push_back(LayerValue::bottom());
        } else {
            if (t->two_sided())
                sample_coords(t->eff_v, out); // T needs the base inside V
            else
                sample_rec(t->x, out);
            out.push_back(LayerValue::top());
        }
        return;
    }
    sample_coords(t->two_sided() ? t->eff_w : t->eff_v, out);
    sample_rec(t->y, out);
}

Element Sampler::sample(const TermPtr& t) {
    require_valid(t);
    Element e;
    sample_rec(t, e.layers);
    return e;
}

Element Sampler::sample_group(const TermPtr& t) {
    require_valid(t);
    Element e;
    sample_coords(t->gr, e.layers);
    return e;
}

} // namespace uninorm
