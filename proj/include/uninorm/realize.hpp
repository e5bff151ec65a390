#pragma once

#include "uninorm/rewrite.hpp"

namespace uninorm {

/// Maps the reals onto the open unit interval, order preserving.
double to_unit_interval(double x);
/// Inverse of to_unit_interval; throws DomainError outside (0,1).
double from_unit_interval(double u);

/// Nearest simple rational: walks the continued fraction convergents of
/// u and returns the first within atol, or the last one whose
/// denominator stays under den_cap. Doubles are dyadic, so the double
/// overload is exact.
Rat snap_rational(const Rat& x, const Rat& atol, const Int& den_cap);
Rat snap_rational(double u, const Rat& atol, const Int& den_cap);

/// Numeric realization of a realizable term. The term is normalized
/// first; elements travel through the normalization bijection, numbers
/// live on the canonical form.
///
/// forward is a strictly monotone embedding into R as long as the two
/// sided fibers hit the enumeration table (the first table_size
/// subgroup points per node, which covers every scalar the bundled
/// sampler can emit for cyclic subgroups and single dense coordinates).
/// Beyond the table a fiber collapses to width zero and forward only
/// stays weakly monotone there.
class Realization {
public:
    explicit Realization(TermPtr term, int table_size = 16384);

    const TermPtr& term() const { return term_; }
    const TermPtr& canonical() const { return norm_.canonical; }
    const NormalizeResult& normalization() const { return norm_; }

    double forward(const Element& a) const;

    /// Approximate inverse of forward. Boundary tests (sentinels, fiber
    /// edges) reuse forward's floating point values bit for bit, and
    /// every residual handed further down is snapped to a simple
    /// rational (tolerance 2e-6, denominators up to 1e6). Elements with
    /// scalars of denominator up to about 100 and at most one two sided
    /// node on the spine survive a forward/backward round trip exactly;
    /// everything else comes back within the snap tolerance in position.
    Element backward(double u) const;

    /// The induced uninorm on the unit square. Arguments must lie in
    /// [0,1]; 0 absorbs, 1 absorbs anything positive, and 0.5 is the
    /// unit. Interior points travel through backward, the exact monoid
    /// product, and forward.
    double eval(double x, double y) const;

private:
    struct Fiber {
        Element h;    // group point of the first factor, sorted ascending
        double base;  // forward position of h in the first factor
        double below; // widths of the fibers strictly under h
        double width;
    };
    struct Node {
        TermPtr t;
        std::unique_ptr<Node> xnode, ynode; // xnode for P1, ynode for P1/P2
        std::vector<Fiber> fibers;          // P1 only
    };

    std::unique_ptr<Node> build(const TermPtr& t);
    double fwd(const Node& n, LayerSpan frag) const;
    void bwd(const Node& n, const Rat& u, const Rat& atol, const Int& den_cap,
             std::vector<LayerValue>& out) const;
    Element backward_policy(double u, const Rat& atol, const Int& den_cap) const;

    TermPtr term_;
    NormalizeResult norm_;
    int table_size_;
    std::unique_ptr<Node> root_;
};

} // namespace uninorm
