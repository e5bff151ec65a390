#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uninorm/rational.hpp"

namespace uninorm {

// Construction terms for ordered abelian chains built from Z and R by
// partial lexicographic products. PLP1/PLP3 extend selected group
// coordinates by a two sided fiber (bottom and top covers), PLP2/PLP4
// by a one sided fiber (top cover only). PLP1(X;H;Y) is shorthand for
// PLP3(X;H;H;Y) and PLP2(X;Y) for PLP4(X;gr(X);Y).

enum class NodeKind { Z, R, P1, P2, P3, P4 };

/// One coordinate of the group part: a subgroup of (Q,+).
struct CoordGroup {
    enum class Kind { Trivial, Cyclic, Dense };
    Kind kind = Kind::Trivial;
    Rat step = 0; // generator, Cyclic only
};

bool coord_contains(const CoordGroup& g, const Rat& v);
bool coord_subgroup(const CoordGroup& inner, const CoordGroup& outer);
bool coord_equal(const CoordGroup& a, const CoordGroup& b);
std::string coord_str(const CoordGroup& g); // "0", "Z", "c*Z", "Q"

/// Per leaf choice in a subgroup descriptor, as written in a term.
struct SubgroupChoice {
    enum class Kind { Trivial, Scaled, Full };
    Kind kind = Kind::Full;
    Rat c = 1; // Scaled only, must be positive
};

using SubgroupDescriptor = std::vector<SubgroupChoice>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Violation {
    InvalidTerm::Code code;
    std::string message;
};

struct Term {
    NodeKind kind = NodeKind::Z;
    TermPtr x, y;              // children, PLP nodes only
    SubgroupDescriptor v, w;   // as written: P1 uses v only, P3 uses both, P4 uses v

    // derived data, filled by the builders
    int leaves = 1;
    bool disc = true;                      // group part discretely embedded
    std::vector<CoordGroup> gr;            // group part, one entry per leaf
    std::vector<CoordGroup> eff_v, eff_w;  // resolved descriptors over x's leaves
    std::optional<Violation> violation;    // first violation in this subtree

    bool is_leaf() const { return kind == NodeKind::Z || kind == NodeKind::R; }
    bool two_sided() const { return kind == NodeKind::P1 || kind == NodeKind::P3; }
    bool valid() const { return !violation.has_value(); }
};

TermPtr z_leaf();
TermPtr r_leaf();

/// Builds a PLP node without validating; well-definedness problems are
/// recorded in term->violation instead of thrown.
TermPtr build_raw(NodeKind kind, TermPtr x, SubgroupDescriptor v,
                  SubgroupDescriptor w, TermPtr y);

/// Validating builders; throw InvalidTerm on the first violation.
TermPtr make_plp1(TermPtr x, SubgroupDescriptor h, TermPtr y);
TermPtr make_plp2(TermPtr x, TermPtr y);
TermPtr make_plp3(TermPtr x, SubgroupDescriptor v, SubgroupDescriptor w, TermPtr y);
TermPtr make_plp4(TermPtr x, SubgroupDescriptor v, TermPtr y);

/// Throws InvalidTerm when t or any subterm carries a violation.
void require_valid(const TermPtr& t);

/// Basic chain number k: R for k = 0, else PLP2(Z, basic(k-1)).
TermPtr build_basic(int k);

/// Left nested product of basic chains: ks.size() >= 1 and
/// hs.size() == ks.size() - 1; hs[i] attaches basic(ks[i+1]).
TermPtr build_representation(const std::vector<int>& ks,
                             const std::vector<SubgroupDescriptor>& hs);

std::string descriptor_to_string(const SubgroupDescriptor& d);
std::string term_to_string(const TermPtr& t);
std::string group_part_string(const TermPtr& t); // e.g. "Z x Q"

SubgroupDescriptor parse_descriptor(std::string_view text);
TermPtr parse_term(std::string_view text);

nlohmann::ordered_json term_to_json(const TermPtr& t);
TermPtr term_from_json(const nlohmann::json& j);

bool same_term(const TermPtr& a, const TermPtr& b);

} // namespace uninorm
