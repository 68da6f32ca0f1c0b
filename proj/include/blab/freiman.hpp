#pragma once

#include "blab/group.hpp"
#include "blab/sets.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace blab {

// Ambient additive structure for one side of a point map: the integers,
// or a finite abelian group with points given by flat index.
struct ZLine {
    bool operator==(const ZLine&) const { return true; }
};
using AdditiveSpace = std::variant<ZLine, Group>;

std::int64_t space_add(const AdditiveSpace& s, std::int64_t a, std::int64_t b);
std::int64_t space_double(const AdditiveSpace& s, std::int64_t a);

// A finite map between subsets of two additive spaces; every source point
// appears exactly once.
struct PointMap {
    AdditiveSpace domain;
    AdditiveSpace codomain;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;

    PointMap inverse() const; // swaps the sides; meaningful when injective

    static PointMap identity_on(const AdditiveSpace& s, const std::vector<std::int64_t>& pts);
    // x -> (x - offset) mod m into Z/m, per the interval embedding rule.
    static PointMap interval_embedding(const ZSet& a);
};

// a1 + a2 = a3 + a4 always forces equal image sums. Exhaustive over sum
// classes; the quadruple budget guards the domain size.
bool is_freiman_hom(const PointMap& phi, std::size_t budget = 64);

// Injective, and both directions are homomorphisms.
bool is_freiman_iso(const PointMap& phi, std::size_t budget = 64);

// Requires an isomorphism; checks the nontrivial progression counts match
// and that every domain progression maps to a progression.
bool ap3_transfer_check(const PointMap& phi, std::size_t budget = 64);

// Ordered triples (a,b,c) from pts with a + c = 2b, not all equal.
std::int64_t count_ap3_points(const AdditiveSpace& s, const std::vector<std::int64_t>& pts);

// Some pair of distinct points differs by an element of order 2 (never in Z).
bool points_have_order2_difference(const AdditiveSpace& s, const std::vector<std::int64_t>& pts);

} // namespace blab
