#pragma once

#include "blab/group.hpp"
#include "blab/sets.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace blab {

// Frequencies and a radius delta in (0,1]; describes the Bohr set
// B(freqs, delta) = {x : valuation(gamma(x)) <= delta for all gamma}.
struct BohrDescriptor {
    std::vector<Index> frequencies;
    double delta = 1.0;
};

enum class SystemRule { trivial, bohr, dilate, double_image, intersect };

// A composable family (B_rho)_{rho in (0,2]} of subsets of a group, closed
// under dilation, doubling and intersection, with a declared dimension
// following the composition ledger. Materialization is exact: every x
// carries the infimal rho at which it enters the family, so any radius
// query is a threshold over a precomputed table.
class BourgainSystem {
public:
    static BourgainSystem trivial(const Group& g);
    static BourgainSystem bohr(const Group& g, BohrDescriptor desc);

    BourgainSystem dilate(double lambda) const;
    BourgainSystem double_system() const;
    static BourgainSystem intersect(const std::vector<BourgainSystem>& parts);

    const Group& group() const;
    double dimension() const;
    SystemRule rule() const;

    double entry_radius(Index x) const;
    const std::vector<double>& entry_radii() const;

    GSet materialize(double rho) const;
    std::uint64_t count_at(double rho) const; // |B_rho|
    double density() const;                   // |B_1| / |G|

    // Exact breakpoint check of the regularity window
    // 1 - 8 d |eta| <= |B_1| / |B_(1+eta)| <= 1 + 8 d |eta| for d|eta| <= 1/8.
    bool is_regular() const;

    // Smallest regular dilation factor found in [lo, hi); the candidate set
    // comes from the breakpoints of the radius table, plus a safety grid.
    // Existence is guaranteed for [1/2, 1); failure throws.
    std::pair<double, BourgainSystem> regular_dilate(double lo = 0.5, double hi = 1.0) const;

    // True when this system is contained in the eta-dilate of outer,
    // i.e. B_rho subset-of Outer_(eta rho) for every rho.
    bool subsystem_of(const BourgainSystem& outer, double eta) const;

    std::string describe() const;

private:
    bool regular_at_scale(double lambda) const;

    struct Node;
    explicit BourgainSystem(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct AxiomCertificate {
    bool nesting_ok = false;
    bool zero_ok = false;
    bool symmetry_ok = false;
    bool addition_ok = false;
    bool doubling_ok = false;
    std::map<double, std::vector<Index>> doubling_witness; // rho -> covering translates
    std::string failure; // first violation, if any
    bool all_ok() const { return nesting_ok && zero_ok && symmetry_ok && addition_ok && doubling_ok; }
};

// Exhaustive axiom check at the grid radii. Nesting/zero/symmetry test the
// materialized sets; addition tests all grid pairs with rho + rho' <= 1;
// the doubling witness is a greedy cover of B_(2 rho) by translates of
// B_rho, compared against 2^dimension.
AxiomCertificate verify_axioms(const BourgainSystem& s, const std::vector<double>& rho_grid);

// Same checks against an arbitrary radius -> set family; lets tests feed
// deliberately corrupted families through the certifier.
AxiomCertificate verify_axioms_fn(const Group& g,
                                  const std::function<GSet(double)>& family,
                                  double dimension, const std::vector<double>& rho_grid);

// Greedy cover of target by translates of tile: repeatedly pick the lowest
// uncovered point and cover with point + tile.
std::vector<Index> greedy_cover(const GSet& target, const GSet& tile);

std::vector<double> default_rho_grid();

} // namespace blab
