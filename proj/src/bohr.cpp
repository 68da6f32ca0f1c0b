#include "blab/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace blab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// relative guard for radius thresholds; materialization is closed
constexpr double kGuard = 1e-12;

bool radius_le(double entry, double rho) { return entry <= rho * (1.0 + kGuard) + 1e-300; }

// valuation of gamma(x) for every x, computed with exact per-axis integer
// phases so equal valuations land on equal doubles
std::vector<double> valuation_table(const Group& g, Index freq) {
    const auto& mods = g.moduli();
    const std::size_t k = mods.size();
    const auto fr = g.residues_of(freq);
    std::vector<std::int64_t> digit(k, 0), phase(k, 0);
    std::vector<double> out(g.size());
    for (std::uint64_t x = 0;; ++x) {
        double frac = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            frac += static_cast<double>(phase[i]) / static_cast<double>(mods[i]);
        frac -= std::floor(frac);
        out[x] = std::min(frac, 1.0 - frac);
        // odometer bump on the last axis
        std::size_t i = k;
        while (i-- > 0) {
            if (++digit[i] < mods[i]) {
                phase[i] += fr[i];
                if (phase[i] >= mods[i]) phase[i] -= mods[i];
                break;
            }
            digit[i] = 0;
            phase[i] = 0;
            if (i == 0) return out;
        }
    }
}
} // namespace

struct BourgainSystem::Node {
    SystemRule rule;
    Group group;
    double dimension;

    BohrDescriptor bohr;                                // rule == bohr
    double lambda = 1.0;                                // rule == dilate
    std::vector<std::shared_ptr<const Node>> children;  // dilate/double/intersect

    std::vector<double> radii;        // entry radius per flat index
    std::vector<double> sorted_radii; // same values, ascending

    Node(SystemRule r, Group g, double d) : rule(r), group(std::move(g)), dimension(d) {}
};

BourgainSystem BourgainSystem::trivial(const Group& g) {
    auto n = std::make_shared<Node>(SystemRule::trivial, g, 1.0);
    n->radii.assign(g.size(), 0.0);
    n->sorted_radii = n->radii;
    return BourgainSystem(std::move(n));
}

BourgainSystem BourgainSystem::bohr(const Group& g, BohrDescriptor desc) {
    if (!(desc.delta > 0.0 && desc.delta <= 1.0))
        throw std::invalid_argument("bohr radius must lie in (0,1]");
    std::sort(desc.frequencies.begin(), desc.frequencies.end());
    desc.frequencies.erase(std::unique(desc.frequencies.begin(), desc.frequencies.end()),
                           desc.frequencies.end());
    for (Index f : desc.frequencies)
        if (f >= g.size()) throw std::invalid_argument("frequency outside the dual group");

    const double dim = desc.frequencies.empty() ? 1.0 : 2.0 * static_cast<double>(desc.frequencies.size());
    auto n = std::make_shared<Node>(SystemRule::bohr, g, dim);
    n->bohr = desc;
    n->radii.assign(g.size(), 0.0);
    for (Index f : desc.frequencies) {
        const auto vals = valuation_table(g, f);
        for (std::uint64_t x = 0; x < g.size(); ++x)
            n->radii[x] = std::max(n->radii[x], vals[x] / desc.delta);
    }
    n->sorted_radii = n->radii;
    std::sort(n->sorted_radii.begin(), n->sorted_radii.end());
    return BourgainSystem(std::move(n));
}

BourgainSystem BourgainSystem::dilate(double lambda) const {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("dilation factor must lie in (0,1]");
    auto n = std::make_shared<Node>(SystemRule::dilate, node_->group, node_->dimension);
    n->lambda = lambda;
    n->children = {node_};
    n->radii.resize(node_->radii.size());
    for (std::size_t i = 0; i < n->radii.size(); ++i) n->radii[i] = node_->radii[i] / lambda;
    n->sorted_radii.resize(node_->sorted_radii.size());
    for (std::size_t i = 0; i < n->sorted_radii.size(); ++i)
        n->sorted_radii[i] = node_->sorted_radii[i] / lambda;
    return BourgainSystem(std::move(n));
}

BourgainSystem BourgainSystem::double_system() const {
    const Group& g = node_->group;
    auto n = std::make_shared<Node>(SystemRule::double_image, g, node_->dimension);
    n->children = {node_};
    n->radii.assign(g.size(), kInf);
    for (std::uint64_t y = 0; y < g.size(); ++y) {
        const Index img = g.dbl(static_cast<Index>(y));
        n->radii[img] = std::min(n->radii[img], node_->radii[y]);
    }
    n->sorted_radii = n->radii;
    std::sort(n->sorted_radii.begin(), n->sorted_radii.end());
    return BourgainSystem(std::move(n));
}

BourgainSystem BourgainSystem::intersect(const std::vector<BourgainSystem>& parts) {
    if (parts.empty()) throw std::invalid_argument("intersect needs at least one system");
    const Group& g = parts.front().group();
    double dimsum = 0.0;
    for (const auto& p : parts) {
        if (p.group() != g) throw std::invalid_argument("group mismatch");
        dimsum += p.dimension();
    }
    auto n = std::make_shared<Node>(SystemRule::intersect, g, 2.0 * dimsum);
    for (const auto& p : parts) n->children.push_back(p.node_);
    n->radii = parts.front().node_->radii;
    for (std::size_t k = 1; k < parts.size(); ++k) {
        const auto& r = parts[k].node_->radii;
        for (std::size_t i = 0; i < n->radii.size(); ++i) n->radii[i] = std::max(n->radii[i], r[i]);
    }
    n->sorted_radii = n->radii;
    std::sort(n->sorted_radii.begin(), n->sorted_radii.end());
    return BourgainSystem(std::move(n));
}

const Group& BourgainSystem::group() const { return node_->group; }
double BourgainSystem::dimension() const { return node_->dimension; }
SystemRule BourgainSystem::rule() const { return node_->rule; }

double BourgainSystem::entry_radius(Index x) const { return node_->radii[x]; }
const std::vector<double>& BourgainSystem::entry_radii() const { return node_->radii; }

GSet BourgainSystem::materialize(double rho) const {
    if (!(rho > 0.0 && rho <= 2.0)) throw std::invalid_argument("radius must lie in (0,2]");
    GSet s(node_->group);
    for (std::uint64_t i = 0; i < node_->radii.size(); ++i)
        if (radius_le(node_->radii[i], rho)) s.insert(static_cast<Index>(i));
    return s;
}

std::uint64_t BourgainSystem::count_at(double rho) const {
    const auto& sr = node_->sorted_radii;
    const double bound = rho * (1.0 + kGuard) + 1e-300;
    return static_cast<std::uint64_t>(
        std::upper_bound(sr.begin(), sr.end(), bound) - sr.begin());
}

double BourgainSystem::density() const {
    return static_cast<double>(count_at(1.0)) / static_cast<double>(node_->group.size());
}

bool BourgainSystem::is_regular() const { return regular_at_scale(1.0); }

// Regularity of the lambda-dilate, read off the base radius table: the
// dilated family enters at r / lambda, so counts at radius rho come from
// thresholding the base radii at lambda * rho.
bool BourgainSystem::regular_at_scale(double lambda) const {
    const double d = node_->dimension;
    const double w = 1.0 / (8.0 * d);
    const auto& sr = node_->sorted_radii;

    auto cnt = [&](double rho) -> double {
        const double bound = lambda * rho * (1.0 + kGuard) + 1e-300;
        return static_cast<double>(std::upper_bound(sr.begin(), sr.end(), bound) - sr.begin());
    };
    const double c1 = cnt(1.0);
    if (c1 <= 0.0) return false; // cannot happen: 0 always enters at radius 0

    // |B_(1+eta)| is a right-continuous step function of eta; both bounds
    // are continuous, so it suffices to test every breakpoint (both
    // one-sided limits) plus the window endpoints.
    auto check = [&](double count, double abs_eta) -> bool {
        if (count <= 0.0) return false;
        const double ratio = c1 / count;
        const double slack = 1e-9;
        return ratio <= 1.0 + 8.0 * d * abs_eta + slack &&
               ratio >= 1.0 - 8.0 * d * abs_eta - slack;
    };

    if (!check(cnt(1.0 - w), w)) return false;
    if (!check(cnt(1.0 + w), w)) return false;

    auto lo = std::lower_bound(sr.begin(), sr.end(), lambda * (1.0 - w) * (1.0 - 1e-9));
    auto hi = std::upper_bound(sr.begin(), sr.end(), lambda * (1.0 + w) * (1.0 + 1e-9));
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (auto it = lo; it != hi; ++it) {
        const double r = *it;
        if (r == prev) continue;
        prev = r;
        const double eta = r / lambda - 1.0;
        if (eta < -w - 1e-15 || eta > w + 1e-15) continue;
        const double abs_eta = std::abs(eta);
        // value at the breakpoint (jump included)
        if (!check(cnt(r / lambda), abs_eta)) return false;
        // left limit: strictly-below count against the same bound
        const double before = static_cast<double>(
            std::lower_bound(sr.begin(), sr.end(), r * (1.0 - kGuard) - 1e-300) - sr.begin());
        if (eta > -w + 1e-15) {
            if (!check(before, abs_eta)) return false;
        }
    }
    return true;
}

std::pair<double, BourgainSystem> BourgainSystem::regular_dilate(double lo, double hi) const {
    if (!(lo > 0.0 && lo < hi && hi <= 1.0 + 1e-12))
        throw std::invalid_argument("bad dilation search range");

    const double d = node_->dimension;
    const double w = 1.0 / (8.0 * d);

    // Candidate factors: midpoints between consecutive critical values of
    // lambda, where the sets at the window edges or center change.
    std::set<double> critical{lo, hi};
    const auto& sr = node_->sorted_radii;
    const double scaled_lo = lo * (1.0 - w) * 0.5;
    const double scaled_hi = hi * (1.0 + w) * 2.0;
    auto begin = std::lower_bound(sr.begin(), sr.end(), scaled_lo);
    auto end = std::upper_bound(sr.begin(), sr.end(), scaled_hi);
    for (auto it = begin; it != end; ++it) {
        const double r = *it;
        for (double s : {1.0 - w, 1.0, 1.0 + w}) {
            const double lam = r / s;
            if (lam > lo && lam < hi) critical.insert(lam);
        }
    }
    std::vector<double> candidates;
    candidates.push_back(lo);
    {
        double prev = lo;
        for (double c : critical) {
            if (c > prev + 1e-15) {
                candidates.push_back(0.5 * (prev + c));
                prev = c;
            }
        }
    }
    // safety grid; the breakpoint candidates already cover the cell structure
    for (int k = 0; k < 64; ++k)
        candidates.push_back(lo + (hi - lo) * (static_cast<double>(k) + 0.5) / 64.0);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (double lam : candidates) {
        if (lam < lo || lam >= hi) continue;
        if (regular_at_scale(lam)) return {lam, dilate(lam)};
    }
    // fine sweep before giving up
    for (int k = 0; k < 4096; ++k) {
        const double lam = lo + (hi - lo) * (static_cast<double>(k) + 0.5) / 4096.0;
        if (regular_at_scale(lam)) return {lam, dilate(lam)};
    }
    throw std::runtime_error("no regular dilate found; this contradicts the existence guarantee");
}

bool BourgainSystem::subsystem_of(const BourgainSystem& outer, double eta) const {
    if (group() != outer.group()) return false;
    const auto& inner_r = node_->radii;
    const auto& outer_r = outer.node_->radii;
    for (std::size_t i = 0; i < inner_r.size(); ++i) {
        if (inner_r[i] == kInf) continue;
        if (outer_r[i] > eta * inner_r[i] * (1.0 + 1e-9) + 1e-15) return false;
    }
    return true;
}

std::string BourgainSystem::describe() const {
    std::ostringstream os;
    switch (node_->rule) {
        case SystemRule::trivial:
            os << "trivial(g=" << node_->group.to_string() << ")";
            break;
        case SystemRule::bohr: {
            os << "bohr(g=" << node_->group.to_string() << "; freqs=";
            for (std::size_t i = 0; i < node_->bohr.frequencies.size(); ++i) {
                if (i) os << ',';
                os << node_->bohr.frequencies[i];
            }
            os << "; delta=" << node_->bohr.delta << ")";
            break;
        }
        case SystemRule::dilate:
            os << "dilate(" << node_->lambda << ", "
               << BourgainSystem(node_->children[0]).describe() << ")";
            break;
        case SystemRule::double_image:
            os << "double(" << BourgainSystem(node_->children[0]).describe() << ")";
            break;
        case SystemRule::intersect: {
            os << "intersect(";
            for (std::size_t i = 0; i < node_->children.size(); ++i) {
                if (i) os << "; ";
                os << BourgainSystem(node_->children[i]).describe();
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

std::vector<Index> greedy_cover(const GSet& target, const GSet& tile) {
    std::vector<Index> picks;
    GSet uncovered = target;
    const auto tile_members = tile.members();
    while (!uncovered.empty()) {
        const Index p = uncovered.first();
        picks.push_back(p);
        for (Index t : tile_members) uncovered.erase(target.group().add(p, t));
    }
    return picks;
}

std::vector<double> default_rho_grid() {
    return {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0};
}

AxiomCertificate verify_axioms(const BourgainSystem& s, const std::vector<double>& rho_grid) {
    return verify_axioms_fn(
        s.group(), [&](double rho) { return s.materialize(rho); }, s.dimension(), rho_grid);
}

AxiomCertificate verify_axioms_fn(const Group& group,
                                  const std::function<GSet(double)>& family,
                                  double dimension, const std::vector<double>& rho_grid) {
    AxiomCertificate cert;
    std::vector<double> grid = rho_grid;
    std::sort(grid.begin(), grid.end());

    std::vector<GSet> sets;
    sets.reserve(grid.size());
    for (double r : grid) sets.push_back(family(r));

    cert.nesting_ok = true;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!sets[i].subset_of(sets[i + 1])) {
            cert.nesting_ok = false;
            cert.failure = "nesting fails between rho=" + std::to_string(grid[i]) + " and " +
                           std::to_string(grid[i + 1]);
            return cert;
        }
    }

    cert.zero_ok = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!sets[i].contains(0)) {
            cert.zero_ok = false;
            cert.failure = "zero missing at rho=" + std::to_string(grid[i]);
            return cert;
        }
    }

    cert.symmetry_ok = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (Index x : sets[i].members()) {
            if (!sets[i].contains(group.negate(x))) {
                cert.symmetry_ok = false;
                cert.failure = "symmetry fails at rho=" + std::to_string(grid[i]) +
                               " element " + std::to_string(x);
                return cert;
            }
        }
    }

    cert.addition_ok = true;
    for (std::size_t i = 0; i < grid.size() && cert.addition_ok; ++i) {
        for (std::size_t j = i; j < grid.size() && cert.addition_ok; ++j) {
            const double sum = grid[i] + grid[j];
            if (sum > 1.0 + 1e-12) continue;
            const GSet target = family(sum);
            for (Index x : sets[i].members()) {
                for (Index y : sets[j].members()) {
                    if (!target.contains(group.add(x, y))) {
                        cert.addition_ok = false;
                        cert.failure = "addition fails at rho=" + std::to_string(grid[i]) +
                                       "+" + std::to_string(grid[j]);
                        break;
                    }
                }
                if (!cert.addition_ok) break;
            }
        }
    }
    if (!cert.addition_ok) return cert;

    cert.doubling_ok = true;
    const double budget = std::pow(2.0, dimension);
    for (double r : grid) {
        if (r > 1.0 + 1e-12) continue;
        const GSet big = family(2.0 * r);
        const GSet small = family(r);
        auto witness = greedy_cover(big, small);
        const double used = static_cast<double>(witness.size());
        cert.doubling_witness[r] = std::move(witness);
        if (used > budget + 1e-9) {
            cert.doubling_ok = false;
            cert.failure = "doubling cover at rho=" + std::to_string(r) + " uses " +
                           std::to_string(cert.doubling_witness[r].size()) + " translates";
            return cert;
        }
    }
    return cert;
}

} // namespace blab
