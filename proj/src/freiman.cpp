#include "blab/freiman.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace blab {

std::int64_t space_add(const AdditiveSpace& s, std::int64_t a, std::int64_t b) {
    if (std::holds_alternative<ZLine>(s)) return a + b;
    const Group& g = std::get<Group>(s);
    return static_cast<std::int64_t>(g.add(static_cast<Index>(a), static_cast<Index>(b)));
}

std::int64_t space_double(const AdditiveSpace& s, std::int64_t a) {
    return space_add(s, a, a);
}

PointMap PointMap::inverse() const {
    PointMap inv{codomain, domain, {}};
    inv.pairs.reserve(pairs.size());
    for (const auto& [src, dst] : pairs) inv.pairs.emplace_back(dst, src);
    return inv;
}

PointMap PointMap::identity_on(const AdditiveSpace& s, const std::vector<std::int64_t>& pts) {
    PointMap m{s, s, {}};
    for (std::int64_t p : pts) m.pairs.emplace_back(p, p);
    return m;
}

PointMap PointMap::interval_embedding(const ZSet& a) {
    const IntervalEmbedding emb = embed_interval(a);
    PointMap m{ZLine{}, emb.image.group(), {}};
    for (std::int64_t v : a.elements())
        m.pairs.emplace_back(v, v + emb.offset);
    return m;
}

namespace {

void check_budget(const PointMap& phi, std::size_t budget) {
    if (phi.pairs.size() > budget)
        throw std::invalid_argument("quadruple verification budget exceeded");
    std::unordered_set<std::int64_t> seen;
    for (const auto& [src, dst] : phi.pairs)
        if (!seen.insert(src).second)
            throw std::invalid_argument("source point mapped twice");
}

} // namespace

bool is_freiman_hom(const PointMap& phi, std::size_t budget) {
    check_budget(phi, budget);
    // group pairs by source sum; all image sums within a class must agree
    std::unordered_map<std::int64_t, std::int64_t> class_image;
    for (const auto& [s1, t1] : phi.pairs) {
        for (const auto& [s2, t2] : phi.pairs) {
            const std::int64_t key = space_add(phi.domain, s1, s2);
            const std::int64_t img = space_add(phi.codomain, t1, t2);
            auto [it, fresh] = class_image.emplace(key, img);
            if (!fresh && it->second != img) return false;
        }
    }
    return true;
}

bool is_freiman_iso(const PointMap& phi, std::size_t budget) {
    check_budget(phi, budget);
    std::unordered_set<std::int64_t> targets;
    for (const auto& [src, dst] : phi.pairs)
        if (!targets.insert(dst).second) return false;
    return is_freiman_hom(phi, budget) && is_freiman_hom(phi.inverse(), budget);
}

std::int64_t count_ap3_points(const AdditiveSpace& s, const std::vector<std::int64_t>& pts) {
    std::unordered_map<std::int64_t, std::int64_t> doubled; // 2b -> multiplicity
    for (std::int64_t b : pts) ++doubled[space_double(s, b)];
    std::int64_t total = 0;
    for (std::int64_t a : pts) {
        for (std::int64_t c : pts) {
            auto it = doubled.find(space_add(s, a, c));
            if (it != doubled.end()) total += it->second;
        }
    }
    // the all-equal triples are exactly one per point
    return total - static_cast<std::int64_t>(pts.size());
}

bool ap3_transfer_check(const PointMap& phi, std::size_t budget) {
    if (!is_freiman_iso(phi, budget))
        throw std::invalid_argument("progression transfer needs an isomorphism");
    std::vector<std::int64_t> dom, cod;
    dom.reserve(phi.pairs.size());
    cod.reserve(phi.pairs.size());
    std::unordered_map<std::int64_t, std::int64_t> fwd;
    for (const auto& [s, t] : phi.pairs) {
        dom.push_back(s);
        cod.push_back(t);
        fwd[s] = t;
    }
    if (count_ap3_points(phi.domain, dom) != count_ap3_points(phi.codomain, cod)) return false;

    // every domain progression must land on a progression
    std::unordered_set<std::int64_t> dom_doubles;
    for (std::int64_t b : dom) dom_doubles.insert(space_double(phi.domain, b));
    for (std::int64_t a : dom) {
        for (std::int64_t c : dom) {
            for (std::int64_t b : dom) {
                if (space_add(phi.domain, a, c) != space_double(phi.domain, b)) continue;
                if (space_add(phi.codomain, fwd[a], fwd[c]) !=
                    space_double(phi.codomain, fwd[b]))
                    return false;
            }
        }
    }
    return true;
}

bool points_have_order2_difference(const AdditiveSpace& s,
                                   const std::vector<std::int64_t>& pts) {
    if (std::holds_alternative<ZLine>(s)) return false;
    for (std::int64_t a : pts)
        for (std::int64_t b : pts)
            if (a != b && space_double(s, a) == space_double(s, b)) return true;
    return false;
}

} // namespace blab
