#include "blab/freiman.hpp"
#include "blab/rng.hpp"
#include "blab/verify.hpp"

#include <doctest.h>

using namespace blab;

TEST_CASE("translations are isomorphisms") {
    const Group g({20});
    const std::vector<std::int64_t> pts{0, 3, 7, 11};
    PointMap phi{Group(g), Group(g), {}};
    for (std::int64_t p : pts) phi.pairs.emplace_back(p, g.add(static_cast<Index>(p), 5));
    CHECK(is_freiman_hom(phi));
    CHECK(is_freiman_iso(phi));
    CHECK(ap3_transfer_check(phi));
    CHECK(is_freiman_iso(PointMap::identity_on(Group(g), pts)));
}

TEST_CASE("a collapsing map breaks a quadruple") {
    PointMap phi{ZLine{}, ZLine{}, {{0, 0}, {1, 0}, {2, 1}}};
    CHECK_FALSE(is_freiman_hom(phi)); // 0 + 2 = 1 + 1 but 0 + 1 != 0 + 0
    CHECK_FALSE(is_freiman_iso(phi)); // and it is not injective either
}

TEST_CASE("reduction with room is a homomorphism") {
    // x mod M keeps all additive quadruples when M exceeds twice the diameter
    const ZSet z({0, 2, 5, 9});
    const PointMap phi = PointMap::interval_embedding(z);
    CHECK(is_freiman_hom(phi));
    CHECK(is_freiman_iso(phi));
    CHECK(std::get<Group>(phi.codomain).size() == 19);

    // reduction is always a forward homomorphism, but a tight modulus
    // folds distinct sums together and the inverse stops being one
    PointMap tight{ZLine{}, Group({10}), {}};
    for (std::int64_t v : z.elements()) tight.pairs.emplace_back(v, v % 10);
    CHECK(is_freiman_hom(tight));
    CHECK_FALSE(is_freiman_iso(tight)); // 5 + 5 = 10 lands on 0 + 0
}

TEST_CASE("progression transfer over embeddings") {
    for (std::int64_t n : {10, 21, 34}) {
        const ZSet z = gen_greedy_apfree(n);
        const PointMap phi = PointMap::interval_embedding(z);
        CHECK(is_freiman_iso(phi));
        CHECK(ap3_transfer_check(phi));
    }
    // a set with progressions transfers its count too
    const ZSet z({0, 1, 2, 4});
    const PointMap phi = PointMap::interval_embedding(z);
    CHECK(ap3_transfer_check(phi));
    std::vector<std::int64_t> dom;
    for (const auto& pr : phi.pairs) dom.push_back(pr.first);
    CHECK(count_ap3_points(phi.domain, dom) == 4); // (0,1,2), (0,2,4) and reversals
}

TEST_CASE("composition of isomorphisms") {
    const ZSet z = gen_greedy_apfree(16);
    const PointMap first = PointMap::interval_embedding(z);
    const Group g = std::get<Group>(first.codomain);
    PointMap second{Group(g), Group(g), {}};
    for (const auto& pr : first.pairs)
        second.pairs.emplace_back(pr.second, g.add(static_cast<Index>(pr.second), 3));
    PointMap composed{first.domain, second.codomain, {}};
    for (std::size_t i = 0; i < first.pairs.size(); ++i)
        composed.pairs.emplace_back(first.pairs[i].first, second.pairs[i].second);
    CHECK(is_freiman_iso(composed));
    CHECK(ap3_transfer_check(composed));
}

TEST_CASE("order-2 differences travel along isomorphisms") {
    const Group g({8});
    const std::vector<std::int64_t> with{1, 5}; // differ by 4, which has order 2
    CHECK(points_have_order2_difference(Group(g), with));
    const std::vector<std::int64_t> without{1, 2};
    CHECK_FALSE(points_have_order2_difference(Group(g), without));
    CHECK_FALSE(points_have_order2_difference(ZLine{}, {3, 9}));

    PointMap phi{Group(g), Group(g), {}};
    for (std::int64_t p : with) phi.pairs.emplace_back(p, g.add(static_cast<Index>(p), 2));
    REQUIRE(is_freiman_iso(phi));
    std::vector<std::int64_t> img;
    for (const auto& pr : phi.pairs) img.push_back(pr.second);
    CHECK(points_have_order2_difference(phi.codomain, img));
}

TEST_CASE("budget guard") {
    PointMap phi{ZLine{}, ZLine{}, {}};
    for (std::int64_t i = 0; i < 100; ++i) phi.pairs.emplace_back(i, i);
    CHECK_THROWS_AS(is_freiman_hom(phi, 64), std::invalid_argument);
    CHECK(is_freiman_hom(phi, 128));
    PointMap dup{ZLine{}, ZLine{}, {{1, 1}, {1, 2}}};
    CHECK_THROWS_AS(is_freiman_hom(dup), std::invalid_argument);
}
