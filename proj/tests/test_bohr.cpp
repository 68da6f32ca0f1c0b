#include "blab/bohr.hpp"
#include "blab/parse.hpp"
#include "blab/rng.hpp"
#include "blab/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace blab;

TEST_CASE("bohr materialization pinned on Z8") {
    const Group g({8});
    const BourgainSystem s = BourgainSystem::bohr(g, BohrDescriptor{{1}, 0.25});
    const GSet b = s.materialize(1.0);
    CHECK(b.size() == 5);
    for (Index x : {0, 1, 2, 6, 7}) CHECK(b.contains(static_cast<Index>(x)));
    CHECK(s.density() == doctest::Approx(5.0 / 8.0));
    CHECK(s.dimension() == 2.0);

    CHECK(s.entry_radius(0) == 0.0);
    CHECK(s.entry_radius(2) == doctest::Approx(1.0).epsilon(1e-12));
    const BourgainSystem half = s.dilate(0.5);
    CHECK(half.entry_radius(2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("trivial system") {
    const Group g({12});
    const BourgainSystem t = BourgainSystem::trivial(g);
    CHECK(t.density() == 1.0);
    CHECK(t.materialize(0.001) == GSet::full(g));
    CHECK(t.is_regular());
    for (Index x = 0; x < g.size(); ++x) CHECK(t.entry_radius(x) == 0.0);
}

TEST_CASE("membership matches entry radius") {
    auto rng = named_stream(9, "entry");
    const Group g({36});
    const BourgainSystem s = random_bohr_system(rng, g, 2);
    for (double rho : {0.2, 0.5, 1.0, 1.7}) {
        const GSet b = s.materialize(rho);
        for (Index x = 0; x < g.size(); ++x)
            CHECK(b.contains(x) == (s.entry_radius(x) <= rho * (1 + 1e-12)));
    }
}

TEST_CASE("dilate composes and rescales materializations") {
    const Group g({32});
    const BourgainSystem s = BourgainSystem::bohr(g, BohrDescriptor{{3}, 0.4});
    const BourgainSystem d1 = s.dilate(1.0);
    CHECK(d1.materialize(0.7) == s.materialize(0.7));
    const BourgainSystem q = s.dilate(0.5).dilate(0.5);
    const BourgainSystem q2 = s.dilate(0.25);
    for (double rho : {0.3, 1.0, 2.0}) CHECK(q.materialize(rho) == q2.materialize(rho));
    CHECK(s.dilate(0.5).materialize(1.0) == s.materialize(0.5));
    CHECK_THROWS_AS(s.dilate(0.0), std::invalid_argument);
    CHECK_THROWS_AS(s.dilate(1.5), std::invalid_argument);
}

TEST_CASE("doubled system on Z8") {
    const Group g({8});
    const BourgainSystem s = BourgainSystem::bohr(g, BohrDescriptor{{1}, 0.25});
    const GSet twice = s.double_system().materialize(1.0);
    GSet expect(g);
    for (Index x : s.materialize(1.0).members()) expect.insert(g.dbl(x));
    CHECK(twice == expect);
    CHECK(twice.size() == 4); // {0,2,4,6}
    // odd order keeps the size
    const Group h({9});
    const BourgainSystem sh = BourgainSystem::bohr(h, BohrDescriptor{{1}, 0.3});
    CHECK(sh.double_system().materialize(1.0).size() == sh.materialize(1.0).size());
}

TEST_CASE("intersection is pointwise with a doubled ledger") {
    const Group g({24});
    const BourgainSystem s1 = BourgainSystem::bohr(g, BohrDescriptor{{1}, 0.3});
    const BourgainSystem s2 = BourgainSystem::bohr(g, BohrDescriptor{{5}, 0.2});
    const BourgainSystem both = BourgainSystem::intersect({s1, s2});
    CHECK(both.dimension() == 2.0 * (s1.dimension() + s2.dimension()));
    for (double rho : {0.4, 1.0, 2.0})
        CHECK(both.materialize(rho) == s1.materialize(rho).intersect(s2.materialize(rho)));
    // matching radii recover a two-frequency bohr set
    const BourgainSystem joint = BourgainSystem::bohr(g, BohrDescriptor{{1, 5}, 0.25});
    const BourgainSystem parts = BourgainSystem::intersect(
        {BourgainSystem::bohr(g, BohrDescriptor{{1}, 0.25}),
         BourgainSystem::bohr(g, BohrDescriptor{{5}, 0.25})});
    for (double rho : {0.5, 1.0}) CHECK(joint.materialize(rho) == parts.materialize(rho));
    CHECK_THROWS_AS(BourgainSystem::intersect({}), std::invalid_argument);
    // a singleton intersection keeps the sets; only the ledger doubles
    const BourgainSystem solo = BourgainSystem::intersect({s1});
    for (double rho : {0.4, 1.0, 2.0}) CHECK(solo.materialize(rho) == s1.materialize(rho));
    CHECK(solo.dimension() == 2.0 * s1.dimension());
}

TEST_CASE("axiom certificate on assorted systems") {
    auto rng = named_stream(21, "axioms");
    const auto grid = default_rho_grid();
    for (const Group& g : {Group({16}), Group({2, 9}), Group({45})}) {
        for (int i = 0; i < 4; ++i) {
            const BourgainSystem s = random_system(rng, g, 2);
            const AxiomCertificate cert = verify_axioms(s, grid);
            INFO(s.describe(), " -> ", cert.failure);
            CHECK(cert.all_ok());
            for (const auto& [rho, witness] : cert.doubling_witness)
                CHECK(static_cast<double>(witness.size()) <= std::pow(2.0, s.dimension()) + 1e-9);
        }
    }
}

TEST_CASE("corrupted families fail certification") {
    const Group g({16});
    const BourgainSystem s = BourgainSystem::bohr(g, BohrDescriptor{{1}, 0.3});
    const auto grid = default_rho_grid();

    // drop one non-symmetric element at the unit radius
    const auto asymmetric = [&](double rho) {
        GSet b = s.materialize(rho);
        if (rho >= 1.0 && b.contains(1)) b.erase(1);
        return b;
    };
    const AxiomCertificate broken = verify_axioms_fn(g, asymmetric, s.dimension(), grid);
    CHECK_FALSE(broken.all_ok());

    // remove zero everywhere
    const auto no_zero = [&](double rho) {
        GSet b = s.materialize(rho);
        b.erase(0);
        return b;
    };
    const AxiomCertificate hollow = verify_axioms_fn(g, no_zero, s.dimension(), grid);
    CHECK_FALSE(hollow.zero_ok);

    // the genuine family sails through the same path
    const AxiomCertificate fine = verify_axioms_fn(
        g, [&](double rho) { return s.materialize(rho); }, s.dimension(), grid);
    CHECK(fine.all_ok());
}

TEST_CASE("bohr density floor and covering budget") {
    auto rng = named_stream(33, "bohrsize");
    for (int i = 0; i < 20; ++i) {
        const Group g = random_group(rng, 512);
        const BourgainSystem s = random_bohr_system(rng, g, 3);
        const double nf = s.dimension() / 2.0; // bohr dimension is 2|freqs|
        CHECK(s.density() > 0.0);
        const auto cover = greedy_cover(s.materialize(2.0), s.materialize(1.0));
        CHECK(static_cast<double>(cover.size()) <= std::pow(4.0, nf) + 1e-9);
        // cover correctness: every point of the target is reached
        GSet covered(g);
        for (Index p : cover)
            for (Index t : s.materialize(1.0).members()) covered.insert(g.add(p, t));
        CHECK(s.materialize(2.0).subset_of(covered));
    }
}

TEST_CASE("regularity detects a jump at the unit radius") {
    // entry radii hit 1.0 exactly, so the count jumps right at the window center
    const Group g({16});
    const BourgainSystem s = BourgainSystem::bohr(g, BohrDescriptor{{1}, 2.0 / 16.0});
    CHECK(s.entry_radius(2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(s.is_regular());
    auto [lambda, reg] = s.regular_dilate();
    CHECK(lambda >= 0.5);
    CHECK(lambda < 1.0);
    CHECK(reg.is_regular());
}

TEST_CASE("regular dilate across random systems") {
    auto rng = named_stream(41, "regular");
    for (int i = 0; i < 25; ++i) {
        const Group g = random_group(rng, 512);
        const BourgainSystem s = random_system(rng, g, 2);
        auto [lambda, reg] = s.regular_dilate();
        CHECK(lambda >= 0.5);
        CHECK(lambda < 1.0);
        CHECK(reg.is_regular());
        // idempotent in the sense that the result stays regular
        auto [l2, reg2] = reg.regular_dilate();
        CHECK(reg2.is_regular());
    }
}

TEST_CASE("subsystem comparison via entry radii") {
    const Group g({40});
    const BourgainSystem s = BourgainSystem::bohr(g, BohrDescriptor{{1}, 0.3});
    CHECK(s.dilate(0.25).subsystem_of(s, 0.25));
    CHECK(s.dilate(0.2).subsystem_of(s, 0.25));
    CHECK_FALSE(s.dilate(0.5).subsystem_of(s, 0.25));
}

TEST_CASE("descriptor parsing") {
    const BourgainSystem s = parse_system("bohr(g=Z16; freqs=1,5; delta=0.2)");
    CHECK(s.group() == Group({16}));
    CHECK(s.dimension() == 4.0);
    const BourgainSystem d = parse_system("dilate(0.5, bohr(g=Z16; freqs=1; delta=0.25))");
    CHECK(d.materialize(1.0) ==
          BourgainSystem::bohr(Group({16}), BohrDescriptor{{1}, 0.25}).materialize(0.5));
    const BourgainSystem t = parse_system("trivial(g=Z2xZ3)");
    CHECK(t.density() == 1.0);
    const BourgainSystem n = parse_system(
        "intersect(bohr(g=Z16; freqs=1; delta=0.25); double(bohr(g=Z16; freqs=3; delta=0.5)))");
    CHECK(n.rule() == SystemRule::intersect);
    CHECK_THROWS_AS(parse_system("bohr(g=Z16)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_system("wedge(g=Z4)"), std::invalid_argument);
}
