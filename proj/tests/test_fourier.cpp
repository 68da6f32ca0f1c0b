#include "blab/fourier.hpp"
#include "blab/rng.hpp"
#include "blab/sets.hpp"

#include <doctest.h>

#include <cmath>

using namespace blab;

namespace {
GFunction random_f(std::mt19937_64& rng, const Group& g) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GFunction f(g);
    for (std::uint64_t i = 0; i < g.size(); ++i) f[i] = cplx{u(rng), u(rng)};
    return f;
}
} // namespace

TEST_CASE("transform of constants and point masses") {
    const Group g({12});
    const SpectrumFunction ch = fourier_transform(GFunction::constant(g, cplx{1, 0}));
    CHECK(std::abs(ch[0] - cplx{1, 0}) < 1e-12);
    for (Index i = 1; i < g.size(); ++i) CHECK(std::abs(ch[i]) < 1e-12);

    GFunction point(g);
    point[0] = cplx{static_cast<double>(g.size()), 0};
    const SpectrumFunction ph = fourier_transform(point);
    for (Index i = 0; i < g.size(); ++i) CHECK(std::abs(ph[i] - cplx{1, 0}) < 1e-12);
}

TEST_CASE("two point group indicator") {
    const Group g({2});
    GSet a(g);
    a.insert(1);
    const SpectrumFunction h = fourier_transform(a.indicator());
    CHECK(h[0].real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(h[1].real() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("inverse transform of spectral point masses") {
    const Group g({9});
    SpectrumFunction F(g);
    F[0] = cplx{1, 0};
    const GFunction f = inverse_transform(F);
    for (Index x = 0; x < g.size(); ++x) CHECK(std::abs(f[x] - cplx{1, 0}) < 1e-12);

    SpectrumFunction all = fourier_transform(GFunction::constant(g, cplx{0, 0}));
    for (Index i = 0; i < g.size(); ++i) all[i] = cplx{1, 0};
    const GFunction point = inverse_transform(all);
    CHECK(std::abs(point[0] - cplx{9, 0}) < 1e-10);
    for (Index x = 1; x < g.size(); ++x) CHECK(std::abs(point[x]) < 1e-10);
}

TEST_CASE("round trip on an awkward size") {
    auto rng = named_stream(17, "roundtrip");
    for (const Group& g : {Group({12}), Group({97}), Group({60}), Group({2, 3, 25})}) {
        const GFunction f = random_f(rng, g);
        const GFunction back = inverse_transform(fourier_transform(f));
        for (std::uint64_t x = 0; x < g.size(); ++x) CHECK(std::abs(back[x] - f[x]) < 1e-9);
    }
}

TEST_CASE("fast path equals reference on assorted groups") {
    auto rng = named_stream(5, "fastref");
    for (const Group& g :
         {Group({2}), Group({3}), Group({16}), Group({17}), Group({24}), Group({5, 5}),
          Group({2, 9}), Group({101}), Group({128}), Group({3, 4, 7})}) {
        const GFunction f = random_f(rng, g);
        const SpectrumFunction fast = fourier_transform(f);
        const SpectrumFunction ref = fourier_transform_reference(f);
        for (std::uint64_t i = 0; i < g.size(); ++i) CHECK(std::abs(fast[i] - ref[i]) < 1e-9);
    }
}

TEST_CASE("transform is linear") {
    auto rng = named_stream(7, "linear");
    const Group g({40});
    const GFunction f = random_f(rng, g), h = random_f(rng, g);
    const cplx a{0.7, -0.3}, b{-1.1, 0.25};
    GFunction mix(g);
    for (std::uint64_t i = 0; i < g.size(); ++i) mix[i] = a * f[i] + b * h[i];
    const SpectrumFunction lhs = fourier_transform(mix);
    const SpectrumFunction fh = fourier_transform(f), hh = fourier_transform(h);
    for (std::uint64_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(lhs[i] - (a * fh[i] + b * hh[i])) < 1e-10);
}

TEST_CASE("convolution basics") {
    const Group g({10});
    GSet a(g);
    a.insert(3);
    a.insert(4);
    // averaging against the constant gives the density
    const GFunction avg = convolve(a.indicator(), GFunction::constant(g, cplx{1, 0}));
    for (std::uint64_t x = 0; x < g.size(); ++x)
        CHECK(avg[x].real() == doctest::Approx(0.2).epsilon(1e-10));

    GFunction pa(g), pb(g);
    pa[2] = cplx{1, 0};
    pb[5] = cplx{1, 0};
    const GFunction pc = convolve(pa, pb);
    CHECK(pc[7].real() == doctest::Approx(0.1).epsilon(1e-10));
    double mass = 0;
    for (std::uint64_t x = 0; x < g.size(); ++x) mass += std::abs(pc[x]);
    CHECK(mass == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("convolution value pinned by hand") {
    const Group g({3});
    GSet a(g);
    a.insert(0);
    a.insert(1);
    const GFunction c = convolve(a.indicator(), a.indicator());
    CHECK(c[1].real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const GFunction ref = convolve_reference(a.indicator(), a.indicator());
    for (Index x = 0; x < 3; ++x) CHECK(std::abs(c[x] - ref[x]) < 1e-12);
}

TEST_CASE("parseval inner product") {
    auto rng = named_stream(31, "parseval");
    const Group g({2, 5});
    const GFunction f = random_f(rng, g), h = random_f(rng, g);
    const SpectrumFunction fh = fourier_transform(f), hh = fourier_transform(h);
    cplx spectral{0, 0};
    for (std::uint64_t i = 0; i < g.size(); ++i) spectral += fh[i] * std::conj(hh[i]);
    CHECK(std::abs(inner_product(f, h) - spectral) < 1e-9);
    CHECK(std::abs(inner_product(f, GFunction(g))) < 1e-12);

    GSet a(g);
    a.insert(1);
    a.insert(4);
    a.insert(7);
    CHECK(inner_product(a.indicator(), a.indicator()).real() ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("group mismatch is rejected") {
    const GFunction f(Group({4}));
    const GFunction h(Group({5}));
    CHECK_THROWS_AS(convolve(f, h), std::invalid_argument);
    CHECK_THROWS_AS(inner_product(f, h), std::invalid_argument);
}

TEST_CASE("translation modulates the spectrum") {
    auto rng = named_stream(13, "shiftmod");
    const Group g({5, 7});
    const GFunction f = random_f(rng, g);
    for (Index t : {Index{1}, Index{12}, Index{34}}) {
        GFunction shifted(g);
        for (Index x = 0; x < g.size(); ++x) shifted[x] = f[g.sub(x, t)];
        const SpectrumFunction lhs = fourier_transform(shifted);
        const SpectrumFunction fh = fourier_transform(f);
        for (Index gamma = 0; gamma < g.size(); ++gamma)
            CHECK(std::abs(lhs[gamma] - std::conj(char_eval(g, gamma, t)) * fh[gamma]) < 1e-10);
    }
}

TEST_CASE("character columns match direct evaluation") {
    const Group g({6, 5});
    for (Index x : {Index{0}, Index{7}, Index{29}}) {
        const auto col = character_column(g, x);
        for (Index gamma = 0; gamma < g.size(); gamma += 3)
            CHECK(std::abs(col[gamma] - char_eval(g, gamma, x)) < 1e-10);
    }
}
