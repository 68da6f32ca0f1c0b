#pragma once

#include "blab/group.hpp"

#include <vector>

namespace blab {

// Dense complex table over a group, indexed by flat element index.
// Carries indicators, densities and arbitrary test functions.
class GFunction {
public:
    explicit GFunction(Group g)
        : group_(std::move(g)), values_(group_.size(), cplx{0.0, 0.0}) {}
    GFunction(Group g, std::vector<cplx> values);

    const Group& group() const { return group_; }
    std::uint64_t size() const { return group_.size(); }

    cplx& operator[](std::uint64_t i) { return values_[i]; }
    const cplx& operator[](std::uint64_t i) const { return values_[i]; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    static GFunction constant(const Group& g, cplx v);

    double sup_norm() const;           // max |f(x)|
    double l1_mean() const;            // (1/|G|) sum |f(x)|
    cplx mean() const;                 // (1/|G|) sum f(x)

private:
    Group group_;
    std::vector<cplx> values_;
};

// Same table shape, indexed by flat character index.
class SpectrumFunction {
public:
    explicit SpectrumFunction(Group g)
        : group_(std::move(g)), values_(group_.size(), cplx{0.0, 0.0}) {}
    SpectrumFunction(Group g, std::vector<cplx> values);

    const Group& group() const { return group_; }
    std::uint64_t size() const { return group_.size(); }

    cplx& operator[](std::uint64_t i) { return values_[i]; }
    const cplx& operator[](std::uint64_t i) const { return values_[i]; }
    const std::vector<cplx>& values() const { return values_; }

private:
    Group group_;
    std::vector<cplx> values_;
};

// f^(gamma) = (1/|G|) sum_x f(x) conj(gamma(x)). Axis-at-a-time fast path,
// O(|G| log |G|) per axis.
SpectrumFunction fourier_transform(const GFunction& f);

// Direct-sum reference; quadratic, kept as the oracle for the fast path.
SpectrumFunction fourier_transform_reference(const GFunction& f);

// f(x) = sum_gamma F(gamma) gamma(x).
GFunction inverse_transform(const SpectrumFunction& F);

// (f*g)(y) = (1/|G|) sum_x f(y-x) g(x), computed spectrally.
GFunction convolve(const GFunction& f, const GFunction& g);
GFunction convolve_reference(const GFunction& f, const GFunction& g);

// <f,g> = (1/|G|) sum_x f(x) conj(g(x)).
cplx inner_product(const GFunction& f, const GFunction& g);

// All character values at a fixed point: out[gamma] = gamma(x). One
// transform of a point mass, so O(|G| log |G|) instead of |G| evaluations.
std::vector<cplx> character_column(const Group& g, Index x);

} // namespace blab
