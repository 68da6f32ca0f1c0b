#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace blab {

using cplx = std::complex<double>;

// Flat index into the mixed-radix box [0,n_1) x ... x [0,n_k).
// Elements and characters share this index space.
using Index = std::uint32_t;

// A finite abelian group presented as a product of cyclic factors.
// Immutable after construction; cheap to copy and safe to share.
class Group {
public:
    explicit Group(std::vector<std::int64_t> moduli);

    std::uint64_t size() const { return size_; }
    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::size_t factor_count() const { return moduli_.size(); }

    Index index_of(std::span<const std::int64_t> residues) const;
    std::vector<std::int64_t> residues_of(Index i) const;

    Index add(Index a, Index b) const;
    Index sub(Index a, Index b) const;
    Index negate(Index a) const;
    // x -> 2x componentwise; applied to character indices this is gamma -> 2*gamma.
    Index dbl(Index a) const;
    // All y with 2y = x (empty when x is not in the image of doubling).
    std::vector<Index> halvings(Index x) const;

    bool operator==(const Group& o) const { return moduli_ == o.moduli_; }
    bool operator!=(const Group& o) const { return !(*this == o); }

    std::string to_string() const;   // "Z4", "Z2xZ3", ...

    // Size budget for dense tables; BLAB_MAX_GROUP overrides the default 2^20.
    static std::uint64_t max_size();

private:
    std::vector<std::int64_t> moduli_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t size_;
};

// Value of the character with exponent vector gamma at the element x:
// exp(2*pi*i * sum_i gamma_i x_i / n_i). Unit modulus.
cplx char_eval(const Group& g, Index gamma, Index x);
cplx char_eval(const Group& g, std::span<const std::int64_t> gamma,
               std::span<const std::int64_t> x);

// Circle distance from 1: |arg z| / 2pi with arg in (-pi, pi], so the
// value lies in [0, 1/2]. Requires |z| = 1 up to 1e-9.
double valuation(cplx z);

// Parse a group literal such as "Z4", "Z2xZ3" or "F3^5" (case-insensitive,
// factors separated by 'x', '^' repeats a factor).
Group parse_group(std::string_view text);

} // namespace blab
