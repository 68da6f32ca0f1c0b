#pragma once

#include "blab/fourier.hpp"
#include "blab/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace blab {

// Reduced fraction with 64-bit parts; enough for cardinality ratios.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// Subset of a group: membership bitset over flat indices plus cardinality.
class GSet {
public:
    explicit GSet(Group g);
    GSet(Group g, const std::vector<Index>& members);

    const Group& group() const { return group_; }
    std::uint64_t universe() const { return group_.size(); }
    std::uint64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(Index i) const {
        return (bits_[i >> 6] >> (i & 63)) & 1u;
    }
    void insert(Index i);
    void erase(Index i);

    std::vector<Index> members() const;
    // Smallest member; only valid on a nonempty set.
    Index first() const;

    GSet intersect(const GSet& o) const;
    GSet unite(const GSet& o) const;
    GSet difference(const GSet& o) const;
    bool subset_of(const GSet& o) const;

    GSet translate(Index t) const;     // {x + t}
    GSet negate() const;               // {-x}
    GSet double_image() const;         // {2x}

    GFunction indicator() const;
    // (|G|/|A|) * 1_A; a probability density against the uniform measure.
    GFunction normalized_density() const;

    bool operator==(const GSet& o) const;

    static GSet full(const Group& g);

private:
    Group group_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t size_;
};

// Finite set of integers, strictly increasing.
class ZSet {
public:
    ZSet() = default;
    explicit ZSet(std::vector<std::int64_t> elements);

    const std::vector<std::int64_t>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    bool contains(std::int64_t v) const;

private:
    std::vector<std::int64_t> elems_;
};

GSet sumset(const GSet& a, const GSet& b);
// {x + y : x in a, y in b, x != y}
GSet restricted_sumset(const GSet& a, const GSet& b);
Rational doubling_constant(const GSet& a);

ZSet zset_sumset(const ZSet& a, const ZSet& b);

// Nonzero x with x + x = 0.
GSet order2_elements(const Group& g);
// True when some pair of distinct elements of a differs by an order-2 element.
bool has_order2_difference(const GSet& a);

enum class Lambda3Method { direct, fourier };

// (1/|G|^2) sum_{x,y} f(x-y) g(x) h(x+y); the spectral route evaluates
// sum_gamma f^(gamma) g^(-2 gamma) h^(gamma).
cplx lambda3(const GFunction& f, const GFunction& g, const GFunction& h,
             Lambda3Method method);

struct Ap3Count {
    std::int64_t total = 0;      // pairs (x,y) with x-y, x, x+y all in A
    std::int64_t nontrivial = 0; // those with y != 0
};

// Counts via |G|^2 * lambda3 on the indicator; fails if the scaled value
// strays from an integer by more than tol.
Ap3Count count_ap3(const GSet& a, double tol = 1e-6);
Ap3Count count_ap3_bruteforce(const GSet& a);
bool is_ap3_free(const GSet& a);

std::int64_t count_ap3_nontrivial_z(const ZSet& a);
bool is_ap3_free_z(const ZSet& a);

struct RestrictedCore {
    GSet core;           // S = {a in A^B without an off-diagonal representation of 2a}
    bool identity_holds; // (A+B) \ (A ^+ B) == {2s : s in S}
};

RestrictedCore restricted_core(const GSet& a, const GSet& b);

// One representative per doubling fiber of S (smallest flat index wins),
// so the doubling map restricted to the result is a bijection onto 2S.
GSet select_core_representatives(const GSet& s);

// Greedy progression-free subset of [0, n): scan 0,1,2,... and keep any
// value that closes no 3-term progression.
ZSet gen_greedy_apfree(std::int64_t n);

// Sphere construction: base-(2d-1) digit vectors on a fixed digit-norm
// shell; convexity leaves no progressions. Parameters chosen per n by
// maximizing the shell size over a small grid.
ZSet gen_behrend(std::int64_t n);

struct IntervalEmbedding {
    GSet image;          // subset of Z/M, M = 2*diam + 1
    std::int64_t offset; // translation applied before reduction
};

IntervalEmbedding embed_interval(const ZSet& a);

// Comma-separated integer I/O used by the CLI (one set per line).
std::string format_indices(const std::vector<Index>& v);
std::string format_zset(const ZSet& a);
std::vector<std::int64_t> parse_int_list(std::string_view text);

} // namespace blab
