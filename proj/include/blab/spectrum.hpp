#pragma once

#include "blab/bohr.hpp"
#include "blab/fourier.hpp"
#include "blab/sets.hpp"

#include <vector>

namespace blab {

// A set of characters, stored by flat dual index.
struct SpectrumSet {
    Group group;
    std::vector<Index> members;

    bool contains(Index g) const;
    std::size_t size() const { return members.size(); }
};

// {gamma : |1_A^(gamma)| >= eps * alpha} with alpha = |A|/|G|.
SpectrumSet large_spectrum(const GSet& a, double eps);

// All signed sums sum sigma_i gamma_i with sigma in {-1,0,1}^Gamma.
// Enumeration budget |Gamma| <= 20.
SpectrumSet span_cube(const SpectrumSet& gamma);

// No nonempty {-1,0,1} combination vanishes.
bool is_dissociated(const SpectrumSet& gamma);

struct DissociatedBasis {
    SpectrumSet basis;        // Gamma, greedy maximal dissociated subset
    bool spans = false;       // Lambda inside span_cube(Gamma)
    bool size_ok = false;     // |Gamma| <= 2 eps^-2 ln(1/alpha)
    double size_bound = 0.0;
};

// Greedy extraction in decreasing |1_A^| order (ties by flat index);
// checks both structure claims against the input spectrum.
DissociatedBasis dissociated_basis(const SpectrumSet& lambda, const GSet& a, double eps);

struct BogolioubovReport {
    BourgainSystem system;      // regular
    double alpha = 0.0;
    double k = 1.0;             // doubling bound used
    std::size_t gamma_size = 0;
    double dim = 0.0;
    double dim_bound = 0.0;     // 32 K ln(1/alpha)
    double density = 0.0;
    double density_log_bound = 0.0; // log of the stated floor
    double sup_density = 0.0;   // ||1_A * beta||_inf
    double sup_bound = 0.0;     // 1/(2K)
    bool dim_ok = false;
    bool density_ok = false;
    bool sup_ok = false;
};

// Builds a regular Bourgain system on which a small-doubling set is dense:
// Chang basis at parameter sqrt(eps/3) with eps = 1/2K, Bohr set of radius
// eps / 64(1+|Gamma|), then a regular dilate; measures all three bounds.
BogolioubovReport bogolioubov_chang(const GSet& a, const Rational& k);

} // namespace blab
