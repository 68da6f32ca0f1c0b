#pragma once

#include "blab/bohr.hpp"
#include "blab/fourier.hpp"
#include "blab/sets.hpp"

#include <vector>

namespace blab {

// Normalized counting measure on B_rho, carried as the density
// (|G|/|B_rho|) * 1_(B_rho) against the uniform measure; total mass 1.
struct LocalMeasure {
    BourgainSystem system;
    double rho;
    GSet support;
    GFunction density;

    static LocalMeasure at(const BourgainSystem& s, double rho);
};

// Mean of a function against beta: (1/|B|) sum_(x in B) f(x).
cplx beta_mean(const GFunction& f, const GSet& support);
double beta_l1(const GFunction& f, const GSet& support);
double beta_l2(const GFunction& f, const GSet& support);

// Total-variation distance ||(y + beta) - beta|| = |B xor (y+B)| / |B|.
// Requires a regular system and y in B_eta; the bound 16 d eta is asserted.
double haar_defect(const BourgainSystem& s, Index y, double eta);

// max over x in G and y in B_eta of |f*beta(x+y) - f*beta(x)|;
// asserted <= 16 ||f||_inf d eta.
double smoothing_defect(const BourgainSystem& s, const GFunction& f, double eta);

// Checks {gamma : |beta^(gamma)| >= kappa} is contained in
// {gamma : |1 - gamma(x)| <= 16 d eta / kappa for all x in B_eta}.
bool spectral_containment(const BourgainSystem& s, double kappa, double eta);

struct CotlarSides {
    double lhs; // sum_j |<v, w_j>|^2
    double rhs; // <v,v> * max_j sum_i |<w_i, w_j>|
};

CotlarSides cotlar_check(const std::vector<cplx>& v,
                         const std::vector<std::vector<cplx>>& ws);

struct LocalBesselResult {
    explicit LocalBesselResult(BourgainSystem base) : refined(std::move(base)) {}

    std::vector<Index> big_spectrum;      // Delta
    std::vector<Index> separated;         // Lambda, greedy maximal
    BourgainSystem refined;               // B' = intersect(induced, S)
    bool containment_ok = true;           // Delta inside the phase cone over B'_eta
    bool separation_ok = true;            // distinct picks never differ by the S-set
    double l_ratio = 1.0;                 // L_f = ||f||_L2(beta) / ||f||_L1(beta)
    double lambda_budget = 0.0;           // 2 eps^-2 L_f^2
    double density_floor = 0.0;           // 4^-(d + 2 eps^-2 L_f^2) * density(S)
    bool size_ok = true;
    bool density_ok = true;
};

// Almost-orthogonality construction: threshold spectrum of f d(beta),
// greedy separated subset, Bohr refinement, and the containment and size
// bounds that come with it. eps in (0,1]; f must not vanish on B.
LocalBesselResult local_bessel(const GFunction& f, const BourgainSystem& s, double eps);

struct L2IncrementResult {
    double alpha = 0.0;        // 1_A * beta at 0
    double eta = 0.0;          // c alpha / 2^10 (1+d)
    bool subsystem_ok = false; // S' inside eta S
    double energy = 0.0;       // sum over Lambda of |((1_A - alpha) 1_B)^|^2
    double energy_floor = 0.0; // c alpha^2 mu(B)
    bool hypothesis = false;
    double sup_density = 0.0;  // ||1_A * beta'||_inf
    double sup_floor = 0.0;    // alpha (1 + c/8)
    bool conclusion = false;
};

// Energy-to-density transfer check: when enough spectral mass of
// (1_A - alpha) 1_B sits on characters flat on B', the density of A
// against beta' must rise by the stated factor.
L2IncrementResult l2_increment_check(const GSet& a, const BourgainSystem& s,
                                     const BourgainSystem& sprime, double c);

} // namespace blab
