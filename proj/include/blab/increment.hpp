#pragma once

#include "blab/bohr.hpp"
#include "blab/fourier.hpp"
#include "blab/local.hpp"
#include "blab/sets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blab {

// paper: the method's original constants (dilation windows around
// alpha / 2^16 (1+d); increments 1 + 2^-12 and 1 + 2^-8). They make the
// constructed sets collapse on small groups for most densities, which the
// engine reports as underflow rather than failure.
// practical: dilation window alpha / 2^3 (1+d) and increment 1 + 1/8; no
// dichotomy guarantee, but the sets stay usable at desk scale.
enum class IncrementMode { paper, practical };

enum class CaseId { many_progressions, density_i, density_ii, density_iii };

std::string case_name(CaseId id);

struct CaseCertificate {
    CaseId id = CaseId::many_progressions;
    double lhs = 0.0; // progression mass, or the measured sup density
    double rhs = 0.0; // the case threshold
    double witness_density = 0.0;
    double witness_density_log_floor = 0.0; // log of the stated density floor
    double witness_dim = 0.0;
    double witness_dim_bound = 0.0; // density_iii: cap on the auxiliary part
    std::optional<BourgainSystem> witness;
};

struct ClaimCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool preconditions = false; // dilation window + alpha' >= alpha/2
    bool holds = false;
};

struct DichotomyResult {
    double alpha = 0.0;    // sup of 1_A * beta over the ambient system
    double alpha_p = 0.0;  // density at 0 against beta' after translation
    double alpha_pp = 0.0; // same against beta''
    double lambda1 = 0.0;  // chosen regular dilation factors
    double lambda2 = 0.0;
    Index translation = 0;
    bool underflow = false; // a constructed set collapsed to a single point
    double lambda_full = 0.0; // progression mass of A itself
    double t_split[4] = {0, 0, 0, 0}; // the four terms of the trilinear split
    double x_scale = 0.0;             // alpha'' alpha'^2 mu(B'') mu(B')
    ClaimCheck claim_indicator;
    ClaimCheck claim_balanced;
    std::vector<CaseCertificate> certificates;
    // flattened factor lists for the winning witnesses, keyed by case
    std::vector<std::vector<BourgainSystem>> witness_parts;
};

// Evaluates the four-way dichotomy on a concrete instance. The system is
// kept as a flat list of factors whose intersection is the ambient system;
// dilation and doubling act factor-wise so the dimension ledger stays
// additive across iterations.
DichotomyResult evaluate_dichotomy(const GSet& a, const std::vector<BourgainSystem>& parts,
                           IncrementMode mode);
DichotomyResult evaluate_dichotomy(const GSet& a, const BourgainSystem& s, IncrementMode mode);

struct TraceStep {
    int k = 0;
    double alpha = 0.0;
    double dim = 0.0;
    double density = 0.0;
    std::string case_taken;
};

struct IterationTrace {
    std::vector<TraceStep> steps;
    std::string terminal; // ap_case | alpha_exceeds_one | step_budget | no_case | constants_underflow
    double claimed_lambda_floor = 0.0; // threshold of the final progression certificate
    double measured_lambda = 0.0;
    std::vector<std::string> violations; // inductive-property failures (paper mode)
};

IterationTrace run_increment(const GSet& a, const BourgainSystem& s, IncrementMode mode,
                             int step_budget);

// One step per line: "k alpha_k d_k delta_k case", then "END reason".
std::string format_trace(const IterationTrace& t);

BourgainSystem combine_parts(const std::vector<BourgainSystem>& parts);

} // namespace blab
