#include "blab/increment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace blab {

namespace {

GFunction pointwise(const GFunction& f, const GFunction& g) {
    GFunction out(f.group());
    for (std::uint64_t i = 0; i < f.size(); ++i) out[i] = f[i] * g[i];
    return out;
}

double lam_real(const GFunction& f, const GFunction& g, const GFunction& h) {
    return lambda3(f, g, h, Lambda3Method::fourier).real();
}

struct DilationWindow {
    double lo, hi;
};

// regular dilation factor applied factor-wise, searched over the combined
// breakpoint structure
std::pair<double, std::vector<BourgainSystem>> regular_dilate_parts(
    const std::vector<BourgainSystem>& parts, DilationWindow w) {
    const BourgainSystem whole = combine_parts(parts);
    auto [lambda, ignored] = whole.regular_dilate(w.lo, w.hi);
    std::vector<BourgainSystem> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(p.dilate(lambda));
    return {lambda, std::move(out)};
}

std::vector<BourgainSystem> double_parts(const std::vector<BourgainSystem>& parts) {
    std::vector<BourgainSystem> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(p.double_system());
    return out;
}

double sup_density_on(const GSet& a, const std::vector<BourgainSystem>& parts) {
    const BourgainSystem s = combine_parts(parts);
    return convolve(a.indicator(), LocalMeasure::at(s, 1.0).density).sup_norm();
}

} // namespace

std::string case_name(CaseId id) {
    switch (id) {
        case CaseId::many_progressions: return "ap_case";
        case CaseId::density_i: return "density_i";
        case CaseId::density_ii: return "density_ii";
        case CaseId::density_iii: return "density_iii";
    }
    return "?";
}

BourgainSystem combine_parts(const std::vector<BourgainSystem>& parts) {
    if (parts.empty()) throw std::invalid_argument("no system factors");
    if (parts.size() == 1) return parts.front();
    return BourgainSystem::intersect(parts);
}

DichotomyResult evaluate_dichotomy(const GSet& a, const BourgainSystem& s, IncrementMode mode) {
    return evaluate_dichotomy(a, std::vector<BourgainSystem>{s}, mode);
}

DichotomyResult evaluate_dichotomy(const GSet& a, const std::vector<BourgainSystem>& parts,
                           IncrementMode mode) {
    const BourgainSystem ambient = combine_parts(parts);
    const Group& g = a.group();
    if (ambient.group() != g) throw std::invalid_argument("group mismatch");
    if (!ambient.is_regular()) throw std::invalid_argument("ambient system must be regular");
    if (has_order2_difference(a))
        throw std::invalid_argument("difference set contains an order-2 element");

    const double d = ambient.dimension();
    const LocalMeasure beta = LocalMeasure::at(ambient, 1.0);
    const GFunction ind = a.indicator();
    const GFunction conv = convolve(ind, beta.density);

    DichotomyResult res;
    res.alpha = conv.sup_norm();
    if (res.alpha <= 0.0) throw std::invalid_argument("density must be positive");
    const double alpha = res.alpha;

    const bool paper = mode == IncrementMode::paper;
    const DilationWindow w1 = paper
        ? DilationWindow{alpha / (65536.0 * (1.0 + d)), alpha / (32768.0 * (1.0 + d))}
        : DilationWindow{alpha / (8.0 * (1.0 + d)), alpha / (4.0 * (1.0 + d))};
    const DilationWindow w2 = paper
        ? DilationWindow{alpha / (256.0 * (1.0 + d)), alpha / (128.0 * (1.0 + d))}
        : DilationWindow{alpha / (8.0 * (1.0 + d)), alpha / (4.0 * (1.0 + d))};
    const double incr_small = paper ? std::pow(2.0, -12) : 0.125;
    const double incr_big = paper ? std::pow(2.0, -8) : 0.125;

    auto [l1, parts_p] = regular_dilate_parts(parts, w1);
    auto [l2, parts_pp] = regular_dilate_parts(parts_p, w2);
    res.lambda1 = l1;
    res.lambda2 = l2;

    const BourgainSystem sys_p = combine_parts(parts_p);
    const BourgainSystem sys_pp = combine_parts(parts_pp);
    const GSet bp = sys_p.materialize(1.0);
    const GSet bpp = sys_pp.materialize(1.0);
    res.underflow = bp.size() <= 1 || bpp.size() <= 1;

    const GFunction conv_p = convolve(ind, bp.normalized_density());
    const GFunction conv_pp = convolve(ind, bpp.normalized_density());

    // translate A so the combined deviation is smallest at zero
    Index best = 0;
    double best_dev = std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < g.size(); ++x) {
        const double dev = std::abs(conv_p[x].real() - alpha) + std::abs(conv_pp[x].real() - alpha);
        if (dev < best_dev - 1e-15) {
            best_dev = dev;
            best = static_cast<Index>(x);
        }
    }
    res.translation = best;
    const GSet at = a.translate(g.negate(best));
    const GFunction ind_t = at.indicator();
    res.alpha_p = conv_p[best].real();
    res.alpha_pp = conv_pp[best].real();
    const double ap = res.alpha_p, app = res.alpha_pp;

    const double mu_bp = static_cast<double>(bp.size()) / static_cast<double>(g.size());
    const double mu_bpp = static_cast<double>(bpp.size()) / static_cast<double>(g.size());
    const double mu_b = static_cast<double>(beta.support.size()) / static_cast<double>(g.size());

    GFunction fp(g), fpp(g);
    for (std::uint64_t i = 0; i < g.size(); ++i) {
        const double v = at.contains(static_cast<Index>(i)) ? 1.0 : 0.0;
        fp[i] = cplx{v - ap, 0.0};
        fpp[i] = cplx{v - app, 0.0};
    }

    const GFunction ind_bp = bp.indicator();
    const GFunction ind_bpp = bpp.indicator();
    const GFunction g1 = pointwise(ind_t, ind_bp);
    const GFunction gm = pointwise(ind_t, ind_bpp);
    const GFunction fp_bp = pointwise(fp, ind_bp);
    const GFunction fpp_bpp = pointwise(fpp, ind_bpp);

    res.lambda_full = lam_real(ind, ind, ind);
    res.t_split[0] = ap * lam_real(g1, gm, ind_bp);
    res.t_split[1] = ap * lam_real(ind_bp, gm, fp_bp);
    res.t_split[2] = app * lam_real(fp_bp, ind_bpp, fp_bp);
    res.t_split[3] = lam_real(fp_bp, fpp_bpp, fp_bp);
    res.x_scale = app * ap * ap * mu_bpp * mu_bp;

    // |L(g 1_B', 1_A 1_B'', 1_B') - alpha'' g*beta'(0) mu(B'') mu(B')| bound
    auto claim = [&](const GFunction& gf) {
        ClaimCheck c;
        const double lam_val = lam_real(pointwise(gf, ind_bp), gm, ind_bp);
        const double at_zero = convolve(gf, bp.normalized_density())[0].real();
        c.lhs = std::abs(lam_val - app * at_zero * mu_bpp * mu_bp);
        c.rhs = app * ap * mu_bpp * mu_bp / 4.0;
        const bool window_ok =
            l2 >= alpha / (256.0 * (1.0 + d)) - 1e-15 && l2 < alpha / (128.0 * (1.0 + d)) + 1e-15;
        c.preconditions = window_ok && ap >= alpha / 2.0 - 1e-12;
        c.holds = c.lhs <= c.rhs + 1e-9;
        return c;
    };
    res.claim_indicator = claim(ind_t);
    res.claim_balanced = claim(fp);

    res.witness_parts.clear();

    // case 1: the set already carries the stated progression mass
    {
        CaseCertificate cert;
        cert.lhs = res.lambda_full;
        if (paper) {
            const double log_rhs = std::log(alpha * alpha * alpha / 32.0) +
                                   d * std::log(alpha * alpha * alpha /
                                                (std::pow(2.0, 44) * std::pow(1.0 + d, 3))) +
                                   2.0 * std::log(std::max(mu_b, 1e-300));
            cert.rhs = std::exp(log_rhs);
        } else {
            cert.rhs = res.x_scale / 4.0;
        }
        if (cert.lhs >= cert.rhs - 1e-15) {
            res.certificates.push_back(cert);
            res.witness_parts.push_back({});
        }
    }

    // case 2: one of the dilates already sees a denser translate
    {
        struct Candidate {
            const GFunction* conv;
            const std::vector<BourgainSystem>* parts;
            const BourgainSystem* sys;
        };
        const Candidate cands[2] = {{&conv_pp, &parts_pp, &sys_pp}, {&conv_p, &parts_p, &sys_p}};
        const double log_floor =
            d * std::log(alpha * alpha / (std::pow(2.0, 25) * (1.0 + d) * (1.0 + d))) +
            std::log(std::max(mu_b, 1e-300));
        std::optional<CaseCertificate> bestc;
        const std::vector<BourgainSystem>* best_parts = nullptr;
        for (const auto& cand : cands) {
            const double sup = cand.conv->sup_norm();
            const double dens = cand.sys->density();
            if (sup >= alpha * (1.0 + incr_small) - 1e-12 &&
                std::log(std::max(dens, 1e-300)) >= log_floor - 1e-9) {
                if (!bestc || sup > bestc->lhs) {
                    CaseCertificate cert;
                    cert.id = CaseId::density_i;
                    cert.lhs = sup;
                    cert.rhs = alpha * (1.0 + incr_small);
                    cert.witness_density = dens;
                    cert.witness_density_log_floor = log_floor;
                    cert.witness_dim = cand.sys->dimension();
                    cert.witness = *cand.sys;
                    bestc = cert;
                    best_parts = cand.parts;
                }
            }
        }
        if (bestc) {
            res.certificates.push_back(*bestc);
            res.witness_parts.push_back(*best_parts);
        }
    }

    // case 3: a regular dilate of the doubled system
    {
        const DilationWindow w3 = paper
            ? DilationWindow{alpha / (2048.0 * (1.0 + d)), alpha / (1024.0 * (1.0 + d))}
            : DilationWindow{alpha / (8.0 * (1.0 + d)), alpha / (4.0 * (1.0 + d))};
        auto [l3, parts3] = regular_dilate_parts(double_parts(parts_pp), w3);
        const BourgainSystem sys3 = combine_parts(parts3);
        const double sup = sup_density_on(a, parts3);
        const double log_floor =
            std::log(alpha / 4.0) +
            d * std::log(alpha * alpha * alpha /
                         (std::pow(2.0, 36) * std::pow(1.0 + d, 3))) +
            std::log(std::max(mu_b, 1e-300));
        if (sup >= alpha * (1.0 + incr_big) - 1e-12 &&
            std::log(std::max(sys3.density(), 1e-300)) >= log_floor - 1e-9) {
            CaseCertificate cert;
            cert.id = CaseId::density_ii;
            cert.lhs = sup;
            cert.rhs = alpha * (1.0 + incr_big);
            cert.witness_density = sys3.density();
            cert.witness_density_log_floor = log_floor;
            cert.witness_dim = sys3.dimension();
            cert.witness = sys3;
            res.certificates.push_back(cert);
            res.witness_parts.push_back(parts3);
        }
    }

    // case 4: spectral refinement of the doubled system
    {
        // characters where the balanced spectrum of beta'' stays large
        GFunction weighted(g);
        const double inv_bpp = static_cast<double>(g.size()) / static_cast<double>(bpp.size());
        for (Index x : bpp.members()) weighted[x] = fpp[x] * inv_bpp;
        const SpectrumFunction fd = fourier_transform(weighted);
        const double thresh = app * ap / 16.0; // on the measure-normalized scale
        std::vector<Index> delta;
        for (std::uint64_t gi = 0; gi < g.size(); ++gi)
            if (std::abs(fd[gi]) >= thresh - 1e-12) delta.push_back(static_cast<Index>(gi));

        // greedy separated family within delta, using the large-beta'' set
        const SpectrumFunction bh = fourier_transform(bpp.normalized_density());
        const double l1_norm = beta_l1(fpp, bpp);
        const double l2_norm = beta_l2(fpp, bpp);
        std::vector<Index> lam_max;
        if (l1_norm > 1e-15) {
            const double lf = l2_norm / l1_norm;
            const double eps_lb = thresh / l1_norm;
            const double sep_floor = eps_lb * eps_lb / (lf * lf) / 2.0;
            std::vector<Index> sep;
            for (std::uint64_t gi = 0; gi < g.size(); ++gi)
                if (std::abs(bh[gi]) >= sep_floor - 1e-12) sep.push_back(static_cast<Index>(gi));
            std::vector<bool> blocked(g.size(), false);
            for (Index cand : delta) {
                bool clash = false;
                for (Index t : sep)
                    if (blocked[g.add(cand, t)]) {
                        clash = true;
                        break;
                    }
                if (clash) continue;
                lam_max.push_back(cand);
                for (Index t : sep) blocked[g.add(cand, t)] = true;
            }
        }

        BourgainSystem aux = lam_max.empty()
                                 ? BourgainSystem::trivial(g)
                                 : BourgainSystem::bohr(g, BohrDescriptor{lam_max, 1.0});

        std::vector<BourgainSystem> doubled = double_parts(parts_pp);
        doubled.insert(doubled.begin(), aux.double_system());
        const DilationWindow w4 = paper
            ? DilationWindow{alpha * alpha * alpha / (1048576.0 * (1.0 + d)),
                             alpha * alpha * alpha / (524288.0 * (1.0 + d))}
            : DilationWindow{alpha / (8.0 * (1.0 + d)), alpha / (4.0 * (1.0 + d))};
        auto [l4, parts4] = regular_dilate_parts(doubled, w4);
        const BourgainSystem sys4 = combine_parts(parts4);
        const double sup = sup_density_on(a, parts4);
        const double dim_cap = 8192.0 / (alpha * alpha * alpha);
        const double log_floor =
            std::log(alpha / 4.0) +
            dim_cap * std::log(alpha * alpha * alpha / (std::pow(2.0, 22) * (1.0 + d))) +
            d * std::log(std::pow(alpha, 5) / (std::pow(2.0, 48) * std::pow(1.0 + d, 3))) +
            std::log(std::max(mu_b, 1e-300));
        const double aux_dim = aux.dimension();
        if (sup >= alpha * (1.0 + incr_big) - 1e-12 && aux_dim <= dim_cap + 1e-9 &&
            std::log(std::max(sys4.density(), 1e-300)) >= log_floor - 1e-9) {
            CaseCertificate cert;
            cert.id = CaseId::density_iii;
            cert.lhs = sup;
            cert.rhs = alpha * (1.0 + incr_big);
            cert.witness_density = sys4.density();
            cert.witness_density_log_floor = log_floor;
            cert.witness_dim = aux_dim;
            cert.witness_dim_bound = dim_cap;
            cert.witness = sys4;
            res.certificates.push_back(cert);
            res.witness_parts.push_back(parts4);
        }
    }

    if (paper && res.certificates.empty() && !res.underflow)
        throw std::runtime_error(
            "no case fired with exact constants on a valid instance; dichotomy is broken");
    return res;
}

IterationTrace run_increment(const GSet& a, const BourgainSystem& s, IncrementMode mode,
                             int step_budget) {
    IterationTrace trace;
    std::vector<BourgainSystem> parts{s};
    const bool paper = mode == IncrementMode::paper;

    const BourgainSystem initial = combine_parts(parts);
    const double alpha0 =
        convolve(a.indicator(), LocalMeasure::at(initial, 1.0).density).sup_norm();
    const double d0 = initial.dimension();
    const double delta0 = initial.density();
    const double incr = paper ? std::pow(2.0, -12) : 0.125;

    for (int k = 0; k < step_budget; ++k) {
        const BourgainSystem current = combine_parts(parts);
        DichotomyResult step = evaluate_dichotomy(a, parts, mode);

        TraceStep row;
        row.k = k;
        row.alpha = step.alpha;
        row.dim = current.dimension();
        row.density = current.density();

        if (paper) {
            // inductive properties along the trace
            if (row.dim > 2.0 * d0 + 16384.0 / std::pow(alpha0, 3) * k + 1e-6)
                trace.violations.push_back("dimension ledger exceeded at step " + std::to_string(k));
            const double log_floor =
                (256.0 * d0 + std::pow(2.0, 36) / std::pow(alpha0, 3) * std::log(1.0 / alpha0)) *
                    k * std::log(alpha0 / (2.0 * (1.0 + d0))) +
                std::log(std::max(delta0, 1e-300));
            if (std::log(std::max(row.density, 1e-300)) < log_floor - 1e-6)
                trace.violations.push_back("density floor broken at step " + std::to_string(k));
            if (row.alpha < std::pow(1.0 + incr, k) * alpha0 - 1e-9)
                trace.violations.push_back("density gain stalled at step " + std::to_string(k));
        }

        const CaseCertificate* ap_cert = nullptr;
        const CaseCertificate* density_cert = nullptr;
        std::size_t density_idx = 0;
        for (std::size_t i = 0; i < step.certificates.size(); ++i) {
            const auto& c = step.certificates[i];
            if (c.id == CaseId::many_progressions && !ap_cert) ap_cert = &c;
            if (c.id != CaseId::many_progressions && !density_cert) {
                density_cert = &c;
                density_idx = i;
            }
        }

        if (ap_cert) {
            row.case_taken = case_name(CaseId::many_progressions);
            trace.steps.push_back(row);
            trace.terminal = "ap_case";
            trace.claimed_lambda_floor = ap_cert->rhs;
            trace.measured_lambda = ap_cert->lhs;
            return trace;
        }
        if (!density_cert) {
            row.case_taken = "none";
            trace.steps.push_back(row);
            if (step.alpha * (1.0 + incr) > 1.0)
                trace.terminal = "alpha_exceeds_one";
            else if (step.underflow)
                trace.terminal = "constants_underflow";
            else
                trace.terminal = "no_case";
            return trace;
        }

        row.case_taken = case_name(density_cert->id);
        trace.steps.push_back(row);
        if (density_cert->lhs > 1.0 + 1e-9) {
            trace.terminal = "alpha_exceeds_one";
            return trace;
        }
        parts = step.witness_parts[density_idx];
    }
    trace.terminal = "step_budget";
    return trace;
}

std::string format_trace(const IterationTrace& t) {
    std::ostringstream os;
    os.precision(12);
    for (const auto& s : t.steps)
        os << s.k << ' ' << s.alpha << ' ' << s.dim << ' ' << s.density << ' ' << s.case_taken
           << '\n';
    os << "END " << t.terminal << '\n';
    return os.str();
}

} // namespace blab
