#include "blab/local.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blab {

LocalMeasure LocalMeasure::at(const BourgainSystem& s, double rho) {
    GSet supp = s.materialize(rho);
    if (supp.empty()) throw std::invalid_argument("empty support for local measure");
    GFunction dens = supp.normalized_density();
    return LocalMeasure{s, rho, std::move(supp), std::move(dens)};
}

cplx beta_mean(const GFunction& f, const GSet& support) {
    cplx acc{0, 0};
    for (Index x : support.members()) acc += f[x];
    return acc / static_cast<double>(support.size());
}

double beta_l1(const GFunction& f, const GSet& support) {
    double acc = 0;
    for (Index x : support.members()) acc += std::abs(f[x]);
    return acc / static_cast<double>(support.size());
}

double beta_l2(const GFunction& f, const GSet& support) {
    double acc = 0;
    for (Index x : support.members()) acc += std::norm(f[x]);
    return std::sqrt(acc / static_cast<double>(support.size()));
}

double haar_defect(const BourgainSystem& s, Index y, double eta) {
    if (!s.is_regular()) throw std::invalid_argument("system must be regular");
    const GSet b = s.materialize(1.0);
    const GSet beta_eta = s.materialize(eta);
    if (!beta_eta.contains(y)) throw std::invalid_argument("shift must lie in B_eta");
    const GSet shifted = b.translate(y);
    const std::uint64_t sym_diff = b.difference(shifted).size() + shifted.difference(b).size();
    const double defect = static_cast<double>(sym_diff) / static_cast<double>(b.size());
    const double bound = 16.0 * s.dimension() * eta;
    if (defect > bound + 1e-9)
        throw std::runtime_error("translate defect exceeds 16*d*eta; regularity is broken");
    return defect;
}

double smoothing_defect(const BourgainSystem& s, const GFunction& f, double eta) {
    if (!s.is_regular()) throw std::invalid_argument("system must be regular");
    const LocalMeasure beta = LocalMeasure::at(s, 1.0);
    const GFunction smoothed = convolve(f, beta.density);
    const GSet beta_eta = s.materialize(eta);
    const Group& g = s.group();
    double worst = 0.0;
    for (std::uint64_t x = 0; x < g.size(); ++x) {
        for (Index y : beta_eta.members()) {
            const double diff =
                std::abs(smoothed[g.add(static_cast<Index>(x), y)] - smoothed[x]);
            worst = std::max(worst, diff);
        }
    }
    const double bound = 16.0 * f.sup_norm() * s.dimension() * eta;
    if (worst > bound + 1e-9)
        throw std::runtime_error("smoothing defect exceeds the continuity bound");
    return worst;
}

bool spectral_containment(const BourgainSystem& s, double kappa, double eta) {
    if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in (0,1]");
    if (!s.is_regular()) throw std::invalid_argument("system must be regular");
    const LocalMeasure beta = LocalMeasure::at(s, 1.0);
    const SpectrumFunction bh = fourier_transform(beta.density);
    const GSet beta_eta = s.materialize(eta);
    const Group& g = s.group();
    const double bound = 16.0 * s.dimension() * eta / kappa;
    std::vector<Index> big;
    for (std::uint64_t gi = 0; gi < g.size(); ++gi)
        if (std::abs(bh[gi]) >= kappa - 1e-12) big.push_back(static_cast<Index>(gi));
    for (Index x : beta_eta.members()) {
        const auto col = character_column(g, x);
        for (Index gi : big)
            if (std::abs(1.0 - col[gi]) > bound + 1e-9) return false;
    }
    return true;
}

CotlarSides cotlar_check(const std::vector<cplx>& v,
                         const std::vector<std::vector<cplx>>& ws) {
    for (const auto& w : ws)
        if (w.size() != v.size()) throw std::invalid_argument("dimension mismatch");
    auto dot = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx acc{0, 0};
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
        return acc;
    };
    double lhs = 0.0;
    for (const auto& w : ws) lhs += std::norm(dot(v, w));
    double worst = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        double row = 0.0;
        for (std::size_t i = 0; i < ws.size(); ++i) row += std::abs(dot(ws[i], ws[j]));
        worst = std::max(worst, row);
    }
    const double vv = dot(v, v).real();
    return {lhs, vv * worst};
}

LocalBesselResult local_bessel(const GFunction& f, const BourgainSystem& s, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0,1]");
    if (!s.is_regular()) throw std::invalid_argument("system must be regular");
    const Group& g = s.group();
    const LocalMeasure beta = LocalMeasure::at(s, 1.0);

    const double l1 = beta_l1(f, beta.support);
    if (l1 <= 0.0) throw std::invalid_argument("f vanishes on B");
    const double l2 = beta_l2(f, beta.support);
    const double lf = l2 / l1;

    // spectrum of the measure f d(beta)
    GFunction weighted(g);
    for (std::uint64_t i = 0; i < g.size(); ++i) weighted[i] = f[i] * beta.density[i];
    const SpectrumFunction fd = fourier_transform(weighted);
    const SpectrumFunction bh = fourier_transform(beta.density);

    LocalBesselResult res(s);
    res.l_ratio = lf;
    res.lambda_budget = 2.0 * lf * lf / (eps * eps);

    const double delta_floor = eps * l1;
    for (std::uint64_t gi = 0; gi < g.size(); ++gi)
        if (std::abs(fd[gi]) >= delta_floor - 1e-12)
            res.big_spectrum.push_back(static_cast<Index>(gi));

    // separating set: characters where the measure's transform stays large
    const double sep_floor = eps * eps / (lf * lf) / 2.0;
    std::vector<bool> in_sep(g.size(), false);
    std::vector<Index> sep_members;
    for (std::uint64_t gi = 0; gi < g.size(); ++gi) {
        if (std::abs(bh[gi]) >= sep_floor - 1e-12) {
            in_sep[gi] = true;
            sep_members.push_back(static_cast<Index>(gi));
        }
    }

    // greedy maximal family with disjoint translates lambda + S
    std::vector<bool> taken_translate(g.size(), false);
    for (Index cand : res.big_spectrum) {
        bool clash = false;
        for (Index t : sep_members) {
            if (taken_translate[g.add(cand, t)]) {
                clash = true;
                break;
            }
        }
        if (clash) continue;
        res.separated.push_back(cand);
        for (Index t : sep_members) taken_translate[g.add(cand, t)] = true;
    }

    res.size_ok =
        static_cast<double>(res.separated.size()) <= res.lambda_budget + 1e-9;

    for (std::size_t i = 0; i < res.separated.size() && res.separation_ok; ++i)
        for (std::size_t j = i + 1; j < res.separated.size(); ++j)
            if (in_sep[g.sub(res.separated[i], res.separated[j])]) {
                res.separation_ok = false;
                break;
            }

    BourgainSystem induced =
        res.separated.empty()
            ? BourgainSystem::trivial(g)
            : BourgainSystem::bohr(g, BohrDescriptor{res.separated, 1.0});
    res.refined = BourgainSystem::intersect({induced, s});

    const double d = s.dimension();
    res.density_floor =
        std::pow(4.0, -(d + 2.0 * lf * lf / (eps * eps))) * s.density();
    res.density_ok = res.refined.density() >= res.density_floor - 1e-12;

    const double cone = 128.0 * (1.0 + d) * lf * lf / (eps * eps);
    for (double eta : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256}) {
        const GSet be = res.refined.materialize(eta);
        for (Index x : be.members()) {
            const auto col = character_column(g, x);
            for (Index gamma : res.big_spectrum) {
                if (std::abs(1.0 - col[gamma]) > cone * eta + 1e-9) {
                    res.containment_ok = false;
                    return res;
                }
            }
        }
    }
    return res;
}

L2IncrementResult l2_increment_check(const GSet& a, const BourgainSystem& s,
                                     const BourgainSystem& sprime, double c) {
    if (a.group() != s.group() || a.group() != sprime.group())
        throw std::invalid_argument("group mismatch");
    if (!s.is_regular()) throw std::invalid_argument("ambient system must be regular");
    const Group& g = a.group();
    const LocalMeasure beta = LocalMeasure::at(s, 1.0);

    L2IncrementResult res;
    const GFunction conv = convolve(a.indicator(), beta.density);
    res.alpha = conv[0].real();
    if (res.alpha <= 0.0) throw std::invalid_argument("density at zero must be positive");

    res.eta = c * res.alpha / (1024.0 * (1.0 + s.dimension()));
    res.subsystem_ok = sprime.subsystem_of(s, res.eta);
    if (!res.subsystem_ok)
        throw std::invalid_argument("refinement is not a subsystem of the shrunk ambient system");

    // flat characters: within 1/2 of 1 everywhere on B'
    const GSet bp = sprime.materialize(1.0);
    std::vector<bool> is_flat(g.size(), true);
    for (Index x : bp.members()) {
        const auto col = character_column(g, x);
        for (std::uint64_t gi = 0; gi < g.size(); ++gi)
            if (is_flat[gi] && std::abs(1.0 - col[gi]) > 0.5 + 1e-12) is_flat[gi] = false;
    }
    std::vector<Index> flat;
    for (std::uint64_t gi = 0; gi < g.size(); ++gi)
        if (is_flat[gi]) flat.push_back(static_cast<Index>(gi));

    GFunction balanced(g);
    for (std::uint64_t i = 0; i < g.size(); ++i) {
        const double ind = a.contains(static_cast<Index>(i)) ? 1.0 : 0.0;
        balanced[i] = (ind - res.alpha) *
                      (beta.support.contains(static_cast<Index>(i)) ? 1.0 : 0.0);
    }
    const SpectrumFunction bt = fourier_transform(balanced);
    for (Index gamma : flat) res.energy += std::norm(bt[gamma]);

    const double mu_b = static_cast<double>(beta.support.size()) / static_cast<double>(g.size());
    res.energy_floor = c * res.alpha * res.alpha * mu_b;
    res.hypothesis = res.energy >= res.energy_floor - 1e-12;

    const LocalMeasure beta_p = LocalMeasure::at(sprime, 1.0);
    res.sup_density = convolve(a.indicator(), beta_p.density).sup_norm();
    res.sup_floor = res.alpha * (1.0 + c / 8.0);
    res.conclusion = res.sup_density >= res.sup_floor - 1e-9;
    return res;
}

} // namespace blab
