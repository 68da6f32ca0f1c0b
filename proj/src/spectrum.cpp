#include "blab/spectrum.hpp"

#include "blab/local.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blab {

bool SpectrumSet::contains(Index g) const {
    return std::find(members.begin(), members.end(), g) != members.end();
}

SpectrumSet large_spectrum(const GSet& a, double eps) {
    if (a.empty()) throw std::invalid_argument("spectrum of the empty set");
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0,1]");
    const double alpha = static_cast<double>(a.size()) / static_cast<double>(a.universe());
    const SpectrumFunction ah = fourier_transform(a.indicator());
    SpectrumSet out{a.group(), {}};
    const double floor = eps * alpha;
    for (std::uint64_t gi = 0; gi < a.universe(); ++gi)
        if (std::abs(ah[gi]) >= floor - 1e-12) out.members.push_back(static_cast<Index>(gi));
    return out;
}

namespace {

// span bitset over the dual group, grown one generator at a time
std::vector<bool> span_bits(const Group& g, const std::vector<Index>& gens) {
    std::vector<bool> bits(g.size(), false);
    bits[0] = true;
    for (Index gen : gens) {
        std::vector<bool> next = bits;
        for (std::uint64_t i = 0; i < g.size(); ++i) {
            if (!bits[i]) continue;
            next[g.add(static_cast<Index>(i), gen)] = true;
            next[g.sub(static_cast<Index>(i), gen)] = true;
        }
        bits.swap(next);
    }
    return bits;
}

} // namespace

SpectrumSet span_cube(const SpectrumSet& gamma) {
    if (gamma.members.size() > 20) throw std::invalid_argument("span enumeration budget exceeded");
    const auto bits = span_bits(gamma.group, gamma.members);
    SpectrumSet out{gamma.group, {}};
    for (std::uint64_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out.members.push_back(static_cast<Index>(i));
    return out;
}

bool is_dissociated(const SpectrumSet& gamma) {
    const std::size_t k = gamma.members.size();
    if (k > 20) throw std::invalid_argument("sign enumeration budget exceeded");
    const Group& g = gamma.group;
    // all sign patterns in {-1,0,1}^k except all-zero
    std::vector<int> sigma(k, -1);
    while (true) {
        bool all_zero = true;
        Index acc = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (sigma[i] == 1) acc = g.add(acc, gamma.members[i]);
            else if (sigma[i] == -1) acc = g.sub(acc, gamma.members[i]);
            if (sigma[i] != 0) all_zero = false;
        }
        if (!all_zero && acc == 0) return false;
        std::size_t i = 0;
        while (i < k && sigma[i] == 1) sigma[i++] = -1;
        if (i == k) break;
        ++sigma[i];
    }
    return true;
}

DissociatedBasis dissociated_basis(const SpectrumSet& lambda, const GSet& a, double eps) {
    const Group& g = lambda.group;
    const double alpha = static_cast<double>(a.size()) / static_cast<double>(a.universe());
    const SpectrumFunction ah = fourier_transform(a.indicator());

    std::vector<Index> order = lambda.members;
    std::sort(order.begin(), order.end(), [&](Index x, Index y) {
        const double mx = std::abs(ah[x]), my = std::abs(ah[y]);
        if (mx != my) return mx > my;
        return x < y;
    });

    // gamma joins the basis exactly when it avoids the current span cube
    std::vector<bool> span(g.size(), false);
    span[0] = true;
    std::vector<Index> basis;
    for (Index cand : order) {
        if (span[cand]) continue;
        basis.push_back(cand);
        std::vector<bool> next = span;
        for (std::uint64_t i = 0; i < g.size(); ++i) {
            if (!span[i]) continue;
            next[g.add(static_cast<Index>(i), cand)] = true;
            next[g.sub(static_cast<Index>(i), cand)] = true;
        }
        span.swap(next);
    }

    DissociatedBasis out{SpectrumSet{g, basis}, true, true, 0.0};
    for (Index m : lambda.members)
        if (!span[m]) out.spans = false;
    out.size_bound = 2.0 / (eps * eps) * std::log(1.0 / alpha);
    out.size_ok = static_cast<double>(basis.size()) <= out.size_bound + 1e-9;
    return out;
}

BogolioubovReport bogolioubov_chang(const GSet& a, const Rational& k) {
    if (a.empty()) throw std::invalid_argument("empty set");
    const Group& g = a.group();
    const double kd = k.to_double();
    if (kd < 1.0) throw std::invalid_argument("doubling bound below 1");
    const double alpha = static_cast<double>(a.size()) / static_cast<double>(a.universe());
    const double eps = 1.0 / (2.0 * kd);

    const SpectrumSet lam = large_spectrum(a, std::sqrt(eps / 3.0));
    const DissociatedBasis chang = dissociated_basis(lam, a, std::sqrt(eps / 3.0));
    const auto& gamma = chang.basis.members;

    BourgainSystem raw =
        gamma.empty()
            ? BourgainSystem::trivial(g)
            : BourgainSystem::bohr(
                  g, BohrDescriptor{gamma, eps / (64.0 * (1.0 + static_cast<double>(gamma.size())))});
    auto [lambda_reg, regular] = raw.regular_dilate();

    BogolioubovReport rep{regular};
    rep.alpha = alpha;
    rep.k = kd;
    rep.gamma_size = gamma.size();
    rep.dim = regular.dimension();
    rep.dim_bound = 32.0 * kd * std::log(1.0 / alpha);
    rep.density = regular.density();
    rep.density_log_bound = 16.0 * kd * std::log(1.0 / alpha) *
                            std::log(1.0 / (16384.0 * kd * kd * (1.0 + std::log(1.0 / alpha))));
    rep.sup_density = convolve(a.indicator(), LocalMeasure::at(regular, 1.0).density).sup_norm();
    rep.sup_bound = 1.0 / (2.0 * kd);

    rep.dim_ok = rep.dim <= rep.dim_bound + 1e-9;
    rep.density_ok = std::log(std::max(rep.density, 1e-300)) >= rep.density_log_bound - 1e-9;
    rep.sup_ok = rep.sup_density >= rep.sup_bound - 1e-9;
    return rep;
}

} // namespace blab
