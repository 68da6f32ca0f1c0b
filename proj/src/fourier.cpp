#include "blab/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blab {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_same_group(const GFunction& f, const GFunction& g) {
    if (f.group() != g.group()) throw std::invalid_argument("group mismatch");
}

// Iterative radix-2 transform, kernel exp(-2*pi*i*jk/n), unnormalized.
void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? two_pi : -two_pi) / static_cast<double>(len);
        const cplx wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Arbitrary-length DFT via the chirp trick: X_k = w^{k^2} sum_j (x_j w^{j^2}) w^{-(k-j)^2}
// with w = exp(-pi*i/n); the convolution runs over a power-of-two transform.
void dft_bluestein(std::vector<cplx>& x, bool inverse) {
    const std::size_t n = x.size();
    if (inverse) {
        for (auto& v : x) v = std::conj(v);
        dft_bluestein(x, false);
        for (auto& v : x) v = std::conj(v);
        return;
    }
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument exactly representable
        const std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        chirp[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n));
    }
    std::vector<cplx> a(m, cplx{0, 0}), b(m, cplx{0, 0});
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * scale * chirp[k];
}

void dft_line(std::vector<cplx>& line, bool inverse) {
    const std::size_t n = line.size();
    if (n == 1) return;
    if (std::has_single_bit(n)) {
        fft_pow2(line, inverse);
    } else {
        dft_bluestein(line, inverse);
    }
}

// Run the length-n DFT along every axis of the mixed-radix cube.
void dft_axes(std::vector<cplx>& a, const Group& g, bool inverse) {
    const auto& mods = g.moduli();
    const std::uint64_t total = g.size();
    std::uint64_t inner = 1;
    for (std::size_t ax = mods.size(); ax-- > 0;) {
        const std::uint64_t n = static_cast<std::uint64_t>(mods[ax]);
        const std::uint64_t block = n * inner;
        std::vector<cplx> line(n);
        for (std::uint64_t base = 0; base < total; base += block) {
            for (std::uint64_t off = 0; off < inner; ++off) {
                for (std::uint64_t j = 0; j < n; ++j) line[j] = a[base + off + j * inner];
                dft_line(line, inverse);
                for (std::uint64_t j = 0; j < n; ++j) a[base + off + j * inner] = line[j];
            }
        }
        inner = block;
    }
}

} // namespace

GFunction::GFunction(Group g, std::vector<cplx> values)
    : group_(std::move(g)), values_(std::move(values)) {
    if (values_.size() != group_.size())
        throw std::invalid_argument("value table length must equal group size");
}

GFunction GFunction::constant(const Group& g, cplx v) {
    GFunction f(g);
    std::fill(f.values_.begin(), f.values_.end(), v);
    return f;
}

double GFunction::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GFunction::l1_mean() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::abs(v);
    return s / static_cast<double>(values_.size());
}

cplx GFunction::mean() const {
    cplx s{0, 0};
    for (const auto& v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

SpectrumFunction::SpectrumFunction(Group g, std::vector<cplx> values)
    : group_(std::move(g)), values_(std::move(values)) {
    if (values_.size() != group_.size())
        throw std::invalid_argument("value table length must equal group size");
}

SpectrumFunction fourier_transform(const GFunction& f) {
    std::vector<cplx> a = f.values();
    dft_axes(a, f.group(), false);
    const double scale = 1.0 / static_cast<double>(f.size());
    for (auto& v : a) v *= scale;
    return SpectrumFunction(f.group(), std::move(a));
}

SpectrumFunction fourier_transform_reference(const GFunction& f) {
    const Group& g = f.group();
    const std::uint64_t n = g.size();
    const auto& mods = g.moduli();

    // per-axis root tables so each (gamma, x) pair costs one multiply per axis
    std::vector<std::vector<cplx>> roots(mods.size());
    for (std::size_t i = 0; i < mods.size(); ++i) {
        roots[i].resize(static_cast<std::size_t>(mods[i]));
        for (std::int64_t k = 0; k < mods[i]; ++k)
            roots[i][static_cast<std::size_t>(k)] =
                std::polar(1.0, -two_pi * static_cast<double>(k) / static_cast<double>(mods[i]));
    }

    std::vector<std::vector<std::int64_t>> digits(n);
    for (std::uint64_t i = 0; i < n; ++i) digits[i] = g.residues_of(static_cast<Index>(i));

    SpectrumFunction out(g);
    for (std::uint64_t gi = 0; gi < n; ++gi) {
        const auto& gr = digits[gi];
        cplx acc{0, 0};
        for (std::uint64_t xi = 0; xi < n; ++xi) {
            const auto& xr = digits[xi];
            cplx k{1, 0};
            for (std::size_t ax = 0; ax < mods.size(); ++ax)
                k *= roots[ax][static_cast<std::size_t>((gr[ax] * xr[ax]) % mods[ax])];
            acc += f[xi] * k;
        }
        out[gi] = acc / static_cast<double>(n);
    }
    return out;
}

GFunction inverse_transform(const SpectrumFunction& F) {
    std::vector<cplx> a = F.values();
    dft_axes(a, F.group(), true);
    return GFunction(F.group(), std::move(a));
}

GFunction convolve(const GFunction& f, const GFunction& g) {
    require_same_group(f, g);
    SpectrumFunction F = fourier_transform(f);
    SpectrumFunction G = fourier_transform(g);
    std::vector<cplx> prod(F.values());
    for (std::uint64_t i = 0; i < prod.size(); ++i) prod[i] *= G[i];
    return inverse_transform(SpectrumFunction(f.group(), std::move(prod)));
}

GFunction convolve_reference(const GFunction& f, const GFunction& g) {
    require_same_group(f, g);
    const Group& gr = f.group();
    const std::uint64_t n = gr.size();
    GFunction out(gr);
    for (std::uint64_t y = 0; y < n; ++y) {
        cplx acc{0, 0};
        for (std::uint64_t x = 0; x < n; ++x)
            acc += f[gr.sub(static_cast<Index>(y), static_cast<Index>(x))] * g[x];
        out[y] = acc / static_cast<double>(n);
    }
    return out;
}

cplx inner_product(const GFunction& f, const GFunction& g) {
    require_same_group(f, g);
    cplx acc{0, 0};
    for (std::uint64_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
    return acc / static_cast<double>(f.size());
}

std::vector<cplx> character_column(const Group& g, Index x) {
    // point mass at x transforms to (1/|G|) conj(gamma(x))
    std::vector<cplx> a(g.size(), cplx{0, 0});
    a[x] = cplx{1.0, 0.0};
    dft_axes(a, g, false);
    for (auto& v : a) v = std::conj(v);
    return a;
}

} // namespace blab
