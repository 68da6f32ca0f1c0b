#include "blab/group.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace blab {

std::uint64_t Group::max_size() {
    if (const char* env = std::getenv("BLAB_MAX_GROUP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v >= 2) return v;
    }
    return std::uint64_t{1} << 20;
}

Group::Group(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw std::invalid_argument("group needs at least one factor");
    const std::uint64_t budget = max_size();
    std::uint64_t n = 1;
    for (std::int64_t m : moduli_) {
        if (m < 2) throw std::invalid_argument("group modulus must be at least 2");
        n *= static_cast<std::uint64_t>(m);
        if (n > budget) throw std::invalid_argument("group size exceeds budget");
    }
    size_ = n;
    strides_.resize(moduli_.size());
    std::uint64_t s = 1;
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        strides_[i] = s;
        s *= static_cast<std::uint64_t>(moduli_[i]);
    }
}

Index Group::index_of(std::span<const std::int64_t> residues) const {
    if (residues.size() != moduli_.size())
        throw std::invalid_argument("residue vector has wrong length");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        std::int64_t r = residues[i] % moduli_[i];
        if (r < 0) r += moduli_[i];
        idx += static_cast<std::uint64_t>(r) * strides_[i];
    }
    return static_cast<Index>(idx);
}

std::vector<std::int64_t> Group::residues_of(Index i) const {
    std::vector<std::int64_t> r(moduli_.size());
    std::uint64_t v = i;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
        r[k] = static_cast<std::int64_t>(v / strides_[k]);
        v %= strides_[k];
    }
    return r;
}

Index Group::add(Index a, Index b) const {
    std::uint64_t va = a, vb = b, idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
        const std::uint64_t m = static_cast<std::uint64_t>(moduli_[k]);
        std::uint64_t da = va / strides_[k], db = vb / strides_[k];
        va %= strides_[k];
        vb %= strides_[k];
        std::uint64_t d = da + db;
        if (d >= m) d -= m;
        idx += d * strides_[k];
    }
    return static_cast<Index>(idx);
}

Index Group::sub(Index a, Index b) const { return add(a, negate(b)); }

Index Group::negate(Index a) const {
    std::uint64_t va = a, idx = 0;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
        const std::uint64_t m = static_cast<std::uint64_t>(moduli_[k]);
        std::uint64_t d = va / strides_[k];
        va %= strides_[k];
        idx += (d == 0 ? 0 : m - d) * strides_[k];
    }
    return static_cast<Index>(idx);
}

Index Group::dbl(Index a) const { return add(a, a); }

std::vector<Index> Group::halvings(Index x) const {
    // Componentwise solve 2y = x mod n: odd n has one solution, even n has
    // two when x is even and none otherwise.
    std::vector<std::vector<std::int64_t>> per_axis(moduli_.size());
    std::uint64_t v = x;
    for (std::size_t k = 0; k < moduli_.size(); ++k) {
        const std::int64_t m = moduli_[k];
        const std::int64_t d = static_cast<std::int64_t>(v / strides_[k]);
        v %= strides_[k];
        if (m % 2 == 1) {
            // inverse of 2 mod odd m is (m+1)/2
            per_axis[k].push_back((d * ((m + 1) / 2)) % m);
        } else if (d % 2 == 0) {
            per_axis[k].push_back(d / 2);
            per_axis[k].push_back(d / 2 + m / 2);
        } else {
            return {};
        }
    }
    std::vector<Index> out;
    std::vector<std::int64_t> pick(moduli_.size(), 0);
    std::vector<std::size_t> cursor(moduli_.size(), 0);
    while (true) {
        for (std::size_t k = 0; k < moduli_.size(); ++k) pick[k] = per_axis[k][cursor[k]];
        out.push_back(index_of(pick));
        std::size_t k = moduli_.size();
        while (k-- > 0) {
            if (++cursor[k] < per_axis[k].size()) break;
            cursor[k] = 0;
            if (k == 0) return out;
        }
    }
}

std::string Group::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i) os << 'x';
        os << 'Z' << moduli_[i];
    }
    return os.str();
}

cplx char_eval(const Group& g, Index gamma, Index x) {
    const auto gr = g.residues_of(gamma);
    const auto xr = g.residues_of(x);
    return char_eval(g, gr, xr);
}

cplx char_eval(const Group& g, std::span<const std::int64_t> gamma,
               std::span<const std::int64_t> x) {
    const auto& mods = g.moduli();
    if (gamma.size() != mods.size() || x.size() != mods.size())
        throw std::invalid_argument("character/element shape mismatch");
    double phase = 0.0;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        const std::int64_t m = mods[i];
        const std::int64_t t = ((gamma[i] % m) * (x[i] % m)) % m;
        phase += static_cast<double>(t) / static_cast<double>(m);
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

double valuation(cplx z) {
    const double r = std::abs(z);
    if (std::abs(r - 1.0) > 1e-9)
        throw std::invalid_argument("valuation requires a unit-modulus argument");
    const double a = std::atan2(z.imag(), z.real()); // (-pi, pi]
    return std::abs(a) / (2.0 * std::numbers::pi);
}

Group parse_group(std::string_view text) {
    std::vector<std::int64_t> mods;
    std::size_t i = 0;
    auto fail = [&]() -> void { throw std::invalid_argument("bad group literal: " + std::string(text)); };
    while (i < text.size()) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
        if (c != 'Z' && c != 'F') fail();
        ++i;
        std::int64_t m = 0;
        std::size_t digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            m = m * 10 + (text[i] - '0');
            ++i;
            ++digits;
            if (m > (std::int64_t{1} << 40)) fail();
        }
        if (digits == 0) fail();
        std::int64_t reps = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            reps = 0;
            digits = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                reps = reps * 10 + (text[i] - '0');
                ++i;
                ++digits;
                if (reps > 64) fail();
            }
            if (digits == 0 || reps < 1) fail();
        }
        for (std::int64_t r = 0; r < reps; ++r) mods.push_back(m);
        if (i < text.size()) {
            const char sep = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
            if (sep != 'x') fail();
            ++i;
            if (i == text.size()) fail();
        }
    }
    if (mods.empty()) fail();
    return Group(std::move(mods));
}

} // namespace blab
