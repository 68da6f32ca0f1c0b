#include "blab/sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace blab {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

GSet::GSet(Group g) : group_(std::move(g)), bits_((group_.size() + 63) / 64, 0), size_(0) {}

GSet::GSet(Group g, const std::vector<Index>& members) : GSet(std::move(g)) {
    for (Index i : members) insert(i);
}

void GSet::insert(Index i) {
    if (i >= group_.size()) throw std::out_of_range("set element out of range");
    std::uint64_t& w = bits_[i >> 6];
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (!(w & m)) {
        w |= m;
        ++size_;
    }
}

void GSet::erase(Index i) {
    std::uint64_t& w = bits_[i >> 6];
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (w & m) {
        w &= ~m;
        --size_;
    }
}

std::vector<Index> GSet::members() const {
    std::vector<Index> out;
    out.reserve(size_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t v = bits_[w];
        while (v) {
            const int b = std::countr_zero(v);
            out.push_back(static_cast<Index>(w * 64 + static_cast<std::size_t>(b)));
            v &= v - 1;
        }
    }
    return out;
}

Index GSet::first() const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w])
            return static_cast<Index>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits_[w])));
    throw std::logic_error("first() on empty set");
}

GSet GSet::intersect(const GSet& o) const {
    if (group_ != o.group_) throw std::invalid_argument("group mismatch");
    GSet r(group_);
    std::uint64_t n = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        r.bits_[w] = bits_[w] & o.bits_[w];
        n += static_cast<std::uint64_t>(std::popcount(r.bits_[w]));
    }
    r.size_ = n;
    return r;
}

GSet GSet::unite(const GSet& o) const {
    if (group_ != o.group_) throw std::invalid_argument("group mismatch");
    GSet r(group_);
    std::uint64_t n = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        r.bits_[w] = bits_[w] | o.bits_[w];
        n += static_cast<std::uint64_t>(std::popcount(r.bits_[w]));
    }
    r.size_ = n;
    return r;
}

GSet GSet::difference(const GSet& o) const {
    if (group_ != o.group_) throw std::invalid_argument("group mismatch");
    GSet r(group_);
    std::uint64_t n = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        r.bits_[w] = bits_[w] & ~o.bits_[w];
        n += static_cast<std::uint64_t>(std::popcount(r.bits_[w]));
    }
    r.size_ = n;
    return r;
}

bool GSet::subset_of(const GSet& o) const {
    if (group_ != o.group_) throw std::invalid_argument("group mismatch");
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~o.bits_[w]) return false;
    return true;
}

GSet GSet::translate(Index t) const {
    GSet r(group_);
    for (Index x : members()) r.insert(group_.add(x, t));
    return r;
}

GSet GSet::negate() const {
    GSet r(group_);
    for (Index x : members()) r.insert(group_.negate(x));
    return r;
}

GSet GSet::double_image() const {
    GSet r(group_);
    for (Index x : members()) r.insert(group_.dbl(x));
    return r;
}

GFunction GSet::indicator() const {
    GFunction f(group_);
    for (Index x : members()) f[x] = cplx{1.0, 0.0};
    return f;
}

GFunction GSet::normalized_density() const {
    if (size_ == 0) throw std::invalid_argument("cannot normalize the empty set");
    GFunction f(group_);
    const double v = static_cast<double>(group_.size()) / static_cast<double>(size_);
    for (Index x : members()) f[x] = cplx{v, 0.0};
    return f;
}

bool GSet::operator==(const GSet& o) const {
    return group_ == o.group_ && bits_ == o.bits_;
}

GSet GSet::full(const Group& g) {
    GSet r(g);
    for (std::uint64_t i = 0; i < g.size(); ++i) r.insert(static_cast<Index>(i));
    return r;
}

ZSet::ZSet(std::vector<std::int64_t> elements) : elems_(std::move(elements)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool ZSet::contains(std::int64_t v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

GSet sumset(const GSet& a, const GSet& b) {
    if (a.group() != b.group()) throw std::invalid_argument("group mismatch");
    GSet r(a.group());
    const auto bm = b.members();
    for (Index x : a.members())
        for (Index y : bm) r.insert(a.group().add(x, y));
    return r;
}

GSet restricted_sumset(const GSet& a, const GSet& b) {
    if (a.group() != b.group()) throw std::invalid_argument("group mismatch");
    GSet r(a.group());
    const auto bm = b.members();
    for (Index x : a.members())
        for (Index y : bm)
            if (x != y) r.insert(a.group().add(x, y));
    return r;
}

Rational doubling_constant(const GSet& a) {
    if (a.empty()) throw std::invalid_argument("doubling constant of the empty set");
    const GSet s = sumset(a, a);
    return Rational(static_cast<std::int64_t>(s.size()), static_cast<std::int64_t>(a.size()));
}

ZSet zset_sumset(const ZSet& a, const ZSet& b) {
    std::unordered_set<std::int64_t> sums;
    sums.reserve(a.size() * 2);
    for (std::int64_t x : a.elements())
        for (std::int64_t y : b.elements()) sums.insert(x + y);
    return ZSet(std::vector<std::int64_t>(sums.begin(), sums.end()));
}

GSet order2_elements(const Group& g) {
    GSet r(g);
    for (std::uint64_t x = 1; x < g.size(); ++x)
        if (g.dbl(static_cast<Index>(x)) == 0) r.insert(static_cast<Index>(x));
    return r;
}

bool has_order2_difference(const GSet& a) {
    const GSet tors = order2_elements(a.group());
    if (tors.empty()) return false;
    for (Index t : tors.members()) {
        // x and x+t both in a for some x
        for (Index x : a.members())
            if (a.contains(a.group().add(x, t))) return true;
    }
    return false;
}

cplx lambda3(const GFunction& f, const GFunction& g, const GFunction& h,
             Lambda3Method method) {
    const Group& gr = f.group();
    if (gr != g.group() || gr != h.group()) throw std::invalid_argument("group mismatch");
    const std::uint64_t n = gr.size();
    if (method == Lambda3Method::direct) {
        cplx acc{0, 0};
        for (std::uint64_t x = 0; x < n; ++x) {
            for (std::uint64_t y = 0; y < n; ++y) {
                const Index xi = static_cast<Index>(x), yi = static_cast<Index>(y);
                acc += f[gr.sub(xi, yi)] * g[x] * h[gr.add(xi, yi)];
            }
        }
        return acc / static_cast<double>(n) / static_cast<double>(n);
    }
    const SpectrumFunction F = fourier_transform(f);
    const SpectrumFunction G = fourier_transform(g);
    const SpectrumFunction H = fourier_transform(h);
    cplx acc{0, 0};
    for (std::uint64_t gi = 0; gi < n; ++gi) {
        const Index neg2 = gr.negate(gr.dbl(static_cast<Index>(gi)));
        acc += F[gi] * G[neg2] * H[gi];
    }
    return acc;
}

Ap3Count count_ap3(const GSet& a, double tol) {
    if (a.empty()) return {0, 0};
    const GFunction ind = a.indicator();
    const cplx lam = lambda3(ind, ind, ind, Lambda3Method::fourier);
    const double scaled = lam.real() * static_cast<double>(a.universe()) *
                          static_cast<double>(a.universe());
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > tol || std::abs(lam.imag()) > tol)
        throw std::runtime_error("progression count is not integral; transform is off");
    Ap3Count c;
    c.total = static_cast<std::int64_t>(rounded);
    c.nontrivial = c.total - static_cast<std::int64_t>(a.size());
    return c;
}

Ap3Count count_ap3_bruteforce(const GSet& a) {
    const Group& g = a.group();
    const std::uint64_t n = g.size();
    Ap3Count c;
    for (std::uint64_t x = 0; x < n; ++x) {
        if (!a.contains(static_cast<Index>(x))) continue;
        for (std::uint64_t y = 0; y < n; ++y) {
            const Index xi = static_cast<Index>(x), yi = static_cast<Index>(y);
            if (a.contains(g.sub(xi, yi)) && a.contains(g.add(xi, yi))) {
                ++c.total;
                if (y != 0) ++c.nontrivial;
            }
        }
    }
    return c;
}

bool is_ap3_free(const GSet& a) { return count_ap3(a).nontrivial == 0; }

std::int64_t count_ap3_nontrivial_z(const ZSet& a) {
    // ordered triples (x,y,z), x+z = 2y, not all equal
    std::int64_t c = 0;
    const auto& e = a.elements();
    for (std::int64_t x : e) {
        for (std::int64_t z : e) {
            const std::int64_t s = x + z;
            if (s % 2 != 0) continue;
            if (a.contains(s / 2) && !(x == z && x == s / 2)) ++c;
        }
    }
    return c;
}

bool is_ap3_free_z(const ZSet& a) { return count_ap3_nontrivial_z(a) == 0; }

RestrictedCore restricted_core(const GSet& a, const GSet& b) {
    if (a.group() != b.group()) throw std::invalid_argument("group mismatch");
    const Group& g = a.group();
    const GSet inter = a.intersect(b);
    GSet s(g);
    const auto am = a.members();
    const auto bm = b.members();
    for (Index x : inter.members()) {
        const Index target = g.dbl(x);
        bool blocked = false;
        for (Index p : am) {
            // q = target - p must lie in b and differ from p
            const Index q = g.sub(target, p);
            if (q != p && b.contains(q)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) s.insert(x);
    }
    const GSet plain = sumset(a, b);
    const GSet restricted = restricted_sumset(a, b);
    const GSet lhs = plain.difference(restricted);
    const GSet rhs = s.double_image();
    return {s, lhs == rhs};
}

GSet select_core_representatives(const GSet& s) {
    GSet out(s.group());
    std::map<Index, Index> fiber; // 2s -> smallest preimage in s
    for (Index x : s.members()) {
        const Index d = s.group().dbl(x);
        auto it = fiber.find(d);
        if (it == fiber.end() || x < it->second) fiber[d] = x;
    }
    for (const auto& [d, x] : fiber) out.insert(x);
    return out;
}

ZSet gen_greedy_apfree(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::vector<std::int64_t> kept;
    std::vector<bool> member(static_cast<std::size_t>(n), false);
    for (std::int64_t x = 0; x < n; ++x) {
        // Candidates arrive in increasing order, so x can only close a
        // progression as the largest term: a + x = 2b with a,b already kept.
        bool bad = false;
        for (std::int64_t b : kept) {
            const std::int64_t a = 2 * b - x;
            if (a >= 0 && a < n && member[static_cast<std::size_t>(a)]) {
                bad = true;
                break;
            }
        }
        if (!bad) {
            kept.push_back(x);
            member[static_cast<std::size_t>(x)] = true;
        }
    }
    return ZSet(std::move(kept));
}

ZSet gen_behrend(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (n < 4) return ZSet({0, 1});

    std::int64_t best_count = 0;
    std::int64_t best_dim = 1, best_d = 2, best_shell = 0;
    for (std::int64_t d = 2; d <= 40; ++d) {
        const std::int64_t base = 2 * d - 1;
        // max dimension with base^dim <= n
        std::int64_t dim = 0, cap = 1;
        while (cap <= n / base) {
            cap *= base;
            ++dim;
        }
        if (dim < 1) continue;
        // digit-square-sum histogram via dp
        const std::int64_t max_s = dim * (d - 1) * (d - 1);
        std::vector<std::int64_t> dp(static_cast<std::size_t>(max_s) + 1, 0);
        dp[0] = 1;
        for (std::int64_t i = 0; i < dim; ++i) {
            std::vector<std::int64_t> nx(dp.size(), 0);
            for (std::size_t s = 0; s < dp.size(); ++s) {
                if (!dp[s]) continue;
                for (std::int64_t a = 0; a < d; ++a) {
                    const std::size_t t = s + static_cast<std::size_t>(a * a);
                    if (t < nx.size()) nx[t] += dp[s];
                }
            }
            dp.swap(nx);
        }
        for (std::size_t s = 0; s < dp.size(); ++s) {
            if (dp[s] > best_count) {
                best_count = dp[s];
                best_dim = dim;
                best_d = d;
                best_shell = static_cast<std::int64_t>(s);
            }
        }
    }

    if (best_count < 2) return ZSet({0, 1});

    const std::int64_t base = 2 * best_d - 1;
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(best_count));
    // enumerate digit vectors on the chosen shell
    std::vector<std::int64_t> digits(static_cast<std::size_t>(best_dim), 0);
    auto rec = [&](auto&& self, std::int64_t pos, std::int64_t left, std::int64_t value,
                   std::int64_t place) -> void {
        if (pos == best_dim) {
            if (left == 0) out.push_back(value);
            return;
        }
        for (std::int64_t a = 0; a < best_d; ++a) {
            const std::int64_t aa = a * a;
            if (aa > left) break;
            self(self, pos + 1, left - aa, value + a * place, place * base);
        }
    };
    rec(rec, 0, best_shell, 0, 1);
    return ZSet(std::move(out));
}

IntervalEmbedding embed_interval(const ZSet& a) {
    if (a.empty()) throw std::invalid_argument("cannot embed the empty set");
    const std::int64_t lo = a.elements().front();
    const std::int64_t hi = a.elements().back();
    const std::int64_t diam = hi - lo;
    const std::int64_t m = 2 * diam + 1 >= 2 ? 2 * diam + 1 : 2;
    Group g({m});
    GSet img(g);
    for (std::int64_t v : a.elements()) img.insert(static_cast<Index>(v - lo));
    return {img, -lo};
}

std::string format_indices(const std::vector<Index>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

std::string format_zset(const ZSet& a) {
    std::ostringstream os;
    const auto& e = a.elements();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) os << ',';
        os << e[i];
    }
    return os.str();
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
    std::vector<std::int64_t> out;
    std::string token;
    std::istringstream is{std::string(text)};
    while (std::getline(is, token, ',')) {
        if (token.empty()) continue;
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(token, &pos);
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
        if (pos != token.size()) throw std::invalid_argument("bad integer list: " + token);
        out.push_back(v);
    }
    return out;
}

} // namespace blab
