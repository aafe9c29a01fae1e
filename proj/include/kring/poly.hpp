#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kr {

using Q = mpq_class;

inline constexpr int kMaxVars = 40;

/// Exponent vector over a fixed variable budget; unused slots stay zero.
struct Mono {
    std::array<int16_t, kMaxVars> e{};
    int deg = 0;

    bool operator==(const Mono& o) const { return deg == o.deg && e == o.e; }
    bool operator!=(const Mono& o) const { return !(*this == o); }

    static Mono var(int i, int k = 1) {
        Mono m;
        m.e[i] = static_cast<int16_t>(k);
        m.deg = k;
        return m;
    }
    bool is_one() const { return deg == 0; }
};

struct MonoHash {
    size_t operator()(const Mono& m) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < kMaxVars; ++i) {
            h ^= static_cast<uint16_t>(m.e[i]);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline Mono operator*(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
    r.deg = a.deg + b.deg;
    return r;
}

inline bool divides(const Mono& a, const Mono& b) {
    if (a.deg > b.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

// b / a, assuming divides(a, b)
inline Mono quot(const Mono& b, const Mono& a) {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int16_t>(b.e[i] - a.e[i]);
    r.deg = b.deg - a.deg;
    return r;
}

inline Mono lcm(const Mono& a, const Mono& b) {
    Mono r;
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        r.e[i] = std::max(a.e[i], b.e[i]);
        d += r.e[i];
    }
    r.deg = d;
    return r;
}

inline bool coprime(const Mono& a, const Mono& b) {
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

/// Graded reverse lexicographic comparison; returns >0 when a is larger.
inline int cmp(const Mono& a, const Mono& b) {
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    for (int i = kMaxVars - 1; i >= 0; --i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
}

struct MonoGreater {
    bool operator()(const Mono& a, const Mono& b) const { return cmp(a, b) > 0; }
};

struct Term {
    Mono m;
    Q c;
};

/// Sparse polynomial, terms kept strictly decreasing in the monomial order.
class Poly {
  public:
    std::vector<Term> t;

    Poly() = default;
    explicit Poly(const Q& c) {
        if (c != 0) t.push_back({Mono{}, c});
    }
    Poly(const Mono& m, const Q& c) {
        if (c != 0) t.push_back({m, c});
    }
    static Poly var(int i, int k = 1) { return Poly(Mono::var(i, k), Q(1)); }

    bool zero() const { return t.empty(); }
    const Mono& lm() const { return t.front().m; }
    const Q& lc() const { return t.front().c; }
    int maxdeg() const {
        int d = -1;
        for (auto& x : t) d = std::max(d, x.m.deg);
        return d;
    }
    bool operator==(const Poly& o) const {
        if (t.size() != o.t.size()) return false;
        for (size_t i = 0; i < t.size(); ++i)
            if (t[i].m != o.t[i].m || t[i].c != o.t[i].c) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Q coeff(const Mono& m) const {
        for (auto& x : t)
            if (x.m == m) return x.c;
        return Q(0);
    }
    Q constant() const { return coeff(Mono{}); }

    static Poly from_map(std::unordered_map<Mono, Q, MonoHash>& acc) {
        Poly r;
        r.t.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.t.push_back({m, c});
        std::sort(r.t.begin(), r.t.end(), [](const Term& a, const Term& b) { return cmp(a.m, b.m) > 0; });
        return r;
    }
};

inline Poly add_scaled(const Poly& a, const Poly& b, const Q& s, const Mono& shift) {
    // a + s * shift * b
    Poly r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() || j < b.t.size()) {
        if (j == b.t.size()) {
            r.t.push_back(a.t[i++]);
            continue;
        }
        Mono bm = b.t[j].m * shift;
        if (i == a.t.size()) {
            r.t.push_back({bm, s * b.t[j].c});
            ++j;
            continue;
        }
        int c = cmp(a.t[i].m, bm);
        if (c > 0) {
            r.t.push_back(a.t[i++]);
        } else if (c < 0) {
            r.t.push_back({bm, s * b.t[j].c});
            ++j;
        } else {
            Q v = a.t[i].c + s * b.t[j].c;
            if (v != 0) r.t.push_back({bm, v});
            ++i;
            ++j;
        }
    }
    return r;
}

inline Poly operator+(const Poly& a, const Poly& b) { return add_scaled(a, b, Q(1), Mono{}); }
inline Poly operator-(const Poly& a, const Poly& b) { return add_scaled(a, b, Q(-1), Mono{}); }
inline Poly operator-(const Poly& a) { return add_scaled(Poly{}, a, Q(-1), Mono{}); }

inline Poly operator*(const Q& s, const Poly& a) {
    if (s == 0) return Poly{};
    Poly r = a;
    for (auto& x : r.t) x.c *= s;
    return r;
}

inline Poly mul_term(const Poly& a, const Mono& m, const Q& c) {
    Poly r;
    if (c == 0) return r;
    r.t.reserve(a.t.size());
    for (auto& x : a.t) r.t.push_back({x.m * m, x.c * c});
    return r;
}

inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return Poly{};
    if (a.t.size() == 1) return mul_term(b, a.t[0].m, a.t[0].c);
    if (b.t.size() == 1) return mul_term(a, b.t[0].m, b.t[0].c);
    std::unordered_map<Mono, Q, MonoHash> acc;
    acc.reserve(a.t.size() * b.t.size());
    for (auto& x : a.t)
        for (auto& y : b.t) acc[x.m * y.m] += x.c * y.c;
    return Poly::from_map(acc);
}

inline Poly& operator+=(Poly& a, const Poly& b) { return a = a + b; }
inline Poly& operator-=(Poly& a, const Poly& b) { return a = a - b; }
inline Poly& operator*=(Poly& a, const Poly& b) { return a = a * b; }

inline Poly pow(const Poly& a, int k) {
    Poly r(Q(1)), base = a;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

inline Poly make_monic(const Poly& p) {
    if (p.zero()) return p;
    Q inv = 1 / p.lc();
    return inv * p;
}

/// Substitute polynomial images for variables; variables without an image stay put.
inline Poly substitute(const Poly& p, const std::vector<Poly>& images) {
    std::unordered_map<Mono, Q, MonoHash> acc;
    std::map<std::pair<int, int>, Poly> powcache;
    auto vpow = [&](int i, int k) -> const Poly& {
        auto key = std::make_pair(i, k);
        auto it = powcache.find(key);
        if (it != powcache.end()) return it->second;
        Poly base = i < static_cast<int>(images.size()) ? images[i] : Poly::var(i);
        return powcache.emplace(key, pow(base, k)).first->second;
    };
    Poly r;
    for (auto& x : p.t) {
        Poly prod(x.c);
        for (int i = 0; i < kMaxVars && !prod.zero(); ++i)
            if (x.m.e[i]) prod = prod * vpow(i, x.m.e[i]);
        r += prod;
    }
    return r;
}

inline bool uses_var(const Poly& p, int i) {
    for (auto& x : p.t)
        if (x.m.e[i]) return true;
    return false;
}

/// Exact division by a variable power when every term is divisible, otherwise nullopt-like empty flag.
inline bool divide_by_var(const Poly& p, int i, Poly& out) {
    Poly r;
    for (auto& x : p.t) {
        if (x.m.e[i] == 0) return false;
        Mono m = x.m;
        m.e[i]--;
        m.deg--;
        r.t.push_back({m, x.c});
    }
    out = r;
    return true;
}

}  // namespace kr
