#pragma once

#include "kring/linalg.hpp"
#include "kring/presentation.hpp"

#include <functional>
#include <map>

namespace kr {

/// An element kept in normal form relative to its owner.
struct RingElement {
    const Presentation* owner = nullptr;
    Poly p;

    RingElement() = default;
    RingElement(const Presentation& o, const Poly& q) : owner(&o), p(o.nf(q)) {}
    RingElement(const Presentation& o, const std::string& s) : owner(&o), p(o.nf(o.parse(s))) {}

    bool zero() const { return p.zero(); }
    std::string str() const { return owner->str(p); }
    friend RingElement operator+(const RingElement& a, const RingElement& b) { return {*a.owner, a.p + b.p}; }
    friend RingElement operator-(const RingElement& a, const RingElement& b) { return {*a.owner, a.p - b.p}; }
    friend RingElement operator*(const RingElement& a, const RingElement& b) { return {*a.owner, a.p * b.p}; }
    bool operator==(const RingElement& o) const { return owner == o.owner && p == o.p; }
};

inline Poly normal_form(const Poly& e, const Presentation& p) { return p.nf(e); }
inline bool ideal_membership(const Poly& e, const Presentation& p) { return p.member(e); }

/// Verified homomorphism; images are given per source generator.
struct RingMap {
    const Presentation* src = nullptr;
    const Presentation* dst = nullptr;
    std::vector<Poly> images;

    Poly operator()(const Poly& e) const { return dst->nf(substitute(e, images)); }
};

inline RingMap ring_map(const Presentation& src, const Presentation& dst, const std::map<std::string, Poly>& given) {
    RingMap f{&src, &dst, std::vector<Poly>(src.ngens())};
    std::vector<bool> set(src.ngens(), false);
    for (auto& [name, img] : given) {
        int i = src.at(name);
        f.images[i] = dst.nf(img);
        set[i] = true;
    }
    for (int i = 0; i < src.ngens(); ++i) {
        if (set[i]) continue;
        const auto& g = src.gens[i];
        if (g.kind == GenKind::Beta && dst.base.beta) {
            f.images[i] = Poly::var(dst.at("beta"));
            set[i] = true;
        }
    }
    // reciprocals follow their partners when the partner image is an invertible generator or a unit constant
    for (int i = 0; i < src.ngens(); ++i) {
        if (set[i]) continue;
        const auto& g = src.gens[i];
        if (g.kind == GenKind::Reciprocal && set[g.partner]) {
            const Poly& im = f.images[g.partner];
            if (im.t.size() == 1 && im.t[0].m.is_one()) {
                f.images[i] = Poly(1 / im.t[0].c);
                set[i] = true;
            } else if (im.t.size() == 1 && im.t[0].m.deg == 1 && im.t[0].c == 1) {
                int v = 0;
                while (!im.t[0].m.e[v]) ++v;
                if (dst.gens[v].invertible || dst.gens[v].kind == GenKind::Reciprocal) {
                    f.images[i] = Poly::var(dst.gens[v].partner);
                    set[i] = true;
                }
            }
        }
    }
    for (int i = 0; i < src.ngens(); ++i)
        if (!set[i]) throw RingError("ring_map: no image for " + src.gens[i].name);
    for (int i = 0; i < src.ngens(); ++i) {
        const Poly& im = f.images[i];
        if (im.zero()) continue;
        if (!dst.is_homogeneous(im) || dst.weight(im.t[0].m) != src.gens[i].weight)
            throw RingError("ring_map: weight mismatch at " + src.gens[i].name + " -> " + dst.str(im));
    }
    for (auto& r : src.all_relations()) {
        Poly v = f(r);
        if (!v.zero()) throw RingError("ring_map: relation " + src.str(r) + " maps to " + dst.str(v));
    }
    return f;
}

inline RingMap ring_map(const Presentation& src, const Presentation& dst, const std::map<std::string, std::string>& given) {
    std::map<std::string, Poly> g;
    for (auto& [k, v] : given) g[k] = dst.parse(v);
    return ring_map(src, dst, g);
}

namespace detail {

// copies generators of `from` into `into`, renaming on clash; returns the old->new index table
inline std::vector<int> append_gens(Presentation& into, const Presentation& from, const std::string& suffix) {
    std::vector<int> map(from.ngens(), -1);
    for (int i = 0; i < from.ngens(); ++i) {
        const auto& g = from.gens[i];
        if (g.kind == GenKind::Beta) {
            map[i] = into.at("beta");
            continue;
        }
        if (g.kind == GenKind::Reciprocal) continue;
        std::string name = g.name;
        while (into.index(name) >= 0) name += suffix;
        if (g.kind == GenKind::InverseOf) {
            std::vector<Poly> img(from.ngens());
            for (int j = 0; j < from.ngens(); ++j) img[j] = map[j] >= 0 ? Poly::var(map[j]) : Poly::var(j);
            map[i] = into.add_inverse(name, substitute(g.inverts, img));
        } else {
            map[i] = into.add_gen(name, g.weight, g.invertible, g.adic);
            if (g.invertible) map[g.partner] = into.gens[map[i]].partner;
        }
    }
    return map;
}

inline std::vector<Poly> var_images(const std::vector<int>& map) {
    std::vector<Poly> v(map.size());
    for (size_t i = 0; i < map.size(); ++i) v[i] = Poly::var(map[i]);
    return v;
}

}  // namespace detail

/// a (x)_c b for maps f: c -> a and g: c -> b.
inline Presentation tensor_over(const RingMap& f, const RingMap& g) {
    if (f.src != g.src) throw RingError("tensor_over: maps out of different rings");
    const Presentation& A = *f.dst;
    const Presentation& B = *g.dst;
    if (A.base.inverted != B.base.inverted || A.base.rational != B.base.rational)
        throw RingError("tensor_over: incompatible base rings");
    BaseRing base = A.base;
    base.beta = A.base.beta || B.base.beta;
    Presentation T(base);
    auto ma = detail::append_gens(T, A, "_1");
    auto mb = detail::append_gens(T, B, "_2");
    auto ia = detail::var_images(ma);
    auto ib = detail::var_images(mb);
    for (auto& r : A.rels) T.add_rel(substitute(r, ia));
    for (auto& r : B.rels) T.add_rel(substitute(r, ib));
    const Presentation& C = *f.src;
    for (int i = 0; i < C.ngens(); ++i) {
        if (C.gens[i].kind == GenKind::Reciprocal || C.gens[i].kind == GenKind::Beta) continue;
        T.add_rel(substitute(f.images[i], ia) - substitute(g.images[i], ib));
    }
    return T;
}

/// Standard monomials of degree <= maxdeg with weight in [wlo, whi].
inline std::vector<Mono> standard_monomials(const Presentation& P, int maxdeg, int wlo, int whi) {
    const Groebner& G = P.gb();
    int n = P.ngens();
    std::vector<int> lo(n + 1, 0), hi(n + 1, 0);
    for (int i = n - 1; i >= 0; --i) {
        lo[i] = std::min(lo[i + 1], P.gens[i].weight);
        hi[i] = std::max(hi[i + 1], P.gens[i].weight);
    }
    std::vector<Mono> out;
    Mono cur;
    std::function<void(int, int, int)> rec = [&](int i, int w, int budget) {
        if (w + budget * lo[i] > whi || w + budget * hi[i] < wlo) return;
        if (i == n) {
            if (w >= wlo && w <= whi) out.push_back(cur);
            return;
        }
        for (int k = 0; k <= budget; ++k) {
            cur.e[i] = static_cast<int16_t>(k);
            cur.deg += k;
            bool ok = k == 0 || G.standard(cur);
            if (ok) rec(i + 1, w + k * P.gens[i].weight, budget - k);
            cur.deg -= k;
            cur.e[i] = 0;
            if (!ok) break;
        }
    };
    rec(0, 0, maxdeg);
    std::sort(out.begin(), out.end(), [](const Mono& a, const Mono& b) { return cmp(a, b) < 0; });
    return out;
}

struct SliceCount {
    long long dim = 0;
    bool saturated = true;     // false once a standard monomial beyond trunc was exhibited
    int witness_degree = -1;
};

/// Dimension over the rationalized base of the weight slice, counting monomials of degree <= trunc.
inline SliceCount graded_dimension(const Presentation& P, int weight, int trunc, int probe = -1) {
    if (probe < 0) probe = std::max(8, trunc);
    SliceCount r;
    auto ms = standard_monomials(P, trunc + probe, weight, weight);
    for (auto& m : ms) {
        if (m.deg <= trunc)
            ++r.dim;
        else if (r.saturated || m.deg < r.witness_degree) {
            r.saturated = false;
            r.witness_degree = m.deg;
        }
    }
    return r;
}

/// Variant for rings graded by degree as well: the (weight, degree) slice.
inline long long bigraded_dimension(const Presentation& P, int weight, int degree) {
    long long c = 0;
    for (auto& m : standard_monomials(P, degree, weight, weight))
        if (m.deg == degree) ++c;
    return c;
}

/// beta -> 0 or beta -> 1.  Reciprocals of elements that become constants are eliminated.
struct Specialization {
    Presentation target;
    std::vector<Poly> images;
    const Presentation* source = nullptr;

    Poly operator()(const Poly& e) const { return target.nf(substitute(e, images)); }
};

enum class BetaMode { Zero, Unit };

inline Specialization beta_specialize(const Presentation& P, BetaMode mode) {
    if (!P.base.beta) throw RingError("beta_specialize: no beta in " + P.display());
    BaseRing b = P.base;
    b.beta = false;
    Specialization s{Presentation(b), std::vector<Poly>(P.ngens()), &P};
    int bi = P.at("beta");
    s.images[bi] = mode == BetaMode::Zero ? Poly() : Poly(Q(1));
    auto img_of = [&](const Poly& e) { return substitute(e, s.images); };
    for (int i = 0; i < P.ngens(); ++i) {
        const auto& g = P.gens[i];
        if (i == bi || g.kind == GenKind::Reciprocal) continue;
        int w = mode == BetaMode::Zero ? g.weight : 0;
        if (g.kind == GenKind::InverseOf) {
            Poly e = img_of(g.inverts);
            if (e.zero()) throw RingError("beta_specialize: residual beta denominator in 1/(" + P.str(g.inverts) + ")");
            if (e.t.size() == 1 && e.t[0].m.is_one()) {
                s.images[i] = Poly(1 / e.t[0].c);
                continue;
            }
            // weights are rewritten below for the unit chart
            s.images[i] = Poly::var(s.target.add_inverse(g.name, e));
            continue;
        }
        int k = s.target.add_gen(g.name, w, g.invertible, g.adic);
        s.target.gens[k].label = g.label;
        s.images[i] = Poly::var(k);
        if (g.invertible) s.images[g.partner] = Poly::var(s.target.gens[k].partner);
    }
    // relations untouched by the substitution keep their written form
    auto renamed = [&](const Poly& r) {
        for (auto& t : r.t)
            for (int i = 0; i < P.ngens(); ++i)
                if (t.m.e[i] && (i == bi || P.gens[i].kind == GenKind::InverseOf)) return false;
        return true;
    };
    for (size_t j = 0; j < P.rels.size(); ++j)
        s.target.add_rel(img_of(P.rels[j]), renamed(P.rels[j]) ? P.rel_text[j] : std::string(), P.rel_shown[j]);
    return s;
}

inline Poly beta_specialize(const Presentation& P, const Poly& e, BetaMode mode) {
    return beta_specialize(P, mode)(e);
}

/// P over a different localization of Z. The monic reduced Groebner basis must have coefficients in the
/// new base, which makes normal forms exact there.
inline Presentation relocalize(const Presentation& P, std::vector<long> primes) {
    if (P.base.rational) throw RingError("relocalize: presentation is over Q");
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (long p : primes) {
        bool prime = p >= 2;
        for (long d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
        if (!prime) throw RingError("relocalize: " + std::to_string(p) + " is not a prime");
    }
    Presentation out = P;
    out.base.inverted = primes;
    for (auto& g : out.gb().g)
        for (auto& t : g.t)
            if (!out.base.allows(t.c))
                throw RingError("relocalize: " + out.str(g) + " is not defined over " + out.base.label());
    return out;
}

}  // namespace kr
