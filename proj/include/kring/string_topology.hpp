#pragma once

#include "kring/linalg.hpp"
#include "kring/loop_homology.hpp"

#include <map>

namespace kr {

/// (Z[x,b]/b x^k)/x^(k+l) with x in weight -2i and b in weight 2j.
struct DerivedQuotientSpec {
    int i = 1, j = 1, k = 1, l = 1;
    std::string x = "x", b = "b";
    BaseRing base = BaseRing::Z();

    void check() const {
        if (i < 1 || j < 1 || k < 1 || l < 1) throw RingError("derived quotient: i, j, k, l must be positive");
    }
    int sigma_weight() const { return 2 * (j - (k + l) * i) + 1; }
};

struct HomotopyPresentation {
    Presentation ring;
    std::string sigma = "sigma";
    std::string suspends;  // the element with two nullhomotopies
    DerivedQuotientSpec spec;
    std::string space;
};

namespace detail {

inline std::string power(const std::string& x, int e) { return e == 1 ? x : x + "^" + std::to_string(e); }

}  // namespace detail

/// Homotopy of the derived quotient, sheared so that sigma sits in odd weight.
inline HomotopyPresentation derived_quotient(const DerivedQuotientSpec& s) {
    s.check();
    HomotopyPresentation h;
    h.spec = s;
    h.ring = Presentation(s.base);
    h.ring.add_gen(s.x, -2 * s.i);
    h.ring.add_gen(s.b, 2 * s.j);
    h.ring.add_gen(h.sigma, s.sigma_weight());
    using detail::power;
    h.ring.add_rel(s.b + "*" + power(s.x, s.k));
    h.ring.add_rel(power(s.x, s.k + s.l));
    h.ring.add_rel(h.sigma + "^2");
    h.ring.add_rel(power(s.x, s.k) + "*" + h.sigma);
    h.suspends = s.b + "*" + power(s.x, s.k + s.l);
    return h;
}

/// (degree, sheared weight) -> dimension over Q; degree is the sigma exponent.
using KoszulTable = std::map<std::pair<int, int>, long long>;

inline KoszulTable derived_quotient_dims(const HomotopyPresentation& h, int weight_bound) {
    const Presentation& P = h.ring;
    int si = P.at(h.sigma);
    int lo = 1 << 20;
    for (auto& g : P.gens) lo = std::min(lo, std::abs(g.weight));
    int maxdeg = (3 * weight_bound + 2 * P.max_abs_weight() * (h.spec.k + h.spec.l + 2)) / std::max(lo, 1) + 2;
    KoszulTable t;
    for (auto& m : standard_monomials(P, maxdeg, -weight_bound, weight_bound)) ++t[{m.e[si], P.weight(m)}];
    return t;
}

/// Homology of M --x^(k+l)--> M for M = Z[x,b]/(b x^k), by linear algebra on monomial slices.
inline KoszulTable koszul_oracle(const DerivedQuotientSpec& s, int weight_bound) {
    s.check();
    Presentation M(BaseRing::Qq());
    int x = M.add_gen("x", -2 * s.i);
    int b = M.add_gen("b", 2 * s.j);
    M.add_rel(Poly::var(b) * Poly::var(x, s.k));
    int shift = 2 * s.i * (s.k + s.l);
    Poly f = Poly::var(x, s.k + s.l);
    int maxdeg = (weight_bound + shift) / 2 + s.k + s.l + 2;
    auto slice = [&](int w) { return standard_monomials(M, maxdeg + (std::abs(w) + 1) / 2, w, w); };
    // rank of multiplication M_w -> M_(w - shift)
    auto rank_from = [&](int w) -> size_t {
        Coords co;
        std::vector<SVec> cols;
        for (auto& m : slice(w)) cols.push_back(co.vec(M.nf(mul_term(f, m, Q(1)))));
        return rank_of(cols);
    };
    KoszulTable t;
    for (int w = -weight_bound; w <= weight_bound; ++w) {
        long long h0 = static_cast<long long>(slice(w).size() - rank_from(w + shift));
        if (h0) t[{0, w}] = h0;
        // a cycle m in weight v gives m*sigma in sheared weight v - shift + 1
        int v = w + shift - 1;
        long long h1 = static_cast<long long>(slice(v).size() - rank_from(v));
        if (h1) t[{1, w}] = h1;
    }
    return t;
}

enum class Space { SphereOdd, SphereEven, CP, HP, OP2 };

inline std::string to_string(Space s) {
    switch (s) {
        case Space::SphereOdd: return "s-odd";
        case Space::SphereEven: return "s-even";
        case Space::CP: return "cpn";
        case Space::HP: return "hpn";
        case Space::OP2: return "op2";
    }
    return "";
}

inline Space space_from_string(const std::string& id) {
    for (Space s : {Space::SphereOdd, Space::SphereEven, Space::CP, Space::HP, Space::OP2})
        if (to_string(s) == id) return s;
    throw RingError("unknown space " + id);
}

inline std::string space_title(Space s, int n) {
    switch (s) {
        case Space::SphereOdd: return "S^" + std::to_string(2 * n + 1);
        case Space::SphereEven: return "S^" + std::to_string(2 * n);
        case Space::CP: return "CP^" + std::to_string(n);
        case Space::HP: return "HP^" + std::to_string(n);
        case Space::OP2: return "OP^2";
    }
    return "";
}

namespace detail {

inline BaseRing invert_factors(long n) {
    BaseRing b;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            b.inverted.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) b.inverted.push_back(n);
    return b;
}

}  // namespace detail

/// Fiber of a loop presentation Z[.., x, .., b]/(b * top) over the origin: beta -> 0, inverted
/// elements -> their constant value, every other generator to a polynomial in x, b.
struct FiberRestriction {
    Presentation target;
    std::string x, b;
    int k = 0;
};

inline FiberRestriction restrict_to_fiber(const Presentation& R, const std::string& x, const std::string& b,
                                          const std::map<std::string, std::string>& images) {
    FiberRestriction f;
    f.x = x;
    f.b = b;
    f.target = Presentation(BaseRing::Qq());
    f.target.add_gen(x, R.gens[R.at(x)].weight);
    f.target.add_gen(b, R.gens[R.at(b)].weight);
    std::vector<Poly> img(R.ngens());
    std::vector<int> pending;
    for (int i = 0; i < R.ngens(); ++i) {
        const auto& g = R.gens[i];
        if (g.kind == GenKind::Beta || g.kind == GenKind::Reciprocal) continue;
        if (g.kind == GenKind::InverseOf) {
            pending.push_back(i);
            continue;
        }
        auto it = images.find(g.name);
        if (g.name == x || g.name == b)
            img[i] = f.target.var(g.name);
        else if (it != images.end())
            img[i] = f.target.parse(it->second);
        else
            throw RingError("restrict_to_fiber: no image for " + g.name);
        if (!img[i].zero() && (!f.target.is_homogeneous(img[i]) || f.target.homogeneous_weight(img[i]) != g.weight))
            throw RingError("restrict_to_fiber: image of " + g.name + " has the wrong weight");
    }
    for (int i : pending) {
        Poly e = substitute(R.gens[i].inverts, img);
        if (e.t.size() != 1 || !e.t[0].m.is_one()) throw RingError("restrict_to_fiber: " + R.gens[i].name + " is not a unit on the fiber");
        img[i] = Poly(1 / e.t[0].c);
    }
    Poly rel;
    for (auto& r : R.rels) {
        Poly p = substitute(r, img);
        if (p.zero()) continue;
        if (!rel.zero()) throw RingError("restrict_to_fiber: more than one surviving relation");
        rel = p;
    }
    int xi = f.target.at(x), bi = f.target.at(b);
    if (rel.t.size() != 1 || rel.t[0].m.e[bi] != 1 || rel.t[0].m.deg != 1 + rel.t[0].m.e[xi])
        throw RingError("restrict_to_fiber: surviving relation is not b*x^k");
    f.k = rel.t[0].m.e[xi];
    f.target.add_rel(b + "*" + detail::power(x, f.k));
    return f;
}

/// pi_* of chains on the free loop space with the Chas-Sullivan product.
inline HomotopyPresentation chas_sullivan(Space s, int n = 0) {
    HomotopyPresentation h;
    h.space = space_title(s, n);
    if (s == Space::SphereOdd) {
        if (n < 1) throw RingError("s-odd needs j >= 1");
        h.ring = Presentation(BaseRing::Zp());
        h.ring.add_gen("u", 2 * n);
        h.ring.add_gen(h.sigma, -2 * n - 1);
        h.ring.add_rel(h.sigma + "^2");
        h.suspends = "c" + std::to_string(n + 1);
        h.spec = {};
        return h;
    }
    std::string id, x;
    int top = 0;  // x^(k+l) is killed
    std::map<std::string, std::string> images;
    BaseRing base;
    int rank = n;
    switch (s) {
        case Space::SphereEven:
            if (n < 1) throw RingError("s-even needs j >= 1");
            id = "bn";
            x = "c" + std::to_string(n);
            for (int i = 1; i < n; ++i) images["p" + std::to_string(i)] = "0";
            top = 2;
            base = BaseRing::Zp();
            break;
        case Space::CP:
            if (n < 1) throw RingError("cpn needs n >= 1");
            id = "an";
            x = "c1";
            for (int i = 2; i < n; ++i) images["c" + std::to_string(i)] = "0";
            if (n > 1) images["c" + std::to_string(n)] = "c1^" + std::to_string(n);
            top = n + 1;
            base = detail::invert_factors(n + 1);
            break;
        case Space::HP:
            if (n < 1) throw RingError("hpn needs n >= 1");
            id = "hp";
            rank = n + 1;
            x = "p1";
            for (int i = 2; i < n; ++i) images["p" + std::to_string(i)] = "0";
            if (n > 1) images["p" + std::to_string(n)] = "p1^" + std::to_string(n);
            top = n + 1;
            base = detail::invert_factors(n + 1);
            break;
        case Space::OP2:
            id = "f4";
            rank = 4;
            x = "p2";
            images = {{"p1", "0"}, {"p3", "0"}, {"p4", "p2^2"}};
            top = 3;
            base = detail::invert_factors(3);
            h.space = space_title(s, 2);
            break;
        default: break;
    }
    Presentation R = equivariant_loop_homology(id, rank).ring;
    FiberRestriction f = restrict_to_fiber(R, x, "b", images);
    DerivedQuotientSpec spec;
    spec.x = x;
    spec.i = -R.gens[R.at(x)].weight / 2;
    spec.j = R.gens[R.at("b")].weight / 2;
    spec.k = f.k;
    spec.l = top - f.k;
    spec.base = base;
    std::string space = h.space;
    h = derived_quotient(spec);
    h.space = space;
    return h;
}

}  // namespace kr
