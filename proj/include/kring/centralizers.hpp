#pragma once

#include "kring/loop_homology.hpp"

#include <functional>

namespace kr {

// ---------------------------------------------------------------------------------------------
// Quotient rings k[t]/chi(t) and their units

enum class Family { A, B, C, D, G2 };

inline std::string to_string(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::G2: return "G2";
    }
    return "?";
}

/// Universal characteristic polynomial of a family, with the quotient ring as a free module over the coefficients.
/// t (and v for D) sit first in the variable order.  Products are reduced by the rewrite rules lhs -> rhs.
struct CharPolyFamily {
    Family family = Family::A;
    int n = 0;
    Presentation ring;  // t, v, coefficients, and any generic elements added later; no relations
    std::vector<Poly> chi;  // defining relations; one polynomial except for D
    std::vector<std::string> coefficients;
    std::vector<Mono> basis;
    std::vector<std::pair<Mono, Poly>> rules;
    std::string pairing;

    int rank() const { return static_cast<int>(basis.size()); }
    Poly t() const { return ring.var("t"); }

    Poly reduce(const Poly& p) const {
        Poly cur = p;
        for (int guard = 0; guard < 10000; ++guard) {
            bool changed = false;
            std::unordered_map<Mono, Q, MonoHash> acc;
            for (auto& term : cur.t) {
                const std::pair<Mono, Poly>* hit = nullptr;
                for (auto& r : rules)
                    if (divides(r.first, term.m)) {
                        hit = &r;
                        break;
                    }
                if (!hit) {
                    acc[term.m] += term.c;
                    continue;
                }
                changed = true;
                Mono rest = quot(term.m, hit->first);
                for (auto& x : hit->second.t) acc[x.m * rest] += x.c * term.c;
            }
            cur = Poly::from_map(acc);
            if (!changed) return cur;
        }
        throw RingError("CharPolyFamily: rewriting did not terminate");
    }

    /// t -> -t (and v -> -v)
    Poly bar(const Poly& p) const {
        std::vector<Poly> img(ring.ngens());
        for (int i = 0; i < ring.ngens(); ++i) img[i] = Poly::var(i);
        img[ring.at("t")] = -t();
        if (ring.index("v") >= 0) img[ring.at("v")] = -ring.var("v");
        return substitute(p, img);
    }

    /// Coordinates on the basis, as polynomials in the remaining variables.
    std::vector<Poly> coords(const Poly& p) const {
        Poly r = reduce(p);
        std::vector<std::unordered_map<Mono, Q, MonoHash>> acc(basis.size());
        int ti = ring.at("t"), vi = ring.index("v");
        for (auto& term : r.t) {
            Mono b;
            b.e[ti] = term.m.e[ti];
            if (vi >= 0) b.e[vi] = term.m.e[vi];
            b.deg = b.e[ti] + (vi >= 0 ? b.e[vi] : 0);
            size_t k = 0;
            while (k < basis.size() && basis[k] != b) ++k;
            if (k == basis.size()) throw RingError("CharPolyFamily: reduced form leaves the basis");
            acc[k][quot(term.m, b)] += term.c;
        }
        std::vector<Poly> out;
        for (auto& a : acc) out.push_back(Poly::from_map(a));
        return out;
    }

    /// Adds generators prefix0.. and returns sum prefix_i * basis_i, homogeneous of weight 0.
    Poly generic(const std::string& prefix) {
        Poly f;
        for (size_t i = 0; i < basis.size(); ++i) {
            int k = ring.add_gen(prefix + std::to_string(i), -ring.weight(basis[i]));
            f += Poly::var(k) * Poly(basis[i], Q(1));
        }
        return f;
    }
};

namespace detail {

inline std::string num(const std::string& s, int i) { return s + std::to_string(i); }

// monic t^N + sum coeff_k t^(N-k) -> rule t^N -> -(rest)
inline void univariate(CharPolyFamily& F, int N, const std::vector<std::pair<int, Poly>>& lower) {
    Poly T = F.t(), chi = pow(T, N);
    for (auto& [k, c] : lower) chi += c * pow(T, k);
    F.chi = {chi};
    F.rules = {{Mono::var(F.ring.at("t"), N), pow(T, N) - chi}};
    for (int i = 0; i < N; ++i) F.basis.push_back(Mono::var(F.ring.at("t"), i));
}

}  // namespace detail

inline CharPolyFamily char_poly_family(Family fam, int n) {
    CharPolyFamily F;
    F.family = fam;
    F.n = n;
    F.ring = Presentation(BaseRing::Zp());
    F.ring.add_gen("t", -2);
    auto coeff = [&](const std::string& name, int w) {
        F.coefficients.push_back(name);
        return Poly::var(F.ring.add_gen(name, w));
    };
    using detail::num;
    switch (fam) {
        case Family::A: {
            if (n < 1) throw RingError("family A needs n >= 1");
            std::vector<std::pair<int, Poly>> lo;
            for (int i = 1; i <= n; ++i) lo.push_back({n - i, coeff(num("c", i), -2 * i)});
            detail::univariate(F, n, lo);
            F.pairing = "none";
            break;
        }
        case Family::B: {
            if (n < 1) throw RingError("family B needs n >= 1");
            std::vector<std::pair<int, Poly>> lo;
            for (int i = 1; i <= n; ++i) lo.push_back({2 * n + 1 - 2 * i, coeff(num("p", i), -4 * i)});
            detail::univariate(F, 2 * n + 1, lo);
            F.pairing = "symmetric, f(t)^-1 = f(-t)";
            break;
        }
        case Family::C: {
            if (n < 1) throw RingError("family C needs n >= 1");
            std::vector<std::pair<int, Poly>> lo;
            for (int i = 1; i <= n; ++i) lo.push_back({2 * n - 2 * i, coeff(num("p", i), -4 * i)});
            detail::univariate(F, 2 * n, lo);
            F.pairing = "symplectic, f(t)^-1 = f(-t)";
            break;
        }
        case Family::D: {
            if (n < 2) throw RingError("family D needs n >= 2");
            int v = F.ring.add_gen("v", -(2 * n - 2));
            Poly T = F.t(), V = Poly::var(v);
            std::vector<Poly> p;
            for (int i = 1; i < n; ++i) p.push_back(coeff(num("p", i), -4 * i));
            Poly cn = coeff(num("c", n), -2 * n);
            // t^(2n-2) + p1 t^(2n-4) + ... + p_(n-1), without v^2
            Poly even = pow(T, 2 * n - 2);
            for (int i = 1; i < n; ++i) even += p[i - 1] * pow(T, 2 * n - 2 - 2 * i);
            F.chi = {T * V - cn, even + V * V};
            Poly tail = T * (even - pow(T, 2 * n - 2));
            int ti = F.ring.at("t");
            F.rules = {{Mono::var(ti) * Mono::var(v), cn},
                       {Mono::var(v, 2), -even},
                       {Mono::var(ti, 2 * n - 1), -tail - cn * V}};
            for (int i = 0; i <= 2 * n - 2; ++i) F.basis.push_back(Mono::var(ti, i));
            F.basis.push_back(Mono::var(v));
            F.pairing = "symmetric on k[t,v], f(t,v)^-1 = f(-t,-v)";
            break;
        }
        case Family::G2: {
            F.n = 2;
            Poly c2 = coeff("c2", -4), c6 = coeff("c6", -12);
            detail::univariate(F, 7, {{5, Q(-2) * c2}, {3, c2 * c2}, {1, -c6}});
            F.pairing = "orthogonal; the 3-form condition is not computed";
            break;
        }
    }
    return F;
}

inline CharPolyFamily g2_char_poly() { return char_poly_family(Family::G2, 2); }

inline Poly quotient_unit_mul(const CharPolyFamily& F, const Poly& f, const Poly& g) { return F.reduce(f * g); }

/// Basis coordinates of f(t) f(-t) - 1; empty for type A.
inline std::vector<Poly> symmetry_condition(const CharPolyFamily& F, const Poly& f) {
    if (F.family == Family::A) return {};
    return F.coords(F.reduce(f * F.bar(f)) - Poly(Q(1)));
}

/// cond(fg) - [sum_i cond(f)_i * coords(e_i g gbar) + cond(g)]; all entries vanish when the
/// conditions cut out a subgroup with the product expressed in the ideal of the factors' conditions.
inline std::vector<Poly> symmetry_closure_residual(const CharPolyFamily& F, const Poly& f, const Poly& g) {
    auto lhs = symmetry_condition(F, quotient_unit_mul(F, f, g));
    auto cf = symmetry_condition(F, f);
    auto cg = symmetry_condition(F, g);
    Poly ggbar = F.reduce(g * F.bar(g));
    std::vector<Poly> rhs = cg;
    for (size_t i = 0; i < F.basis.size(); ++i) {
        auto col = F.coords(Poly(F.basis[i], Q(1)) * ggbar);
        for (size_t k = 0; k < rhs.size(); ++k) rhs[k] += cf[i] * col[k];
    }
    std::vector<Poly> out;
    for (size_t k = 0; k < lhs.size(); ++k) out.push_back(lhs[k] - rhs[k]);
    return out;
}

/// e_j of {0, +-l1, +-l2, +-l3} with l3 = -(l1 + l2), next to (-1)^j [t^(7-j)] chi with c2, c6 substituted.
struct G2Identity {
    int j = 0;
    Poly elementary;
    Poly expected;
};

inline std::vector<G2Identity> g2_symmetric_identities(int jmax = 9) {
    Presentation L(BaseRing::Qq());
    Poly l1 = Poly::var(L.add_gen("l1", -2)), l2 = Poly::var(L.add_gen("l2", -2));
    Poly l3 = -(l1 + l2);
    std::vector<Poly> roots = {Poly(), l1, -l1, l2, -l2, l3, -l3};
    CharPolyFamily F = g2_char_poly();
    std::vector<Poly> img(F.ring.ngens());
    img[F.ring.at("c2")] = l1 * l1 + l2 * l2 + l1 * l2;
    img[F.ring.at("c6")] = pow(l1 * l2 * (l1 + l2), 2);
    auto chi = F.coords(F.chi[0] - pow(F.t(), 7));  // lower coefficients, by power of t
    std::vector<G2Identity> out;
    for (int j = 0; j <= jmax; ++j) {
        G2Identity g;
        g.j = j;
        g.elementary = detail::esym(roots, j);
        if (j == 0) g.expected = Poly(Q(1));
        else if (j <= 7) g.expected = Q(j % 2 ? -1 : 1) * substitute(chi[7 - j], img);
        out.push_back(g);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// beta-deformed matrix groups

namespace detail {

inline Poly det(const Presentation& P, const Matrix& M) {
    size_t n = M.size();
    if (n == 0) return Poly(Q(1));
    if (n == 1) return M[0][0];
    Poly acc;
    for (size_t j = 0; j < n; ++j) {
        if (M[0][j].zero()) continue;
        Matrix minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(M[i][k]);
            minor.push_back(row);
        }
        Poly t = M[0][j] * det(P, minor);
        acc += j % 2 ? -t : t;
    }
    return P.nf(acc);
}

// p / v for a generator v dividing every term
inline Poly divide_by_var(const Poly& p, int v, const std::string& who) {
    Poly r = p;
    for (auto& x : r.t) {
        if (!x.m.e[v]) throw RingError(who + ": not divisible");
        --x.m.e[v];
        --x.m.deg;
    }
    return r;
}

}  // namespace detail

/// (det(I + beta A) - 1) / beta
inline Poly slnbeta_condition(const Presentation& P, const Matrix& A) {
    size_t n = A.size();
    Poly beta = P.var("beta");
    Matrix M(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw RingError("slnbeta_condition: matrix not square");
        for (size_t j = 0; j < n; ++j) M[i][j] = (i == j ? Poly(Q(1)) : Poly()) + beta * A[i][j];
    }
    return detail::divide_by_var(detail::det(P, M) - Poly(Q(1)), P.at("beta"), "slnbeta_condition");
}

/// Generic n x n matrix a11..ann of weight 0 over Z'[beta].
inline Presentation generic_matrix_ring(int n, Matrix& A) {
    Presentation P(BaseRing::Zp(true));
    A.assign(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = Poly::var(P.add_gen("a" + std::to_string(i + 1) + std::to_string(j + 1), 0));
    return P;
}

/// (1 + beta x, beta y; 0, 1 + beta w)
struct BBetaElement {
    Poly x, y, w;
};

inline Matrix bbeta_matrix(const Presentation& P, const BBetaElement& g) {
    Poly one(Q(1)), beta = P.var("beta");
    return {{P.nf(one + beta * g.x), P.nf(beta * g.y)}, {Poly(), P.nf(one + beta * g.w)}};
}

inline BBetaElement bbeta_from_matrix(const Presentation& P, const Matrix& M) {
    if (M.size() != 2 || M[0].size() != 2 || M[1].size() != 2 || !P.nf(M[1][0]).zero())
        throw RingError("bbeta: shape violation");
    int b = P.at("beta");
    Poly one(Q(1));
    auto part = [&](const Poly& e) {
        try {
            return detail::divide_by_var(P.nf(e), b, "bbeta");
        } catch (const RingError&) {
            throw RingError("bbeta: shape violation");
        }
    };
    return {part(M[0][0] - one), part(M[0][1]), part(M[1][1] - one)};
}

inline BBetaElement bbeta_mul(const Presentation& P, const BBetaElement& g, const BBetaElement& h) {
    return bbeta_from_matrix(P, mat_mul(P, bbeta_matrix(P, g), bbeta_matrix(P, h)));
}

enum class Closure { B_beta, V_beta };

/// Affine closures of SL2 x^{G_a} B_beta and SL2 x^{G_a} V_beta.
inline Presentation sl2_closures(Closure variant) {
    Presentation P(BaseRing::Zp(true));
    P.add_gen("a", 0);
    P.add_gen("c", -2);
    P.add_gen("B", 0);
    P.add_gen("D", -2);
    Poly one(Q(1)), beta = P.var("beta");
    if (variant == Closure::B_beta) {
        P.add_gen("x", -2);
        P.add_inverse("y", one + beta * P.var("x"), "1+beta*x");
        P.add_rel(P.var("c") * P.var("B") - P.var("a") * P.var("D") - n_series(P, -2), "c*B - a*D - [-2](x)");
    } else {
        P.add_inverse("u", one + beta * (P.var("c") * P.var("B") - P.var("a") * P.var("D")), "1+beta*(c*B-a*D)");
    }
    return P;
}

/// SL2 x B_beta with the G_a translation by z; B and D should be fixed, and cB - aD - [-2](x) lie in the ideal.
struct ClosureInvariance {
    Presentation ring;  // Z'[beta, a, b, c, d, x, 1/(1+beta x), y, z]/(ad - bc - 1)
    Poly B, D;
    Poly moved_B, moved_D;  // images under the translation, minus B and D
    Poly relation;          // cB - aD - [-2](x), reduced
};

inline ClosureInvariance sl2_closure_invariance() {
    ClosureInvariance r;
    Presentation& P = r.ring;
    P = Presentation(BaseRing::Zp(true));
    P.add_gen("a", 0);
    P.add_gen("b", 2);
    P.add_gen("c", -2);
    P.add_gen("d", 0);
    P.add_gen("x", -2);
    Poly one(Q(1));
    P.add_inverse("r", one + P.var("beta") * P.var("x"), "1+beta*x");
    P.add_gen("y", 0);
    P.add_gen("z", 2);
    P.add_rel("a*d - b*c - 1");
    Poly m2 = n_series(P, -2, "x", "r");
    Poly a = P.var("a"), b = P.var("b"), c = P.var("c"), d = P.var("d"), y = P.var("y"), z = P.var("z");
    r.B = P.nf(a * y - m2 * b);
    r.D = P.nf(c * y - m2 * d);
    std::vector<Poly> img(P.ngens());
    for (int i = 0; i < P.ngens(); ++i) img[i] = Poly::var(i);
    img[P.at("b")] = a * z + b;
    img[P.at("d")] = c * z + d;
    img[P.at("y")] = y + z * m2;
    r.moved_B = P.nf(substitute(r.B, img) - r.B);
    r.moved_D = P.nf(substitute(r.D, img) - r.D);
    r.relation = P.nf(c * r.B - a * r.D - m2);
    return r;
}

// ---------------------------------------------------------------------------------------------
// Stabilizers of slice points

enum class GroupKind { Mir2, Ga, SL2Adjoint, PGL2Beta };

inline std::string to_string(GroupKind g) {
    switch (g) {
        case GroupKind::Mir2: return "Mir2";
        case GroupKind::Ga: return "G_a";
        case GroupKind::SL2Adjoint: return "SL2-adjoint";
        case GroupKind::PGL2Beta: return "PGL2-mirabolic-beta";
    }
    return "?";
}

struct GroupParam {
    std::string name;
    int weight = 0;
    bool invertible = false;
};

using Vec = std::vector<Poly>;

/// A group with parameters acting on extra coordinates z1..zk over an invariant base.
/// Formulas receive parameter values and coordinates as elements of whatever ambient ring is built.
struct ActionSpec {
    GroupKind group = GroupKind::Ga;
    int weight = 0;  // w in Mir2(w) and G_a(w)
    Presentation base;
    std::vector<GroupParam> params;
    std::vector<int> point_weights;
    std::vector<std::string> group_relations;  // in parameter names, e.g. determinant one
    std::function<Vec(const Presentation&)> identity;
    std::function<Vec(const Presentation&, const Vec& g, const Vec& z)> act;
    std::function<Vec(const Presentation&, const Vec& g, const Vec& h)> compose;
    // equations equivalent to act(g, k) = k; defaults to the coordinate differences
    std::function<Vec(const Presentation&, const Vec& g, const Vec& k)> equations;
    std::vector<std::string> keep;  // parameters the solved form keeps
    std::string saturate;           // base generator removed from common factors, if any
    std::string lead;               // parameter whose term is made positive in the solved relation
    std::vector<std::string> forms;  // written forms for solved relations, used when equal up to sign
};

/// kappa: coordinates of the slice point, written in the base generators.
struct SlicePoint {
    std::vector<std::string> coords;
};

struct StabilizerResult {
    Presentation ring;     // base, kept parameters, solved relations
    Presentation ambient;  // base and all parameters
    Vec raw;               // the stabilizer ideal before solving, in `ambient`
    std::map<std::string, Poly> eliminated;  // parameter -> value in `ambient`
};

namespace detail {

inline std::vector<int> copy_base(Presentation& into, const Presentation& base) {
    auto map = append_gens(into, base, "_");
    for (int i = 0; i < base.ngens(); ++i)
        if (map[i] >= 0 && base.gens[i].kind != GenKind::Reciprocal) into.gens[map[i]].label = base.gens[i].label;
    auto img = var_images(map);
    for (size_t j = 0; j < base.rels.size(); ++j) into.add_rel(substitute(base.rels[j], img), base.rel_text[j], base.rel_shown[j]);
    return map;
}

inline Vec add_params(Presentation& P, const ActionSpec& A, const std::string& suffix) {
    Vec g;
    for (auto& p : A.params) g.push_back(Poly::var(P.add_gen(p.name + suffix, p.weight, p.invertible)));
    return g;
}

inline bool uses(const Poly& p, int v) {
    for (auto& t : p.t)
        if (t.m.e[v]) return true;
    return false;
}

}  // namespace detail

/// Identity acts trivially, composition closes, and images keep the coordinate weights.  Returns failures.
inline std::vector<std::string> check_action(const ActionSpec& A) {
    std::vector<std::string> bad;
    Presentation P(A.base.base);
    detail::copy_base(P, A.base);
    // the second copy's relations need the first copy's names, so the first copy goes in first
    Vec g = detail::add_params(P, A, "");
    Vec h = detail::add_params(P, A, "2");
    Vec z;
    for (size_t i = 0; i < A.point_weights.size(); ++i)
        z.push_back(Poly::var(P.add_gen("z" + std::to_string(i + 1), A.point_weights[i])));
    Vec gz = A.act(P, g, z);
    if (gz.size() != z.size()) bad.push_back("action changes the number of coordinates");
    for (size_t i = 0; i < gz.size() && i < z.size(); ++i) {
        Poly e = P.nf(gz[i]);
        if (!e.zero() && (!P.is_homogeneous(e) || P.homogeneous_weight(e) != A.point_weights[i]))
            bad.push_back("image of z" + std::to_string(i + 1) + " has the wrong weight");
    }
    Vec e = A.act(P, A.identity(P), z);
    for (size_t i = 0; i < z.size(); ++i)
        if (!P.nf(e[i] - z[i]).zero()) bad.push_back("identity moves z" + std::to_string(i + 1));
    Vec lhs = A.act(P, g, A.act(P, h, z)), rhs = A.act(P, A.compose(P, g, h), z);
    for (size_t i = 0; i < z.size(); ++i)
        if (!P.nf(lhs[i] - rhs[i]).zero()) bad.push_back("composition fails on z" + std::to_string(i + 1));
    return bad;
}

/// Conditions on the parameters fixing kappa, solved by eliminating parameters that occur linearly,
/// removing the saturation variable from common factors, and dropping redundant equations.
inline StabilizerResult stabilizer_solve(const ActionSpec& A, const SlicePoint& kappa) {
    auto bad = check_action(A);
    if (!bad.empty()) throw RingError("stabilizer_solve: action does not preserve the ambient presentation: " + bad[0]);
    StabilizerResult res;
    Presentation& P = res.ambient;
    P = Presentation(A.base.base);
    detail::copy_base(P, A.base);
    Vec g = detail::add_params(P, A, "");
    if (kappa.coords.size() != A.point_weights.size()) throw RingError("stabilizer_solve: slice point has the wrong length");
    Vec k;
    for (auto& c : kappa.coords) k.push_back(P.nf(c));
    Vec eqs;
    if (A.equations) {
        eqs = A.equations(P, g, k);
    } else {
        Vec gk = A.act(P, g, k);
        for (size_t i = 0; i < k.size(); ++i) eqs.push_back(gk[i] - k[i]);
    }
    for (auto& r : A.group_relations) eqs.push_back(P.parse(r));
    for (auto& e : eqs) {
        e = P.nf(e);
        if (!e.zero()) res.raw.push_back(e);
    }
    // eliminate non-kept, non-invertible parameters occurring in a single linear term with constant coefficient
    Vec work = res.raw;
    std::vector<Poly> img(P.ngens());
    for (int i = 0; i < P.ngens(); ++i) img[i] = Poly::var(i);
    for (bool progress = true; progress;) {
        progress = false;
        for (auto& p : A.params) {
            if (p.invertible || std::count(A.keep.begin(), A.keep.end(), p.name)) continue;
            int v = P.at(p.name);
            if (res.eliminated.count(p.name)) continue;
            for (auto& e : work) {
                const Term* lin = nullptr;
                int hits = 0;
                for (auto& t : e.t)
                    if (t.m.e[v]) {
                        ++hits;
                        if (t.m.deg == 1) lin = &t;
                    }
                if (hits != 1 || !lin) continue;
                Poly val = Q(-1) / lin->c * (e - Poly(lin->m, lin->c));
                std::vector<Poly> one(P.ngens());
                for (int i = 0; i < P.ngens(); ++i) one[i] = Poly::var(i);
                one[v] = val;
                for (auto& x : img) x = substitute(x, one);
                for (auto& w : work) w = substitute(w, one);
                res.eliminated[p.name] = val;
                progress = true;
                break;
            }
            if (progress) break;
        }
    }
    for (auto& [name, val] : res.eliminated) res.eliminated[name] = P.nf(substitute(val, img));
    if (!A.saturate.empty()) {
        int s = P.at(A.saturate);
        for (auto& e : work)
            while (!e.zero()) {
                bool all = true;
                for (auto& t : e.t) all = all && t.m.e[s] > 0;
                if (!all) break;
                e = detail::divide_by_var(e, s, "saturate");
            }
    }
    // output ring
    Presentation& R = res.ring;
    R = Presentation(A.base.base);
    detail::copy_base(R, A.base);
    std::vector<Poly> to_r(P.ngens());
    for (int i = 0; i < P.ngens(); ++i)
        if (R.index(P.gens[i].name) >= 0) to_r[i] = R.var(P.gens[i].name);
    for (auto& p : A.params) {
        if (res.eliminated.count(p.name)) continue;
        int kk = R.add_gen(p.name, p.weight, p.invertible);
        to_r[P.at(p.name)] = Poly::var(kk);
        if (p.invertible) to_r[P.gens[P.at(p.name)].partner] = Poly::var(R.gens[kk].partner);
    }
    Vec kept;
    for (auto& e : work) {
        Poly r = R.nf(substitute(e, to_r));
        if (r.zero()) continue;
        if (!A.lead.empty()) {
            int l = R.at(A.lead);
            for (auto& t : r.t)
                if (t.m.e[l]) {
                    if (t.c < 0) r = -r;
                    break;
                }
        }
        for (auto& f : A.forms) {
            Poly w = R.parse(f);
            if (R.nf(r - w).zero() || R.nf(r + w).zero()) {
                r = w;
                break;
            }
        }
        kept.push_back(r);
    }
    // drop equations implied by the others
    for (size_t i = 0; i < kept.size(); ++i) {
        Presentation T = R;
        for (size_t j = 0; j < kept.size(); ++j)
            if (j != i && !kept[j].zero()) T.add_rel(kept[j]);
        if (T.member(kept[i])) kept[i] = Poly();
    }
    for (auto& r : kept) {
        if (r.zero()) continue;
        std::string text;
        for (auto& f : A.forms)
            if (R.parse(f) == r) text = f;
        R.add_rel(r, text);
    }
    return res;
}

/// Parameter values of the identity substituted into the solved relations; all should vanish.
inline std::vector<Poly> identity_residuals(const ActionSpec& A, const StabilizerResult& S) {
    const Presentation& R = S.ring;
    Vec id = A.identity(R);
    std::vector<Poly> img(R.ngens());
    for (int i = 0; i < R.ngens(); ++i) img[i] = Poly::var(i);
    for (size_t i = 0; i < A.params.size(); ++i) {
        int v = R.index(A.params[i].name);
        if (v < 0) continue;
        img[v] = id[i];
        if (A.params[i].invertible) img[R.gens[v].partner] = Poly(Q(1)) * Poly(1 / id[i].constant());
    }
    std::vector<Poly> out;
    for (auto& r : R.rels) out.push_back(substitute(r, img));
    return out;
}

namespace detail {

// a closed form with the named generators and every relation touching them removed
inline Presentation without(const Presentation& P, const std::vector<std::string>& drop) {
    Presentation out(P.base);
    std::vector<Poly> img(P.ngens());
    std::vector<bool> gone(P.ngens(), false);
    for (int i = 0; i < P.ngens(); ++i) {
        const auto& g = P.gens[i];
        if (std::count(drop.begin(), drop.end(), g.name)) {
            gone[i] = true;
            if (g.invertible) gone[g.partner] = true;
            continue;
        }
        if (g.kind == GenKind::Beta) img[i] = out.var("beta");
        if (g.kind == GenKind::Reciprocal) continue;
        if (g.kind == GenKind::InverseOf) {
            img[i] = Poly::var(out.add_inverse(g.name, substitute(g.inverts, img)));
        } else if (g.kind == GenKind::Plain) {
            int k = out.add_gen(g.name, g.weight, g.invertible, g.adic);
            img[i] = Poly::var(k);
            if (g.invertible) img[g.partner] = Poly::var(out.gens[k].partner);
        }
        out.gens[out.at(g.name)].label = g.label;
    }
    for (size_t j = 0; j < P.rels.size(); ++j) {
        bool touch = false;
        for (auto& t : P.rels[j].t)
            for (int i = 0; i < P.ngens(); ++i) touch = touch || (t.m.e[i] && gone[i]);
        if (!touch) out.add_rel(substitute(P.rels[j], img), P.rel_text[j], P.rel_shown[j]);
    }
    return out;
}

inline Poly mul2(const Presentation& P, const Vec& m, int i, int j, const Vec& n) {
    // (m n)_{ij} for 2x2 matrices stored row-major
    return P.nf(m[2 * i] * n[j] + m[2 * i + 1] * n[2 + j]);
}

inline Vec matmul2(const Presentation& P, const Vec& m, const Vec& n) {
    return {mul2(P, m, 0, 0, n), mul2(P, m, 0, 1, n), mul2(P, m, 1, 0, n), mul2(P, m, 1, 1, n)};
}

}  // namespace detail

inline ActionSpec mirabolic_action(Presentation base, int w, const std::string& top) {
    ActionSpec A;
    A.group = GroupKind::Mir2;
    A.weight = -w;
    int tw = base.homogeneous_weight(base.var(top));
    A.base = std::move(base);
    A.params = {{"a", 0, true}, {"b", w, false}};
    A.point_weights = {0};
    A.identity = [](const Presentation&) { return Vec{Poly(Q(1)), Poly()}; };
    A.act = [top](const Presentation& P, const Vec& g, const Vec& z) { return Vec{P.nf(g[0] * z[0] - g[1] * P.var(top))}; };
    A.compose = [](const Presentation& P, const Vec& g, const Vec& h) {
        return Vec{P.nf(g[0] * h[0]), P.nf(g[0] * h[1] + g[1])};
    };
    A.keep = {"a", "b"};
    A.lead = "b";
    A.forms = {"b*" + top + " - (a - 1)"};
    if (tw + w != 0) throw RingError("mirabolic_action: b must have weight -weight(top)");
    return A;
}

inline ActionSpec additive_action(Presentation base, int w, const std::string& top) {
    ActionSpec A;
    A.group = GroupKind::Ga;
    A.weight = -w;
    int tw = base.homogeneous_weight(base.var(top));
    A.base = std::move(base);
    A.params = {{"b", w, false}};
    A.point_weights = {w + tw};
    A.identity = [](const Presentation&) { return Vec{Poly()}; };
    A.act = [top](const Presentation& P, const Vec& g, const Vec& z) { return Vec{P.nf(z[0] - g[0] * P.var(top))}; };
    A.compose = [](const Presentation& P, const Vec& g, const Vec& h) { return Vec{P.nf(g[0] + h[0])}; };
    A.keep = {"b"};
    A.lead = "b";
    A.forms = {"b*" + top};
    return A;
}

/// Conjugation by (alpha, gamma; g21, g22) in SL2 on 2x2 matrices; the slice point is the companion matrix (0,1;p,0).
/// gamma has weight w and p weight -2w.
inline ActionSpec sl2_adjoint_action(Presentation base, int w, const std::string& top) {
    ActionSpec A;
    A.group = GroupKind::SL2Adjoint;
    A.base = std::move(base);
    A.params = {{"alpha", 0, false}, {"gamma", w, false}, {"g21", -w, false}, {"g22", 0, false}};
    A.point_weights = {-w, 0, -2 * w, -w};
    A.group_relations = {"alpha*g22 - gamma*g21 - 1"};
    A.identity = [](const Presentation&) { return Vec{Poly(Q(1)), Poly(), Poly(), Poly(Q(1))}; };
    A.act = [](const Presentation& P, const Vec& g, const Vec& z) {
        Vec adj = {g[3], -g[1], -g[2], g[0]};
        return detail::matmul2(P, detail::matmul2(P, g, z), adj);
    };
    A.compose = [](const Presentation& P, const Vec& g, const Vec& h) { return detail::matmul2(P, g, h); };
    A.equations = [](const Presentation& P, const Vec& g, const Vec& k) {
        Vec gk = detail::matmul2(P, g, k), kg = detail::matmul2(P, k, g), out;
        for (int i = 0; i < 4; ++i) out.push_back(gk[i] - kg[i]);
        return out;
    };
    A.keep = {"alpha", "gamma"};
    A.forms = {"alpha^2 - " + top + "*gamma^2 - 1"};
    return A;
}

/// Upper triangular (a, -b; 0, 1) acting by conjugation on upper triangular matrices (m11, m12; 0, m22).
inline ActionSpec pgl2_beta_action() {
    ActionSpec A;
    A.group = GroupKind::PGL2Beta;
    A.base = torus_presentation(1);
    A.params = {{"a", 0, true}, {"b", 2, false}};
    A.point_weights = {0, 2, 0};
    A.identity = [](const Presentation&) { return Vec{Poly(Q(1)), Poly()}; };
    A.act = [](const Presentation& P, const Vec& g, const Vec& z) {
        return Vec{z[0], P.nf(g[1] * z[0] + g[0] * z[1] - g[1] * z[2]), z[2]};
    };
    A.compose = [](const Presentation& P, const Vec& g, const Vec& h) {
        return Vec{P.nf(g[0] * h[0]), P.nf(g[0] * h[1] + g[1])};
    };
    A.keep = {"a", "b"};
    A.saturate = "beta";
    A.lead = "b";
    A.forms = {"b*x - (a - 1)*(1 + beta*x)"};
    return A;
}

/// kappa(x) = (1, beta (1 + beta x); 0, 1 + beta x)
inline SlicePoint beta_kostant_point() { return {{"1", "beta*(1 + beta*x)", "1 + beta*x"}}; }

/// A catalogued stabilizer with the renamings to and from the loop-homology closed form.
struct StabilizerCase {
    std::string id;
    int n = 0;
    ActionSpec action;
    SlicePoint kappa;
    std::string compare_with;  // loop case id
    int compare_n = 0;
    std::map<std::string, std::string> to_closed, from_closed;
};

inline const std::vector<std::string>& stabilizer_case_ids() {
    static const std::vector<std::string> ids = {"an", "un", "bn", "cn", "hp", "dn", "f4", "g2", "b3p", "pgl2"};
    return ids;
}

inline StabilizerCase stabilizer_case(const std::string& id, int n) {
    StabilizerCase s;
    s.id = id;
    s.n = n;
    s.compare_with = id;
    s.compare_n = n;
    if (id == "pgl2") {
        s.n = 1;
        s.action = pgl2_beta_action();
        s.kappa = beta_kostant_point();
        s.compare_with = "un";
        s.compare_n = 1;
        s.to_closed = {{"x", "c1"}, {"y", "r"}, {"b", "c*(1 + beta*c1)"}};
        s.from_closed = {{"c1", "x"}, {"r", "y"}, {"c", "b*y"}};
        return s;
    }
    LoopCase c = loop_case(id, n);
    const Presentation& R = *c.closed;
    if (id == "un") {
        std::string top = "c" + std::to_string(n);
        s.action = mirabolic_action(detail::without(R, {"a", "c"}), c.dist_weight, top);
        s.kappa = {{"1"}};
        s.to_closed = {{"b", "c"}};
        s.from_closed = {{"c", "b"}};
    } else if (id == "dn" || id == "b3p") {
        std::string top = id == "dn" ? "p" + std::to_string(n - 1) : "c6";
        s.action = sl2_adjoint_action(detail::without(R, {"s", "d"}), c.dist_weight, top);
        s.kappa = {{"0", "1", top, "0"}};
        s.to_closed = {{"alpha", "s/2"}, {"gamma", "d/2"}};
        s.from_closed = {{"s", "2*alpha"}, {"d", "2*gamma"}};
    } else {
        // b * top = 0 in the closed form
        Poly rel = R.rels.at(0);
        Poly top = detail::divide_by_var(rel, R.at("b"), "stabilizer_case");
        std::string tops = R.str(top);
        s.action = additive_action(detail::without(R, {"b"}), c.dist_weight, tops);
        s.kappa = {{"0"}};
    }
    return s;
}

inline StabilizerResult stabilizer_solve(const StabilizerCase& s) { return stabilizer_solve(s.action, s.kappa); }

/// Mutually inverse ring maps A <-> B; generators not listed go to the generator of the same name.
/// Returns failures (empty on success).
inline std::vector<std::string> check_mutual_inverse(const Presentation& A, const Presentation& B,
                                                     const std::map<std::string, Poly>& ab,
                                                     const std::map<std::string, Poly>& ba) {
    std::vector<std::string> bad;
    auto fill = [](const Presentation& src, const Presentation& dst, std::map<std::string, Poly> m) {
        for (auto& g : src.gens)
            if (!m.count(g.name) && g.kind != GenKind::Reciprocal && g.kind != GenKind::Beta && dst.index(g.name) >= 0)
                m[g.name] = dst.var(g.name);
        return m;
    };
    try {
        RingMap f = ring_map(A, B, fill(A, B, ab));
        RingMap g = ring_map(B, A, fill(B, A, ba));
        for (int i = 0; i < A.ngens(); ++i)
            if (!A.nf(substitute(f.images[i], g.images) - Poly::var(i)).zero()) bad.push_back("round trip moves " + A.gens[i].name);
        for (int i = 0; i < B.ngens(); ++i)
            if (!B.nf(substitute(g.images[i], f.images) - Poly::var(i)).zero()) bad.push_back("round trip moves " + B.gens[i].name);
    } catch (const RingError& e) {
        bad.push_back(e.what());
    }
    return bad;
}

/// The stabilizer against the loop-homology closed form, with beta and after beta -> 0.
struct StabilizerComparison {
    StabilizerResult result;
    std::vector<std::string> with_beta;  // failures; not run when there is no beta
    std::vector<std::string> at_zero;
    bool has_beta = false;
};

inline StabilizerComparison compare_stabilizer(const StabilizerCase& s) {
    StabilizerComparison out;
    out.result = stabilizer_solve(s);
    const Presentation& S = out.result.ring;
    LoopCase c = loop_case(s.compare_with, s.compare_n);
    const Presentation& R = *c.closed;
    auto parse_all = [](const Presentation& P, const std::map<std::string, std::string>& m) {
        std::map<std::string, Poly> r;
        for (auto& [k, v] : m) r[k] = P.parse(v);
        return r;
    };
    auto ab = parse_all(R, s.to_closed);
    auto ba = parse_all(S, s.from_closed);
    out.has_beta = S.base.beta;
    if (!out.has_beta) {
        out.at_zero = check_mutual_inverse(S, R, ab, ba);
        return out;
    }
    out.with_beta = check_mutual_inverse(S, R, ab, ba);
    auto s0 = beta_specialize(S, BetaMode::Zero);
    auto r0 = beta_specialize(R, BetaMode::Zero);
    std::map<std::string, Poly> ab0, ba0;
    for (auto& [k, v] : ab)
        if (s0.target.index(k) >= 0) ab0[k] = r0(v);
    for (auto& [k, v] : ba)
        if (r0.target.index(k) >= 0) ba0[k] = s0(v);
    out.at_zero = check_mutual_inverse(s0.target, r0.target, ab0, ba0);
    return out;
}

}  // namespace kr
