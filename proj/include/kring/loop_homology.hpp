#pragma once

#include "kring/action.hpp"
#include "kring/formal_group.hpp"

namespace kr {

/// Torus weights of a representation; `r_summand` marks an extra trivial real line.
struct RepWeights {
    int rank = 0;
    std::vector<std::pair<std::vector<int>, int>> weights;
    bool r_summand = false;

    int dim_real() const {
        int d = 0;
        for (auto& w : weights) d += 2 * w.second;
        return d;
    }

    void validate() const {
        for (auto& [lam, d] : weights) {
            if (static_cast<int>(lam.size()) != rank) throw RingError("RepWeights: character of wrong length");
            if (d < 1) throw RingError("RepWeights: multiplicity must be positive");
            bool zero = true;
            for (int v : lam) zero = zero && v == 0;
            if (zero) throw RingError("RepWeights: zero character");
        }
    }

    static RepWeights standard(int n) {
        RepWeights V{n, {}, false};
        for (int i = 0; i < n; ++i) {
            std::vector<int> e(n, 0);
            e[i] = 1;
            V.weights.push_back({e, 1});
        }
        return V;
    }
};

enum class SphereKind { SV, SVR, Projective };

inline std::string to_string(SphereKind k) {
    switch (k) {
        case SphereKind::SV: return "S^V";
        case SphereKind::SVR: return "S^(V+R)";
        case SphereKind::Projective: return "projective";
    }
    return "";
}

struct LoopPresentation {
    Presentation ring;
    SphereKind kind = SphereKind::SV;
    std::string distinguished;  // b, or c/d next to a
    int dist_weight = 0;
};

namespace detail {

inline std::string xname(int m, int i) { return m == 1 ? "x" : "x" + std::to_string(i); }
inline std::string yname(int m, int i) { return m == 1 ? "y" : "y" + std::to_string(i); }

inline Poly weight_product(const RepWeights& V, const Presentation& T) {
    V.validate();
    Poly prod(Q(1));
    for (auto& [lam, d] : V.weights) prod = T.nf(prod * pow(character_series(lam, T), d));
    return prod;
}

inline std::string factor_text(const Presentation& T, const Poly& p) {
    std::string s = T.str(p);
    return p.t.size() == 1 && p.t[0].c == 1 ? s : "(" + s + ")";
}

inline Poly esym(const std::vector<Poly>& v, int j) {
    std::vector<Poly> e(j + 1);
    e[0] = Poly(Q(1));
    for (auto& x : v)
        for (int k = j; k >= 1; --k) e[k] += e[k - 1] * x;
    return e[j];
}

}  // namespace detail

/// C_V: b * prod x_lambda^d = 0.
inline LoopPresentation cv_presentation(const RepWeights& V, int b_weight, BaseRing base = BaseRing::Zp(true)) {
    Presentation T = torus_presentation(V.rank, base);
    Poly prod = detail::weight_product(V, T);
    int b = T.add_gen("b", b_weight);
    T.add_rel(Poly::var(b) * prod, "b*" + detail::factor_text(T, prod));
    return {std::move(T), SphereKind::SV, "b", b_weight};
}

/// B_V: c * prod x_lambda^d = a - 1, c in weight dim_R V.
inline LoopPresentation bv_presentation(const RepWeights& V, BaseRing base = BaseRing::Zp(true)) {
    Presentation T = torus_presentation(V.rank, base);
    Poly prod = detail::weight_product(V, T);
    int a = T.add_gen("a", 0, true);
    int c = T.add_gen("c", V.dim_real());
    T.add_rel(Poly::var(c) * prod - Poly::var(a) + Poly(Q(1)), "c*" + detail::factor_text(T, prod) + " - (a - 1)");
    return {std::move(T), SphereKind::SVR, "c", V.dim_real()};
}

/// B_V with a = 1 imposed.
inline LoopPresentation bv_fiber(const LoopPresentation& bv) {
    LoopPresentation f = bv;
    f.ring.add_rel(f.ring.var("a") - Poly(Q(1)));
    return f;
}

/// The fiber of B_V at a = 1 against C_V(dim_R V), by maps in both directions composing to the identity.
inline bool fiber_matches_cv(const RepWeights& V, std::string* why = nullptr) {
    LoopPresentation fib = bv_fiber(bv_presentation(V));
    LoopPresentation cv = cv_presentation(V, V.dim_real());
    try {
        std::map<std::string, Poly> to, back;
        auto movable = [](const Generator& g) { return g.kind == GenKind::Plain || g.kind == GenKind::InverseOf; };
        for (auto& g : cv.ring.gens)
            if (movable(g)) to[g.name] = fib.ring.var(g.name == "b" ? "c" : g.name);
        for (auto& g : fib.ring.gens) {
            if (!movable(g)) continue;
            if (g.name == "a") back[g.name] = Poly(Q(1));
            else back[g.name] = cv.ring.var(g.name == "c" ? "b" : g.name);
        }
        RingMap f = ring_map(cv.ring, fib.ring, to);
        RingMap h = ring_map(fib.ring, cv.ring, back);
        for (int i = 0; i < cv.ring.ngens(); ++i)
            if (h(f.images[i]) != Poly::var(i)) throw RingError("round trip moves " + cv.ring.gens[i].name);
        for (int i = 0; i < fib.ring.ngens(); ++i)
            if (fib.ring.nf(f(h.images[i])) != fib.ring.nf(Poly::var(i)))
                throw RingError("round trip moves " + fib.ring.gens[i].name);
    } catch (const RingError& e) {
        if (why) *why = e.what();
        return false;
    }
    return true;
}

/// A catalogued rank-one case: torus-side ring P with its Weyl action, and the closed form R with phi: R -> P.
struct LoopCase {
    std::string id;
    int n = 0;
    std::string title;
    RepWeights V;
    SphereKind kind = SphereKind::SV;
    int fiber_dim = 0;  // Hopf fiber S^1, S^3, S^7 for projective targets
    std::string distinguished;
    int dist_weight = 0;
    std::shared_ptr<Presentation> torus;
    std::shared_ptr<FiniteGroupAction> W;
    std::shared_ptr<Presentation> closed;
    std::map<std::string, Poly> phi;  // closed-form generator -> element of torus

    RingMap phi_map() const { return ring_map(*closed, *torus, phi); }

    LoopPresentation presentation() const { return {*closed, kind, distinguished, dist_weight}; }

    /// Distinguished weight computed from dim_R V alone.
    int weight_from_dimension() const {
        int d = V.dim_real();
        switch (kind) {
            case SphereKind::SV: return 2 * d - 2;
            case SphereKind::SVR: return d;
            case SphereKind::Projective: return d + fiber_dim - 1;
        }
        return 0;
    }
};

namespace detail {

using GenSpec = std::map<std::string, Poly>;

// a transposition and a full cycle of the named coordinates
inline std::vector<GenSpec> symmetric_gens(const Presentation& P, const std::vector<std::string>& xs) {
    std::vector<GenSpec> out;
    size_t k = xs.size();
    if (k < 2) return out;
    out.push_back({{xs[0], P.var(xs[1])}, {xs[1], P.var(xs[0])}});
    if (k > 2) {
        GenSpec c;
        for (size_t i = 0; i < k; ++i) c[xs[i]] = P.var(xs[(i + 1) % k]);
        out.push_back(c);
    }
    return out;
}

inline GenSpec sign_gen(const Presentation& P, const std::vector<std::string>& flip) {
    GenSpec g;
    for (auto& x : flip) g[x] = -P.var(x);
    return g;
}

inline std::vector<Poly> vars(const Presentation& P, const std::vector<std::string>& xs) {
    std::vector<Poly> v;
    for (auto& x : xs) v.push_back(P.var(x));
    return v;
}

inline std::string numbered(const std::string& base, int i) { return base + std::to_string(i); }

inline LoopCase finish(LoopCase c, const std::vector<GenSpec>& gens, Presentation P, Presentation R) {
    c.torus = std::make_shared<Presentation>(std::move(P));
    c.closed = std::make_shared<Presentation>(std::move(R));
    c.W = std::make_shared<FiniteGroupAction>(FiniteGroupAction::from_images(*c.torus, gens));
    for (auto& [k, v] : c.phi) c.phi[k] = c.torus->nf(v);
    return c;
}

inline std::vector<std::string> coords(const Presentation& P, int m) {
    std::vector<std::string> xs;
    for (int i = 1; i <= m; ++i) xs.push_back(P.index(xname(m, i)) >= 0 ? xname(m, i) : numbered("x", i));
    return xs;
}

inline RepWeights paired(int rank, int from) {
    RepWeights V{rank, {}, false};
    for (int i = from; i < rank; ++i) {
        std::vector<int> e(rank, 0);
        e[i] = 1;
        V.weights.push_back({e, 1});
        e[i] = -1;
        V.weights.push_back({e, 1});
    }
    return V;
}

inline Presentation at_beta_zero(const Presentation& P, BaseRing base) {
    Presentation out = beta_specialize(P, BetaMode::Zero).target;
    out.base = base;
    return out;
}

inline LoopCase case_an(int n, bool sphere) {
    LoopCase c;
    c.id = sphere ? "un" : "an";
    c.n = n;
    c.V = RepWeights::standard(n);
    Presentation P;
    if (sphere) {
        c.V.r_summand = true;
        c.title = "U(" + std::to_string(n) + ")@S^" + std::to_string(2 * n + 1);
        c.kind = SphereKind::SVR;
        c.distinguished = "c";
        P = bv_presentation(c.V).ring;
    } else {
        c.title = "U(" + std::to_string(n) + ")@CP^" + std::to_string(n);
        c.kind = SphereKind::Projective;
        c.fiber_dim = 1;
        c.distinguished = "b";
        P = cv_presentation(c.V, c.V.dim_real()).ring;
    }
    c.dist_weight = 2 * n;
    auto xs = coords(P, n);
    Presentation R(BaseRing::Zp(true));
    Poly beta = R.var("beta"), e(Q(1));
    std::string text = "1";
    for (int j = 1; j <= n; ++j) {
        int k = R.add_gen(numbered("c", j), -2 * j);
        e += pow(beta, j) * Poly::var(k);
        text += "+beta" + (j > 1 ? "^" + std::to_string(j) : std::string()) + "*c" + std::to_string(j);
    }
    R.add_inverse("r", e, text);
    std::string cn = numbered("c", n);
    if (sphere) {
        R.add_gen("a", 0, true);
        R.add_fraction("c", 2 * n, "a - 1", cn, "(a-1)/" + cn);
    } else {
        R.add_gen("b", 2 * n);
        R.add_rel("b*" + cn);
    }
    auto xv = vars(P, xs);
    for (int j = 1; j <= n; ++j) c.phi[numbered("c", j)] = esym(xv, j);
    Poly ys(Q(1));
    for (int i = 1; i <= n; ++i) ys *= P.var(yname(n, i));
    c.phi["r"] = ys;
    if (sphere) {
        c.phi["a"] = P.var("a");
        c.phi["c"] = P.var("c");
    } else {
        c.phi["b"] = P.var("b");
    }
    auto gens = symmetric_gens(P, xs);
    return finish(std::move(c), gens, std::move(P), std::move(R));
}

inline LoopCase case_bn(int n) {
    LoopCase c;
    c.id = "bn";
    c.n = n;
    c.title = "SO_" + std::to_string(2 * n) + "@S^" + std::to_string(2 * n);
    c.V = RepWeights::standard(n);
    c.kind = SphereKind::SV;
    c.distinguished = "b";
    c.dist_weight = 4 * n - 2;
    Presentation P = at_beta_zero(cv_presentation(c.V, c.dist_weight).ring, BaseRing::Zp());
    auto xs = coords(P, n);
    Presentation R(BaseRing::Zp());
    for (int j = 1; j < n; ++j) R.add_gen(numbered("p", j), -4 * j);
    std::string cn = numbered("c", n);
    R.add_gen(cn, -2 * n);
    R.add_gen("b", c.dist_weight);
    R.add_rel("b*" + cn);
    auto xv = vars(P, xs);
    std::vector<Poly> sq;
    for (auto& x : xv) sq.push_back(x * x);
    for (int j = 1; j < n; ++j) c.phi[numbered("p", j)] = esym(sq, j);
    c.phi[cn] = esym(xv, n);
    c.phi["b"] = P.var("b");
    auto gens = symmetric_gens(P, xs);
    if (n >= 2) gens.push_back(sign_gen(P, {xs[0], xs[1]}));
    return finish(std::move(c), gens, std::move(P), std::move(R));
}

// Sp-type targets: HP^{n-1} with or without the extra Sp_2 factor
inline LoopCase case_quaternionic(int n, bool extra) {
    if (n < 2) throw RingError("quaternionic cases need n >= 2");
    LoopCase c;
    c.id = extra ? "cn" : "hp";
    c.n = n;
    int m = n - 1;
    int rank = extra ? n : m;
    c.title = (extra ? "Sp_2xSp_" : "Sp_") + std::to_string(2 * m) + "@HP^" + std::to_string(m);
    c.V = paired(rank, extra ? 1 : 0);
    c.kind = SphereKind::Projective;
    c.fiber_dim = 3;
    c.distinguished = "b";
    c.dist_weight = 4 * n - 2;
    Presentation P = at_beta_zero(cv_presentation(c.V, c.dist_weight, BaseRing::Qq(true)).ring, BaseRing::Qq());
    auto all = coords(P, rank);
    std::vector<std::string> xs(all.begin() + (extra ? 1 : 0), all.end());
    Presentation R(BaseRing::Qq());
    if (extra) {
        R.add_gen("q1", -4);
        R.set_label("q1", "p1'");
    }
    for (int j = 1; j <= m; ++j) R.add_gen(numbered("p", j), -4 * j);
    R.add_gen("b", c.dist_weight);
    R.add_rel("b*" + numbered("p", m));
    std::vector<Poly> xxbar;
    for (auto& x : vars(P, xs)) xxbar.push_back(-(x * x));
    for (int j = 1; j <= m; ++j) c.phi[numbered("p", j)] = esym(xxbar, j);
    if (extra) c.phi["q1"] = -(P.var(all[0]) * P.var(all[0]));
    c.phi["b"] = P.var("b");
    auto gens = symmetric_gens(P, xs);
    gens.push_back(sign_gen(P, {xs[0]}));
    if (extra) gens.push_back(sign_gen(P, {all[0]}));
    return finish(std::move(c), gens, std::move(P), std::move(R));
}

inline LoopCase case_f4() {
    LoopCase c;
    c.id = "f4";
    c.n = 4;
    c.title = "Spin_9@OP^2";
    c.V = paired(4, 0);
    c.kind = SphereKind::Projective;
    c.fiber_dim = 7;
    c.distinguished = "b";
    c.dist_weight = 22;
    Presentation P = at_beta_zero(cv_presentation(c.V, 22, BaseRing::Qq(true)).ring, BaseRing::Qq());
    auto xs = coords(P, 4);
    Presentation R(BaseRing::Qq());
    for (int j = 1; j <= 4; ++j) R.add_gen(numbered("p", j), -4 * j);
    R.add_gen("b", 22);
    R.add_rel("b*p4");
    std::vector<Poly> sq;
    for (auto& x : vars(P, xs)) sq.push_back(x * x);
    for (int j = 1; j <= 4; ++j) c.phi[numbered("p", j)] = esym(sq, j);
    c.phi["b"] = P.var("b");
    auto gens = symmetric_gens(P, xs);
    gens.push_back(sign_gen(P, {xs[0]}));
    return finish(std::move(c), gens, std::move(P), std::move(R));
}

inline LoopCase case_g2() {
    LoopCase c;
    c.id = "g2";
    c.n = 2;
    c.title = "SU(3)@S^6";
    c.V = RepWeights{2, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}, false};
    c.kind = SphereKind::SV;
    c.distinguished = "b";
    c.dist_weight = 10;
    Presentation P = cv_presentation(c.V, 10).ring;
    Poly x1 = P.var("x1"), x2 = P.var("x2"), y1 = P.var("y1"), y2 = P.var("y2"), beta = P.var("beta");
    // third weight of the standard representation, -(lambda1 + lambda2)
    Poly x3 = P.nf(-(fgl(x1, x2, beta) * y1 * y2));
    Poly one(Q(1));
    std::vector<GenSpec> gens = {
        {{"x1", x2}, {"x2", x1}, {"y1", y2}, {"y2", y1}},
        {{"x1", x2}, {"x2", x3}, {"y1", y2}, {"y2", P.nf((one + beta * x1) * (one + beta * x2))}},
    };
    Presentation R(BaseRing::Zp(true));
    R.add_gen("c2", -4);
    R.add_gen("c3", -6);
    R.add_gen("b", 10);
    R.add_rel("b*c3");
    c.phi["c2"] = detail::esym({x1, x2, x3}, 2);
    c.phi["c3"] = detail::esym({x1, x2, x3}, 3);
    c.phi["b"] = P.var("b");
    return finish(std::move(c), gens, std::move(P), std::move(R));
}

// RP^{2n-1} targets: a^{+-1} with d = (a - a^-1)/den
inline LoopCase case_rp(const std::string& id, int m, const std::string& den, const std::string& den_text) {
    LoopCase c;
    c.id = id;
    c.kind = SphereKind::SVR;
    c.distinguished = "d";
    Presentation P(BaseRing::Zp());
    std::vector<std::string> xs;
    for (int i = 1; i <= m; ++i) xs.push_back(numbered("x", i));
    for (auto& x : xs) P.add_gen(x, -2);
    P.add_gen("a", 0, true);
    int dw = -P.homogeneous_weight(P.parse(den));
    c.dist_weight = dw;
    P.add_fraction("d", dw, "a - a_inv", den, "(a-a^-1)/" + den_text);
    Presentation R(BaseRing::Zp());
    auto sym = [&](const std::string& name, int w, const Poly& img) {
        R.add_gen(name, w);
        c.phi[name] = img;
    };
    std::string top;
    if (id == "dn") {
        std::vector<Poly> sq;
        for (auto& x : vars(P, xs)) sq.push_back(x * x);
        for (int j = 1; j <= m; ++j) sym(numbered("p", j), -4 * j, esym(sq, j));
        top = numbered("p", m);
    } else {
        Poly x1 = P.var("x1"), x2 = P.var("x2");
        sym("c2", -4, x1 * x1 + x1 * x2 + x2 * x2);
        sym("c6", -12, pow(x1 * x2 * (x1 + x2), 2));
        top = "c6";
    }
    R.add_gen("s", 0);
    R.set_label("s", "a+a^-1");
    R.add_gen("d", dw);
    R.set_label("d", "(a-a^-1)/" + den_text);
    R.add_rel(R.parse("s^2 - " + top + "*d^2 - 4"), {}, false);
    c.phi["s"] = P.var("a") + P.var("a_inv");
    c.phi["d"] = P.var("d");
    std::vector<GenSpec> gens;
    if (id == "dn") {
        gens = symmetric_gens(P, xs);
        GenSpec f = sign_gen(P, {xs[0]});
        f["a"] = P.var("a_inv");
        gens.push_back(f);
    } else {
        Poly x1 = P.var("x1"), x2 = P.var("x2");
        gens.push_back({{"x1", x2}, {"x2", x1}});
        gens.push_back({{"x1", x2}, {"x2", -(x1 + x2)}});
        GenSpec f = sign_gen(P, xs);
        f["a"] = P.var("a_inv");
        gens.push_back(f);
    }
    return finish(std::move(c), gens, std::move(P), std::move(R));
}

inline LoopCase case_dn(int n) {
    if (n < 2) throw RingError("dn needs n >= 2");
    int m = n - 1;
    std::string den, text;
    for (int i = 1; i <= m; ++i) den += (i > 1 ? "*" : "") + numbered("x", i);
    text = m == 1 ? den : "(" + den + ")";
    LoopCase c = case_rp("dn", m, den, text);
    c.n = n;
    c.title = "SO_" + std::to_string(2 * n - 1) + "@RP^" + std::to_string(2 * n - 1);
    c.V = RepWeights::standard(m);
    c.V.r_summand = true;
    return c;
}

inline LoopCase case_b3p() {
    LoopCase c = case_rp("b3p", 2, "x1*x2*(x1 + x2)", "(x1*x2*(x1+x2))");
    c.n = 3;
    c.title = "G_2@RP^7";
    c.V = RepWeights{2, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}, true};
    return c;
}

}  // namespace detail

inline const std::vector<std::string>& loop_case_ids() {
    static const std::vector<std::string> ids = {"an", "un", "bn", "cn", "hp", "dn", "f4", "g2", "b3p"};
    return ids;
}

/// Admissible rank parameters per case; fixed-rank cases accept only their own n.
inline std::pair<int, int> loop_case_range(const std::string& id) {
    if (id == "an" || id == "un" || id == "bn") return {1, 6};
    if (id == "cn" || id == "hp" || id == "dn") return {2, 6};
    if (id == "f4") return {4, 4};
    if (id == "g2") return {2, 2};
    if (id == "b3p") return {3, 3};
    throw RingError("unknown case " + id);
}

inline LoopCase loop_case(const std::string& id, int n) {
    auto [lo, hi] = loop_case_range(id);
    if (n < lo || n > hi)
        throw RingError("case " + id + " takes n in [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    if (id == "an") return detail::case_an(n, false);
    if (id == "un") return detail::case_an(n, true);
    if (id == "bn") return detail::case_bn(n);
    if (id == "cn") return detail::case_quaternionic(n, true);
    if (id == "hp") return detail::case_quaternionic(n, false);
    if (id == "dn") return detail::case_dn(n);
    if (id == "f4") return detail::case_f4();
    if (id == "g2") return detail::case_g2();
    return detail::case_b3p();
}

inline RepWeights weights_of_case(const std::string& id, int n) { return loop_case(id, n).V; }

inline LoopPresentation equivariant_loop_homology(const std::string& id, int n) { return loop_case(id, n).presentation(); }

namespace detail {

// drops InverseOf generators; relations must avoid them
inline Presentation strip_inverses(const Presentation& P, std::vector<Poly>& img) {
    Presentation out(P.base);
    img.assign(P.ngens(), Poly());
    for (int i = 0; i < P.ngens(); ++i) {
        const auto& g = P.gens[i];
        if (g.kind == GenKind::Beta) img[i] = out.var("beta");
        if (g.kind != GenKind::Plain) continue;
        int k = out.add_gen(g.name, g.weight, g.invertible, g.adic);
        out.gens[k].label = g.label;
        img[i] = Poly::var(k);
        if (g.invertible) img[g.partner] = Poly::var(out.gens[k].partner);
    }
    for (size_t j = 0; j < P.rels.size(); ++j) {
        for (auto& t : P.rels[j].t)
            for (int i = 0; i < P.ngens(); ++i)
                if (t.m.e[i] && img[i].zero()) throw RingError("strip_inverses: relation uses " + P.gens[i].name);
        out.add_rel(substitute(P.rels[j], img), P.rel_text[j], P.rel_shown[j]);
    }
    return out;
}

}  // namespace detail

/// The closed form with its inverted elements removed, over the torus ring without reciprocals.
/// Inverting a W-invariant element commutes with taking invariants, so this core plus the unit check
/// decides the full comparison.
struct LoopCore {
    std::shared_ptr<Presentation> torus, closed;
    std::shared_ptr<FiniteGroupAction> W;
    std::map<std::string, Poly> phi;
    std::vector<std::pair<Poly, Poly>> units;  // (inverted element of the closed form, product it must hit), in the cores

    RingMap phi_map() const { return ring_map(*closed, *torus, phi); }
};

inline LoopCore loop_core(const LoopCase& c) {
    LoopCore core;
    std::vector<Poly> pimg, rimg;
    core.torus = std::make_shared<Presentation>(detail::strip_inverses(*c.torus, pimg));
    core.closed = std::make_shared<Presentation>(detail::strip_inverses(*c.closed, rimg));
    std::vector<std::map<std::string, Poly>> gens;
    for (auto& g : c.W->gens) {
        std::map<std::string, Poly> m;
        for (int i = 0; i < c.torus->ngens(); ++i) {
            if (c.torus->gens[i].kind != GenKind::Plain) continue;
            for (auto& t : g[i].t)
                for (int j = 0; j < c.torus->ngens(); ++j)
                    if (t.m.e[j] && pimg[j].zero()) throw RingError("loop_core: group image uses a reciprocal");
            m[c.torus->gens[i].name] = substitute(g[i], pimg);
        }
        gens.push_back(std::move(m));
    }
    core.W = std::make_shared<FiniteGroupAction>(FiniteGroupAction::from_images(*core.torus, gens));
    for (auto& [name, v] : c.phi) {
        if (c.closed->gens[c.closed->at(name)].kind == GenKind::InverseOf) continue;
        for (auto& t : v.t)
            for (int j = 0; j < c.torus->ngens(); ++j)
                if (t.m.e[j] && pimg[j].zero()) throw RingError("loop_core: image of " + name + " uses a reciprocal");
        core.phi[name] = substitute(v, pimg);
    }
    // each inverted generator of the closed form must hit the product of the torus-side inverted elements
    Poly prod(Q(1));
    for (auto& g : c.torus->gens)
        if (g.kind == GenKind::InverseOf) prod = prod * substitute(g.inverts, pimg);
    for (auto& g : c.closed->gens)
        if (g.kind == GenKind::InverseOf) core.units.emplace_back(substitute(g.inverts, rimg), core.torus->nf(prod));
    return core;
}

inline bool has_inverses(const Presentation& P) {
    for (auto& g : P.gens)
        if (g.kind == GenKind::InverseOf) return true;
    return false;
}

/// The closed form against the Weyl invariants of the torus-side ring, slice by slice.
inline InvariantReport verify_loop_case(const LoopCase& c, int wlo, int whi, int trunc, int slack) {
    return compare_with_invariants(c.phi_map(), *c.W, wlo, whi, trunc, slack);
}

/// Same, through the reciprocal-free core and the unit identity.
inline InvariantReport verify_loop_core(const LoopCase& c, int wlo, int whi, int trunc, int slack) {
    LoopCore core = loop_core(c);
    RingMap f = core.phi_map();
    InvariantReport rep = compare_with_invariants(f, *core.W, wlo, whi, trunc, slack);
    for (auto& [u, target] : core.units)
        if (f(u) != target)
            rep.fail("inverted element " + core.closed->str(u) + " maps to " + core.torus->str(f(u)) + ", not " +
                     core.torus->str(target));
    return rep;
}

}  // namespace kr
