#pragma once

#include "kring/formal_group.hpp"
#include "kring/linalg.hpp"

#include <map>

namespace kr {

struct MomentEdge {
    int v0 = 0, v1 = 0;
    std::vector<int> lambda;
    int mult = 1;  // congruence modulo x_lambda^mult; 1 is the plain equalizer
};

struct MomentGraph {
    std::string name;
    int rank = 1;
    std::vector<std::string> vertices;
    std::vector<MomentEdge> edges;

    void check() const {
        int nv = static_cast<int>(vertices.size());
        if (nv == 0) throw RingError("moment graph: no vertices");
        for (auto& e : edges) {
            if (e.v0 < 0 || e.v1 < 0 || e.v0 >= nv || e.v1 >= nv || e.v0 == e.v1)
                throw RingError("moment graph: bad edge endpoints");
            if (static_cast<int>(e.lambda.size()) != rank) throw RingError("moment graph: character of wrong rank");
            if (std::all_of(e.lambda.begin(), e.lambda.end(), [](int c) { return c == 0; }))
                throw RingError("moment graph: zero character on an edge");
            if (e.mult < 1) throw RingError("moment graph: multiplicity must be positive");
        }
    }
};

namespace detail {

inline std::string perm_name(const std::vector<int>& p) {
    std::string s;
    for (int i : p) s += std::to_string(i + 1);
    return s;
}

}  // namespace detail

/// Catalogued graphs: "sphere" (needs lambda), "p1", "flag-sl3".
inline MomentGraph moment_graph_of(const std::string& id, const std::vector<int>& lambda = {}) {
    MomentGraph g;
    g.name = id;
    if (id == "sphere") {
        if (lambda.empty()) throw RingError("sphere graph needs a character");
        g.rank = static_cast<int>(lambda.size());
        g.vertices = {"0", "inf"};
        g.edges = {{0, 1, lambda}};
    } else if (id == "p1") {
        // SL_2 torus, coordinate of the fundamental weight; the root is twice it
        g.rank = 1;
        g.vertices = {"1", "s"};
        g.edges = {{0, 1, {2}}};
    } else if (id == "flag-sl3") {
        // characters in the basis e1, e2 of the SL_3 torus (e3 = -e1 - e2)
        g.rank = 2;
        std::vector<std::vector<int>> eps = {{1, 0}, {0, 1}, {-1, -1}};
        std::vector<std::vector<int>> perms;
        std::vector<int> p = {0, 1, 2};
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        for (auto& q : perms) g.vertices.push_back(detail::perm_name(q));
        // w -- (a b) w with label e_a - e_b, a < b
        for (size_t u = 0; u < perms.size(); ++u)
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) {
                    std::vector<int> q = perms[u];
                    for (int& c : q) c = c == a ? b : c == b ? a : c;
                    size_t v = std::find(perms.begin(), perms.end(), q) - perms.begin();
                    if (v < u) continue;
                    g.edges.push_back({static_cast<int>(u), static_cast<int>(v),
                                       {eps[a][0] - eps[b][0], eps[a][1] - eps[b][1]}});
                }
    } else {
        throw RingError("unknown moment graph " + id + " (valid: sphere, p1, flag-sl3)");
    }
    g.check();
    return g;
}

/// Q[x1..xm] (or Q[x]) in weight -2, the ordinary-coefficient torus.
inline Presentation ordinary_torus(int m) {
    Presentation T(BaseRing::Qq());
    for (int i = 1; i <= m; ++i) T.add_gen(m == 1 ? "x" : "x" + std::to_string(i), -2);
    return T;
}

/// x_lambda in T: linear without beta, the formal-group sum with it.
inline Poly character_coordinate(const Presentation& T, const std::vector<int>& lambda) {
    if (T.base.beta) return character_series(lambda, T);
    int m = static_cast<int>(lambda.size());
    Poly acc;
    for (int i = 0; i < m; ++i) acc += Q(lambda[i]) * T.var(m == 1 ? "x" : "x" + std::to_string(i + 1));
    return acc;
}

using Tuple = std::vector<Poly>;

struct GKMRing {
    MomentGraph graph;
    Presentation T;
    int weight_bound = 0;
    int trunc = -1;                        // degree truncation of infinite slices; -1 when slices are finite
    std::map<int, std::vector<Tuple>> basis;  // weight -> basis of the equalizer slice
    // algebra generators and minimal relations found within the bound
    bool presented = false;
    bool closure_witnessed = false;
    Presentation presentation;
    std::vector<Tuple> generator_images;

    long long dim(int w) const {
        auto it = basis.find(w);
        return it == basis.end() ? 0 : static_cast<long long>(it->second.size());
    }
};

namespace detail {

class TupleCoords {
  public:
    explicit TupleCoords(size_t nv) : per_(nv) {}
    SVec vec(const Tuple& t) {
        SVec out;
        for (size_t v = 0; v < t.size(); ++v)
            for (auto& term : t[v].t) out.emplace_back(id(v, term.m), term.c);
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return out;
    }

  private:
    std::vector<std::unordered_map<Mono, int, MonoHash>> per_;
    int next_ = 0;
    int id(size_t v, const Mono& m) {
        auto [it, fresh] = per_[v].emplace(m, next_);
        if (fresh) ++next_;
        return it->second;
    }
};

inline bool finite_slices(const Presentation& T) {
    if (T.base.beta) return false;
    for (auto& g : T.gens)
        if (g.kind != GenKind::Reciprocal && g.weight >= 0) return false;
    return true;
}

inline Tuple tuple_mul(const Presentation& T, const Tuple& a, const Tuple& b) {
    Tuple r(a.size());
    for (size_t v = 0; v < a.size(); ++v) r[v] = T.nf(a[v] * b[v]);
    return r;
}

// generators and minimal relations of the subalgebra, level by level (level = -weight)
inline void present(GKMRing& R) {
    const Presentation& T = R.T;
    size_t nv = R.graph.vertices.size();
    if (R.dim(0) != 1) return;
    Presentation free(BaseRing::Qq()), out(BaseRing::Qq());
    std::vector<Tuple> gens;
    std::vector<int> glev;
    std::vector<Poly> rels;
    std::vector<int> rlev;
    int last_new = 0;
    Tuple one(nv, Poly(Q(1)));
    for (int L = 1; L <= R.weight_bound; ++L) {
        const auto& target = R.basis.count(-L) ? R.basis.at(-L) : std::vector<Tuple>{};
        std::vector<Mono> ms;
        if (!gens.empty()) ms = standard_monomials(free, L, -L, -L);
        TupleCoords co(nv);
        std::vector<SVec> cols;
        for (auto& m : ms) {
            Tuple t = one;
            for (size_t g = 0; g < gens.size(); ++g)
                for (int e = 0; e < m.e[g]; ++e) t = tuple_mul(T, t, gens[g]);
            cols.push_back(co.vec(t));
        }
        // relations: kernel of evaluation not generated by lower relations
        Echelon known;
        Coords mc;
        for (size_t r = 0; r < rels.size(); ++r)
            for (auto& m : standard_monomials(free, L, rlev[r] - L, rlev[r] - L)) known.insert(mc.vec(mul_term(rels[r], m, Q(1))));
        for (auto& k : kernel(cols)) {
            Poly p;
            for (auto& [i, c] : k) p += Poly(ms[i], c);
            SVec pv = mc.vec(p);
            if (known.contains(pv)) continue;
            known.insert(pv);
            rels.push_back(p);
            rlev.push_back(L);
            last_new = L;
        }
        Echelon span;
        for (auto& c : cols) span.insert(c);
        for (auto& t : target) {
            if (!span.insert(co.vec(t))) continue;
            gens.push_back(t);
            glev.push_back(L);
            free.add_gen("g" + std::to_string(gens.size()), -L);
            last_new = L;
        }
    }
    for (size_t g = 0; g < gens.size(); ++g) out.add_gen("g" + std::to_string(g + 1), -glev[g]);
    for (auto& r : rels) out.add_rel(r, out.str(r));
    R.presentation = out;
    R.generator_images = gens;
    R.presented = true;
    R.closure_witnessed = 3 * last_new <= 2 * R.weight_bound;
}

}  // namespace detail

/// Tuples (f_v) with f_v0 - f_v1 in (x_lambda^mult) for every edge, slice by slice for |weight| <= weight_bound.
inline GKMRing gkm_ring(const MomentGraph& g, const Presentation& T, int weight_bound, int trunc = 8) {
    g.check();
    GKMRing R;
    R.graph = g;
    R.T = T;
    R.weight_bound = weight_bound;
    bool finite = detail::finite_slices(T);
    R.trunc = finite ? -1 : trunc;
    size_t nv = g.vertices.size();
    std::vector<Poly> xl;
    for (auto& e : g.edges) xl.push_back(T.nf(pow(character_coordinate(T, e.lambda), e.mult)));
    int minlev = 2;
    for (auto& gen : T.gens)
        if (gen.kind == GenKind::Plain && gen.weight < 0) minlev = std::min(minlev, -gen.weight);
    auto slice = [&](int w) {
        if (finite) return standard_monomials(T, std::abs(w) / minlev, w, w);
        return standard_monomials(T, trunc, w, w);
    };
    for (int w = -weight_bound; w <= weight_bound; ++w) {
        auto ms = slice(w);
        if (ms.empty()) continue;
        Coords co;
        // per edge: the slice of (x_lambda) and its echelon
        std::vector<Echelon> ideal(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e) {
            int lw = T.homogeneous_weight(xl[e]);
            for (auto& m : slice(w - lw)) ideal[e].insert(co.vec(T.nf(mul_term(xl[e], m, Q(1)))));
        }
        std::vector<SVec> basis_vecs;
        for (auto& m : ms) basis_vecs.push_back(co.vec(Poly(m, Q(1))));
        int width = static_cast<int>(co.size()) + 1;
        // column for (v, m): the residues of +-m on the edges at v
        std::vector<SVec> cols;
        std::vector<std::pair<size_t, size_t>> which;
        for (size_t v = 0; v < nv; ++v)
            for (size_t k = 0; k < ms.size(); ++k) {
                SVec col;
                for (size_t e = 0; e < g.edges.size(); ++e) {
                    int sign = g.edges[e].v0 == static_cast<int>(v) ? 1 : g.edges[e].v1 == static_cast<int>(v) ? -1 : 0;
                    if (!sign) continue;
                    for (auto& [i, c] : ideal[e].reduce(basis_vecs[k])) col.emplace_back(static_cast<int>(e) * width + i, Q(sign) * c);
                }
                std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
                cols.push_back(col);
                which.emplace_back(v, k);
            }
        auto ker = kernel(cols);
        if (ker.empty()) continue;
        auto& out = R.basis[w];
        for (auto& kv : ker) {
            Tuple t(nv);
            for (auto& [i, c] : kv) t[which[i].first] += Poly(ms[which[i].second], c);
            out.push_back(t);
        }
    }
    if (finite) detail::present(R);
    return R;
}

/// Membership of a tuple in the equalizer (exact, no truncation).
inline bool gkm_contains(const GKMRing& R, const Tuple& t) {
    if (t.size() != R.graph.vertices.size()) return false;
    for (auto& e : R.graph.edges) {
        Poly d = R.T.nf(t[e.v0] - t[e.v1]);
        if (d.zero()) continue;
        Presentation Q = R.T;
        Q.add_rel(R.T.nf(pow(character_coordinate(R.T, e.lambda), e.mult)));
        if (!Q.nf(d).zero()) return false;
    }
    return true;
}

/// Union of the graphs of w : T -> T inside T x T, at beta = 0 over Q, given by integer matrices on characters.
/// Returns weight -> dimension of its coordinate ring for weights in [-weight_bound, 0].
inline std::map<int, long long> graph_union_dims(int rank, const std::vector<std::vector<std::vector<int>>>& group,
                                                  int weight_bound) {
    Presentation P(BaseRing::Qq());
    std::vector<Poly> a, b;
    for (int i = 1; i <= rank; ++i) a.push_back(Poly::var(P.add_gen("a" + std::to_string(i), -2)));
    for (int i = 1; i <= rank; ++i) b.push_back(Poly::var(P.add_gen("b" + std::to_string(i), -2)));
    std::map<int, long long> out;
    for (int L = 0; L <= weight_bound; L += 2) {
        auto ms = standard_monomials(P, L / 2, -L, -L);
        Coords co;
        // the ideal of the graph of w in this slice: (b_i - sum_j w_ij a_j)
        std::vector<std::vector<SVec>> spans;
        for (auto& w : group) {
            std::vector<SVec> gens;
            for (int i = 0; i < rank; ++i) {
                Poly l = b[i];
                for (int j = 0; j < rank; ++j) l -= Q(w[i][j]) * a[j];
                if (L >= 2)
                    for (auto& m : standard_monomials(P, L / 2 - 1, 2 - L, 2 - L)) gens.push_back(co.vec(mul_term(l, m, Q(1))));
            }
            spans.push_back(gens);
        }
        // intersection of the spans, one at a time, through the kernel of [A | -B]
        std::vector<SVec> inter = spans[0];
        {
            Echelon e;
            std::vector<SVec> red;
            for (auto& v : inter)
                if (e.insert(v)) red.push_back(v);
            inter = red;
        }
        for (size_t s = 1; s < spans.size() && !inter.empty(); ++s) {
            std::vector<SVec> cols = inter;
            for (auto& v : spans[s]) {
                SVec n;
                for (auto& [i, c] : v) n.emplace_back(i, -c);
                cols.push_back(n);
            }
            std::vector<SVec> next;
            Echelon e;
            for (auto& k : kernel(cols)) {
                std::map<int, Q> acc;
                for (auto& [i, c] : k)
                    if (i < static_cast<int>(inter.size()))
                        for (auto& [j, d] : inter[i]) acc[j] += c * d;
                SVec v;
                for (auto& [j, d] : acc)
                    if (d != 0) v.emplace_back(j, d);
                if (!v.empty() && e.insert(v)) next.push_back(v);
            }
            inter = next;
        }
        long long d = static_cast<long long>(ms.size()) - static_cast<long long>(inter.size());
        if (d) out[-L] = d;
    }
    return out;
}

}  // namespace kr
