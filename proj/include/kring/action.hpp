#pragma once

#include "kring/ring.hpp"

#include <set>

namespace kr {

/// A finite group acting on a presentation by ring automorphisms; the element list is built on first use.
class FiniteGroupAction {
  public:
    const Presentation* P = nullptr;
    std::vector<std::vector<Poly>> gens;      // group generators: image of every ring generator

    FiniteGroupAction() = default;

    /// Generators are given by images of the non-reciprocal ring generators; reciprocal images follow.
    FiniteGroupAction(const Presentation& p, const std::vector<std::map<std::string, std::string>>& gen_specs,
                      size_t max_order = 5000)
        : P(&p) {
        init(parse_specs(p, gen_specs), max_order);
    }

    static FiniteGroupAction from_images(const Presentation& p, const std::vector<std::map<std::string, Poly>>& gen_specs,
                                         size_t max_order = 5000) {
        FiniteGroupAction a;
        a.P = &p;
        a.init(gen_specs, max_order);
        return a;
    }

    size_t order() const { return elements().size(); }

    // closure, identity first
    const std::vector<std::vector<Poly>>& elements() const {
        if (elements_.empty()) close();
        return elements_;
    }

    Poly apply(size_t k, const Poly& e) const { return P->nf(substitute(e, elements()[k])); }
    Poly apply_gen(size_t k, const Poly& e) const { return P->nf(substitute(e, gens[k])); }

    bool fixes(const Poly& e) const {
        Poly n = P->nf(e);
        for (size_t k = 0; k < gens.size(); ++k)
            if (apply_gen(k, n) != n) return false;
        return true;
    }

    Poly reynolds(const Poly& e) const {
        std::unordered_map<Mono, Q, MonoHash> acc;
        for (size_t k = 0; k < order(); ++k)
            for (auto& t : apply(k, e).t) acc[t.m] += t.c;
        Poly r = Poly::from_map(acc);
        return Q(1, static_cast<unsigned long>(order())) * r;
    }

  private:
    mutable std::vector<std::vector<Poly>> elements_;
    size_t max_order_ = 5000;

    void init(const std::vector<std::map<std::string, Poly>>& gen_specs, size_t max_order) {
        const Presentation& p = *P;
        for (auto& spec : gen_specs) {
            std::map<std::string, Poly> m = spec;
            // unnamed generators are fixed
            for (int i = 0; i < p.ngens(); ++i) {
                const auto& g = p.gens[i];
                if (g.kind == GenKind::Reciprocal || m.count(g.name)) continue;
                if (g.kind == GenKind::InverseOf) continue;
                m[g.name] = Poly::var(i);
            }
            RingMap f = ring_map(p, p, complete_inverses(p, m));
            gens.push_back(f.images);
        }
        max_order_ = max_order;
    }

    static std::vector<std::map<std::string, Poly>> parse_specs(
        const Presentation& p, const std::vector<std::map<std::string, std::string>>& specs) {
        std::vector<std::map<std::string, Poly>> out;
        for (auto& spec : specs) {
            std::map<std::string, Poly> m;
            for (auto& [k, v] : spec) m[k] = p.parse(v);
            out.push_back(std::move(m));
        }
        return out;
    }

    // InverseOf generators map to the inverse of the image of what they invert, when that is again a generator
    static std::map<std::string, Poly> complete_inverses(const Presentation& p, std::map<std::string, Poly> m) {
        std::vector<Poly> img(p.ngens());
        for (int i = 0; i < p.ngens(); ++i) img[i] = m.count(p.gens[i].name) ? m[p.gens[i].name] : Poly::var(i);
        for (int i = 0; i < p.ngens(); ++i) {
            const auto& g = p.gens[i];
            if (g.kind != GenKind::InverseOf || m.count(g.name)) continue;
            Poly target = p.nf(substitute(g.inverts, img));
            bool found = false;
            for (int j = 0; j < p.ngens() && !found; ++j) {
                if (p.gens[j].kind != GenKind::InverseOf) continue;
                if (p.nf(p.gens[j].inverts) == target) {
                    m[g.name] = Poly::var(j);
                    found = true;
                } else if (p.nf(-p.gens[j].inverts) == target) {
                    m[g.name] = -Poly::var(j);
                    found = true;
                }
            }
            if (!found) throw RingError("group action: no image for reciprocal " + g.name);
        }
        return m;
    }

    std::vector<Poly> compose(const std::vector<Poly>& g, const std::vector<Poly>& h) const {
        // (g o h)(v) = g(h(v))
        std::vector<Poly> r(h.size());
        for (size_t i = 0; i < h.size(); ++i) r[i] = P->nf(substitute(h[i], g));
        return r;
    }

    void close() const {
        std::vector<Poly> id(P->ngens());
        for (int i = 0; i < P->ngens(); ++i) id[i] = Poly::var(i);
        auto key = [&](const std::vector<Poly>& v) {
            std::string s;
            for (auto& x : v) s += P->canon(x) + "|";
            return s;
        };
        std::set<std::string> seen{key(id)};
        std::vector<std::vector<Poly>> els = {id};
        for (size_t head = 0; head < els.size(); ++head) {
            for (auto& g : gens) {
                auto c = compose(g, els[head]);
                auto k = key(c);
                if (seen.insert(k).second) {
                    els.push_back(std::move(c));
                    if (els.size() > max_order_) throw RingError("group action does not close");
                }
            }
        }
        elements_ = std::move(els);
    }
};

namespace detail {

// column k holds (g v_k - v_k) for each group generator g, in separate coordinate blocks
inline std::vector<SVec> fixed_point_columns(const FiniteGroupAction& act, const std::vector<Mono>& basis) {
    std::vector<SVec> cols;
    cols.reserve(basis.size());
    std::vector<Coords> blocks(act.gens.size());
    const int stride = 1 << 24;
    for (auto& m : basis) {
        SVec col;
        Poly pm(m, Q(1));
        for (size_t k = 0; k < act.gens.size(); ++k) {
            Poly d = act.apply_gen(k, pm) - pm;
            for (auto& t : d.t) col.emplace_back(static_cast<int>(k) * stride + blocks[k].id(t.m), t.c);
        }
        std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
        cols.push_back(std::move(col));
    }
    return cols;
}

}  // namespace detail

/// dim of the invariant part of span(basis).
inline size_t invariant_dimension(const FiniteGroupAction& act, const std::vector<Mono>& basis) {
    return kernel(detail::fixed_point_columns(act, basis)).size();
}

/// Invariants inside span(basis), as explicit polynomials.
inline std::vector<Poly> invariant_basis(const FiniteGroupAction& act, const std::vector<Mono>& basis) {
    std::vector<Poly> out;
    for (auto& kv : kernel(detail::fixed_point_columns(act, basis))) {
        std::unordered_map<Mono, Q, MonoHash> acc;
        for (auto& [i, c] : kv) acc[basis[i]] += c;
        out.push_back(make_monic(Poly::from_map(acc)));
    }
    return out;
}

namespace detail {

// monomials in generators with given per-generator degree and weight, total degree <= budget, weight == w
inline void gen_monomials(const std::vector<int>& deg, const std::vector<int>& wt, int budget, int w,
                          const std::function<void(const std::vector<int>&)>& cb) {
    std::vector<int> e(deg.size(), 0);
    std::function<void(size_t, int, int)> rec = [&](size_t i, int cw, int left) {
        if (i == deg.size()) {
            if (cw == w) cb(e);
            return;
        }
        for (int k = 0; k * deg[i] <= left; ++k) {
            e[i] = k;
            rec(i + 1, cw + k * wt[i], left - k * deg[i]);
            if (deg[i] == 0) break;
        }
        e[i] = 0;
    };
    rec(0, 0, budget);
}

}  // namespace detail

/// Result of comparing a closed-form invariant presentation against the invariant subspaces of P.
struct InvariantReport {
    bool ok = true;
    std::vector<std::string> failures;
    int slices = 0;
    long long invariant_total = 0;

    void fail(const std::string& s) {
        ok = false;
        if (failures.size() < 20) failures.push_back(s);
    }
};

/// phi: R -> P with W-invariant generator images.  Checks, for weights in [wlo, whi]:
/// images of R-standard monomials of phi-degree <= trunc + slack are independent, and their span meets
/// F_trunc(P)_w in exactly the invariant subspace of F_trunc(P)_w.
inline InvariantReport compare_with_invariants(const RingMap& phi, const FiniteGroupAction& act, int wlo, int whi,
                                               int trunc, int slack) {
    InvariantReport rep;
    const Presentation& R = *phi.src;
    const Presentation& P = *phi.dst;
    for (int i = 0; i < R.ngens(); ++i) {
        if (!act.fixes(phi.images[i])) rep.fail("image of " + R.gens[i].name + " is not invariant");
    }
    if (!rep.ok) return rep;
    std::vector<int> phideg(R.ngens());
    for (int i = 0; i < R.ngens(); ++i) phideg[i] = std::max(0, phi.images[i].maxdeg());
    auto rmonos = standard_monomials(R, trunc + slack, wlo, whi);  // R-degree bound is a superset filter
    auto pmonos = standard_monomials(P, trunc, wlo, whi);
    std::map<int, std::vector<Mono>> rby, pby;
    for (auto& m : rmonos) {
        int d = 0;
        for (int i = 0; i < R.ngens(); ++i) d += m.e[i] * phideg[i];
        if (d <= trunc + slack) rby[R.weight(m)].push_back(m);
    }
    for (auto& m : pmonos) pby[P.weight(m)].push_back(m);
    // images built multiplicatively from smaller monomials
    std::unordered_map<Mono, Poly, MonoHash> memo;
    std::function<const Poly&(const Mono&)> image = [&](const Mono& m) -> const Poly& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        Poly v;
        if (m.is_one()) {
            v = Poly(Q(1));
        } else {
            int i = 0;
            while (!m.e[i]) ++i;
            Mono rest = m;
            --rest.e[i];
            --rest.deg;
            v = P.nf(image(rest) * phi.images[i]);
        }
        return memo.emplace(m, std::move(v)).first->second;
    };
    for (int w = wlo; w <= whi; ++w) {
        auto& pm = pby[w];
        size_t inv = invariant_dimension(act, pm);
        Coords co;
        for (auto& m : pm) co.id(m);
        std::vector<SVec> imgs;
        for (auto& m : rby[w]) imgs.push_back(co.vec(image(m)));
        int nkeep = static_cast<int>(pm.size());
        size_t r = 0;
        size_t meet = dim_in_coordinate_subspace(imgs, [&](int i) { return i < nkeep; }, &r);
        if (r != imgs.size())
            rep.fail("weight " + std::to_string(w) + ": " + std::to_string(imgs.size() - r) + " relation(s) missing from the closed form");
        if (meet != inv)
            rep.fail("weight " + std::to_string(w) + ": closed form reaches " + std::to_string(meet) +
                     " of " + std::to_string(inv) + " invariants");
        ++rep.slices;
        rep.invariant_total += static_cast<long long>(inv);
    }
    return rep;
}

/// Generators of the invariant subring discovered along the degree filtration, with relations.
struct InvariantRing {
    Presentation ring;
    std::vector<Poly> images;  // in P, per generator of `ring`
    bool complete = true;      // Reynolds images spanned every invariant seen
    std::vector<std::string> notes;
};

inline InvariantRing reynolds_invariants(const Presentation& P, const FiniteGroupAction& act, int weight_bound,
                                         int degree_bound, const std::string& prefix = "g") {
    if (!P.base.rational) {
        long n = static_cast<long>(act.order());
        for (long p = 2; p <= n; ++p) {
            if (n % p) continue;
            while (n % p == 0) n /= p;
            if (!P.base.allows(Q(1, p))) throw RingError("group order not invertible in " + P.base.label());
        }
    }
    InvariantRing out;
    out.ring = Presentation(P.base.beta ? BaseRing{P.base.inverted, false, P.base.rational} : P.base);
    std::vector<int> gdeg, gwt;
    for (int d = 1; d <= degree_bound; ++d) {
        auto monos = standard_monomials(P, d, -weight_bound, weight_bound);
        std::map<int, std::vector<Mono>> by;
        for (auto& m : monos) by[P.weight(m)].push_back(m);
        std::vector<std::pair<int, Poly>> found;
        for (auto& [w, ms] : by) {
            Coords co;
            for (auto& m : ms) co.id(m);
            Echelon span;
            detail::gen_monomials(gdeg, gwt, d, w, [&](const std::vector<int>& e) {
                Poly p(Q(1));
                for (size_t i = 0; i < e.size(); ++i)
                    if (e[i]) p = P.nf(p * pow(out.images[i], e[i]));
                span.insert(co.vec(p));
            });
            size_t inv = invariant_dimension(act, ms);
            size_t have = span.rank();
            if (have > inv) continue;  // products leave the filtration; nothing new here
            std::vector<Poly> cands;
            for (auto& m : ms) {
                Poly r = act.reynolds(Poly(m, Q(1)));
                if (!r.zero() && r.maxdeg() <= d) cands.push_back(make_monic(r));
            }
            for (auto& c : cands) {
                if (span.rank() >= inv) break;
                if (span.insert(co.vec(c))) found.emplace_back(w, c);
            }
            if (span.rank() < inv) {
                for (auto& v : invariant_basis(act, ms)) {
                    if (span.rank() >= inv) break;
                    if (span.insert(co.vec(v))) found.emplace_back(w, v);
                }
                out.complete = false;
                out.notes.push_back("weight " + std::to_string(w) + " needed kernel vectors beyond Reynolds images");
            }
        }
        for (auto& [w, p] : found) {
            std::string name = prefix + std::to_string(out.images.size() + 1);
            out.ring.add_gen(name, w);
            out.images.push_back(p);
            gdeg.push_back(std::max(1, p.maxdeg()));
            gwt.push_back(w);
        }
    }
    // relations: kernel of the evaluation map, filtered by degree
    int ng = static_cast<int>(out.images.size());
    for (int d = 1; d <= 2 * degree_bound; ++d) {
        std::set<int> weights;
        // enumerate every weight reachable at this degree
        std::function<void(int, int, int)> walk = [&](int i, int w, int left) {
            if (i == ng) {
                if (std::abs(w) <= weight_bound) weights.insert(w);
                return;
            }
            for (int k = 0; k * gdeg[i] <= left; ++k) walk(i + 1, w + k * gwt[i], left - k * gdeg[i]);
        };
        walk(0, 0, d);
        for (int w : weights) {
            std::vector<std::vector<int>> exps;
            detail::gen_monomials(gdeg, gwt, d, w, [&](const std::vector<int>& e) { exps.push_back(e); });
            Coords co;
            std::vector<SVec> cols;
            for (auto& e : exps) {
                Poly p(Q(1));
                for (int i = 0; i < ng; ++i)
                    if (e[i]) p = P.nf(p * pow(out.images[i], e[i]));
                cols.push_back(co.vec(p));
            }
            for (auto& kv : kernel(cols)) {
                Poly rel;
                for (auto& [i, c] : kv) {
                    Mono m;
                    for (int j = 0; j < ng; ++j) {
                        m.e[j] = static_cast<int16_t>(exps[i][j]);
                        m.deg += exps[i][j];
                    }
                    rel += Poly(m, c);
                }
                if (!out.ring.member(rel)) out.ring.add_rel(make_monic(rel));
            }
        }
    }
    return out;
}

}  // namespace kr
