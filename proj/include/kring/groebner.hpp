#pragma once

#include "kring/poly.hpp"

#include <set>

namespace kr {

/// Reduced Groebner basis over Q for the graded reverse lexicographic order.
class Groebner {
  public:
    std::vector<Poly> g;

    Groebner() = default;
    explicit Groebner(std::vector<Poly> gens) { build(std::move(gens)); }

    bool standard(const Mono& m) const {
        for (auto& p : g)
            if (divides(p.lm(), m)) return false;
        return true;
    }

    int reducer(const Mono& m) const {
        for (size_t i = 0; i < g.size(); ++i)
            if (divides(g[i].lm(), m)) return static_cast<int>(i);
        return -1;
    }

    Poly nf(Poly p) const { return reduce(std::move(p), g); }

    bool is_unit_ideal() const { return g.size() == 1 && g[0].lm().is_one(); }

    static Poly reduce(Poly p, const std::vector<Poly>& basis) {
        Poly done;
        while (!p.zero()) {
            const Term& lt = p.t.front();
            int hit = -1;
            for (size_t i = 0; i < basis.size(); ++i)
                if (divides(basis[i].lm(), lt.m)) {
                    hit = static_cast<int>(i);
                    break;
                }
            if (hit < 0) {
                done.t.push_back(lt);
                p.t.erase(p.t.begin());
                continue;
            }
            const Poly& b = basis[hit];
            Q s = -lt.c / b.lc();
            Mono sh = quot(lt.m, b.lm());
            p = add_scaled(p, b, s, sh);
        }
        return done;
    }

  private:
    struct Pair {
        size_t i, j;
        Mono l;
    };

    void build(std::vector<Poly> gens) {
        std::vector<Poly> G;
        for (auto& p : gens) {
            Poly r = reduce(p, G);
            if (!r.zero()) G.push_back(make_monic(r));
        }
        std::vector<Pair> pairs;
        auto add_pairs = [&](size_t k) {
            for (size_t i = 0; i < k; ++i) {
                if (G[i].zero()) continue;
                pairs.push_back({i, k, lcm(G[i].lm(), G[k].lm())});
            }
        };
        for (size_t k = 0; k < G.size(); ++k) add_pairs(k);
        while (!pairs.empty()) {
            auto best = std::min_element(pairs.begin(), pairs.end(),
                                         [](const Pair& a, const Pair& b) { return cmp(a.l, b.l) < 0; });
            Pair pr = *best;
            pairs.erase(best);
            const Poly& a = G[pr.i];
            const Poly& b = G[pr.j];
            if (a.zero() || b.zero()) continue;
            if (coprime(a.lm(), b.lm())) continue;
            if (chain_skip(G, pairs, pr)) continue;
            Poly s = add_scaled(mul_term(a, quot(pr.l, a.lm()), Q(1)), b, Q(-1), quot(pr.l, b.lm()));
            std::vector<Poly> live;
            for (auto& q : G)
                if (!q.zero()) live.push_back(q);
            Poly r = reduce(s, live);
            if (r.zero()) continue;
            G.push_back(make_monic(r));
            if (G.back().lm().is_one()) {
                g = {Poly(Q(1))};
                return;
            }
            add_pairs(G.size() - 1);
        }
        // minimalize and interreduce
        std::vector<Poly> M;
        for (size_t i = 0; i < G.size(); ++i) {
            if (G[i].zero()) continue;
            bool redundant = false;
            for (size_t j = 0; j < G.size() && !redundant; ++j) {
                if (i == j || G[j].zero()) continue;
                if (divides(G[j].lm(), G[i].lm()) && (G[j].lm() != G[i].lm() || j < i)) redundant = true;
            }
            if (!redundant) M.push_back(G[i]);
        }
        for (size_t i = 0; i < M.size(); ++i) {
            std::vector<Poly> others;
            for (size_t j = 0; j < M.size(); ++j)
                if (j != i) others.push_back(M[j]);
            Poly head(M[i].lm(), M[i].lc());
            Poly tail = M[i] - head;
            M[i] = make_monic(head + reduce(tail, others));
        }
        std::sort(M.begin(), M.end(), [](const Poly& a, const Poly& b) { return cmp(a.lm(), b.lm()) < 0; });
        g = std::move(M);
    }

    // Gebauer-Moeller style chain test: skip (i,j) if some k has lm_k | lcm and both (i,k), (j,k) are done.
    static bool chain_skip(const std::vector<Poly>& G, const std::vector<Pair>& pending, const Pair& pr) {
        for (size_t k = 0; k < G.size(); ++k) {
            if (k == pr.i || k == pr.j || G[k].zero()) continue;
            if (!divides(G[k].lm(), pr.l)) continue;
            bool open = false;
            for (auto& q : pending) {
                if ((q.i == std::min(pr.i, k) && q.j == std::max(pr.i, k)) ||
                    (q.i == std::min(pr.j, k) && q.j == std::max(pr.j, k))) {
                    open = true;
                    break;
                }
            }
            if (!open) return true;
        }
        return false;
    }
};

}  // namespace kr
