#pragma once

#include "kring/formal_group.hpp"
#include "kring/linalg.hpp"

#include <map>

namespace kr {

/// k[f1..fk] -> k[x1..xm]
struct PolyExtension {
    BaseRing base = BaseRing::Qq();
    std::vector<std::pair<std::string, int>> vars;
    std::vector<std::string> invariants;

    Presentation ambient() const {
        Presentation S(base);
        for (auto& [name, w] : vars) S.add_gen(name, w);
        return S;
    }
    std::vector<Poly> fs() const {
        Presentation S = ambient();
        std::vector<Poly> out;
        for (auto& f : invariants) {
            Poly p = S.parse(f);
            if (p.zero() || !S.is_homogeneous(p)) throw RingError("PolyExtension: invariant " + f + " is not homogeneous");
            out.push_back(p);
        }
        if (out.size() > vars.size()) throw RingError("PolyExtension: more invariants than variables");
        return out;
    }
};

inline PolyExtension power_extension(int j, int weight = -2) {
    return {BaseRing::Qq(), {{"x", weight}}, {"x^" + std::to_string(j)}};
}

inline PolyExtension dihedral_extension(int n) {
    std::string N = std::to_string(n);
    return {BaseRing::Qq(), {{"x1", -2}, {"x2", -2}}, {"x1*x2", "x1^" + N + " + x2^" + N}};
}

/// S[[w1..wk]]/(relations); w_j is adic in homological degree 2 and weight -weight(f_j) - 2.
struct HCPresentation {
    Presentation ring;
    std::vector<std::string> w;
    std::string shape;
};

inline HCPresentation hc_closed_form(const PolyExtension& ext) {
    auto fs = ext.fs();
    Presentation S = ext.ambient();
    HCPresentation hc;
    if (ext.vars.size() == 1 && fs.size() == 1) {
        int j = fs[0].t.size() == 1 ? fs[0].t[0].m.deg : 0;
        if (j >= 1 && fs[0] == pow(S.var(ext.vars[0].first), j)) {
            BaseRing b = ext.base.rational ? BaseRing::Z() : ext.base;
            hc.ring = Presentation(b);
            std::string x = ext.vars[0].first;
            hc.ring.add_gen(x, ext.vars[0].second);
            hc.ring.add_gen("w", -j * ext.vars[0].second - 2, false, true);
            std::string xp = j == 2 ? x + "*" : x + "^" + std::to_string(j - 1) + "*";
            hc.ring.add_rel(j == 1 ? std::string("w") : std::to_string(j) + "*" + xp + "w");
            hc.w = {"w"};
            hc.shape = "power";
            return hc;
        }
    }
    if (ext.vars.size() == 2 && fs.size() == 2) {
        Poly x1 = S.var(ext.vars[0].first), x2 = S.var(ext.vars[1].first);
        for (int n = 2; n <= 64; ++n) {
            if (fs[0] != x1 * x2 || fs[1] != pow(x1, n) + pow(x2, n)) continue;
            if (ext.vars[0].second != ext.vars[1].second) break;
            hc.ring = Presentation(ext.base);
            std::string a = ext.vars[0].first, b = ext.vars[1].first, m = std::to_string(n - 1);
            hc.ring.add_gen(a, ext.vars[0].second);
            hc.ring.add_gen(b, ext.vars[1].second);
            hc.ring.add_gen("w1", -S.homogeneous_weight(fs[0]) - 2, false, true);
            hc.ring.add_gen("w2", -S.homogeneous_weight(fs[1]) - 2, false, true);
            auto pw = [&](const std::string& v) { return n == 2 ? v : v + "^" + m; };
            // the rows of the matrix (x1, x2; x2^(n-1), x1^(n-1)) act on (w1, w2) from the left of w
            hc.ring.add_rel(a + "*w1 + " + pw(b) + "*w2");
            hc.ring.add_rel(b + "*w1 + " + pw(a) + "*w2");
            hc.w = {"w1", "w2"};
            hc.shape = "dihedral";
            return hc;
        }
    }
    throw RingError("hc_closed_form: uncatalogued shape; use hc_oracle");
}

/// HC of pi_* ku_{S^1} over pi_* ku_{SU(2)}: Z[beta, x, 1/(1+beta x)][[w]]/(w (x - xbar)).
inline HCPresentation hc_beta_family() {
    HCPresentation hc;
    hc.ring = torus_presentation(1, BaseRing{{}, true, false});
    hc.ring.add_gen("w", 2, false, true);
    // xbar = -x/(1 + beta x)
    hc.ring.add_rel(hc.ring.parse("w*(x + x*y)"), "w*(x - xbar)");
    hc.w = {"w"};
    hc.shape = "beta";
    return hc;
}

/// (hom degree, sheared weight) -> dimension; sheared weight = internal weight - hom degree.
using HCTable = std::map<std::pair<int, int>, long long>;

/// Dimensions of the closed form: w-degree k sits in hom degree 2k; weights >= -weight_bound.
inline HCTable hc_closed_dims(const HCPresentation& hc, int hom_bound, int weight_bound) {
    const Presentation& P = hc.ring;
    std::vector<int> wi;
    for (auto& w : hc.w) wi.push_back(P.at(w));
    int maxw = 0, minlev = 1 << 20;
    for (auto& g : P.gens) {
        if (g.adic) maxw = std::max(maxw, g.weight);
        else if (g.kind == GenKind::Plain) minlev = std::min(minlev, -g.weight);
    }
    if (minlev <= 0) throw RingError("hc_closed_dims: ambient weights must be negative");
    HCTable t;
    int K = hom_bound / 2;
    int maxdeg = K + (K * maxw + weight_bound) / minlev + 1;
    for (auto& m : standard_monomials(P, maxdeg, -weight_bound, K * maxw)) {
        int k = 0;
        for (int i : wi) k += m.e[i];
        if (k > K) continue;
        int rest = m.deg - k;
        if (rest * minlev > K * maxw + weight_bound) continue;
        ++t[{2 * k, P.weight(m)}];
    }
    return t;
}

/// Graded Ext of S over S (x)_R S, from a minimal free resolution computed level by level.
struct HCOracle {
    HCTable dims;
    Presentation A;  // S[z]/(f(x) - f(x + z))
    Presentation S;
    std::vector<std::vector<int>> gen_weights;  // per hom degree
    std::vector<std::vector<std::vector<Poly>>> d;  // d[h][g][k]: generator g of F_h -> F_(h-1), h >= 1
    bool complete_intersection = true;
    bool determined = true;
    std::pair<int, int> first_undetermined{-1, 0};
    std::vector<int> level_cap;  // levels searched for generators of F_h
};

namespace detail {

struct LevelBasis {
    std::vector<std::pair<int, Mono>> elems;
    std::vector<std::unordered_map<Mono, int, MonoHash>> index;  // per generator
};

class ResolutionBuilder {
  public:
    ResolutionBuilder(HCOracle& o, int minlev) : o_(o), minlev_(minlev) {}

    const std::vector<Mono>& monos(const Presentation& P, int level, std::map<int, std::vector<Mono>>& cache) {
        auto it = cache.find(level);
        if (it != cache.end()) return it->second;
        std::vector<Mono> ms;
        if (level >= 0) ms = standard_monomials(P, level / minlev_, -level, -level);
        return cache.emplace(level, std::move(ms)).first->second;
    }
    const std::vector<Mono>& amonos(int level) { return monos(o_.A, level, acache_); }
    const std::vector<Mono>& smonos(int level) { return monos(o_.S, level, scache_); }

    LevelBasis basis(const std::vector<int>& gw, int level) {
        LevelBasis b;
        b.index.resize(gw.size());
        for (size_t g = 0; g < gw.size(); ++g)
            for (auto& m : amonos(level - gw[g])) {
                b.index[g][m] = static_cast<int>(b.elems.size());
                b.elems.push_back({static_cast<int>(g), m});
            }
        return b;
    }

    static SVec coords(const LevelBasis& b, const std::vector<Poly>& v) {
        SVec out;
        for (size_t g = 0; g < v.size(); ++g)
            for (auto& t : v[g].t) {
                auto it = b.index[g].find(t.m);
                if (it == b.index[g].end()) throw RingError("hc_oracle: element outside its level");
                out.emplace_back(it->second, t.c);
            }
        std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
        return out;
    }

    std::vector<Poly> times(const Mono& m, const std::vector<Poly>& v) {
        std::vector<Poly> r;
        for (auto& p : v) r.push_back(o_.A.nf(mul_term(p, m, Q(1))));
        return r;
    }

    // minimal generators of ker(d_h) through level cap; h = 0 is the augmentation A -> S
    void kernel_generators(int h, int cap) {
        const auto& gw = o_.gen_weights[h];
        std::vector<int> nw;
        std::vector<std::vector<Poly>> ne;
        std::vector<Poly> zimg(o_.A.ngens());
        for (int i = 0; i < o_.A.ngens(); ++i) {
            const auto& name = o_.A.gens[i].name;
            zimg[i] = o_.S.index(name) >= 0 ? o_.S.var(name) : Poly();
        }
        for (int L = 0; L <= cap; ++L) {
            LevelBasis src = basis(gw, L);
            if (src.elems.empty()) continue;
            std::vector<SVec> cols;
            if (h == 0) {
                Coords co;
                for (auto& [g, m] : src.elems) cols.push_back(co.vec(o_.S.nf(substitute(Poly(m, Q(1)), zimg))));
            } else {
                LevelBasis tgt = basis(o_.gen_weights[h - 1], L);
                for (auto& [g, m] : src.elems) cols.push_back(coords(tgt, times(m, o_.d[h][g])));
            }
            auto ker = kernel(cols);
            Echelon span;
            for (size_t e = 0; e < ne.size(); ++e)
                for (auto& m : amonos(L - nw[e])) span.insert(coords(src, times(m, ne[e])));
            for (auto& k : ker) {
                if (span.contains(k)) continue;
                span.insert(k);
                std::vector<Poly> v(gw.size());
                for (auto& [i, c] : k) v[src.elems[i].first] += Poly(src.elems[i].second, c);
                ne.push_back(v);
                nw.push_back(L);
            }
        }
        o_.gen_weights.push_back(nw);
        o_.d.resize(h + 2);
        o_.d[h + 1] = ne;
    }

  private:
    HCOracle& o_;
    int minlev_;
    std::map<int, std::vector<Mono>> acache_, scache_;
};

}  // namespace detail

/// Works with levels (negated weights); every ambient weight must be negative.
inline HCOracle hc_oracle(const PolyExtension& ext, int hom_bound, int weight_bound) {
    HCOracle o;
    auto fs = ext.fs();
    o.S = ext.ambient();
    o.S.base = BaseRing::Qq();
    int minlev = 1 << 20, lz = 0, lf = 0;
    for (auto& [name, w] : ext.vars) {
        if (w >= 0) throw RingError("hc_oracle: variable weights must be negative");
        minlev = std::min(minlev, -w);
        lz = std::max(lz, -w);
    }
    Presentation& A = o.A;
    A = Presentation(BaseRing::Qq());
    std::vector<Poly> shift(ext.vars.size());
    for (auto& [name, w] : ext.vars) A.add_gen(name, w);
    for (size_t i = 0; i < ext.vars.size(); ++i) {
        int z = A.add_gen("z" + std::to_string(i + 1), ext.vars[i].second);
        shift[i] = A.var(ext.vars[i].first) + Poly::var(z);
    }
    std::vector<int> flev;
    for (auto& f : fs) {
        // f(x) - f(x + z)
        std::vector<Poly> img(ext.vars.size());
        for (size_t i = 0; i < ext.vars.size(); ++i) img[i] = Poly::var(static_cast<int>(i));
        Poly fx = substitute(f, img);
        A.add_rel(fx - substitute(f, shift));
        flev.push_back(-o.S.homogeneous_weight(f));
        lf = std::max(lf, flev.back());
    }
    int H = hom_bound + 1;
    // a minimal resolution is a summand of the Eisenbud-Shamash one: generators of F_h within these levels
    auto bound = [&](int h) {
        int b = 0;
        for (int i = 0; 2 * i <= h; ++i) b = std::max(b, (h - 2 * i) * lz + i * lf);
        return b;
    };
    // complete intersection: Hilbert function of A against prod(1 - t^lf) / prod(1 - t^lv)^2
    int top = bound(H) + weight_bound + lz;
    {
        std::vector<long long> series(top + 1, 0);
        series[0] = 1;
        for (auto& v : ext.vars)
            for (int rep = 0; rep < 2; ++rep)
                for (int L = -v.second; L <= top; ++L) series[L] += series[L + v.second];
        for (int l : flev)
            for (int L = top; L >= l; --L) series[L] -= series[L - l];
        detail::ResolutionBuilder probe(o, minlev);
        for (int L = 0; L <= top; ++L)
            if (static_cast<long long>(probe.amonos(L).size()) != series[L]) {
                o.complete_intersection = false;
                break;
            }
    }
    detail::ResolutionBuilder rb(o, minlev);
    o.gen_weights = {{0}};
    o.d.resize(1);
    for (int h = 0; h < H; ++h) {
        o.level_cap.push_back(bound(h));
        rb.kernel_generators(h, bound(h + 1));
    }
    o.level_cap.push_back(bound(H));
    // Hom(F_h, S) at internal weight W: generator g (level lg) -> S at level lg - W
    std::vector<Poly> zero(o.A.ngens());
    for (int i = 0; i < o.A.ngens(); ++i) {
        const auto& name = o.A.gens[i].name;
        zero[i] = o.S.index(name) >= 0 ? o.S.var(name) : Poly();
    }
    auto hom_basis = [&](int h, int W) {
        detail::LevelBasis b;
        b.index.resize(o.gen_weights[h].size());
        for (size_t g = 0; g < o.gen_weights[h].size(); ++g)
            for (auto& m : rb.smonos(o.gen_weights[h][g] - W)) {
                b.index[g][m] = static_cast<int>(b.elems.size());
                b.elems.push_back({static_cast<int>(g), m});
            }
        return b;
    };
    // rank of phi -> phi o d_h from Hom(F_(h-1), S)_W to Hom(F_h, S)_W
    auto delta_rank = [&](int h, int W) -> size_t {
        if (h == 0 || h > H) return 0;
        auto src = hom_basis(h - 1, W), tgt = hom_basis(h, W);
        Echelon e;
        for (auto& [k, s] : src.elems) {
            std::vector<Poly> col(o.gen_weights[h].size());
            for (size_t g = 0; g < col.size(); ++g)
                col[g] = o.S.nf(substitute(o.d[h][g][k], zero) * Poly(s, Q(1)));
            e.insert(detail::ResolutionBuilder::coords(tgt, col));
        }
        return e.rank();
    };
    for (int h = 0; h <= hom_bound; ++h) {
        int maxlev = 0;
        for (int l : o.gen_weights[h]) maxlev = std::max(maxlev, l);
        for (int W = maxlev; W >= h - weight_bound; --W) {
            long long dim = static_cast<long long>(hom_basis(h, W).elems.size());
            dim -= static_cast<long long>(delta_rank(h + 1, W) + delta_rank(h, W));
            if (dim) o.dims[{h, W - h}] = dim;
            if (!o.complete_intersection && o.determined) {
                o.determined = false;
                o.first_undetermined = {h, W - h};
            }
        }
    }
    return o;
}

struct HCDiff {
    int hom = 0, weight = 0;
    long long closed = 0, oracle = 0;
};

/// Differences within the bounds, in order of hom degree then weight.
inline std::vector<HCDiff> hc_compare(const HCTable& closed, const HCTable& oracle, int hom_bound, int weight_bound) {
    std::map<std::pair<int, int>, std::pair<long long, long long>> all;
    for (auto& [k, v] : closed) all[k].first = v;
    for (auto& [k, v] : oracle) all[k].second = v;
    std::vector<HCDiff> out;
    for (auto& [k, v] : all) {
        if (k.first > hom_bound || k.second < -weight_bound) continue;
        if (v.first != v.second) out.push_back({k.first, k.second, v.first, v.second});
    }
    return out;
}

}  // namespace kr
