#pragma once

#include "kring/centralizers.hpp"
#include "kring/gkm.hpp"
#include "kring/hochschild.hpp"
#include "kring/string_topology.hpp"
#include "kring/table.hpp"

#include <chrono>

namespace kr {

struct Bounds {
    int weight = 24;
    int hom = 6;
};

struct Check {
    std::string module, property, witness;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    size_t failed() const {
        return std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
    }
    void add(const std::string& module, const std::string& property, bool pass, const std::string& witness = {}) {
        checks.push_back({module, property, witness, pass});
    }
    // a thrown error counts as a failed check
    template <class F>
    void guard(const std::string& module, const std::string& property, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            add(module, property, false, e.what());
        }
    }
};

namespace detail {

inline std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : "; ") + x;
    return s;
}

// the relations of R generate the same ideal as `rel`
inline bool ideal_is(const Presentation& R, const std::string& rel) {
    Presentation U(R.base);
    append_gens(U, R, "_");
    U.add_rel(U.parse(rel));
    for (auto& x : R.rels)
        if (!U.member(U.parse(R.str(x)))) return false;
    return R.member(R.parse(rel));
}

template <class F>
SuiteReport timed(const std::string& name, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport r;
    r.suite = name;
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace detail

inline SuiteReport suite_fgl(const Bounds&) {
    return detail::timed("fgl", [](SuiteReport& r) {
        Presentation P(BaseRing{{}, true, false});
        Poly x = Poly::var(P.add_gen("x", -2)), y = Poly::var(P.add_gen("y", -2)), z = Poly::var(P.add_gen("z", -2));
        Poly b = P.var("beta");
        r.add("formal-group", "unit", fgl(x, Poly(), b) == x);
        r.add("formal-group", "commutativity", fgl(x, y, b) == fgl(y, x, b));
        r.add("formal-group", "associativity", fgl(fgl(x, y, b), z, b) == fgl(x, fgl(y, z, b), b));
        auto T = torus_presentation(1);
        Poly B = T.var("beta"), one(Q(1));
        r.add("formal-group", "2-series", n_series(T, 2) == T.parse("2*x + beta*x^2"));
        bool comp = true, add = true;
        std::string w;
        for (int m = -5; m <= 5; ++m)
            for (int n = -5; n <= 5; ++n) {
                Poly inv = n >= 0 ? pow(T.var("y"), n) : pow(one + B * T.var("x"), -n);
                if (n_series_of(T, n_series(T, n), m, inv) != n_series(T, m * n)) {
                    comp = false;
                    w += "[" + std::to_string(m) + "]([" + std::to_string(n) + "]) ";
                }
                if (T.nf(fgl(n_series(T, m), n_series(T, n), B)) != n_series(T, m + n)) {
                    add = false;
                    w += "F([" + std::to_string(m) + "],[" + std::to_string(n) + "]) ";
                }
            }
        r.add("formal-group", "[m]([n](x)) = [mn](x), |m|,|n| <= 5", comp, w);
        r.add("formal-group", "F([m],[n]) = [m+n], |m|,|n| <= 5", add, w);
        auto T2 = torus_presentation(2);
        bool chars = true;
        for (int a = -2; a <= 2; ++a)
            for (int c = -2; c <= 2; ++c)
                chars = chars && character_series({a + c, c - a}, T2) ==
                                     T2.nf(fgl(character_series({a, c}, T2), character_series({c, -a}, T2), T2.var("beta")));
        r.add("formal-group", "character series additive", chars);
    });
}

struct LoopCheck {
    std::string id;
    int lo, hi, trunc, slack;
    bool core;
};

inline const std::vector<LoopCheck>& loop_checks() {
    static const std::vector<LoopCheck> v = {
        {"an", 1, 4, 12, 0, true}, {"un", 1, 3, 10, 2, true}, {"bn", 1, 4, 16, 0, false}, {"cn", 2, 3, 14, 0, false},
        {"hp", 2, 4, 16, 0, false}, {"dn", 2, 4, 8, 4, false}, {"f4", 4, 4, 20, 0, false}, {"g2", 2, 2, 6, 20, false},
        {"b3p", 3, 3, 8, 6, false}};
    return v;
}

inline SuiteReport suite_loop(const Bounds& bd) {
    return detail::timed("loop", [&](SuiteReport& r) {
        for (auto& lc : loop_checks())
            for (int n = lc.lo; n <= lc.hi; ++n) {
                std::string tag = lc.id + " " + std::to_string(n);
                r.guard("loop-homology", tag, [&] {
                    LoopCase c = loop_case(lc.id, n);
                    auto rep = lc.core ? verify_loop_core(c, -bd.weight, bd.weight, lc.trunc, lc.slack)
                                       : verify_loop_case(c, -bd.weight, bd.weight, lc.trunc, lc.slack);
                    r.add("loop-homology", tag + " invariants to weight " + std::to_string(bd.weight), rep.ok,
                          detail::join(rep.failures));
                    r.add("loop-homology", tag + " distinguished weight", c.weight_from_dimension() == c.dist_weight &&
                                                                              c.closed->gens[c.closed->at(c.distinguished)].weight == c.dist_weight);
                });
            }
    });
}

inline SuiteReport suite_stabilizer(const Bounds& bd) {
    return detail::timed("stabilizer", [&](SuiteReport& r) {
        for (auto& id : stabilizer_case_ids()) {
            auto [lo, hi] = id == "pgl2" ? std::pair<int, int>{1, 1} : loop_case_range(id);
            for (int n = lo; n <= std::min(hi, 4); ++n) {
                std::string tag = id + " " + std::to_string(n);
                r.guard("centralizers", tag, [&] {
                    auto s = stabilizer_case(id, n);
                    auto fails = check_action(s.action);
                    r.add("centralizers", tag + " action axioms", fails.empty(), detail::join(fails));
                    auto S = stabilizer_solve(s);
                    bool id_ok = true;
                    for (auto& p : identity_residuals(s.action, S)) id_ok = id_ok && p.zero();
                    r.add("centralizers", tag + " identity lies on the stabilizer", id_ok);
                    auto cmp = compare_stabilizer(s);
                    r.add("centralizers", tag + " matches the loop closed form", cmp.with_beta.empty() && cmp.at_zero.empty(),
                          detail::join(cmp.with_beta) + detail::join(cmp.at_zero));
                    std::string form;
                    if (id == "un") form = "b*c" + std::to_string(n) + " - (a - 1)";
                    else if (id == "pgl2") form = "b*x - (a - 1)*(1 + beta*x)";
                    if (!form.empty())
                        r.add("centralizers", tag + " closed form recovered", detail::ideal_is(S.ring, form), S.ring.display());
                });
            }
        }
        // b * c_top = 0 reads off the top class from the base
        for (auto [id, n, top] : std::vector<std::tuple<std::string, int, std::string>>{
                 {"an", 3, "c3"}, {"bn", 3, "c3"}, {"cn", 3, "p2"}, {"hp", 3, "p2"}, {"f4", 4, "p4"}, {"g2", 2, "c3"}})
            r.guard("centralizers", id, [&] {
                auto S = stabilizer_solve(stabilizer_case(id, n));
                r.add("centralizers", id + " " + std::to_string(n) + " b*" + top + " = 0", detail::ideal_is(S.ring, "b*" + top),
                      S.ring.display());
            });
        for (auto [id, n] : std::vector<std::pair<std::string, int>>{{"dn", 2}, {"dn", 3}, {"b3p", 3}}) {
            std::string tag = id + " " + std::to_string(n);
            r.guard("centralizers", tag, [&] {
                auto S = stabilizer_solve(stabilizer_case(id, n));
                r.add("centralizers", tag + " alpha^2 - top*gamma^2 = 1",
                      S.ring.rels.size() == 1 && S.ring.rel_text[0].rfind("alpha^2 - ", 0) == 0, S.ring.display());
                LoopCase c = loop_case(id, n);
                std::map<std::string, Poly> img(c.phi.begin(), c.phi.end());
                img["alpha"] = Q(1, 2) * c.phi.at("s");
                img["gamma"] = Q(1, 2) * c.phi.at("d");
                img.erase("s");
                img.erase("d");
                auto rep = compare_with_invariants(ring_map(S.ring, *c.torus, img), *c.W, -bd.weight, bd.weight, 8, 4);
                r.add("centralizers", tag + " SL2 stabilizer = Z/2 invariants to weight " + std::to_string(bd.weight), rep.ok,
                      detail::join(rep.failures));
                bool dims = true;
                for (int w = -bd.weight; w <= bd.weight; ++w)
                    dims = dims && graded_dimension(S.ring, w, 10).dim == graded_dimension(*c.closed, w, 10).dim;
                r.add("centralizers", tag + " graded dimensions of the closed form", dims);
            });
        }
    });
}

inline SuiteReport suite_centralizer(const Bounds&) {
    return detail::timed("centralizer", [](SuiteReport& r) {
        std::vector<std::pair<Family, int>> sizes = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 1},
                                                     {Family::B, 2}, {Family::C, 1}, {Family::C, 2}, {Family::D, 2},
                                                     {Family::D, 3}, {Family::G2, 2}};
        for (auto [fam, n] : sizes) {
            std::string tag = to_string(fam) + std::to_string(n);
            r.guard("centralizers", tag, [&] {
                auto F = char_poly_family(fam, n);
                Poly f = F.generic("f"), g = F.generic("g"), h = F.generic("h");
                Poly fg = quotient_unit_mul(F, f, g);
                r.add("centralizers", tag + " commutative", fg == quotient_unit_mul(F, g, f));
                r.add("centralizers", tag + " associative",
                      quotient_unit_mul(F, fg, h) == quotient_unit_mul(F, f, quotient_unit_mul(F, g, h)));
                if (fam != Family::A && fam != Family::G2) {
                    bool closed = true;
                    for (auto& p : symmetry_closure_residual(F, f, g)) closed = closed && p.zero();
                    r.add("centralizers", tag + " symmetric units closed under products", closed);
                }
            });
        }
        r.guard("centralizers", "G2", [&] {
            for (auto& id : g2_symmetric_identities(10))
                r.add("centralizers", "G2 e" + std::to_string(id.j), id.elementary == id.expected);
        });
    });
}

inline SuiteReport suite_hc(const Bounds& bd) {
    return detail::timed("hc", [&](SuiteReport& r) {
        auto agree = [&](const std::string& tag, const PolyExtension& ext) {
            r.guard("hochschild", tag, [&] {
                auto closed = hc_closed_dims(hc_closed_form(ext), bd.hom, bd.weight);
                auto o = hc_oracle(ext, bd.hom, bd.weight);
                auto diff = hc_compare(closed, o.dims, bd.hom, bd.weight);
                std::string w;
                for (auto& d : diff)
                    w += "(h=" + std::to_string(d.hom) + ",v=" + std::to_string(d.weight) + ": " + std::to_string(d.closed) +
                         " vs " + std::to_string(d.oracle) + ") ";
                r.add("hochschild", tag + " resolution oracle = closed form", o.complete_intersection && diff.empty(), w);
            });
        };
        for (int j = 1; j <= 4; ++j) agree("x^" + std::to_string(j), power_extension(j));
        for (int n = 2; n <= 3; ++n) agree("dihedral " + std::to_string(n), dihedral_extension(n));
        r.guard("hochschild", "beta family", [&] {
            auto hc = hc_beta_family();
            auto s = beta_specialize(hc.ring, BetaMode::Zero);
            r.add("hochschild", "beta family at beta = 0 is 2*x*w",
                  s.target.rels.size() == 1 && s.target.rels[0] == s.target.parse("2*x*w"), s.target.display());
        });
    });
}

inline SuiteReport suite_string(const Bounds& bd) {
    return detail::timed("string", [&](SuiteReport& r) {
        std::string bad;
        int count = 0;
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j)
                for (int k = 1; k <= 4; ++k)
                    for (int l = 1; l <= 4; ++l) {
                        DerivedQuotientSpec s{i, j, k, l};
                        if (derived_quotient_dims(derived_quotient(s), bd.weight) != koszul_oracle(s, bd.weight))
                            bad += "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," +
                                   std::to_string(l) + ") ";
                        ++count;
                    }
        r.add("string-topology", std::to_string(count) + " derived quotients = Koszul homology", bad.empty(), bad);
        std::vector<std::pair<Space, int>> spaces;
        for (int j = 1; j <= 4; ++j) spaces.push_back({Space::SphereOdd, j}), spaces.push_back({Space::SphereEven, j});
        for (int n = 1; n <= 4; ++n) spaces.push_back({Space::CP, n});
        for (int n = 1; n <= 3; ++n) spaces.push_back({Space::HP, n});
        spaces.push_back({Space::OP2, 2});
        for (auto [s, n] : spaces) {
            std::string tag = space_title(s, n);
            r.guard("string-topology", tag, [&] {
                auto h = chas_sullivan(s, n);
                const auto& P = h.ring;
                bool ok = P.member(P.parse("sigma^2"));
                if (s != Space::SphereOdd)
                    ok = ok && P.member(P.parse(h.spec.x + "^" + std::to_string(h.spec.k) + "*sigma")) &&
                         P.gens[P.at("sigma")].weight == h.spec.sigma_weight();
                r.add("string-topology", tag + " sigma^2 = 0 and x^k sigma = 0", ok, P.display());
            });
        }
        for (int j = 1; j <= 4; ++j)
            r.guard("string-topology", "S^" + std::to_string(2 * j), [&] {
                Presentation R = equivariant_loop_homology("bn", j).ring;
                std::map<std::string, std::string> kill;
                for (int i = 1; i < j; ++i) kill["p" + std::to_string(i)] = "0";
                std::string c = "c" + std::to_string(j);
                auto f = restrict_to_fiber(R, c, "b", kill);
                DerivedQuotientSpec s{j, 2 * j - 1, f.k, 2 - f.k, c, "b", BaseRing::Zp()};
                r.add("string-topology", "S^" + std::to_string(2 * j) + " from the SO loop presentation",
                      derived_quotient(s).ring.display() == chas_sullivan(Space::SphereEven, j).ring.display());
            });
    });
}

inline SuiteReport suite_beta(const Bounds& bd) {
    return detail::timed("beta", [&](SuiteReport& r) {
        Presentation P(BaseRing{{}, true, false});
        Poly x = Poly::var(P.add_gen("x", -2)), y = Poly::var(P.add_gen("y", -2));
        auto s = beta_specialize(P, BetaMode::Zero);
        r.add("formal-group", "G_beta at beta = 0 is additive", s(fgl(x, y, P.var("beta"))) == s.target.parse("x + y"));
        for (int m = 1; m <= 3; ++m) {
            auto T0 = beta_specialize(torus_presentation(m), BetaMode::Zero).target;
            bool affine = T0.rels.empty() && T0.ngens() == m;
            for (auto& g : T0.gens) affine = affine && g.kind == GenKind::Plain && g.weight == -2;
            r.add("formal-group", "T_beta at beta = 0 is affine " + std::to_string(m) + "-space", affine, T0.display());
        }
        r.guard("centralizers", "closures", [&] {
            auto B0 = beta_specialize(sl2_closures(Closure::B_beta), BetaMode::Zero).target;
            r.add("centralizers", "B_beta relation at beta = 0 is cB - aD = -2x",
                  B0.rels.size() == 1 && B0.rels[0] == B0.parse("c*B - a*D + 2*x"), B0.display());
            auto V0 = beta_specialize(sl2_closures(Closure::V_beta), BetaMode::Zero).target;
            bool a4 = V0.rels.empty() && V0.ngens() == 4;
            for (auto& g : V0.gens) a4 = a4 && g.kind == GenKind::Plain;
            r.add("centralizers", "V_beta at beta = 0 is A^4", a4, V0.display());
        });
        // loop cases with beta: the beta = 0 closed form is the ordinary Weyl-invariant ring
        for (auto [id, n] : std::vector<std::pair<std::string, int>>{{"an", 1}, {"an", 2}, {"an", 3}, {"g2", 2}}) {
            std::string tag = id + " " + std::to_string(n);
            r.guard("loop-homology", tag, [&] {
                LoopCase c = loop_case(id, n);
                auto sR = beta_specialize(*c.closed, BetaMode::Zero);
                auto sT = beta_specialize(*c.torus, BetaMode::Zero);
                std::map<std::string, Poly> phi;
                for (auto& [name, p] : c.phi)
                    if (sR.target.index(name) >= 0) phi[name] = sT(p);
                std::vector<std::map<std::string, Poly>> gens;
                for (auto& g : c.W->gens) {
                    std::map<std::string, Poly> m;
                    for (int i = 0; i < c.torus->ngens(); ++i)
                        if (c.torus->gens[i].kind == GenKind::Plain) m[c.torus->gens[i].name] = sT(g[i]);
                    gens.push_back(std::move(m));
                }
                auto W0 = FiniteGroupAction::from_images(sT.target, gens);
                auto rep = compare_with_invariants(ring_map(sR.target, sT.target, phi), W0, -bd.weight, bd.weight, 14, 0);
                r.add("loop-homology", tag + " at beta = 0 is the integral presentation", rep.ok, detail::join(rep.failures));
            });
        }
    });
}

inline SuiteReport suite_gkm(const Bounds& bd) {
    return detail::timed("gkm", [&](SuiteReport& r) {
        auto torus_dim = [](int rank, int w) -> long long {
            if (w > 0 || w % 2) return 0;
            long long c = 1;
            for (int i = 1; i < rank; ++i) c = c * (-w / 2 + i) / i;
            return c;
        };
        for (auto lambda : std::vector<std::vector<int>>{{1}, {2}, {1, 0}, {1, -1}, {2, 3}, {1, 1, 1}}) {
            int m = static_cast<int>(lambda.size());
            std::string tag = "sphere";
            for (int c : lambda) tag += " " + std::to_string(c);
            r.guard("gkm", tag, [&] {
                auto R = gkm_ring(moment_graph_of("sphere", lambda), ordinary_torus(m), bd.weight);
                std::string w;
                for (int v = -bd.weight; v <= bd.weight; ++v)
                    if (R.dim(v) != torus_dim(m, v) + torus_dim(m, v + 2)) w += std::to_string(v) + " ";
                r.add("gkm", tag + " free of rank two over T", w.empty(), w);
            });
        }
        r.guard("gkm", "p1", [&] {
            auto R = gkm_ring(moment_graph_of("p1"), ordinary_torus(1), bd.weight);
            auto U = graph_union_dims(1, {{{1}}, {{-1}}}, bd.weight);
            std::string w;
            for (int v = -bd.weight; v <= 0; ++v)
                if (R.dim(v) != (U.count(v) ? U.at(v) : 0)) w += std::to_string(v) + " ";
            r.add("gkm", "P1 = union of the two graphs", w.empty(), w);
        });
        r.guard("gkm", "flag-sl3", [&] {
            int wb = std::min(bd.weight, 12);
            auto R = gkm_ring(moment_graph_of("flag-sl3"), ordinary_torus(2), wb);
            std::vector<std::vector<std::vector<int>>> W = {{{1, 0}, {0, 1}},  {{0, 1}, {1, 0}},  {{-1, -1}, {0, 1}},
                                                            {{1, 0}, {-1, -1}}, {{0, 1}, {-1, -1}}, {{-1, -1}, {1, 0}}};
            auto U = graph_union_dims(2, W, wb);
            std::string w;
            for (int v = -wb; v <= 0; ++v)
                if (R.dim(v) != (U.count(v) ? U.at(v) : 0)) w += std::to_string(v) + " ";
            r.add("gkm", "flag-SL3 = union of the six graphs", w.empty(), w);
            bool sub = true;
            for (auto& [v, b] : R.basis)
                for (auto& t : b) sub = sub && gkm_contains(R, t);
            for (auto& a : R.basis[-2])
                for (auto& b : R.basis[-2]) sub = sub && gkm_contains(R, detail::tuple_mul(R.T, a, b));
            r.add("gkm", "flag-SL3 basis closed under products", sub);
        });
    });
}

inline SuiteReport suite_table(const Bounds&) {
    return detail::timed("table", [](SuiteReport& r) {
        r.add("cli", "ten rows", rank1_table().size() == 10);
        auto bad = rank1_cross_check(6);
        r.add("cli", "2i (2j on sl_2 rows) = loop-homology b weight", bad.empty(), detail::join(bad));
    });
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v = {"fgl", "loop", "stabilizer", "hc", "string", "centralizer", "beta", "gkm", "table"};
    return v;
}

inline SuiteReport run_suite(const std::string& name, const Bounds& b) {
    if (name == "fgl") return suite_fgl(b);
    if (name == "loop") return suite_loop(b);
    if (name == "stabilizer") return suite_stabilizer(b);
    if (name == "hc") return suite_hc(b);
    if (name == "string") return suite_string(b);
    if (name == "centralizer") return suite_centralizer(b);
    if (name == "beta") return suite_beta(b);
    if (name == "gkm") return suite_gkm(b);
    if (name == "table") return suite_table(b);
    std::string valid;
    for (auto& s : suite_names()) valid += " " + s;
    throw RingError("unknown suite " + name + " (valid:" + valid + " all)");
}

}  // namespace kr
