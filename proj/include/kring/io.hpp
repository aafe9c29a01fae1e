#pragma once

#include "kring/suites.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>

namespace kr {

using Json = nlohmann::ordered_json;

inline Json to_json(const BaseRing& b) {
    Json j;
    j["inverted"] = b.inverted;
    j["beta"] = b.beta;
    if (b.rational) j["rational"] = true;
    return j;
}

inline BaseRing base_from_json(const Json& j) {
    BaseRing b;
    if (j.is_null()) return BaseRing::Qq();
    b.inverted = j.value("inverted", std::vector<long>{});
    std::sort(b.inverted.begin(), b.inverted.end());
    b.beta = j.value("beta", false);
    b.rational = j.value("rational", false);
    return b;
}

/// Generators exclude beta and reciprocal partners; an inverse-of generator y = 1/e contributes y*e - 1.
inline Json to_json(const Presentation& P) {
    Json j;
    j["base"] = to_json(P.base);
    Json gens = Json::array(), rels = Json::array(), adic = Json::array();
    for (int i = 0; i < P.ngens(); ++i) {
        const auto& g = P.gens[i];
        if (g.kind == GenKind::Beta || g.kind == GenKind::Reciprocal) continue;
        gens.push_back({{"name", g.name}, {"weight", g.weight}, {"degree", g.degree}, {"invertible", g.invertible}});
        if (g.adic) adic.push_back(g.name);
        if (g.kind == GenKind::InverseOf) rels.push_back(P.canon(Poly::var(i) * g.inverts - Poly(Q(1))));
    }
    for (auto& r : P.rels) rels.push_back(P.canon(r));
    j["generators"] = gens;
    j["relations"] = rels;
    j["adic"] = adic;
    j["display"] = P.display();
    return j;
}

inline Presentation presentation_from_json(const Json& j) {
    Presentation P(base_from_json(j.at("base")));
    std::vector<std::string> adic = j.value("adic", std::vector<std::string>{});
    for (auto& g : j.at("generators")) {
        std::string name = g.at("name");
        int k = P.add_gen(name, g.at("weight"), g.value("invertible", false),
                          std::find(adic.begin(), adic.end(), name) != adic.end());
        P.gens[k].degree = g.value("degree", P.gens[k].weight);
    }
    for (auto& r : j.at("relations")) P.add_rel(r.get<std::string>());
    return P;
}

inline PolyExtension extension_from_json(const Json& j) {
    PolyExtension e;
    e.base = j.contains("base") ? base_from_json(j["base"]) : BaseRing::Qq();
    for (auto& v : j.at("vars")) e.vars.push_back({v.at("name"), v.at("weight")});
    for (auto& f : j.at("invariants")) e.invariants.push_back(f);
    if (e.vars.empty()) throw RingError("extension: no variables");
    return e;
}

inline MomentGraph graph_from_json(const Json& j) {
    MomentGraph g;
    g.name = j.value("name", "graph");
    g.rank = j.at("rank");
    for (auto& v : j.at("vertices")) g.vertices.push_back(v);
    for (auto& e : j.at("edges")) g.edges.push_back({e.at("v0"), e.at("v1"), e.at("lambda"), e.value("mult", 1)});
    g.check();
    return g;
}

inline Json to_json(const MomentGraph& g) {
    Json j;
    j["name"] = g.name;
    j["rank"] = g.rank;
    j["vertices"] = g.vertices;
    Json es = Json::array();
    for (auto& e : g.edges) {
        Json x = {{"v0", e.v0}, {"v1", e.v1}, {"lambda", e.lambda}};
        if (e.mult != 1) x["mult"] = e.mult;
        es.push_back(x);
    }
    j["edges"] = es;
    return j;
}

inline Json dims_json(const std::map<std::pair<int, int>, long long>& t, const char* first) {
    Json a = Json::array();
    for (auto& [k, v] : t) a.push_back({{first, k.first}, {"weight", k.second}, {"dim", v}});
    return a;
}

inline Json hc_report(const PolyExtension& ext, const Bounds& b) {
    Json j;
    Json e;
    e["base"] = to_json(ext.base);
    Json vs = Json::array();
    for (auto& [n, w] : ext.vars) vs.push_back({{"name", n}, {"weight", w}});
    e["vars"] = vs;
    e["invariants"] = ext.invariants;
    j["extension"] = e;
    j["hom_bound"] = b.hom;
    j["weight_bound"] = b.weight;
    auto o = hc_oracle(ext, b.hom, b.weight);
    std::optional<HCPresentation> closed;
    try {
        closed = hc_closed_form(ext);
    } catch (const RingError&) {
    }
    j["closed_form"] = closed ? to_json(closed->ring) : Json();
    Json oj;
    oj["complete_intersection"] = o.complete_intersection;
    oj["determined"] = o.determined;
    if (!o.determined) oj["first_undetermined"] = {o.first_undetermined.first, o.first_undetermined.second};
    oj["dims"] = dims_json(o.dims, "hom");
    j["oracle"] = oj;
    if (closed) {
        auto diff = hc_compare(hc_closed_dims(*closed, b.hom, b.weight), o.dims, b.hom, b.weight);
        Json d = Json::array();
        for (auto& x : diff) d.push_back({{"hom", x.hom}, {"weight", x.weight}, {"closed", x.closed}, {"oracle", x.oracle}});
        j["agree"] = diff.empty();
        j["differences"] = d;
    }
    return j;
}

inline Json gkm_report(const MomentGraph& g, bool beta, const Bounds& b) {
    Presentation T = beta ? torus_presentation(g.rank, BaseRing::Zp(true)) : ordinary_torus(g.rank);
    auto R = gkm_ring(g, T, b.weight);
    Json j;
    j["graph"] = to_json(g);
    j["torus"] = to_json(T);
    j["weight_bound"] = b.weight;
    if (R.trunc >= 0) j["degree_truncation"] = R.trunc;
    Json dims = Json::array();
    for (auto& [w, basis] : R.basis)
        if (!basis.empty()) dims.push_back({{"weight", w}, {"dim", basis.size()}});
    j["dims"] = dims;
    j["presented"] = R.presented;
    j["closure_witnessed"] = R.closure_witnessed;
    if (R.presented) {
        j["presentation"] = to_json(R.presentation);
        Json imgs = Json::array();
        for (size_t i = 0; i < R.generator_images.size(); ++i) {
            Json per = Json::array();
            for (auto& p : R.generator_images[i]) per.push_back(T.canon(p));
            imgs.push_back(per);
        }
        j["generator_images"] = imgs;
    }
    return j;
}

inline Json to_json(const Rank1Entry& e) {
    Json j;
    j["name"] = e.name;
    j["n"] = e.n;
    j["type"] = std::string(1, e.type);
    j["space"] = e.space;
    j["dual"] = e.dual;
    if (e.type == 'G')
        j["2j"] = e.two_j;
    else
        j["2i"] = e.two_i, j["2j"] = e.two_j;
    j["grading"] = e.grading;
    j["normalization"] = e.normalization;
    j["phenomenon"] = e.phenomenon;
    j["loop_case"] = e.loop_case;
    j["b_weight"] = e.b_weight;
    j["matches"] = e.matches;
    return j;
}

inline std::string table_tsv(const std::vector<Rank1Entry>& es) {
    std::ostringstream s;
    s << "name\tn\ttype\tspace\tdual\t2i\t2j\tgrading\tnormalization\tphenomenon\tloop_case\tb_weight\tmatches\n";
    for (auto& e : es)
        s << e.name << '\t' << e.n << '\t' << e.type << '\t' << e.space << '\t' << e.dual << '\t'
          << (e.type == 'G' ? std::string("-") : std::to_string(e.two_i)) << '\t' << e.two_j << '\t' << e.grading << '\t'
          << e.normalization << '\t' << e.phenomenon << '\t' << e.loop_case << '\t' << e.b_weight << '\t'
          << (e.matches ? "yes" : "no") << '\n';
    return s.str();
}

inline Json to_json(const SuiteReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["ok"] = r.ok();
    j["checks"] = r.checks.size();
    Json f = Json::array();
    for (auto& c : r.checks)
        if (!c.pass) f.push_back({{"module", c.module}, {"property", c.property}, {"witness", c.witness}});
    j["failures"] = f;
    return j;
}

}  // namespace kr
