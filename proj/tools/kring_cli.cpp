// kring-cli: presentations, verification suites and the rank-one table.

#include "kring/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using kr::Json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string list(const std::vector<std::string>& v) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

void require(const std::string& kind, const std::string& id, const std::vector<std::string>& valid) {
    if (std::find(valid.begin(), valid.end(), id) == valid.end())
        throw UsageError("unknown " + kind + " '" + id + "' (valid: " + list(valid) + ")");
}

int arg_int(const std::vector<std::string>& a, size_t i, int dflt) {
    if (i >= a.size()) return dflt;
    try {
        size_t used = 0;
        int v = std::stoi(a[i], &used);
        if (used == a[i].size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("expected an integer, got '" + a[i] + "'");
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return Json::parse(in);
}

const std::vector<std::string> kKinds = {"loop", "string", "hc", "stabilizer", "closure", "gkm", "torus"};

struct PresentOptions {
    bool beta = false;
    std::vector<long> invert;
    bool relocalize = false;
};

Json emit(const kr::Presentation& P, const PresentOptions& o) {
    return kr::to_json(o.relocalize ? kr::relocalize(P, o.invert) : P);
}

Json present(const std::vector<std::string>& a, const PresentOptions& o, const kr::Bounds& b) {
    if (a.empty()) throw UsageError("present needs an object kind (valid: " + list(kKinds) + ")");
    const std::string& kind = a[0];
    require("object kind", kind, kKinds);
    std::string id = a.size() > 1 ? a[1] : "";
    if (kind == "loop") {
        require("loop case", id, kr::loop_case_ids());
        int n = arg_int(a, 2, kr::loop_case_range(id).first);
        auto lp = kr::equivariant_loop_homology(id, n);
        Json j = emit(lp.ring, o);
        j["distinguished"] = lp.distinguished;
        return j;
    }
    if (kind == "string") {
        std::vector<std::string> ids = {"s-odd", "s-even", "cpn", "hpn", "op2"};
        require("space", id, ids);
        auto h = kr::chas_sullivan(kr::space_from_string(id), arg_int(a, 2, id == "op2" ? 2 : 1));
        Json j = emit(h.ring, o);
        j["space"] = h.space;
        return j;
    }
    if (kind == "hc") {
        require("hc form", id, {"power", "dihedral", "beta"});
        kr::HCPresentation hc;
        if (id == "beta")
            hc = kr::hc_beta_family();
        else
            hc = kr::hc_closed_form(id == "power" ? kr::power_extension(arg_int(a, 2, 2))
                                                  : kr::dihedral_extension(arg_int(a, 2, 2)));
        return emit(hc.ring, o);
    }
    if (kind == "stabilizer") {
        require("stabilizer case", id, kr::stabilizer_case_ids());
        int n = id == "pgl2" ? 1 : arg_int(a, 2, kr::loop_case_range(id).first);
        return emit(kr::stabilizer_solve(kr::stabilizer_case(id, n)).ring, o);
    }
    if (kind == "closure") {
        require("closure", id, {"bbeta", "vbeta"});
        return emit(kr::sl2_closures(id == "bbeta" ? kr::Closure::B_beta : kr::Closure::V_beta), o);
    }
    if (kind == "gkm") {
        require("graph", id, {"sphere", "p1", "flag-sl3"});
        std::vector<int> lambda;
        for (size_t i = 2; i < a.size(); ++i) lambda.push_back(arg_int(a, i, 0));
        return kr::gkm_report(kr::moment_graph_of(id, lambda), o.beta, b);
    }
    int m = arg_int(a, 1, 1);
    if (m < 1) throw UsageError("torus rank must be positive");
    return emit(o.beta ? kr::torus_presentation(m, kr::BaseRing::Zp(true)) : kr::ordinary_torus(m), o);
}

int verify(const std::string& name, const kr::Bounds& b, bool quiet) {
    std::vector<std::string> names = kr::suite_names();
    if (name != "all") {
        std::vector<std::string> valid = names;
        valid.push_back("all");
        require("suite", name, valid);
        names = {name};
    }
    Json out;
    out["weight_bound"] = b.weight;
    out["hom_bound"] = b.hom;
    Json suites = Json::array();
    bool ok = true;
    for (auto& n : names) {
        auto r = kr::run_suite(n, b);
        ok = ok && r.ok();
        suites.push_back(kr::to_json(r));
        if (!quiet) {
            for (auto& c : r.checks)
                std::cerr << (c.pass ? "pass " : "FAIL ") << c.module << ": " << c.property
                          << (c.pass || c.witness.empty() ? "" : " [" + c.witness + "]") << '\n';
            std::cerr << n << ": " << r.checks.size() - r.failed() << "/" << r.checks.size() << " passed\n";
        }
    }
    out["suites"] = suites;
    out["ok"] = ok;
    std::cout << out.dump(2) << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Presentations of equivariant loop homology and related rings"};
    app.require_subcommand(1);
    kr::Bounds bounds;
    app.add_option("--weight-bound", bounds.weight, "weight truncation")->envname("KRING_WEIGHT_BOUND")->check(CLI::PositiveNumber);
    app.add_option("--hom-bound", bounds.hom, "hom degree truncation")->envname("KRING_HOM_BOUND")->check(CLI::NonNegativeNumber);

    auto* p = app.add_subcommand("present", "emit a presentation as JSON");
    std::vector<std::string> pargs;
    PresentOptions popt;
    p->add_option("object", pargs, "kind, id and parameters, e.g. loop g2 or string cpn 2")->required();
    p->add_flag("--beta", popt.beta, "beta-deformed torus for gkm and torus");
    auto* inv = p->add_option("--invert", popt.invert, "primes to invert instead of the default base")->delimiter(',');

    auto* v = app.add_subcommand("verify", "run a property suite; exit 0 iff every check passes");
    std::string suite;
    bool quiet = false;
    v->add_option("suite", suite, "suite name or all")->required();
    v->add_flag("-q,--quiet", quiet, "no per-check lines on stderr");

    auto* t = app.add_subcommand("table", "the rank-one duality table");
    std::string format = "json";
    int tn = 2;
    t->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    t->add_option("--n", tn, "value of n for the parametric rows")->check(CLI::Range(1, 6));

    auto* g = app.add_subcommand("gkm", "equivariant K-theory of a moment graph read from JSON");
    std::string gfile;
    bool gbeta = false;
    g->add_option("file", gfile, "moment graph JSON")->required();
    g->add_flag("--beta", gbeta, "use the beta-deformed torus");

    auto* h = app.add_subcommand("hc", "Hochschild cohomology of a polynomial extension read from JSON");
    std::string hfile;
    h->add_option("file", hfile, "extension JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (p->parsed()) {
            popt.relocalize = inv->count() > 0;
            std::cout << present(pargs, popt, bounds).dump(2) << '\n';
        } else if (v->parsed()) {
            return verify(suite, bounds, quiet);
        } else if (t->parsed()) {
            auto es = kr::rank1_entries(tn);
            if (format == "tsv") {
                std::cout << kr::table_tsv(es);
            } else {
                Json rows = Json::array();
                for (auto& e : es) rows.push_back(kr::to_json(e));
                std::cout << rows.dump(2) << '\n';
            }
            for (auto& e : es)
                if (!e.matches) return 1;
        } else if (g->parsed()) {
            std::cout << kr::gkm_report(kr::graph_from_json(read_json(gfile)), gbeta, bounds).dump(2) << '\n';
        } else if (h->parsed()) {
            std::cout << kr::hc_report(kr::extension_from_json(read_json(hfile)), bounds).dump(2) << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "kring-cli: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "kring-cli: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
