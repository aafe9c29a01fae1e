// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include "kring/suites.hpp"

#include <cstdio>

using namespace kr;

namespace {

struct Criterion {
    int id;
    std::string title;
    double budget;  // seconds
    std::function<void(SuiteReport&)> run;
};

void merge(SuiteReport& into, const SuiteReport& r) {
    into.checks.insert(into.checks.end(), r.checks.begin(), r.checks.end());
}

void literal(SuiteReport& r, const std::string& module, const std::string& what, const std::string& got,
             const std::string& want) {
    r.add(module, what, got == want, "got " + got);
}

void loop_literals(SuiteReport& r) {
    std::vector<std::tuple<std::string, int, std::string>> want = {
        {"an", 1, "Z'[beta,c1,1/(1+beta*c1),b]/(b*c1)"},
        {"an", 2, "Z'[beta,c1,c2,1/(1+beta*c1+beta^2*c2),b]/(b*c2)"},
        {"an", 3, "Z'[beta,c1,c2,c3,1/(1+beta*c1+beta^2*c2+beta^3*c3),b]/(b*c3)"},
        {"an", 4, "Z'[beta,c1,c2,c3,c4,1/(1+beta*c1+beta^2*c2+beta^3*c3+beta^4*c4),b]/(b*c4)"},
        {"bn", 1, "Z'[c1,b]/(b*c1)"},
        {"bn", 2, "Z'[p1,c2,b]/(b*c2)"},
        {"bn", 3, "Z'[p1,p2,c3,b]/(b*c3)"},
        {"bn", 4, "Z'[p1,p2,p3,c4,b]/(b*c4)"},
        {"cn", 2, "Q[p1',p1,b]/(b*p1)"},
        {"cn", 3, "Q[p1',p1,p2,b]/(b*p2)"},
        {"dn", 2, "Z'[p1,a+a^-1,(a-a^-1)/x1]"},
        {"dn", 3, "Z'[p1,p2,a+a^-1,(a-a^-1)/(x1*x2)]"},
        {"dn", 4, "Z'[p1,p2,p3,a+a^-1,(a-a^-1)/(x1*x2*x3)]"},
        {"f4", 4, "Q[p1,p2,p3,p4,b]/(b*p4)"},
        {"g2", 2, "Z'[beta,c2,c3,b]/(b*c3)"},
        {"b3p", 3, "Z'[c2,c6,a+a^-1,(a-a^-1)/(x1*x2*(x1+x2))]"},
        {"hp", 2, "Q[p1,b]/(b*p1)"},
        {"hp", 3, "Q[p1,p2,b]/(b*p2)"},
        {"hp", 4, "Q[p1,p2,p3,b]/(b*p3)"},
    };
    for (auto& [id, n, s] : want)
        literal(r, "loop-homology", id + " " + std::to_string(n) + " presentation",
                equivariant_loop_homology(id, n).ring.display(), s);
}

void string_literals(SuiteReport& r) {
    auto pattern = [](const std::string& base, const std::string& x, int k) {
        std::string xk = k == 1 ? x : x + "^" + std::to_string(k);
        std::string xk1 = x + "^" + std::to_string(k + 1);
        return base + "[" + x + ",b,sigma]/(b*" + xk + ", " + xk1 + ", sigma^2, " + xk + "*sigma)";
    };
    for (int j = 1; j <= 4; ++j) {
        literal(r, "string-topology", "S^" + std::to_string(2 * j + 1), chas_sullivan(Space::SphereOdd, j).ring.display(),
                "Z'[u,sigma]/(sigma^2)");
        std::string c = "c" + std::to_string(j);
        literal(r, "string-topology", "S^" + std::to_string(2 * j), chas_sullivan(Space::SphereEven, j).ring.display(),
                "Z'[" + c + ",b,sigma]/(b*" + c + ", " + c + "^2, sigma^2, " + c + "*sigma)");
    }
    const char* base[] = {"", "Z'", "Z[1/3]", "Z'", "Z[1/5]"};
    for (int n = 1; n <= 4; ++n)
        literal(r, "string-topology", "CP^" + std::to_string(n), chas_sullivan(Space::CP, n).ring.display(),
                pattern(base[n], "c1", n));
    for (int n = 1; n <= 3; ++n)
        literal(r, "string-topology", "HP^" + std::to_string(n), chas_sullivan(Space::HP, n).ring.display(),
                pattern(base[n], "p1", n));
    literal(r, "string-topology", "OP^2", chas_sullivan(Space::OP2).ring.display(), pattern("Z[1/3]", "p2", 2));
}

void g2_literals(SuiteReport& r) {
    Presentation L(BaseRing::Qq());
    L.add_gen("l1", -2);
    L.add_gen("l2", -2);
    std::map<int, std::string> want = {{1, "0"},
                                       {2, "-2*(l1^2 + l1*l2 + l2^2)"},
                                       {3, "0"},
                                       {4, "(l1^2 + l1*l2 + l2^2)^2"},
                                       {5, "0"},
                                       {6, "-(l1*l2*(l1 + l2))^2"},
                                       {7, "0"},
                                       {8, "0"},
                                       {9, "0"}};
    for (auto& g : g2_symmetric_identities(9))
        if (want.count(g.j))
            r.add("centralizers", "G2 e" + std::to_string(g.j) + " expanded", g.elementary == L.parse(want[g.j]),
                  L.str(g.elementary));
}

void table_literals(SuiteReport& r) {
    // name, n, 2i, 2j, grading
    std::vector<std::tuple<std::string, int, int, int, int>> want = {
        {"A_n", 3, 6, 6, 6},   {"B_n", 2, 6, 4, 6},        {"C_n", 3, 10, 8, 10},   {"D_n", 4, 0, 6, 6},
        {"F_4", 4, 22, 16, 22}, {"G_2", 2, 10, 6, 10},     {"B_3'", 3, 0, 6, 6},    {"N(A_1)", 1, 2, 2, 2},
        {"N(B_n)", 3, 10, 6, 10}, {"N(G_2)", 2, 10, 6, 10}};
    const auto& rows = rank1_table();
    r.add("cli", "exactly ten rows", rows.size() == want.size());
    for (size_t k = 0; k < std::min(rows.size(), want.size()); ++k) {
        auto [name, n, i2, j2, gr] = want[k];
        auto e = rank1_entry(rows[k], n);
        r.add("cli", name + " integers", e.name == name && e.two_i == i2 && e.two_j == j2 && e.grading == gr,
              e.name + " " + std::to_string(e.two_i) + " " + std::to_string(e.two_j) + " " + std::to_string(e.grading));
    }
}

}  // namespace

int main() {
    Bounds b24{24, 6};
    std::vector<Criterion> cs = {
        {1, "formal group axioms and n-series", 1, [&](SuiteReport& r) { merge(r, suite_fgl(b24)); }},
        {2, "loop homology closed forms to weight 40", 120,
         [&](SuiteReport& r) {
             loop_literals(r);
             merge(r, suite_loop({40, 6}));
         }},
        {3, "stabilizer closed forms and SL2 centralizer", 30, [&](SuiteReport& r) { merge(r, suite_stabilizer(b24)); }},
        {4, "Hochschild oracle vs closed forms", 300, [&](SuiteReport& r) { merge(r, suite_hc({16, 6})); }},
        {5, "string topology", 120,
         [&](SuiteReport& r) {
             merge(r, suite_string(b24));
             string_literals(r);
         }},
        {6, "centralizer unit arithmetic and G2 identities", 30,
         [&](SuiteReport& r) {
             merge(r, suite_centralizer(b24));
             g2_literals(r);
         }},
        {7, "beta = 0 coherence", 30,
         [&](SuiteReport& r) {
             merge(r, suite_beta(b24));
             literal(r, "loop-homology", "an 3 at beta = 0",
                     beta_specialize(*loop_case("an", 3).closed, BetaMode::Zero).target.display(), "Z'[c1,c2,c3,b]/(b*c3)");
             literal(r, "loop-homology", "g2 at beta = 0",
                     beta_specialize(*loop_case("g2", 2).closed, BetaMode::Zero).target.display(), "Z'[c2,c3,b]/(b*c3)");
         }},
        {8, "GKM rings", 60, [&](SuiteReport& r) { merge(r, suite_gkm({16, 6})); }},
        {9, "rank one table", 10,
         [&](SuiteReport& r) {
             table_literals(r);
             merge(r, suite_table(b24));
         }},
    };
    bool all = true;
    for (auto& c : cs) {
        SuiteReport r = detail::timed(c.title, [&](SuiteReport& rep) { rep.guard("acceptance", c.title, [&] { c.run(rep); }); });
        bool ok = r.ok() && !r.checks.empty() && r.seconds < c.budget;
        all = all && ok;
        std::printf("%s %d %s (%zu checks, %.2fs)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), r.checks.size(), r.seconds);
        if (r.seconds >= c.budget) std::printf("    over the %.0fs budget\n", c.budget);
        for (auto& k : r.checks)
            if (!k.pass) std::printf("    %s: %s [%s]\n", k.module.c_str(), k.property.c_str(), k.witness.c_str());
    }
    return all ? 0 : 1;
}
