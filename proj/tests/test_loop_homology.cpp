#include "catch_amalgamated.hpp"
#include "kring/loop_homology.hpp"
#include "molien.hpp"

using namespace kr;

namespace {

void require_ok(const InvariantReport& r) {
    for (auto& f : r.failures) UNSCOPED_INFO(f);
    CHECK(r.ok);
    CHECK(r.slices > 0);
}

// closed form counted by (b exponent, half the negated weight of the rest)
std::map<std::pair<int, int>, long> closed_counts(const Presentation& R, int K, int D) {
    int bi = R.at("b");
    int bw = R.gens[bi].weight;
    std::map<std::pair<int, int>, long> out;
    for (auto& m : standard_monomials(R, K + D, -2 * D, K * bw)) {
        int k = m.e[bi];
        int d = -(R.weight(m) - k * bw) / 2;
        if (k <= K && d <= D) ++out[{k, d}];
    }
    return out;
}

void check_against_molien(const Presentation& R, const molien::Counts& c, int K, int D) {
    auto got = closed_counts(R, K, D);
    for (int k = 0; k <= K; ++k)
        for (int d = 0; d <= D; ++d) {
            INFO("b^" << k << " degree " << d);
            CHECK(got[{k, d}] == (k == 0 ? c.poly[d] : c.quotient[d]));
        }
}

std::vector<std::vector<long>> unit_forms(size_t n, size_t from = 0) {
    std::vector<std::vector<long>> f;
    for (size_t i = from; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = 1;
        f.push_back(e);
    }
    return f;
}

std::vector<std::vector<long>> paired_forms(size_t n, size_t from = 0) {
    std::vector<std::vector<long>> f;
    for (auto& e : unit_forms(n, from)) {
        f.push_back(e);
        for (auto& v : e) v = -v;
        f.push_back(e);
    }
    return f;
}

std::vector<molien::Mat> symmetric(size_t n, size_t from = 0) {
    std::vector<molien::Mat> g;
    if (n - from >= 2) g.push_back(molien::transposition(n, from, from + 1));
    if (n - from >= 3) g.push_back(molien::cycle(n, from, n));
    return g;
}

}  // namespace

TEST_CASE("displayed closed forms") {
    const std::vector<std::tuple<std::string, int, std::string>> expect = {
        {"an", 2, "Z'[beta,c1,c2,1/(1+beta*c1+beta^2*c2),b]/(b*c2)"},
        {"an", 3, "Z'[beta,c1,c2,c3,1/(1+beta*c1+beta^2*c2+beta^3*c3),b]/(b*c3)"},
        {"un", 2, "Z'[beta,c1,c2,1/(1+beta*c1+beta^2*c2),a^+-1,(a-1)/c2]"},
        {"bn", 3, "Z'[p1,p2,c3,b]/(b*c3)"},
        {"cn", 3, "Q[p1',p1,p2,b]/(b*p2)"},
        {"hp", 3, "Q[p1,p2,b]/(b*p2)"},
        {"dn", 4, "Z'[p1,p2,p3,a+a^-1,(a-a^-1)/(x1*x2*x3)]"},
        {"dn", 2, "Z'[p1,a+a^-1,(a-a^-1)/x1]"},
        {"f4", 4, "Q[p1,p2,p3,p4,b]/(b*p4)"},
        {"g2", 2, "Z'[beta,c2,c3,b]/(b*c3)"},
        {"b3p", 3, "Z'[c2,c6,a+a^-1,(a-a^-1)/(x1*x2*(x1+x2))]"},
    };
    for (auto& [id, n, text] : expect) {
        INFO(id << " " << n);
        CHECK(equivariant_loop_homology(id, n).ring.display() == text);
    }
}

TEST_CASE("generator weights of the closed forms") {
    auto weights = [](const Presentation& P) {
        std::vector<std::pair<std::string, int>> v;
        for (auto& g : P.gens)
            if (g.kind != GenKind::Reciprocal) v.emplace_back(g.name, g.weight);
        return v;
    };
    using V = std::vector<std::pair<std::string, int>>;
    CHECK(weights(*loop_case("bn", 3).closed) == V{{"p1", -4}, {"p2", -8}, {"c3", -6}, {"b", 10}});
    CHECK(weights(*loop_case("g2", 2).closed) == V{{"beta", 2}, {"c2", -4}, {"c3", -6}, {"b", 10}});
    CHECK(weights(*loop_case("an", 2).closed) == V{{"beta", 2}, {"c1", -2}, {"c2", -4}, {"r", 0}, {"b", 4}});
    CHECK(weights(*loop_case("f4", 4).closed) == V{{"p1", -4}, {"p2", -8}, {"p3", -12}, {"p4", -16}, {"b", 22}});
    CHECK(weights(*loop_case("b3p", 3).closed) == V{{"c2", -4}, {"c6", -12}, {"s", 0}, {"d", 6}});
    CHECK(weights(*loop_case("un", 1).closed) == V{{"beta", 2}, {"c1", -2}, {"r", 0}, {"a", 0}, {"c", 2}});
}

TEST_CASE("distinguished weight from the representation") {
    const std::vector<std::tuple<std::string, int, int>> expect = {
        {"an", 1, 2}, {"an", 4, 8},  {"un", 3, 6},  {"bn", 1, 2},  {"bn", 3, 10}, {"bn", 4, 14}, {"cn", 2, 6},
        {"cn", 3, 10}, {"hp", 4, 14}, {"dn", 2, 2}, {"dn", 4, 6}, {"f4", 4, 22}, {"g2", 2, 10}, {"b3p", 3, 6},
    };
    for (auto& [id, n, w] : expect) {
        INFO(id << " " << n);
        LoopCase c = loop_case(id, n);
        CHECK(c.dist_weight == w);
        CHECK(c.weight_from_dimension() == w);
        CHECK(c.closed->gens[c.closed->at(c.distinguished)].weight == w);
    }
}

TEST_CASE("representation weights per case") {
    RepWeights u2 = weights_of_case("un", 2);
    CHECK(u2.r_summand);
    CHECK(u2.weights == std::vector<std::pair<std::vector<int>, int>>{{{1, 0}, 1}, {{0, 1}, 1}});
    RepWeights g2 = weights_of_case("g2", 2);
    CHECK(g2.weights == std::vector<std::pair<std::vector<int>, int>>{{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
    CHECK(g2.dim_real() == 6);
    CHECK(weights_of_case("bn", 3).weights.size() == 3);
    CHECK(weights_of_case("hp", 3).weights.size() == 4);
    CHECK_THROWS_AS(loop_case("e8", 8), RingError);
    CHECK_THROWS_AS(loop_case("dn", 1), RingError);
}

TEST_CASE("coordinate axes and blowup presentations") {
    RepWeights line{1, {{{1}, 1}}, false};
    CHECK(cv_presentation(line, 2).ring.display() == "Z'[beta,x,1/(1+beta*x),b]/(b*x)");
    CHECK(bv_presentation(line).ring.display() == "Z'[beta,x,1/(1+beta*x),a^+-1,c]/(c*x - (a - 1))");
    Presentation cv0 = beta_specialize(cv_presentation(line, 2).ring, BetaMode::Zero).target;
    CHECK(cv0.display() == "Z'[x,b]/(b*x)");
    Presentation bv0 = beta_specialize(bv_presentation(line).ring, BetaMode::Zero).target;
    CHECK(bv0.display() == "Z'[x,a^+-1,c]/(c*x - (a - 1))");

    RepWeights g2 = weights_of_case("g2", 2);
    LoopPresentation s6 = cv_presentation(g2, 10);
    CHECK(s6.ring.member(s6.ring.parse("b*x1*x2*(x1 + x2 + beta*x1*x2)")));
    CHECK_FALSE(s6.ring.member(s6.ring.parse("b*x1*x2")));
    CHECK(s6.dist_weight == 10);

    CHECK_THROWS_AS(cv_presentation(RepWeights{2, {{{0, 0}, 1}}, false}, 2), RingError);
}

TEST_CASE("fiber of the blowup at a = 1") {
    std::string why;
    CHECK(fiber_matches_cv(RepWeights{1, {{{1}, 1}}, false}, &why));
    CHECK(fiber_matches_cv(RepWeights::standard(2), &why));
    CHECK(fiber_matches_cv(weights_of_case("g2", 2), &why));
    CHECK(fiber_matches_cv(RepWeights{1, {{{2}, 1}, {{-1}, 2}}, false}, &why));
    INFO(why);
}

TEST_CASE("invariant slices: types A and U") {
    for (int n = 1; n <= 4; ++n) {
        INFO("n = " << n);
        require_ok(verify_loop_core(loop_case("an", n), -40, 40, 12, 0));
        require_ok(verify_loop_core(loop_case("un", n), -40, 40, n <= 3 ? 10 : 8, 2));
    }
    // the direct comparison with reciprocals, where the filtration gap stays small
    require_ok(verify_loop_case(loop_case("an", 1), -40, 40, 8, 8));
    require_ok(verify_loop_case(loop_case("an", 2), -40, 40, 6, 20));
}

TEST_CASE("invariant slices: types B, C, HP, F4") {
    for (int n = 1; n <= 4; ++n) {
        INFO("bn " << n);
        require_ok(verify_loop_case(loop_case("bn", n), -40, 40, 16, 0));
    }
    for (int n = 2; n <= 3; ++n) {
        INFO("cn " << n);
        require_ok(verify_loop_case(loop_case("cn", n), -40, 40, 14, 0));
    }
    for (int n = 2; n <= 4; ++n) {
        INFO("hp " << n);
        require_ok(verify_loop_case(loop_case("hp", n), -40, 40, 16, 0));
    }
    require_ok(verify_loop_case(loop_case("f4", 4), -40, 40, 20, 0));
}

TEST_CASE("invariant slices: types D, G2, B3'") {
    for (int n = 2; n <= 4; ++n) {
        INFO("dn " << n);
        require_ok(verify_loop_case(loop_case("dn", n), -40, 40, 8, 4));
    }
    require_ok(verify_loop_case(loop_case("g2", 2), -40, 40, 6, 20));
    require_ok(verify_loop_case(loop_case("b3p", 3), -40, 40, 8, 6));
}

TEST_CASE("a wrong closed form is caught") {
    LoopCase c = loop_case("bn", 2);
    // dropping c2 from the closed form loses invariants
    Presentation R(BaseRing::Zp());
    R.add_gen("p1", -4);
    R.add_gen("b", 6);
    auto phi = ring_map(R, *c.torus, std::map<std::string, std::string>{{"p1", "x1^2 + x2^2"}, {"b", "b"}});
    CHECK_FALSE(compare_with_invariants(phi, *c.W, -20, 20, 10, 0).ok);
    // forgetting the relation b*c2 leaves a dependency among images
    Presentation R2(BaseRing::Zp());
    R2.add_gen("p1", -4);
    R2.add_gen("c2", -4);
    R2.add_gen("b", 6);
    auto phi2 = ring_map(R2, *c.torus, std::map<std::string, std::string>{{"p1", "x1^2 + x2^2"}, {"c2", "x1*x2"}, {"b", "b"}});
    auto rep = compare_with_invariants(phi2, *c.W, -20, 20, 10, 0);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.failures.empty());
    CHECK(rep.failures[0].find("relation") != std::string::npos);
}

TEST_CASE("Molien counts against the closed forms") {
    const int K = 3, D = 20;
    SECTION("SO_2n on S^2n") {
        for (size_t n = 1; n <= 4; ++n) {
            INFO("n = " << n);
            auto g = symmetric(n);
            if (n >= 2) g.push_back(molien::flip(n, {0, 1}));
            auto c = molien::count(g, n, unit_forms(n), D);
            check_against_molien(*loop_case("bn", static_cast<int>(n)).closed, c, K, D);
        }
    }
    SECTION("Sp on HP^(n-1)") {
        for (size_t n = 2; n <= 4; ++n) {
            size_t m = n - 1;
            auto g = symmetric(m);
            g.push_back(molien::flip(m, {0}));
            auto c = molien::count(g, m, paired_forms(m), D);
            check_against_molien(*loop_case("hp", static_cast<int>(n)).closed, c, K, D);
        }
    }
    SECTION("Sp_2 x Sp on HP^(n-1)") {
        for (size_t n = 2; n <= 3; ++n) {
            auto g = symmetric(n, 1);
            g.push_back(molien::flip(n, {1}));
            g.push_back(molien::flip(n, {0}));
            auto c = molien::count(g, n, paired_forms(n, 1), D);
            check_against_molien(*loop_case("cn", static_cast<int>(n)).closed, c, K, D);
        }
    }
    SECTION("Spin_9 on OP^2") {
        auto g = symmetric(4);
        g.push_back(molien::flip(4, {0}));
        auto c = molien::count(g, 4, paired_forms(4), D);
        CHECK(c.order == 384);
        check_against_molien(*loop_case("f4", 4).closed, c, K, D);
    }
    SECTION("beta = 0 limits of the U(n) and SU(3) cases") {
        for (size_t n = 1; n <= 4; ++n) {
            auto c = molien::count(symmetric(n), n, unit_forms(n), D);
            Presentation R0 = beta_specialize(*loop_case("an", static_cast<int>(n)).closed, BetaMode::Zero).target;
            check_against_molien(R0, c, K, D);
        }
        // reduced standard representation of S_3
        std::vector<molien::Mat> g = {{{0, 1}, {1, 0}}, {{0, 1}, {-1, -1}}};
        auto c = molien::count(g, 2, {{1, 0}, {0, 1}, {1, 1}}, D);
        CHECK(c.order == 6);
        check_against_molien(beta_specialize(*loop_case("g2", 2).closed, BetaMode::Zero).target, c, K, D);
    }
}

TEST_CASE("beta = 0 limits are the integral presentations") {
    CHECK(beta_specialize(*loop_case("an", 3).closed, BetaMode::Zero).target.display() == "Z'[c1,c2,c3,b]/(b*c3)");
    CHECK(beta_specialize(*loop_case("g2", 2).closed, BetaMode::Zero).target.display() == "Z'[c2,c3,b]/(b*c3)");
    CHECK(beta_specialize(*loop_case("un", 2).closed, BetaMode::Zero).target.display() == "Z'[c1,c2,a^+-1,(a-1)/c2]");

    // beta = 0 torus side of SU(3): x3 = -(x1 + x2)
    LoopCase g2 = loop_case("g2", 2);
    Specialization s = beta_specialize(*g2.torus, BetaMode::Zero);
    CHECK(s(g2.phi.at("c2")) == s.target.parse("-x1^2 - x1*x2 - x2^2"));
    CHECK(s(g2.phi.at("c3")) == s.target.parse("-x1^2*x2 - x1*x2^2"));
}

TEST_CASE("Reynolds discovery on small cases") {
    LoopCase c = loop_case("bn", 2);
    auto inv = reynolds_invariants(*c.torus, *c.W, 12, 4);
    CHECK(inv.complete);
    // p1, c2, b; the relation b*c2
    CHECK(inv.images.size() == 3);
    CHECK(inv.ring.rels.size() == 1);
    LoopCase h = loop_case("hp", 2);
    auto inv2 = reynolds_invariants(*h.torus, *h.W, 12, 4);
    CHECK(inv2.images.size() == 2);
    for (int w = -12; w <= 12; w += 2) CHECK(graded_dimension(inv2.ring, w, 4).dim == graded_dimension(*h.closed, w, 4).dim);
}
