#include "catch_amalgamated.hpp"
#include "kring/gkm.hpp"

using namespace kr;

namespace {

long long torus_dim(int rank, int w) {
    // monomials of degree -w/2 in rank variables
    if (w > 0 || w % 2) return 0;
    int d = -w / 2;
    long long c = 1;
    for (int i = 1; i < rank; ++i) c = c * (d + i) / i;
    return c;
}

}  // namespace

TEST_CASE("catalogued graphs", "[gkm]") {
    auto s = moment_graph_of("sphere", {1, 2});
    CHECK(s.vertices.size() == 2);
    CHECK(s.edges.size() == 1);
    auto p = moment_graph_of("p1");
    CHECK(p.edges[0].lambda == std::vector<int>{2});
    auto f = moment_graph_of("flag-sl3");
    CHECK(f.vertices.size() == 6);
    CHECK(f.edges.size() == 9);
    std::vector<int> degree(6, 0);
    std::map<std::vector<int>, int> labels;
    for (auto& e : f.edges) {
        ++degree[e.v0];
        ++degree[e.v1];
        ++labels[e.lambda];
    }
    for (int d : degree) CHECK(d == 3);
    CHECK(labels.size() == 3);
    for (auto& [l, c] : labels) CHECK(c == 3);
    CHECK_THROWS_AS(moment_graph_of("klein"), RingError);
    CHECK_THROWS_AS(moment_graph_of("sphere", {0, 0}), RingError);
}

TEST_CASE("no edges gives a product of tori", "[gkm]") {
    MomentGraph g{"three", 1, {"a", "b", "c"}, {}};
    auto R = gkm_ring(g, ordinary_torus(1), 12);
    for (int w = -12; w <= 12; ++w) CHECK(R.dim(w) == 3 * torus_dim(1, w));
    CHECK(!R.presented);
}

TEST_CASE("two vertices form a free module of rank two", "[gkm]") {
    for (auto lambda : std::vector<std::vector<int>>{{1}, {3}, {1, 0}, {2, -1}, {1, 1, 1}}) {
        int m = static_cast<int>(lambda.size());
        auto R = gkm_ring(moment_graph_of("sphere", lambda), ordinary_torus(m), 16);
        for (int w = -16; w <= 16; ++w) {
            INFO("w=" << w << " rank " << m);
            CHECK(R.dim(w) == torus_dim(m, w) + torus_dim(m, w + 2));
        }
    }
}

TEST_CASE("equalizer is a subring containing the diagonal", "[gkm]") {
    auto R = gkm_ring(moment_graph_of("flag-sl3"), ordinary_torus(2), 8);
    for (auto& [w, b] : R.basis)
        for (auto& t : b) CHECK(gkm_contains(R, t));
    for (auto& m : standard_monomials(R.T, 4, -8, 0)) {
        Tuple d(6, Poly(m, Q(1)));
        CHECK(gkm_contains(R, d));
    }
    for (auto& a : R.basis[-2])
        for (auto& b : R.basis[-4]) CHECK(gkm_contains(R, detail::tuple_mul(R.T, a, b)));
    Tuple bad(6);
    bad[0] = R.T.var("x1");
    CHECK(!gkm_contains(R, bad));
}

TEST_CASE("P1 against the union of graphs", "[gkm]") {
    auto R = gkm_ring(moment_graph_of("p1"), ordinary_torus(1), 16);
    auto U = graph_union_dims(1, {{{1}}, {{-1}}}, 16);
    for (int w = -16; w <= 0; ++w) {
        INFO("w=" << w);
        CHECK(R.dim(w) == (U.count(w) ? U.at(w) : 0));
    }
    CHECK(U.at(-4) == 2);
    CHECK(U.at(0) == 1);
    REQUIRE(R.presented);
    CHECK(R.closure_witnessed);
    CHECK(R.presentation.ngens() == 2);
    CHECK(R.presentation.rels.size() == 1);
    for (int w = -16; w <= 0; w += 2) CHECK(graded_dimension(R.presentation, w, 16).dim == R.dim(w));
}

TEST_CASE("flag variety of SL3 against the union of graphs", "[gkm]") {
    auto f = moment_graph_of("flag-sl3");
    auto R = gkm_ring(f, ordinary_torus(2), 12);
    // S_3 on the characters e1, e2, e3 = -e1 - e2
    std::vector<std::vector<std::vector<int>>> W = {{{1, 0}, {0, 1}},  {{0, 1}, {1, 0}},  {{-1, -1}, {0, 1}},
                                                    {{1, 0}, {-1, -1}}, {{0, 1}, {-1, -1}}, {{-1, -1}, {1, 0}}};
    auto U = graph_union_dims(2, W, 12);
    for (int w = -12; w <= 0; ++w) {
        INFO("w=" << w);
        CHECK(R.dim(w) == (U.count(w) ? U.at(w) : 0));
    }
    // Poincare series (1 + 2t + 2t^2 + t^3)/(1 - t)^2
    std::vector<long long> expect = {1, 4, 9, 15, 21, 27, 33};
    for (int d = 0; d <= 6; ++d) CHECK(R.dim(-2 * d) == expect[d]);
    REQUIRE(R.presented);
    for (int w = -12; w <= 0; w += 2) CHECK(graded_dimension(R.presentation, w, 12).dim == R.dim(w));
}

TEST_CASE("beta-deformed equalizer", "[gkm]") {
    Presentation T = torus_presentation(1);
    auto R = gkm_ring(moment_graph_of("p1"), T, 4, 4);
    CHECK(R.trunc == 4);
    CHECK(!R.presented);
    for (auto& [w, b] : R.basis)
        for (auto& t : b) CHECK(gkm_contains(R, t));
    // the second graph of the union: x -> xbar = -x y; its coordinate functions restrict into the equalizer
    Poly x = T.var("x"), y = T.var("y");
    Tuple second = {x, T.nf(-(x * y))};
    CHECK(gkm_contains(R, second));
    Tuple wrong = {x, T.nf(x * y)};
    CHECK(!gkm_contains(R, wrong));
    // multiplicity two asks for the square of x_lambda
    MomentGraph g = moment_graph_of("sphere", {1});
    g.edges[0].mult = 2;
    auto R2 = gkm_ring(g, ordinary_torus(1), 8);
    CHECK(R2.dim(-2) == 1);
    CHECK(R2.dim(-4) == 2);
}
