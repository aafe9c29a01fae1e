#include "catch_amalgamated.hpp"
#include "kring/hochschild.hpp"

using namespace kr;

namespace {

void require_agree(const PolyExtension& ext, int H, int B) {
    auto closed = hc_closed_dims(hc_closed_form(ext), H, B);
    auto oracle = hc_oracle(ext, H, B);
    CHECK(oracle.complete_intersection);
    auto diff = hc_compare(closed, oracle.dims, H, B);
    for (auto& d : diff) UNSCOPED_INFO("h=" << d.hom << " v=" << d.weight << " closed " << d.closed << " oracle " << d.oracle);
    CHECK(diff.empty());
    CHECK(!oracle.dims.empty());
}

}  // namespace

TEST_CASE("closed forms display", "[hc]") {
    CHECK(hc_closed_form(power_extension(1)).ring.display() == "Z[x][[w]]/(w)");
    CHECK(hc_closed_form(power_extension(2)).ring.display() == "Z[x][[w]]/(2*x*w)");
    CHECK(hc_closed_form(power_extension(3)).ring.display() == "Z[x][[w]]/(3*x^2*w)");
    auto d3 = hc_closed_form(dihedral_extension(3));
    CHECK(d3.ring.display() == "Q[x1,x2][[w1,w2]]/(x1*w1 + x2^2*w2, x2*w1 + x1^2*w2)");
    CHECK(d3.ring.gens[d3.ring.at("w1")].weight == 2);
    CHECK(d3.ring.gens[d3.ring.at("w2")].weight == 4);
    for (auto& g : d3.ring.gens) CHECK(d3.ring.is_homogeneous(Poly::var(d3.ring.at(g.name))));
    for (auto& r : d3.ring.rels) CHECK(d3.ring.is_homogeneous(r));
    CHECK(hc_closed_form(power_extension(4)).ring.gens[1].weight == 6);
}

TEST_CASE("uncatalogued shapes are rejected", "[hc]") {
    PolyExtension e{BaseRing::Qq(), {{"x", -2}}, {"x^3 + x^3"}};
    CHECK_THROWS_AS(hc_closed_form(e), RingError);
    PolyExtension s{BaseRing::Qq(), {{"x1", -2}, {"x2", -2}}, {"x1 + x2", "x1*x2"}};
    CHECK_THROWS_AS(hc_closed_form(s), RingError);
    PolyExtension bad{BaseRing::Qq(), {{"x", -2}}, {"x^2 + x"}};
    CHECK_THROWS_AS(bad.fs(), RingError);
    CHECK_THROWS_AS(hc_oracle(power_extension(2, 2), 2, 4), RingError);
}

TEST_CASE("power maps agree with the resolution", "[hc]") {
    for (int j = 1; j <= 4; ++j) {
        INFO("j=" << j);
        require_agree(power_extension(j), 6, 16);
    }
}

TEST_CASE("dihedral invariants agree with the resolution", "[hc]") {
    for (int n = 2; n <= 3; ++n) {
        INFO("n=" << n);
        require_agree(dihedral_extension(n), 6, 12);
    }
}

TEST_CASE("linear map is concentrated in degree zero", "[hc]") {
    auto o = hc_oracle(power_extension(1), 6, 16);
    for (auto& [k, v] : o.dims) CHECK(k.first == 0);
    CHECK(o.dims.at({0, 0}) == 1);
    CHECK(o.dims.at({0, -16}) == 1);
    CHECK(o.dims.count({0, 2}) == 0);
}

TEST_CASE("small tables", "[hc]") {
    // x^2: Ext^(2k) spanned by w^k at sheared weight 2k; odd degrees vanish
    auto o = hc_oracle(power_extension(2), 6, 8);
    HCTable expect;
    for (int a = 0; a <= 4; ++a) expect[{0, -2 * a}] = 1;
    for (int k = 1; k <= 3; ++k) expect[{2 * k, 2 * k}] = 1;
    CHECK(o.dims == expect);
    auto o3 = hc_oracle(power_extension(3), 4, 4);
    HCTable e3{{{0, 0}, 1}, {{0, -2}, 1}, {{0, -4}, 1}, {{2, 4}, 1}, {{2, 2}, 1}, {{4, 8}, 1}, {{4, 6}, 1}};
    CHECK(o3.dims == e3);
}

TEST_CASE("corrupted closed form is caught", "[hc]") {
    auto hc = hc_closed_form(power_extension(3));
    hc.ring.rels[0] = Poly();
    hc.ring.rel_text[0] = "0";
    auto diff = hc_compare(hc_closed_dims(hc, 4, 8), hc_oracle(power_extension(3), 4, 8).dims, 4, 8);
    REQUIRE(!diff.empty());
    CHECK(diff.front().hom == 2);
    CHECK(diff.front().weight == -8);
    CHECK(diff.front().closed == 1);
    CHECK(diff.front().oracle == 0);
    for (auto& d : diff) CHECK(d.closed > d.oracle);
}

TEST_CASE("second differential matches the derivative", "[hc]") {
    for (int j = 2; j <= 4; ++j) {
        INFO("j=" << j);
        auto o = hc_oracle(power_extension(j), 2, 4);
        REQUIRE(o.d.size() >= 3);
        REQUIRE(o.d[2].size() == 1);
        REQUIRE(o.d[2][0].size() == 1);
        std::vector<Poly> zero(o.A.ngens());
        zero[o.A.at("x")] = o.S.var("x");
        Poly e = o.S.nf(substitute(o.d[2][0][0], zero));
        Poly fp = Q(j) * pow(o.S.var("x"), j - 1);
        REQUIRE(e.t.size() == 1);
        CHECK(e.t[0].m == fp.t[0].m);
        // the z-generator maps to a unit multiple of z
        REQUIRE(o.d[1].size() == 1);
        CHECK(o.d[1][0][0].t.size() == 1);
        CHECK(o.d[1][0][0].t[0].m == Mono::var(o.A.at("z1")));
    }
}

TEST_CASE("beta family", "[hc]") {
    auto hc = hc_beta_family();
    CHECK(hc.ring.display() == "Z[beta,x,1/(1+beta*x)][[w]]/(w*(x - xbar))");
    CHECK(hc.ring.gens[hc.ring.at("w")].weight == 2);
    for (auto& r : hc.ring.rels) CHECK(hc.ring.is_homogeneous(r));
    auto s = beta_specialize(hc.ring, BetaMode::Zero);
    CHECK(s.target.display() == "Z[x][[w]]/(2*x*w)");
}
