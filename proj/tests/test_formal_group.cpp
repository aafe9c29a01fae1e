#include "catch_amalgamated.hpp"
#include "kring/formal_group.hpp"

using namespace kr;

namespace {

// 1 + beta [k](x) must equal (1 + beta x)^k in the localized ring
bool multiplicative_form(const Presentation& T, const Poly& e, int k) {
    Poly one(Q(1)), bx = one + T.var("beta") * T.var("x");
    Poly lhs = one + T.var("beta") * e;
    if (k >= 0) return T.nf(lhs - pow(bx, k)).zero();
    return T.nf(lhs * pow(bx, -k) - one).zero();
}

Poly inverse_of_unit(const Presentation& T, int n) {
    // inverse of 1 + beta [n](x) = (1 + beta x)^n
    Poly one(Q(1));
    if (n >= 0) return pow(T.var("y"), n);
    return pow(one + T.var("beta") * T.var("x"), -n);
}

}  // namespace

TEST_CASE("group law axioms") {
    Presentation P(BaseRing{{}, true, false});
    P.add_gen("x", -2);
    P.add_gen("y", -2);
    P.add_gen("z", -2);
    Poly x = P.var("x"), y = P.var("y"), z = P.var("z"), b = P.var("beta");
    CHECK(fgl(x, Poly(), b) == x);
    CHECK(fgl(x, y, b) == fgl(y, x, b));
    CHECK(fgl(fgl(x, y, b), z, b) == fgl(x, fgl(y, z, b), b));
}

TEST_CASE("n-series anchors") {
    auto T = torus_presentation(1);
    CHECK(n_series(T, 0).zero());
    CHECK(n_series(T, 2) == T.parse("2*x + beta*x^2"));
    CHECK(n_series(T, 3) == T.parse("3*x + 3*beta*x^2 + beta^2*x^3"));
    CHECK(n_series(T, -1) == T.nf(T.parse("-x*y")));
    // -x/(1+beta x) times (1 + beta x) is -x
    CHECK(T.nf(n_series(T, -1) * T.parse("1 + beta*x")) == T.parse("-x"));
    // [2](x) = (1 + beta x)(x - xbar) with xbar = [-1](x)
    CHECK(T.nf(T.parse("1+beta*x") * (T.var("x") - n_series(T, -1))) == n_series(T, 2));
}

TEST_CASE("n-series composition") {
    auto T = torus_presentation(1);
    Poly b = T.var("beta");
    for (int k = -25; k <= 25; ++k) CHECK(multiplicative_form(T, n_series(T, k), k));
    for (int m = -5; m <= 5; ++m)
        for (int n = -5; n <= 5; ++n) {
            Poly inner = n_series(T, n);
            CHECK(n_series_of(T, inner, m, inverse_of_unit(T, n)) == n_series(T, m * n));
            CHECK(T.nf(fgl(n_series(T, m), n_series(T, n), b)) == n_series(T, m + n));
        }
}

TEST_CASE("character series") {
    auto T1 = torus_presentation(1);
    CHECK(character_series({1}, T1) == T1.var("x"));
    CHECK(character_series({2}, T1) == T1.parse("2*x + beta*x^2"));
    auto T2 = torus_presentation(2);
    CHECK(character_series({1, 1}, T2) == T2.parse("x1 + x2 + beta*x1*x2"));
    Poly b = T2.var("beta");
    for (int a = -2; a <= 2; ++a)
        for (int c = -2; c <= 2; ++c)
            for (int d = -2; d <= 2; ++d) {
                Poly lhs = character_series({a + d, c - d}, T2);
                CHECK(lhs == T2.nf(fgl(character_series({a, c}, T2), character_series({d, -d}, T2), b)));
            }
}

TEST_CASE("beta specializations") {
    auto T = torus_presentation(1);
    auto z = beta_specialize(T, BetaMode::Zero);
    for (int n = -4; n <= 4; ++n) CHECK(z(n_series(T, n)) == Q(n) * z.target.var("x"));
    auto u = beta_specialize(T, BetaMode::Unit);
    CHECK(u(n_series(T, 2)) == u.target.parse("(1+x)^2 - 1"));
    auto T3 = torus_presentation(3);
    CHECK(beta_specialize(T3, BetaMode::Zero).target.display() == "Z'[x1,x2,x3]");
}

TEST_CASE("Witt vectors in ghost coordinates") {
    WittVector u{{Q(3), Q(-1, 2), Q(5)}}, zero{{0, 0, 0}};
    CHECK(witt_add(u, zero) == u);
    CHECK(witt_add(WittVector{{1, 0}}, WittVector{{0, 1}}) == WittVector{{1, 1}});
    CHECK(witt_mul(WittVector{{2, 3}}, WittVector{{5, 7}}) == WittVector{{10, 21}});
    CHECK_THROWS_AS(witt_add(u, WittVector{{1}}), RingError);
    // grading: scaling is compatible with both operations
    WittVector v{{Q(1), Q(2), Q(-3)}};
    CHECK(witt_scale(witt_add(u, v), 3) == witt_add(witt_scale(u, 3), witt_scale(v, 3)));
    CHECK(witt_scale(witt_mul(u, v), 2) != witt_mul(witt_scale(u, 2), witt_scale(v, 2)));
    CHECK(WittVector::weight(3) == 6);
}

TEST_CASE("unipotent Toeplitz group") {
    Presentation P(BaseRing::Qq());
    for (int i = 1; i <= 4; ++i) {
        P.add_gen("x" + std::to_string(i), -2 * i);
        P.add_gen("y" + std::to_string(i), -2 * i);
    }
    auto xs = [&](int n) {
        std::vector<Poly> v;
        for (int i = 1; i < n; ++i) v.push_back(P.var("x" + std::to_string(i)));
        return v;
    };
    auto ys = [&](int n) {
        std::vector<Poly> v;
        for (int i = 1; i < n; ++i) v.push_back(P.var("y" + std::to_string(i)));
        return v;
    };
    CHECK(toeplitz_mul(P, xs(3), {Poly(), Poly()}) == xs(3));
    auto r = toeplitz_mul(P, xs(3), ys(3));
    CHECK(r[0] == P.parse("x1 + y1"));
    CHECK(r[1] == P.parse("x2 + y2 + x1*y1"));
    for (int n = 2; n <= 5; ++n) CHECK(toeplitz_mul(P, xs(n), ys(n)) == toeplitz_mul(P, ys(n), xs(n)));
}
