#include "catch_amalgamated.hpp"
#include "kring/table.hpp"

using namespace kr;

TEST_CASE("ten rows", "[table]") {
    const auto& t = rank1_table();
    REQUIRE(t.size() == 10);
    std::vector<std::string> names;
    for (auto& r : t) names.push_back(r.name);
    CHECK(names == std::vector<std::string>{"A_n", "B_n", "C_n", "D_n", "F_4", "G_2", "B_3'", "N(A_1)", "N(B_n)", "N(G_2)"});
    int n_rows = 0;
    for (auto& r : t) n_rows += r.type == 'N';
    CHECK(n_rows == 3);
}

TEST_CASE("row values", "[table]") {
    auto at = [](const std::string& name, int n) {
        for (auto& r : rank1_table())
            if (r.name == name) return rank1_entry(r, n);
        throw RingError("missing " + name);
    };
    auto b2 = at("B_n", 2);
    CHECK(b2.two_i == 6);
    CHECK(b2.two_j == 4);
    auto g2 = at("G_2", 0);
    CHECK(g2.two_i == 10);
    CHECK(g2.two_j == 6);
    CHECK(g2.b_weight == 10);
    auto f4 = at("F_4", 4);
    CHECK(f4.two_i == 22);
    CHECK(f4.two_j == 16);
    CHECK(at("C_n", 3).two_i == 10);
    CHECK(at("C_n", 3).two_j == 8);
    CHECK(at("A_n", 3).two_i == 6);
    CHECK(at("D_n", 4).two_j == 6);
    CHECK(at("D_n", 4).two_i == 0);
    CHECK(at("B_3'", 3).two_j == 6);
    CHECK(at("N(A_1)", 1).grading == 2);
    CHECK(at("N(B_n)", 3).two_i == 10);
    CHECK(at("N(G_2)", 2).dual == "(T^*(6)A^2(10,0))/(Z/2)");
    CHECK_THROWS_AS(at("C_n", 1), RingError);
}

TEST_CASE("b weights agree with the loop presentations", "[table]") {
    auto bad = rank1_cross_check(4);
    for (auto& b : bad) UNSCOPED_INFO(b);
    CHECK(bad.empty());
    for (auto& e : rank1_entries(2)) CHECK(e.matches);
}
