#include "catch_amalgamated.hpp"
#include "kring/io.hpp"

using namespace kr;

TEST_CASE("presentation JSON round trip") {
    std::vector<Presentation> ps = {equivariant_loop_homology("g2", 2).ring, equivariant_loop_homology("bn", 3).ring,
                                    chas_sullivan(Space::CP, 2).ring, hc_closed_form(power_extension(3)).ring,
                                    sl2_closures(Closure::V_beta), torus_presentation(2)};
    for (auto& P : ps) {
        Json j = to_json(P);
        Presentation R = presentation_from_json(j);
        INFO(P.display());
        CHECK(R.base == P.base);
        CHECK(to_json(R)["relations"] == j["relations"]);
        for (int w = -8; w <= 8; ++w) CHECK(graded_dimension(R, w, 8).dim == graded_dimension(P, w, 8).dim);
    }
}

TEST_CASE("schema fields") {
    Json j = to_json(equivariant_loop_homology("g2", 2).ring);
    CHECK(j["base"]["inverted"] == Json::array({2}));
    CHECK(j["base"]["beta"] == true);
    CHECK(j["generators"].size() == 3);
    CHECK(j["generators"][2]["name"] == "b");
    CHECK(j["generators"][2]["weight"] == 10);
    CHECK(j["relations"] == Json::array({"1*c3*b"}));
    CHECK(to_json(hc_closed_form(power_extension(2)).ring)["adic"] == Json::array({"w"}));
}

TEST_CASE("extension and graph files") {
    auto e = extension_from_json(Json::parse(R"({"vars":[{"name":"x","weight":-2}],"invariants":["x^2"]})"));
    CHECK(e.base.rational);
    CHECK(hc_report(e, {12, 4})["agree"] == true);
    auto g = graph_from_json(Json::parse(R"({"rank":1,"vertices":["1","s"],"edges":[{"v0":0,"v1":1,"lambda":[2]}]})"));
    CHECK(to_json(g)["edges"][0]["lambda"] == Json::array({2}));
    CHECK_THROWS(graph_from_json(Json::parse(R"({"rank":2,"vertices":["a","b"],"edges":[{"v0":0,"v1":1,"lambda":[1]}]})")));
    CHECK_THROWS(graph_from_json(Json::parse(R"({"rank":1,"vertices":["a"],"edges":[{"v0":0,"v1":0,"lambda":[1]}]})")));
}

TEST_CASE("table TSV has ten rows") {
    auto s = table_tsv(rank1_entries(2));
    CHECK(std::count(s.begin(), s.end(), '\n') == 11);
    CHECK(s.find("G_2\t2\tT\t") != std::string::npos);
}
