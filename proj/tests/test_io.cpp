#include <doctest.h>

#include "spohn/io.hpp"

using namespace spohn;

TEST_CASE("game json round trip") {
    const char* text = R"({
      "format": [2, 2],
      "payoffs": [[0, -2, 1, -1], ["0", "1", "-2", "-1"]]
    })";
    Game g = parse_game_json(text);
    CHECK(g.format.d == std::vector<int>{2, 2});
    CHECK(g.payoffs[0].values[1] == -2);
    CHECK(g.payoffs[1].values[2] == -2);

    Game again = parse_game_json(game_to_json(g));
    for (int k = 0; k < 2; ++k) CHECK(again.payoffs[k].values == g.payoffs[k].values);
}

TEST_CASE("rational strings and malformed input") {
    Game g = parse_game_json(R"({"format":[2],"payoffs":[["1/3","-5/7"]]})");
    CHECK(g.payoffs[0].values[0] == Rat(1, 3));
    CHECK(g.payoffs[0].values[1] == Rat(-5, 7));

    CHECK_THROWS_AS(parse_game_json("not json"), ParseError);
    CHECK_THROWS_AS(parse_game_json(R"({"format":[2]})"), ParseError);
    CHECK_THROWS_AS(parse_game_json(R"({"format":[2],"payoffs":[["x"]]})"), ParseError);
    // Wrong payoff count for the format.
    CHECK_THROWS_AS(parse_game_json(R"({"format":[2],"payoffs":[[1,2,3]]})"), FormatError);
}

TEST_CASE("profile json") {
    MixedProfile<Rat> p = parse_profile_json(R"({"format":[2,2],"p":["3/8","1/8","1/8","3/8"]})");
    CHECK(p.total_mass() == 1);
    MixedProfile<Rat> q = parse_profile_json(profile_to_json(p));
    CHECK(q.p == p.p);
}

TEST_CASE("graph json and inline forms") {
    Graph g = parse_graph_json(R"({"vertices":3,"edges":[[2,3]]})");
    CHECK(g.vertices() == 3);
    CHECK(g.has_edge(1, 2));
    CHECK(g.edge_count() == 1);
    Graph h = parse_graph_json(graph_to_json(g));
    CHECK(h == g);

    CHECK(parse_graph_inline("edges:2-3", 3) == g);
    CHECK(parse_graph_inline("none", 3) == empty_graph(3));
    CHECK(parse_graph_inline("complete", 3) == complete_graph(3));
    CHECK(parse_graph_inline("edges:1-2,2-3", 3).edge_count() == 2);
    CHECK_THROWS_AS(parse_graph_inline("edges:1+2", 3), ParseError);
    CHECK_THROWS_AS(parse_graph_inline("yes", 3), ParseError);
    CHECK_THROWS_AS(parse_graph_inline("edges:1-9", 3), FormatError);
}

TEST_CASE("variety report json") {
    VarietyReport rep = variety_report(GameFormat({4, 2, 2}), Graph(3, {{1, 2}}));
    std::string j = report_to_json(rep);
    CHECK(j.find("\"NashCI\"") != std::string::npos);
    CHECK(j.find("\"NonEmpty\"") != std::string::npos);
    CHECK(j.find("\"degree\": \"1\"") != std::string::npos);

    VarietyReport emptyrep = variety_report(GameFormat({5, 2, 2}), Graph(3, {{1, 2}}));
    std::string je = report_to_json(emptyrep);
    CHECK(je.find("\"dimension\": null") != std::string::npos);
    CHECK(je.find("\"degree\": null") != std::string::npos);
}
