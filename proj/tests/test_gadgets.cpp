#include "doctest.h"
#include "finmod/builtins.hpp"
#include "finmod/gadgets.hpp"
#include "finmod/interp.hpp"
#include "helpers.hpp"

using namespace finmod;
using namespace finmod::testing;

TEST_CASE("default plan lengths") {
    auto plan = default_plan(tau_0());
    CHECK(plan.unary_cycle.at("U_min") == 5);
    CHECK(plan.unary_cycle.at("U_max") == 7);
    CHECK(plan.basic_cycle == 9);
    CHECK(plan.companion_cycle == 11);
    CHECK(plan.binary_ear.at("S") == 13);
    CHECK(plan.link_ear == 15);
    CHECK(plan.path_len == 17);

    auto bad = plan;
    bad.unary_cycle["U_min"] = 6;
    CHECK_THROWS(bad.validate());
    bad = plan;
    bad.unary_cycle["U_min"] = 7;
    CHECK_THROWS(bad.validate());  // duplicate
    bad = plan;
    bad.path_len = 11;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("vertex counts of the encoding") {
    for (int n = 1; n <= 4; ++n) {
        auto gg = encode(complete_ordering(n));
        CHECK(gg.graph.size() == 80 * n - 19);
        CHECK(gg.roles.size() == static_cast<std::size_t>(gg.graph.size()));
    }
}

TEST_CASE("encode rejects structures that are not complete orderings") {
    FinStructure bad = complete_ordering(2);
    bad.set_relation("U_max", {});
    CHECK_THROWS(encode(bad));

    FinStructure unordered(tau_0(), 2);
    CHECK_THROWS(encode(unordered));
}

TEST_CASE("decode inverts encode") {
    for (int n = 1; n <= 2; ++n) {
        auto a = complete_ordering(n);
        auto decoded = decode(encode(a).graph);
        REQUIRE(decoded.has_value());
        CHECK(isomorphic(*decoded, a));
    }
}

TEST_CASE("decode of a bare cycle is empty") {
    CHECK(!decode(cycle_graph(5)).has_value());
    CHECK(!decode(cycle_graph(9)).has_value());  // 9-cycle alone lacks the rest
}

TEST_CASE("decode fails when a link path edge is removed") {
    auto gg = encode(complete_ordering(1));
    // find an edge inside the companion-link path
    int u = 0, v = 0;
    for (int w = 1; w <= gg.graph.size() && !u; ++w) {
        if (gg.roles[w - 1].role != VertexRole::PathMember || gg.roles[w - 1].tag != "L") continue;
        for (int nb : gg.graph.neighbors(w))
            if (gg.roles[nb - 1].role == VertexRole::PathMember && gg.roles[nb - 1].tag == "L") {
                u = w;
                v = nb;
                break;
            }
    }
    REQUIRE(u > 0);
    FinStructure pruned = gg.graph.structure();
    auto edges = pruned.relation("E");
    edges.erase({u, v});
    edges.erase({v, u});
    pruned.set_relation("E", edges);
    CHECK(!decode(Graph(pruned)).has_value());
}

TEST_CASE("the basic vertex lies on its 9-cycle and the link path exists") {
    auto gg = encode(complete_ordering(1));
    const Graph& g = gg.graph;
    CHECK(find_cycle_through(g, 1, 9).has_value());
    CHECK(find_cycle_through(g, 2, 11).has_value());  // the companion
    CHECK(find_path_with_ear(g, 1, 2, 17, 15).has_value());
    CHECK(!find_path_with_ear(g, 1, 2, 17, 13).has_value());  // no S facts at n = 1
}

TEST_CASE("cycle taxonomy of the two-element encoding") {
    auto gg = encode(complete_ordering(2));
    auto tax = cycle_taxonomy(gg, 16);

    CHECK(!tax.counts.count("mixed"));
    CHECK(!tax.counts.count("F"));  // no order cycles exist below n = 4
    std::map<int, int> t_expected{{5, 1}, {7, 1}, {9, 2}, {11, 2}};
    CHECK(tax.counts.at("T") == t_expected);
    std::map<int, int> ear_expected{{13, 1}, {15, 2}};
    CHECK(tax.counts.at("ear") == ear_expected);
}

TEST_CASE("order cycles are chordless of length four") {
    auto gg = encode(complete_ordering(4));
    auto tax = cycle_taxonomy(gg, 12);
    REQUIRE(tax.counts.count("F"));
    for (const auto& [len, count] : tax.counts.at("F")) CHECK(len == 4);
    CHECK(!tax.counts.count("mixed"));
}

TEST_CASE("pairs round trip with an added unary and binary pair") {
    Vocabulary tau = tau_pairs({{"P", "Pc", 1}});
    FinStructure a(tau, 2);
    a.add_tuple("<", {1, 2});
    a.add_tuple("U_min", {1});
    a.add_tuple("U_max", {2});
    a.add_tuple("S", {1, 2});
    a.add_tuple("P", {1});
    a.add_tuple("Pc", {2});
    auto gg = encode(a);
    auto decoded = decode_pairs(gg.graph, tau);
    REQUIRE(decoded.has_value());
    CHECK(isomorphic(*decoded, a));
}

TEST_CASE("encode requires exact complements over pairs vocabularies") {
    Vocabulary tau = tau_pairs({{"P", "Pc", 1}});
    FinStructure a(tau, 2);
    a.add_tuple("<", {1, 2});
    a.add_tuple("U_min", {1});
    a.add_tuple("U_max", {2});
    a.add_tuple("S", {1, 2});
    a.add_tuple("P", {1});  // Pc missing: totality violated
    CHECK_THROWS(encode(a));
}
