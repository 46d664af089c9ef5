#include "doctest.h"
#include "finmod/analysis.hpp"
#include "finmod/builtins.hpp"
#include "finmod/forbidden.hpp"
#include "finmod/parser.hpp"
#include "helpers.hpp"

using namespace finmod;
using namespace finmod::testing;

TEST_CASE("F_k of the named axioms") {
    auto f1 = compute_Fk(*builtin_formula("phi_DG"), tau_E(), 1);
    REQUIRE(f1.members.size() == 1);
    CHECK(f1.members[0] == h0());

    auto f2 = compute_Fk(*builtin_formula("phi_Graph"), tau_E(), 2);
    CHECK(f2.members.size() == 15);
    CHECK(std::count(f2.members.begin(), f2.members.end(), h0()) == 1);
    CHECK(std::count(f2.members.begin(), f2.members.end(), h1()) == 1);

    auto taut = compute_Fk(*parse_formula("forall x. x = x", tau_E()), tau_E(), 3);
    CHECK(taut.members.empty());
}

TEST_CASE("forb membership") {
    ForbiddenSet loops{tau_E(), {h0()}, 1};
    FinStructure triangle(tau_E(), 3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) triangle.add_tuple("E", {i, j});
    CHECK(forb_member(triangle, loops));
    CHECK(!forb_member(h0(), loops));

    // against F_2(phi_Graph), membership is exactly modelhood, exhaustively
    auto f2 = compute_Fk(*builtin_formula("phi_Graph"), tau_E(), 2);
    auto graph = builtin_formula("phi_Graph");
    for_each_structure(
        tau_E(), 4, [](const FinStructure&) { return true; },
        [&](const FinStructure& s) {
            CHECK(forb_member(s, f2) == models(s, *graph));
            return true;
        });
}

TEST_CASE("delta descriptions") {
    auto d = delta_description(h0(), {1});
    CHECK(render_formula(*d) == "x1 = x1 & E(x1,x1)");

    FinStructure lone(tau_E(), 1);
    CHECK(render_formula(*delta_description(lone, {1})) == "x1 = x1 & !E(x1,x1)");

    auto d2 = delta_description(h1(), {1, 2});
    std::string text = render_formula(*d2);
    CHECK(text.find("E(x1,x2)") != std::string::npos);
    CHECK(text.find("!E(x2,x1)") != std::string::npos);
    CHECK(text.find("x1 != x2") != std::string::npos);

    CHECK_THROWS(delta_description(h1(), {1}));     // too short
    CHECK_THROWS(delta_description(h1(), {1, 1}));  // not surjective
}

TEST_CASE("delta description pins the structure up to isomorphism") {
    // B satisfies delta(A)(b1..bk) iff the assignment embeds A as an
    // induced substructure; spot-checked by evaluation
    auto d = delta_description(h1(), {1, 2});
    FinStructure b(tau_E(), 3);
    b.add_tuple("E", {2, 3});
    CHECK(satisfies(b, *d, {{"x1", 2}, {"x2", 3}}));
    CHECK(!satisfies(b, *d, {{"x1", 3}, {"x2", 2}}));
    CHECK(!satisfies(b, *d, {{"x1", 1}, {"x2", 2}}));
}

TEST_CASE("forbidden set to universal sentence") {
    ForbiddenSet empty{tau_E(), {}, 0};
    CHECK(render_formula(*forbidden_to_universal(empty)) == "forall x. x = x");

    ForbiddenSet loops{tau_E(), {h0()}, 1};
    auto mu = forbidden_to_universal(loops);
    CHECK(classify(*mu) == SyntacticClass::Universal);
    // semantically equivalent to the loop-freeness axiom on all sizes <= 3
    auto dg = builtin_formula("phi_DG");
    for_each_structure(
        tau_E(), 3, [](const FinStructure&) { return true; },
        [&](const FinStructure& s) {
            CHECK(models(s, *mu) == models(s, *dg));
            return true;
        });

    ForbiddenSet both{tau_E(), {h0(), h1()}, 2};
    auto mu2 = forbidden_to_universal(both);
    auto graph = builtin_formula("phi_Graph");
    for_each_structure(
        tau_E(), 4, [](const FinStructure&) { return true; },
        [&](const FinStructure& s) {
            CHECK(models(s, *mu2) == models(s, *graph));
            return true;
        });
}

TEST_CASE("classification of converted sets stays universal") {
    auto f2 = compute_Fk(*builtin_formula("phi_Graph"), tau_E(), 2);
    CHECK(classify(*forbidden_to_universal(f2)) == SyntacticClass::Universal);
}

TEST_CASE("equivalence of universal sentences") {
    auto a = parse_formula("forall x. !E(x,x)", tau_E());
    ForbiddenSet loops{tau_E(), {h0()}, 1};
    auto b = forbidden_to_universal(loops);
    CHECK(universal_equivalent(*a, *b, tau_E()));
    CHECK(universal_equivalent(*a, *a, tau_E()));

    auto c = parse_formula("forall x. forall y. !E(x,y)", tau_E());
    CHECK(!universal_equivalent(*a, *c, tau_E()));
    // the separating structure: universe [2] with the single edge (1,2)
    CHECK(models(h1(), *a));
    CHECK(!models(h1(), *c));

    CHECK_THROWS(universal_equivalent(*a, *builtin_formula("phi1"), tau_0()));
}

TEST_CASE("antitonicity of Forb") {
    auto f1 = compute_Fk(*builtin_formula("phi_DG"), tau_E(), 1);
    auto f2 = compute_Fk(*builtin_formula("phi_DG"), tau_E(), 2);  // superset of f1
    for_each_structure(
        tau_E(), 3, [](const FinStructure&) { return true; },
        [&](const FinStructure& s) {
            if (forb_member(s, f2)) CHECK(forb_member(s, f1));
            return true;
        });
}

TEST_CASE("identity holds at larger bounds once it holds at k") {
    // loop-freeness is a forall^1 sentence; its Forb identity persists at l = 2, 3
    auto dg = builtin_formula("phi_DG");
    for (int l = 1; l <= 3; ++l) {
        auto fl = compute_Fk(*dg, tau_E(), l);
        for_each_structure(
            tau_E(), 3, [](const FinStructure&) { return true; },
            [&](const FinStructure& s) {
                CHECK(models(s, *dg) == forb_member(s, fl));
                return true;
            });
    }
}

TEST_CASE("deduplication keeps membership semantics") {
    auto f2 = compute_Fk(*builtin_formula("phi_Graph"), tau_E(), 2);
    auto deduped = f2.deduplicated();
    CHECK(deduped.members.size() < f2.members.size());
    for_each_structure(
        tau_E(), 3, [](const FinStructure&) { return true; },
        [&](const FinStructure& s) {
            CHECK(forb_member(s, f2) == forb_member(s, deduped));
            return true;
        });
}
