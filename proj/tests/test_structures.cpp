#include "doctest.h"
#include "finmod/builtins.hpp"
#include "finmod/eval.hpp"
#include "finmod/structure.hpp"
#include "helpers.hpp"

using namespace finmod;
using namespace finmod::testing;

TEST_CASE("induced substructures relabel order-preservingly") {
    auto h1_ = h1();
    auto single = induced_substructure(h1_, {1});
    CHECK(single.size() == 1);
    CHECK(single.relation("E").empty());

    auto a3 = complete_ordering(3);
    auto sub = induced_substructure(a3, {1, 2});
    CHECK(models(sub, *builtin_formula("phi0")));
    CHECK(!models(sub, *builtin_formula("phi1")));

    CHECK(induced_substructure(a3, {1, 2, 3}) == a3);
    CHECK_THROWS(induced_substructure(a3, {}));
    CHECK_THROWS(induced_substructure(a3, {2, 1}));
}

TEST_CASE("<-substructure check") {
    auto a2 = complete_ordering(2);
    FinStructure weakened = a2;
    weakened.set_relation("S", {});
    CHECK(is_lt_substructure(weakened, a2, {1, 2}));

    FinStructure no_order = a2;
    no_order.set_relation("<", {});
    CHECK(!is_lt_substructure(no_order, a2, {1, 2}));

    auto a3 = complete_ordering(3);
    auto sub = induced_substructure(a3, {1, 3});
    CHECK(is_lt_substructure(sub, a3, {1, 3}));

    CHECK_THROWS(is_lt_substructure(a2, a2, {1, 1}));  // not injective
}

TEST_CASE("every induced substructure is a <-substructure") {
    auto a4 = complete_ordering(4);
    for (int mask = 1; mask < 15; ++mask) {
        std::vector<int> elems;
        for (int i = 0; i < 4; ++i)
            if (mask & (1 << i)) elems.push_back(i + 1);
        CHECK(is_lt_substructure(induced_substructure(a4, elems), a4, elems));
    }
}

TEST_CASE("isomorphism with witness") {
    auto a2 = complete_ordering(2);
    FinStructure b(tau_0(), 2);  // the same ordering with labels swapped
    b.add_tuple("<", {2, 1});
    b.add_tuple("U_min", {2});
    b.add_tuple("U_max", {1});
    b.add_tuple("S", {2, 1});
    auto wit = find_isomorphism(a2, b);
    REQUIRE(wit.has_value());
    CHECK((*wit)[0] == 2);
    CHECK((*wit)[1] == 1);

    FinStructure loopless(tau_E(), 1);
    CHECK(!isomorphic(h0(), loopless));
    CHECK(isomorphic(h0(), h0()));
}

TEST_CASE("isomorphism witness preserves relations both ways") {
    testing::FormulaGen gen{std::mt19937(99), tau_E()};
    std::mt19937 rng(4242);
    for (int round = 0; round < 40; ++round) {
        FinStructure a = gen.structure(5);
        // random relabeling of a
        std::vector<int> perm(a.size());
        for (int i = 0; i < a.size(); ++i) perm[i] = i + 1;
        std::shuffle(perm.begin(), perm.end(), rng);
        FinStructure b(a.vocab(), a.size());
        for (const auto& t : a.relation("E")) b.add_tuple("E", {perm[t[0] - 1], perm[t[1] - 1]});
        auto wit = find_isomorphism(a, b);
        REQUIRE(wit.has_value());
        for (const auto& t : a.relation("E")) CHECK(b.has("E", {(*wit)[t[0] - 1], (*wit)[t[1] - 1]}));
        CHECK(a.relation("E").size() == b.relation("E").size());
    }
}

TEST_CASE("enumeration counts over tau_E") {
    auto all1 = enumerate_structures(tau_E(), 1, [](const FinStructure&) { return true; });
    CHECK(all1.size() == 2);
    auto all2 = enumerate_structures(tau_E(), 2, [](const FinStructure&) { return true; });
    CHECK(all2.size() == 18);
    auto graph = builtin_formula("phi_Graph");
    auto violators =
        enumerate_structures(tau_E(), 2, [&](const FinStructure& s) { return !models(s, *graph); });
    CHECK(violators.size() == 15);

    // one r-ary symbol at exact size l: 2^(l^r) structures
    int count_exact2 = 0;
    for (const auto& s : all2)
        if (s.size() == 2) ++count_exact2;
    CHECK(count_exact2 == 16);
}

TEST_CASE("enumeration order is deterministic and size-ascending") {
    auto all = enumerate_structures(tau_E(), 2, [](const FinStructure&) { return true; });
    CHECK(all[0].size() == 1);
    CHECK(all[0].relation("E").empty());
    CHECK(all[1] == h0());
    CHECK(all[2].size() == 2);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].size() <= all[i].size());
}

TEST_CASE("bounded cycle search") {
    auto c5 = cycle_graph(5);
    for (int v = 1; v <= 5; ++v) {
        auto wit = find_cycle_through(c5, v, 5);
        REQUIRE(wit.has_value());
        CHECK(wit->front() == v);
        CHECK(wit->size() == 5);
        CHECK(!find_cycle_through(c5, v, 4).has_value());
        CHECK(!find_cycle_through(c5, v, 3).has_value());
    }
}

TEST_CASE("path with ear search on the drawn example") {
    auto fig = figure_graph();
    auto wit = find_path_with_ear(fig, 1, 7, 6, 4);
    REQUIRE(wit.has_value());
    CHECK(wit->path.front() == 1);
    CHECK(wit->path.back() == 7);
    CHECK(wit->path.size() == 7);
    CHECK(wit->ear.size() == 4);
    CHECK(fig.adjacent(wit->path[5], wit->ear[0]));

    CHECK(!find_path_with_ear(fig, 1, 7, 6, 5).has_value());
    CHECK(!find_path_with_ear(fig, 1, 7, 5, 4).has_value());
    CHECK(!find_path_with_ear(fig, 7, 1, 6, 4).has_value());  // ear sits at the b-side
}

TEST_CASE("cycle search agrees with the formula semantics on small graphs") {
    testing::FormulaGen gen{std::mt19937(1234), tau_E()};
    std::mt19937 rng(77);
    BuiltinParams p;
    for (int round = 0; round < 60; ++round) {
        int n = 3 + static_cast<int>(rng() % 4);
        FinStructure s(tau_E(), n);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (rng() % 2) {
                    s.add_tuple("E", {i, j});
                    s.add_tuple("E", {j, i});
                }
        Graph g(s);
        for (int r = 3; r <= n; ++r) {
            p.r = r;
            auto phi = builtin_formula("phi_c", p);
            std::vector<std::string> zs;
            for (int i = 1; i <= r; ++i) zs.push_back("z" + std::to_string(i));
            auto exists_cycle = f_exists_many(zs, phi);
            for (int v = 1; v <= n; ++v) {
                bool direct = find_cycle_through(g, v, r).has_value();
                bool formula = satisfies(s, *exists_cycle, {{"x", v}});
                CHECK(direct == formula);
            }
        }
    }
}

TEST_CASE("complete ordering models its axioms") {
    for (int n = 1; n <= 5; ++n) {
        auto a = complete_ordering(n);
        CHECK(models(a, *builtin_formula("phi0")));
        CHECK(models(a, *builtin_formula("phi1")));
    }
}

TEST_CASE("graph validation is explicit") {
    FinStructure loop(tau_E(), 2);
    loop.add_tuple("E", {1, 1});
    CHECK_THROWS(Graph(loop));

    FinStructure asym(tau_E(), 2);
    asym.add_tuple("E", {1, 2});
    CHECK_THROWS(Graph(asym));
}
