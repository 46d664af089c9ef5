#include "doctest.h"
#include "finmod/analysis.hpp"
#include "finmod/builtins.hpp"
#include "finmod/interp.hpp"
#include "finmod/parser.hpp"
#include "helpers.hpp"

using namespace finmod;
using namespace finmod::testing;

namespace {

// tiny quantifier-free interpretation, convenient for exact translation
// checks and for exercising eq-(10)-style agreement on random graphs
Interpretation toy_interp() {
    Interpretation i;
    i.source = tau_0();
    auto e = tau_E();
    i.univ = parse_formula("E(x1,x2)", e);
    i.defs["<"] = parse_formula("E(x2,y1)", e);
    i.defs["U_min"] = parse_formula("E(x1,x1) | E(x1,x2)", e);
    i.defs["U_max"] = parse_formula("!E(x2,x2)", e);
    i.defs["S"] = parse_formula("E(x1,y1) & E(x2,y2)", e);
    i.validate();
    return i;
}

}  // namespace

TEST_CASE("strong existentiality of the builtin interpretation") {
    auto i = builtin_interp_tau0();
    CHECK(check_strongly_existential(i));
    CHECK(classify(*i.defs.at("<")) == SyntacticClass::QuantifierFree);

    auto with_forall = i;
    with_forall.defs["S"] = f_forall("q", f_atom("E", {"q", "x1"}));
    CHECK(!check_strongly_existential(with_forall));

    auto quantified_lt = i;
    quantified_lt.defs["<"] =
        parse_formula("exists z. E(x2,z) & z = y1", tau_E());
    CHECK(!check_strongly_existential(quantified_lt));
}

TEST_CASE("translation of the guarded quantifiers") {
    auto i = toy_interp();
    auto univ_all = translate(*parse_formula("forall x. U_max(x)", tau_0()), i);
    CHECK(render_formula(*univ_all) ==
          "forall x_1. forall x_2. E(x_1,x_2) -> !E(x_2,x_2)");

    auto exist = translate(*parse_formula("exists x. U_min(x)", tau_0()), i);
    CHECK(render_formula(*exist) ==
          "exists x_1. exists x_2. E(x_1,x_2) & (E(x_1,x_1) | E(x_1,x_2))");

    auto eq = translate(*parse_formula("forall x. forall y. x = y", tau_0()), i);
    CHECK(render_formula(*eq).find("x_1 = y_1 & x_2 = y_2") != std::string::npos);

    auto binary = translate(*parse_formula("forall x. forall y. S(x,y)", tau_0()), i);
    CHECK(render_formula(*binary) ==
          "forall x_1. forall x_2. E(x_1,x_2) -> "
          "(forall y_1. forall y_2. E(y_1,y_2) -> E(x_1,y_1) & E(x_2,y_2))");
}

TEST_CASE("translation agrees with interpretation semantics on random graphs") {
    auto i = toy_interp();
    FormulaGen sentences{std::mt19937(2024), tau_0()};
    std::mt19937 rng(1);
    int nonempty_seen = 0;
    for (int round = 0; round < 60; ++round) {
        int n = 2 + static_cast<int>(rng() % 4);
        FinStructure s(tau_E(), n);
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (rng() % 2) {
                    s.add_tuple("E", {a, b});
                    s.add_tuple("E", {b, a});
                }
        Graph g(s);
        auto extracted = apply_interp(g, i);
        if (!extracted) continue;
        ++nonempty_seen;
        CHECK(static_cast<long>(extracted->universe_pairs.size()) <=
              static_cast<long>(n) * n);
        for (int k = 0; k < 4; ++k) {
            auto phi = sentences.sentence(4);
            CHECK(models(extracted->structure, *phi) == models(g.structure(), *translate(*phi, i)));
        }
    }
    CHECK(nonempty_seen > 20);
}

TEST_CASE("apply_interp is empty on graphs without the gadget shapes") {
    auto i = builtin_interp_tau0();
    CHECK(!apply_interp(cycle_graph(3), i).has_value());
    CHECK(!fast_apply(cycle_graph(3), i).has_value());
}

TEST_CASE("fast_apply agrees with apply_interp on random graphs") {
    auto i = builtin_interp_tau0();
    std::mt19937 rng(9);
    for (int round = 0; round < 25; ++round) {
        int n = 3 + static_cast<int>(rng() % 10);
        FinStructure s(tau_E(), n);
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (rng() % 3 == 0) {
                    s.add_tuple("E", {a, b});
                    s.add_tuple("E", {b, a});
                }
        Graph g(s);
        auto slow = apply_interp(g, i);
        auto fast = fast_apply(g, i);
        CHECK(slow.has_value() == fast.has_value());
        if (slow && fast) {
            CHECK(slow->universe_pairs == fast->universe_pairs);
            CHECK(slow->structure == fast->structure);
        }
    }
    CHECK_THROWS(fast_apply(cycle_graph(3), toy_interp()));  // not builtin
}

TEST_CASE("translating the ordering axioms stays universal") {
    auto i = builtin_interp_tau0();
    CHECK(classify(*translate(*builtin_formula("phi0"), i)) == SyntacticClass::Universal);

    Vocabulary tau = tau_pairs({{"R", "Rc", 2}});
    auto ip = builtin_interp_pairs(tau);
    CHECK(check_strongly_existential(ip));
    // a universal sentence in which only < occurs positively
    auto extension = parse_formula(
        "forall x. forall y. !R(x,y) | !Rc(x,y)", tau);
    CHECK(classify(*translate(*f_and(builtin_formula("phi0"), extension), ip)) ==
          SyntacticClass::Universal);
}

TEST_CASE("pairs interpretation assigns distinct odd lengths") {
    Vocabulary tau = tau_pairs({{"R", "Rc", 2}, {"P", "Pc", 1}});
    auto plan = default_plan(tau);
    std::set<int> cycles{plan.basic_cycle, plan.companion_cycle};
    for (const auto& [sym, len] : plan.unary_cycle) {
        CHECK(len % 2 == 1);
        CHECK(cycles.insert(len).second);
    }
    std::set<int> ears{plan.link_ear};
    for (const auto& [sym, len] : plan.binary_ear) {
        CHECK(len % 2 == 1);
        CHECK(ears.insert(len).second);
        CHECK(len > *std::max_element(cycles.begin(), cycles.end()));
    }
    CHECK(plan.path_len > *std::max_element(cycles.begin(), cycles.end()));
    CHECK(plan.unary_cycle.size() + 2 + plan.binary_ear.size() + 1 == cycles.size() + ears.size());
}

TEST_CASE("translation constant measurement") {
    auto i = builtin_interp_tau0();
    std::vector<FormulaPtr> corpus{parse_formula("forall x. x = x", tau_0())};
    auto c1 = measure_translation_constant(i, corpus);
    CHECK(c1.value() > 0.0);

    corpus.push_back(builtin_formula("phi0"));
    corpus.push_back(builtin_formula("phi1"));
    auto c2 = measure_translation_constant(i, corpus);
    CHECK(!(c2 < c1));  // max never decreases

    auto c2_again = measure_translation_constant(i, corpus);
    CHECK(c2.num == c2_again.num);
    CHECK(c2.den == c2_again.den);
    CHECK_THROWS(measure_translation_constant(i, {}));
}

TEST_CASE("interpretation validation") {
    auto i = builtin_interp_tau0();
    auto missing = i;
    missing.defs.erase("S");
    CHECK_THROWS(missing.validate());

    auto bad_frees = i;
    bad_frees.defs["U_min"] = parse_formula("E(y1,y2)", tau_E());
    CHECK_THROWS(bad_frees.validate());

    CHECK_THROWS(translate(*parse_formula("forall x. !E(x,x)", tau_E()), i));
}
