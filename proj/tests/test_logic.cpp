#include "doctest.h"
#include "finmod/analysis.hpp"
#include "finmod/builtins.hpp"
#include "finmod/parser.hpp"
#include "helpers.hpp"

using namespace finmod;

TEST_CASE("vocabulary invariants") {
    CHECK_THROWS(Vocabulary({{"E", 2}, {"E", 1}}));
    CHECK_THROWS(Vocabulary({{"R", 1}}, {{"R", "R"}}));
    CHECK_THROWS(Vocabulary({{"R", 1}, {"Rc", 2}}, {{"R", "Rc"}}));
    CHECK_THROWS(Vocabulary({{"R", 1}}, {{"R", "Missing"}}));
    Vocabulary v({{"R", 1}, {"Rc", 1}}, {{"R", "Rc"}});
    CHECK(v.complement_of("R") == "Rc");
    CHECK(v.is_complement("Rc"));
    CHECK(tau_0().arity("<") == 2);
}

TEST_CASE("parsing the named graph axioms") {
    auto phi_dg = parse_formula("forall x. !E(x,x)", tau_E());
    CHECK(structurally_equal(*phi_dg, *builtin_formula("phi_DG")));

    auto sym = parse_formula("forall x. forall y. (E(x,y) -> E(y,x))", tau_E());
    auto graph = builtin_formula("phi_Graph");
    CHECK(structurally_equal(*sym, *graph->right));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_formula("forall x. R(x)", tau_E()), ParseError);      // undeclared
    CHECK_THROWS_AS(parse_formula("forall x. E(x)", tau_E()), ParseError);      // arity
    CHECK_THROWS_AS(parse_formula("forall x. E(x,", tau_E()), ParseError);      // syntax
    CHECK_THROWS_AS(parse_formula("E(x,y) E(y,x)", tau_E()), ParseError);       // trailing
    try {
        parse_formula("forall x. Q(x,x)", tau_E());
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.pos == 10);
    }
}

TEST_CASE("rendering is canonical") {
    CHECK(render_formula(*builtin_formula("phi_DG")) == "forall x. !E(x,x)");
    CHECK(render_formula(*f_equal("x", "y")) == "x = y");
    CHECK(render_formula(*f_not(f_equal("x", "y"))) == "x != y");

    auto phi0 = builtin_formula("phi0");
    CHECK(structurally_equal(*parse_formula(render_formula(*phi0), tau_0()), *phi0));
    auto phi1 = builtin_formula("phi1");
    CHECK(structurally_equal(*parse_formula(render_formula(*phi1), tau_0()), *phi1));
}

TEST_CASE("parse after render is the identity on random formulas") {
    testing::FormulaGen gen{std::mt19937(20240811), tau_0()};
    for (int i = 0; i < 300; ++i) {
        auto f = gen.gen(4, {"x"});
        auto round = parse_formula(render_formula(*f), tau_0());
        CHECK(structurally_equal(*f, *round));
    }
}

TEST_CASE("formula size convention") {
    CHECK(formula_size(*builtin_formula("phi_DG")) == 5);
    CHECK(formula_size(*f_equal("x", "y")) == 3);
    auto a = builtin_formula("phi0");
    auto b = builtin_formula("phi1");
    CHECK(formula_size(*f_and(a, b)) == formula_size(*a) + formula_size(*b) + 1);
}

TEST_CASE("size is strictly monotone under subformula embedding") {
    testing::FormulaGen gen{std::mt19937(7), tau_E()};
    for (int i = 0; i < 100; ++i) {
        auto f = gen.gen(3, {"x", "y"});
        CHECK(formula_size(*f_not(f)) > formula_size(*f));
        CHECK(formula_size(*f_and(f, f_equal("x", "x"))) > formula_size(*f));
        CHECK(formula_size(*f_forall("x", f)) > formula_size(*f));
    }
}

TEST_CASE("syntactic classification") {
    CHECK(classify(*builtin_formula("phi0")) == SyntacticClass::Universal);
    CHECK(classify(*builtin_formula("phi1")) == SyntacticClass::General);
    CHECK(classify(*parse_formula("forall x. exists y. S(x,y)", tau_0())) == SyntacticClass::Pi2);
    CHECK(classify(*parse_formula("exists x. forall y. S(x,y)", tau_0())) == SyntacticClass::Sigma2);
    CHECK(classify(*parse_formula("exists x. exists y. S(x,y)", tau_0())) ==
          SyntacticClass::Existential);
    CHECK(classify(*parse_formula("E(x,y) & !E(y,x)", tau_E())) == SyntacticClass::QuantifierFree);
    // implications unfold before reading the prefix
    CHECK(classify(*parse_formula("forall x. (E(x,x) -> forall y. E(x,y))", tau_E())) ==
          SyntacticClass::Universal);
    CHECK(classify(*parse_formula("forall x. (exists y. E(x,y)) -> E(x,x)", tau_E())) ==
          SyntacticClass::Universal);
}

TEST_CASE("polarity analysis") {
    auto phi0 = builtin_formula("phi0");
    CHECK(polarity("S", *phi0) == Polarity::Negative);
    CHECK(polarity("U_min", *phi0) == Polarity::Negative);
    CHECK(polarity("U_max", *phi0) == Polarity::Negative);
    CHECK(polarity("<", *phi0) == Polarity::Mixed);

    auto phi1 = builtin_formula("phi1");
    CHECK(polarity("U_min", *phi1) == Polarity::Positive);
    CHECK(polarity("U_max", *phi1) == Polarity::Positive);
    CHECK(polarity("S", *phi1) == Polarity::Positive);
    CHECK(polarity("<", *phi1) == Polarity::Negative);

    CHECK(polarity("E", *builtin_formula("phi_Graph")) == Polarity::Mixed);
    CHECK(polarity("U_min", *builtin_formula("phi_DG")) == Polarity::Absent);
}

TEST_CASE("builtin cycle and path-ear formulas") {
    BuiltinParams p;
    p.r = 4;
    auto c4 = builtin_formula("phi_c", p);
    CHECK(classify(*c4) == SyntacticClass::QuantifierFree);
    CHECK(free_variables(*c4) == std::set<std::string>{"x", "z1", "z2", "z3", "z4"});

    p.r = 6;
    p.s = 4;
    auto pe = builtin_formula("phi_pe", p);
    CHECK(classify(*pe) == SyntacticClass::QuantifierFree);
    auto frees = free_variables(*pe);
    CHECK(frees.count("x"));
    CHECK(frees.count("y"));
    CHECK(frees.count("z0"));
    CHECK(frees.count("z6"));
    CHECK(frees.count("w4"));
    CHECK(frees.size() == 2 + 7 + 4);

    p.r = 2;
    CHECK_THROWS(builtin_formula("phi_c", p));
    CHECK_THROWS(builtin_formula("no_such_formula"));
}

TEST_CASE("phi1_tau adds totality conjuncts per pair") {
    Vocabulary tau = tau_pairs({{"R", "Rc", 2}, {"P", "Pc", 1}});
    BuiltinParams p;
    p.vocab = tau;
    auto f = builtin_formula("phi1_tau", p);
    std::string text = render_formula(*f);
    CHECK(text.find("R(x,y) | Rc(x,y)") != std::string::npos);
    CHECK(text.find("P(x) | Pc(x)") != std::string::npos);
    CHECK(polarity("R", *f) == Polarity::Positive);

    auto star = builtin_formula("phi1_star");
    CHECK(render_formula(*star).find("U_max") == std::string::npos);
    CHECK_THROWS(builtin_formula("phi1_tau"));
}

TEST_CASE("nnf and renaming") {
    auto f = parse_formula("forall x. (E(x,x) -> exists y. E(x,y))", tau_E());
    auto n = to_nnf(f);
    CHECK(render_formula(*n) == "forall x. !E(x,x) | (exists y. E(x,y))");

    auto g = parse_formula("exists y. E(x,y)", tau_E());
    auto renamed = rename_free(g, {{"x", "y"}});  // must avoid capture
    CHECK(free_variables(*renamed) == std::set<std::string>{"y"});
    CHECK(render_formula(*renamed) != "exists y. E(y,y)");
}
