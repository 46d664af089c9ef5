#include "doctest.h"
#include "finmod/analysis.hpp"
#include "finmod/builtins.hpp"
#include "finmod/tm.hpp"
#include "helpers.hpp"

using namespace finmod;
using namespace finmod::testing;

namespace {

TuringMachine halt1() { return halt1_machine(); }
TuringMachine halt2() { return halt2_machine(); }

TuringMachine spinner() {
    TuringMachine m;
    m.name = "spin";
    m.states = {"q0", "qh"};
    m.start = "q0";
    m.halt = "qh";
    m.instructions = {{"q0", 0, "q0", 0, 0}};
    return m;
}

}  // namespace

TEST_CASE("machine validation") {
    auto m = halt1();
    m.instructions.push_back({"q0", 0, "q0", 0, 1});  // nondeterministic
    CHECK_THROWS(m.validate());

    m = halt1();
    m.halt = "q0";
    CHECK_THROWS(m.validate());

    m = halt1();
    m.instructions.push_back({"qh", 0, "q0", 0, 0});
    CHECK_THROWS(m.validate());
}

TEST_CASE("simulation") {
    auto trace = run(halt1(), "0", 100);
    CHECK(trace.halted);
    CHECK(trace.steps == 1);
    CHECK(trace.configs.size() == 2);
    CHECK(trace.cell(0, 1) == 1);

    CHECK_THROWS(run(halt1(), "1", 100));  // stuck at step 0

    auto spin = run(spinner(), "0", 10);
    CHECK(!spin.halted);
    CHECK(spin.steps == 10);

    TuringMachine left;
    left.name = "left";
    left.states = {"q0", "qh"};
    left.start = "q0";
    left.halt = "qh";
    left.instructions = {{"q0", 0, "qh", 0, -1}};
    CHECK_THROWS(run(left, "0", 10));

    auto two = run(halt2(), "00", 100);
    CHECK(two.halted);
    CHECK(two.steps == 2);
    CHECK(two.cell(0, 2) == 1);
    CHECK(two.cell(1, 2) == 1);
    CHECK(two.cell(2, 2) == 0);
}

TEST_CASE("machine vocabulary pairs every added symbol") {
    auto vocab = machine_vocabulary(halt2());
    CHECK(vocab.contains("C0"));
    CHECK(vocab.complement_of("C0") == "C0_comp");
    CHECK(vocab.complement_of("H_q1") == "H_q1_comp");
    CHECK(vocab.arity("H_q0") == 2);
}

TEST_CASE("phi0w is universal with every non-order symbol negative") {
    for (const auto& m : {halt1(), halt2()}) {
        const Vocabulary vocab = machine_vocabulary(m);
        for (const std::string word : {"", "0", "00", "01", "10110"}) {
            auto f = compile_sentence(m, word, SentenceFamily::Phi0w);
            CHECK(classify(*f) == SyntacticClass::Universal);
            for (const auto& sym : vocab.symbols()) {
                if (sym.name == "<") continue;
                auto p = polarity(sym.name, *f);
                CHECK((p == Polarity::Negative || p == Polarity::Absent));
            }
        }
    }
}

TEST_CASE("sentence families compose as displayed") {
    auto m = halt1();
    auto phi0w = compile_sentence(m, "0", SentenceFamily::Phi0w);
    auto phi1m = compile_sentence(m, "0", SentenceFamily::Phi1M);
    auto gamma = compile_sentence(m, "0", SentenceFamily::Gamma);

    auto chi = compile_sentence(m, "0", SentenceFamily::Chi);
    CHECK(structurally_equal(*chi, *f_and(phi0w, f_implies(phi1m, f_not(gamma)))));
    auto pi = compile_sentence(m, "0", SentenceFamily::Pi);
    CHECK(structurally_equal(*pi, *f_and(f_and(phi0w, phi1m), gamma)));
    auto alpha = compile_sentence(m, "0", SentenceFamily::Alpha);
    CHECK(structurally_equal(*alpha, *f_and(phi0w, f_implies(phi1m, gamma))));

    // determinism of compilation
    CHECK(structurally_equal(*chi, *compile_sentence(m, "0", SentenceFamily::Chi)));
}

TEST_CASE("chi_w grows at most linearly in the word") {
    auto m = halt2();
    std::size_t c = 0;
    for (const std::string word : {"0", "1", "00", "11", "010"}) {
        auto chi = compile_sentence(m, word, SentenceFamily::Chi);
        std::size_t ratio = (formula_size(*chi) + word.size() - 1) / word.size();
        c = std::max(c, ratio);
    }
    for (const std::string word : {"0000", "10101", "110011"}) {
        auto chi = compile_sentence(m, word, SentenceFamily::Chi);
        CHECK(formula_size(*chi) <= c * word.size());
    }
}

TEST_CASE("canonical model and its checks") {
    auto m = halt1();
    auto a = canonical_model(m, "0");
    CHECK(a.size() == 2);
    CHECK(models(a, *compile_sentence(m, "0", SentenceFamily::Pi)));

    auto sub = induced_substructure(a, {1});
    CHECK(!models(sub, *compile_sentence(m, "0", SentenceFamily::Phi1M)));

    CHECK(!find_model(*compile_sentence(m, "0", SentenceFamily::Pi),
                      machine_vocabulary(m), 1)
               .has_value());

    CHECK_THROWS(canonical_model(spinner(), "0", 50));
}

TEST_CASE("canonical model of the two-step machine") {
    auto m = halt2();
    auto a = canonical_model(m, "00");
    CHECK(a.size() == 3);
    CHECK(models(a, *compile_sentence(m, "00", SentenceFamily::Pi)));
}

TEST_CASE("encoding verification") {
    auto m = halt1();
    auto a = canonical_model(m, "0");
    CHECK(verify_encoding(a, m, "0", 1));

    FinStructure flipped = a;
    auto c0 = flipped.relation("C0");
    // flip one cell fact
    Tuple t = *c0.begin();
    c0.erase(t);
    flipped.set_relation("C0", c0);
    CHECK(!verify_encoding(flipped, m, "0", 1));

    CHECK_THROWS(verify_encoding(a, m, "0", 5));  // r too large for the structure
}

TEST_CASE("rho is a graph sentence") {
    auto rho = compile_sentence(halt1(), "0", SentenceFamily::Rho);
    CHECK_NOTHROW(check_against_vocabulary(*rho, tau_E()));
    CHECK(is_sentence(*rho));
}

TEST_CASE("every proper <-substructure of the canonical model satisfies chi") {
    auto m = halt2();
    auto a = canonical_model(m, "00");
    auto chi = compile_sentence(m, "00", SentenceFamily::Chi);
    for (int mask = 1; mask < (1 << a.size()) - 1; ++mask) {
        std::vector<int> elems;
        for (int i = 0; i < a.size(); ++i)
            if (mask & (1 << i)) elems.push_back(i + 1);
        CHECK(models(induced_substructure(a, elems), *chi));
    }
}
