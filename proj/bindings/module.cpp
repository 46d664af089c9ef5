#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "finmod/analysis.hpp"
#include "finmod/builtins.hpp"
#include "finmod/experiments.hpp"
#include "finmod/io.hpp"
#include "finmod/parser.hpp"

namespace py = pybind11;
using namespace finmod;

namespace {

// value wrapper: the core uses shared_ptr<const Formula>, which pybind11
// cannot hold directly
struct PyFormula {
    FormulaPtr ptr;
};

FinStructure structure_from_text(const std::string& text) {
    std::istringstream in(text);
    return read_structure(in, ".").structure;
}

std::string structure_to_text(const FinStructure& s, const std::string& name,
                              const std::string& vocab_ref) {
    std::ostringstream out;
    write_structure(out, name, s, vocab_ref);
    return out.str();
}

TuringMachine machine_from_text(const std::string& text) {
    std::istringstream in(text);
    return read_machine(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-model-theory workbench core";

    py::register_exception<BudgetExceeded>(m, "BudgetExceededError");

    py::class_<Vocabulary>(m, "Vocabulary")
        .def(py::init([](const std::vector<std::pair<std::string, int>>& symbols,
                         const std::map<std::string, std::string>& pairs) {
                 std::vector<RelSymbol> syms;
                 for (const auto& [name, arity] : symbols) syms.push_back({name, arity});
                 return Vocabulary(std::move(syms), pairs);
             }),
             py::arg("symbols"), py::arg("pairs") = std::map<std::string, std::string>{})
        .def("arity", &Vocabulary::arity)
        .def("contains", &Vocabulary::contains)
        .def("__eq__", [](const Vocabulary& a, const Vocabulary& b) { return a == b; })
        .def("symbols", [](const Vocabulary& v) {
            std::vector<std::pair<std::string, int>> out;
            for (const auto& s : v.symbols()) out.emplace_back(s.name, s.arity);
            return out;
        });
    m.def("tau_E", &tau_E);
    m.def("tau_0", &tau_0);

    py::class_<PyFormula>(m, "Formula")
        .def("__str__", [](const PyFormula& f) { return render_formula(*f.ptr); })
        .def("__repr__", [](const PyFormula& f) { return "Formula(" + render_formula(*f.ptr) + ")"; })
        .def("size", [](const PyFormula& f) { return formula_size(*f.ptr); })
        .def("classify", [](const PyFormula& f) { return to_string(classify(*f.ptr)); })
        .def("polarity",
             [](const PyFormula& f, const std::string& rel) { return to_string(polarity(rel, *f.ptr)); })
        .def("free_variables", [](const PyFormula& f) { return free_variables(*f.ptr); })
        .def("structurally_equal", [](const PyFormula& a, const PyFormula& b) {
            return structurally_equal(*a.ptr, *b.ptr);
        });

    m.def("parse_formula", [](const std::string& text, const Vocabulary& vocab) {
        return PyFormula{parse_formula(text, vocab)};
    });
    m.def("render_formula", [](const PyFormula& f) { return render_formula(*f.ptr); });
    m.def(
        "builtin_formula",
        [](const std::string& name, int r, int s, const std::optional<Vocabulary>& vocab) {
            BuiltinParams p;
            p.r = r;
            p.s = s;
            p.vocab = vocab;
            return PyFormula{builtin_formula(name, p)};
        },
        py::arg("name"), py::arg("r") = 0, py::arg("s") = 0, py::arg("vocab") = std::nullopt);

    py::class_<FinStructure>(m, "FinStructure")
        .def(py::init<Vocabulary, int>())
        .def("add_tuple", &FinStructure::add_tuple)
        .def("size", &FinStructure::size)
        .def("vocab", &FinStructure::vocab)
        .def("has", &FinStructure::has)
        .def("relation",
             [](const FinStructure& s, const std::string& rel) {
                 return std::vector<Tuple>(s.relation(rel).begin(), s.relation(rel).end());
             })
        .def("__eq__", [](const FinStructure& a, const FinStructure& b) { return a == b; })
        .def("to_text", &structure_to_text, py::arg("name") = "A", py::arg("vocab_ref") = "-");
    m.def("structure_from_text", &structure_from_text);
    m.def("complete_ordering", &complete_ordering);
    m.def("induced_substructure", &induced_substructure);
    m.def("isomorphic", &isomorphic);
    m.def("find_isomorphism", &find_isomorphism);
    m.def("is_lt_substructure", &is_lt_substructure);
    m.def(
        "enumerate_structures",
        [](const Vocabulary& vocab, int max_size, const std::optional<PyFormula>& pred) {
            return enumerate_structures(vocab, max_size, [&](const FinStructure& s) {
                return !pred || models(s, *pred->ptr);
            });
        },
        py::arg("vocab"), py::arg("max_size"), py::arg("pred") = std::nullopt);

    m.def(
        "satisfies",
        [](const FinStructure& a, const PyFormula& f, const Assignment& asg, std::uint64_t budget) {
            Budget b{budget, 0};
            return satisfies(a, *f.ptr, asg, &b);
        },
        py::arg("structure"), py::arg("formula"), py::arg("assignment") = Assignment{},
        py::arg("budget") = 100'000'000ULL);
    m.def(
        "models",
        [](const FinStructure& a, const PyFormula& f, std::uint64_t budget) {
            Budget b{budget, 0};
            return models(a, *f.ptr, &b);
        },
        py::arg("structure"), py::arg("sentence"), py::arg("budget") = 100'000'000ULL);
    m.def(
        "find_model",
        [](const PyFormula& f, const Vocabulary& vocab, int size, std::uint64_t budget) {
            Budget b{budget, 0};
            return find_model(*f.ptr, vocab, size, &b);
        },
        py::arg("sentence"), py::arg("vocab"), py::arg("size"), py::arg("budget") = 100'000'000ULL);

    py::class_<ForbiddenSet>(m, "ForbiddenSet")
        .def_readonly("members", &ForbiddenSet::members)
        .def_readonly("bound", &ForbiddenSet::bound);
    m.def("compute_Fk", [](const PyFormula& phi, const Vocabulary& vocab, int k) {
        return compute_Fk(*phi.ptr, vocab, k);
    });
    m.def("forb_member", &forb_member);
    m.def("delta_description", [](const FinStructure& a, const std::vector<int>& enumeration) {
        return PyFormula{delta_description(a, enumeration)};
    });
    m.def("forbidden_to_universal",
          [](const ForbiddenSet& f) { return PyFormula{forbidden_to_universal(f)}; });
    m.def("universal_equivalent", [](const PyFormula& a, const PyFormula& b, const Vocabulary& vocab) {
        return universal_equivalent(*a.ptr, *b.ptr, vocab);
    });

    py::class_<Graph>(m, "Graph")
        .def(py::init<FinStructure>())
        .def("size", &Graph::size)
        .def("structure", &Graph::structure)
        .def("adjacent", &Graph::adjacent);
    m.def("find_cycle_through",
          [](const Graph& g, int v, int r) { return find_cycle_through(g, v, r); });
    m.def("find_path_with_ear", [](const Graph& g, int a, int b, int r, int s) {
        auto w = find_path_with_ear(g, a, b, r, s);
        return w ? std::optional<std::pair<std::vector<int>, std::vector<int>>>(
                       std::make_pair(w->path, w->ear))
                 : std::nullopt;
    });

    py::class_<GadgetGraph>(m, "GadgetGraph")
        .def_property_readonly("graph", [](const GadgetGraph& g) { return g.graph; })
        .def("size", [](const GadgetGraph& g) { return g.graph.size(); });
    m.def("encode", [](const FinStructure& a) { return encode(a); });
    m.def("decode", [](const Graph& g) { return decode(g); });
    m.def("decode_pairs",
          [](const Graph& g, const Vocabulary& vocab) { return decode_pairs(g, vocab); });
    m.def("cycle_taxonomy", [](const GadgetGraph& gg, int max_len) {
        return cycle_taxonomy(gg, max_len).counts;
    });

    py::class_<Interpretation>(m, "Interpretation")
        .def_readonly("source", &Interpretation::source)
        .def_property_readonly("univ", [](const Interpretation& i) { return PyFormula{i.univ}; });
    m.def("builtin_interp_tau0", &builtin_interp_tau0);
    m.def("builtin_interp_pairs", &builtin_interp_pairs);
    m.def("check_strongly_existential", &check_strongly_existential);
    m.def("translate", [](const PyFormula& f, const Interpretation& i) {
        return PyFormula{translate(*f.ptr, i)};
    });
    m.def("apply_interp", [](const Graph& g, const Interpretation& i) {
        auto r = apply_interp(g, i);
        return r ? std::optional<FinStructure>(r->structure) : std::nullopt;
    });
    m.def("fast_apply", [](const Graph& g, const Interpretation& i) {
        auto r = fast_apply(g, i);
        return r ? std::optional<FinStructure>(r->structure) : std::nullopt;
    });

    py::class_<TuringMachine>(m, "TuringMachine")
        .def_readonly("name", &TuringMachine::name)
        .def_readonly("states", &TuringMachine::states);
    m.def("machine_from_text", &machine_from_text);
    m.def("machine_vocabulary", &machine_vocabulary);
    m.def(
        "run_machine",
        [](const TuringMachine& m_, const std::string& word, int max_steps) {
            auto t = run(m_, word, max_steps);
            return std::make_tuple(t.halted, t.steps);
        },
        py::arg("machine"), py::arg("word"), py::arg("max_steps") = 10000);
    m.def("compile_sentence",
          [](const TuringMachine& m_, const std::string& word, const std::string& family) {
              return PyFormula{compile_sentence(m_, word, family_from_name(family))};
          });
    m.def("canonical_model",
          [](const TuringMachine& m_, const std::string& word) { return canonical_model(m_, word); });
    m.def("verify_encoding", &verify_encoding);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_property_readonly("passed", &ExperimentReport::pass)
        .def("to_text", &ExperimentReport::to_text)
        .def("to_json", &ExperimentReport::to_json);
    m.def("experiment_tait_structure", [](int n) { return experiment_tait_structure(n); });
    m.def("experiment_tait_graph", [](int n, int k) { return experiment_tait_graph(n, k); });
    m.def("experiment_gurevich_demo", [](const TuringMachine& m_, const std::string& word, int k) {
        return experiment_gurevich_demo(m_, word, k);
    });
}
