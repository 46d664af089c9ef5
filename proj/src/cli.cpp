#include "finmod/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "finmod/analysis.hpp"
#include "finmod/builtins.hpp"
#include "finmod/experiments.hpp"
#include "finmod/io.hpp"
#include "finmod/parser.hpp"

namespace finmod {

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

struct Common {
    std::string vocab;
    std::uint64_t eval_budget = 100'000'000;

    std::optional<Vocabulary> vocabulary() const {
        if (vocab.empty()) return std::nullopt;
        if (is_builtin_vocab(vocab)) return builtin_vocab(vocab);
        return load_vocabulary(vocab);
    }
    Budget budget() const { return Budget{eval_budget, 0}; }
};

// --sentence accepts a builtin name (optionally with parameters, e.g.
// phi_c(r=4)), or a formula file path parsed against the vocabulary.
struct SentenceSpec {
    FormulaPtr formula;
    Vocabulary vocab;
};

std::optional<SentenceSpec> resolve_builtin(const std::string& spec,
                                            const std::optional<Vocabulary>& vocab_opt) {
    std::string name = spec;
    BuiltinParams params;
    auto paren = spec.find('(');
    if (paren != std::string::npos) {
        if (spec.back() != ')') throw Error("malformed sentence parameters in " + spec);
        name = spec.substr(0, paren);
        std::string args = spec.substr(paren + 1, spec.size() - paren - 2);
        std::istringstream ss(args);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error("expected key=value in " + spec);
            std::string key = kv.substr(0, eq);
            int value = std::stoi(kv.substr(eq + 1));
            if (key == "r")
                params.r = value;
            else if (key == "s")
                params.s = value;
            else
                throw Error("unknown parameter " + key);
        }
    }
    static const std::set<std::string> tau_e_names{"phi_DG", "phi_Graph", "phi_c", "phi_pe"};
    static const std::set<std::string> tau_0_names{"phi0", "phi1", "phi1_star", "phi1_tau"};
    if (!tau_e_names.count(name) && !tau_0_names.count(name)) return std::nullopt;
    Vocabulary vocab = vocab_opt ? *vocab_opt : (tau_e_names.count(name) ? tau_E() : tau_0());
    if (name == "phi1_tau" || (name == "phi1_star" && vocab_opt)) params.vocab = vocab;
    return SentenceSpec{builtin_formula(name, params), vocab};
}

SentenceSpec resolve_sentence(const std::string& spec, const std::optional<Vocabulary>& vocab_opt) {
    if (auto builtin = resolve_builtin(spec, vocab_opt)) return *builtin;
    if (!vocab_opt) throw Error("--vocab is required for formula files");
    return SentenceSpec{load_formula(spec, *vocab_opt), *vocab_opt};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

void emit_report(const ExperimentReport& report, const std::string& report_path, std::ostream& out) {
    out << report.to_text();
    if (!report_path.empty()) write_text(report_path, report.to_json() + "\n");
}

Interpretation resolve_interp(const std::string& spec, const std::optional<Vocabulary>& vocab_opt) {
    if (spec.empty() || spec == "tau0") return builtin_interp_tau0();
    if (spec == "pairs") {
        if (!vocab_opt) throw Error("--interp pairs requires --vocab");
        return builtin_interp_pairs(*vocab_opt);
    }
    return load_interpretation(spec);
}

int command_eval(const Common& common, const std::string& structure_path,
                 const std::string& sentence, std::ostream& out) {
    NamedStructure named = load_structure(structure_path);
    auto spec = resolve_sentence(sentence, common.vocabulary().has_value()
                                               ? common.vocabulary()
                                               : std::optional<Vocabulary>(named.structure.vocab()));
    Budget budget = common.budget();
    bool result = models(named.structure, *spec.formula, &budget);
    out << (result ? "true" : "false") << "\n";
    return result ? kExitTrue : kExitFalse;
}

int command_fk(const Common& common, const std::string& sentence, int k, const std::string& out_path,
               std::ostream& out) {
    auto spec = resolve_sentence(sentence, common.vocabulary());
    Budget budget = common.budget();
    ForbiddenSet f = compute_Fk(*spec.formula, spec.vocab, k, &budget);
    out << "F_" << k << ": " << f.members.size() << " structure(s)\n";
    if (!out_path.empty()) {
        save_forbidden(out_path, f);
    } else {
        for (std::size_t i = 0; i < f.members.size(); ++i)
            write_structure(out, "F" + std::to_string(i + 1), f.members[i], "-");
    }
    return kExitTrue;
}

int command_f2u(const std::string& in_path, const std::string& out_path, std::ostream& out) {
    ForbiddenSet f = load_forbidden(in_path);
    auto mu = forbidden_to_universal(f);
    std::string text = render_formula(*mu);
    out << text << "\n";
    if (!out_path.empty()) write_text(out_path, text + "\n");
    return kExitTrue;
}

int command_u2f(const Common& common, const std::string& sentence, int k,
                const std::string& out_path, std::ostream& out) {
    return command_fk(common, sentence, k, out_path, out);
}

int command_univeq(const Common& common, const std::string& a, const std::string& b,
                   std::ostream& out) {
    auto vocab_opt = common.vocabulary();
    if (!vocab_opt) vocab_opt = tau_E();  // the common case for univeq a.fo b.fo
    auto fa = resolve_sentence(a, vocab_opt);
    auto fb = resolve_sentence(b, vocab_opt);
    Budget budget = common.budget();
    bool eq = universal_equivalent(*fa.formula, *fb.formula, fa.vocab, &budget);
    out << (eq ? "equivalent" : "not equivalent") << "\n";
    return eq ? kExitTrue : kExitFalse;
}

int command_enumerate(const Common& common, int max_size, const std::string& sentence,
                      bool count_only, std::ostream& out) {
    auto vocab_opt = common.vocabulary();
    if (!vocab_opt) throw Error("enumerate requires --vocab");
    Budget budget = common.budget();
    FormulaPtr filter;
    if (!sentence.empty()) filter = resolve_sentence(sentence, vocab_opt).formula;
    long count = 0;
    for_each_structure(
        *vocab_opt, max_size,
        [&](const FinStructure& s) { return !filter || models(s, *filter, &budget); },
        [&](const FinStructure& s) {
            ++count;
            if (!count_only) write_structure(out, "A" + std::to_string(count), s, "-");
            return true;
        });
    out << count << " structure(s)\n";
    return kExitTrue;
}

int command_gadget_encode(const Common& common, const std::string& in_path,
                          const std::string& out_path, const std::string& roles_path,
                          std::ostream& out) {
    NamedStructure named = load_structure(in_path);
    Budget budget = common.budget();
    GadgetGraph gg = encode(named.structure, nullptr, &budget);
    out << "graph with " << gg.graph.size() << " vertices\n";
    if (!out_path.empty())
        save_structure(out_path, named.name + "_graph", gg.graph.structure());
    if (!roles_path.empty()) {
        std::ofstream rout(roles_path);
        if (!rout) throw IoError("cannot write " + roles_path);
        write_roles(rout, gg);
    }
    return kExitTrue;
}

int command_gadget_decode(const Common& common, const std::string& in_path,
                          const std::string& out_path, std::ostream& out) {
    NamedStructure named = load_structure(in_path);
    Graph g(named.structure);
    Budget budget = common.budget();
    std::optional<FinStructure> decoded;
    if (auto vocab_opt = common.vocabulary())
        decoded = decode_pairs(g, *vocab_opt, &budget);
    else
        decoded = decode(g, &budget);
    if (!decoded) {
        out << "empty\n";
        return kExitFalse;
    }
    write_structure(out, named.name + "_decoded", *decoded,
                    decoded->vocab() == tau_0() ? "tau0" : "-");
    if (!out_path.empty()) save_structure(out_path, named.name + "_decoded", *decoded);
    return kExitTrue;
}

int command_gadget_taxonomy(const Common& common, const std::string& in_path, int max_len,
                            std::ostream& out) {
    NamedStructure named = load_structure(in_path);
    Budget budget = common.budget();
    GadgetGraph gg = encode(named.structure, nullptr, &budget);
    CycleTaxonomy tax = cycle_taxonomy(gg, max_len, &budget);
    out << "chordless cycles up to length " << max_len << ":\n";
    for (const auto& [category, by_len] : tax.counts)
        for (const auto& [len, count] : by_len)
            out << "  " << category << " length " << len << ": " << count << "\n";
    return kExitTrue;
}

int command_interp_translate(const Common& common, const std::string& sentence,
                             const std::string& interp_spec, const std::string& out_path,
                             std::ostream& out) {
    Interpretation interp = resolve_interp(interp_spec, common.vocabulary());
    auto spec = resolve_sentence(sentence, interp.source);
    auto translated = translate(*spec.formula, interp);
    std::string text = render_formula(*translated);
    out << text << "\n";
    if (!out_path.empty()) write_text(out_path, text + "\n");
    return kExitTrue;
}

int command_interp_apply(const Common& common, const std::string& in_path,
                         const std::string& interp_spec, bool fast, const std::string& out_path,
                         std::ostream& out) {
    Interpretation interp = resolve_interp(interp_spec, common.vocabulary());
    NamedStructure named = load_structure(in_path);
    Graph g(named.structure);
    Budget budget = common.budget();
    auto result = fast ? fast_apply(g, interp, &budget) : apply_interp(g, interp, &budget);
    if (!result) {
        out << "empty\n";
        return kExitFalse;
    }
    write_structure(out, named.name + "_interp", result->structure, "-");
    if (!out_path.empty()) save_structure(out_path, named.name + "_interp", result->structure);
    return kExitTrue;
}

int command_tm_run(const std::string& machine_path, const std::string& word, int max_steps,
                   std::ostream& out) {
    TuringMachine m = load_machine(machine_path);
    RunTrace trace = run(m, word, max_steps);
    for (std::size_t j = 0; j < trace.configs.size(); ++j) {
        const Config& c = trace.configs[j];
        out << "step " << j << ": state " << c.state << " head " << c.head << " tape ";
        for (int b : c.tape) out << b;
        out << "\n";
    }
    if (trace.halted)
        out << "halted in " << trace.steps << " step(s)\n";
    else
        out << "not halted after " << trace.steps << " step(s)\n";
    return trace.halted ? kExitTrue : kExitFalse;
}

int command_tm_compile(const std::string& machine_path, const std::string& word,
                       const std::string& family, const std::string& out_path, std::ostream& out) {
    TuringMachine m = load_machine(machine_path);
    auto f = compile_sentence(m, word, family_from_name(family));
    std::string text = render_formula(*f);
    out << text << "\n";
    if (!out_path.empty()) write_text(out_path, text + "\n");
    return kExitTrue;
}

int command_tm_canonical(const std::string& machine_path, const std::string& word,
                         const std::string& out_path, std::ostream& out) {
    TuringMachine m = load_machine(machine_path);
    FinStructure a = canonical_model(m, word);
    out << "canonical model with " << a.size() << " element(s)\n";
    if (!out_path.empty()) save_structure(out_path, m.name + "_" + std::string(word), a);
    return kExitTrue;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite-model-theory workbench"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--vocab", common.vocab, "vocabulary: tauE, tau0 or a file");
    app.add_option("--eval-budget", common.eval_budget, "node-expansion budget");

    std::string sentence, structure_path, in_path, out_path, roles_path, machine_path, word,
        family, interp_spec, report_path, univeq_a, univeq_b, experiment_name;
    int k = 1, n = 2, max_size = 5, max_steps = 10000, max_len = 16;
    bool fast = false, count_only = false;

    auto* c_eval = app.add_subcommand("eval", "evaluate a sentence on a structure");
    c_eval->add_option("--structure,--in", structure_path)->required();
    c_eval->add_option("--sentence", sentence)->required();

    auto* c_fk = app.add_subcommand("fk", "compute the forbidden structures F_k of a sentence");
    c_fk->add_option("--sentence", sentence)->required();
    c_fk->add_option("--k", k)->required();
    c_fk->add_option("--out", out_path);

    auto* c_f2u = app.add_subcommand("f2u", "forbidden set to universal sentence");
    c_f2u->add_option("--in", in_path)->required();
    c_f2u->add_option("--out", out_path);

    auto* c_u2f = app.add_subcommand("u2f", "universal sentence to forbidden set");
    c_u2f->add_option("--sentence", sentence)->required();
    c_u2f->add_option("--k", k)->required();
    c_u2f->add_option("--out", out_path);

    auto* c_univeq = app.add_subcommand("univeq", "decide equivalence of universal sentences");
    c_univeq->add_option("a", univeq_a)->required();
    c_univeq->add_option("b", univeq_b)->required();

    auto* c_enum = app.add_subcommand("enumerate", "enumerate structures up to a size");
    c_enum->add_option("--max-size", max_size);
    c_enum->add_option("--sentence", sentence);
    c_enum->add_flag("--count-only", count_only);

    auto* c_gadget = app.add_subcommand("gadget", "graph encoding of orderings");
    auto* c_encode = c_gadget->add_subcommand("encode");
    c_encode->add_option("--in,--structure", in_path)->required();
    c_encode->add_option("--out", out_path);
    c_encode->add_option("--roles", roles_path);
    auto* c_decode = c_gadget->add_subcommand("decode");
    c_decode->add_option("--in,--structure", in_path)->required();
    c_decode->add_option("--out", out_path);
    auto* c_tax = c_gadget->add_subcommand("taxonomy");
    c_tax->add_option("--in,--structure", in_path)->required();
    c_tax->add_option("--max-len", max_len);

    auto* c_interp = app.add_subcommand("interp", "width-2 interpretations");
    auto* c_translate = c_interp->add_subcommand("translate");
    c_translate->add_option("--sentence", sentence)->required();
    c_translate->add_option("--interp", interp_spec);
    c_translate->add_option("--out", out_path);
    auto* c_apply = c_interp->add_subcommand("apply");
    c_apply->add_option("--in,--structure", in_path)->required();
    c_apply->add_option("--interp", interp_spec);
    c_apply->add_flag("--fast", fast);
    c_apply->add_option("--out", out_path);

    auto* c_tm = app.add_subcommand("tm", "Turing machines and their sentences");
    auto* c_run = c_tm->add_subcommand("run");
    c_run->add_option("--machine", machine_path)->required();
    c_run->add_option("--word", word);
    c_run->add_option("--max-steps", max_steps);
    auto* c_compile = c_tm->add_subcommand("compile");
    c_compile->add_option("--machine", machine_path)->required();
    c_compile->add_option("--word", word);
    c_compile->add_option("--family", family)->required();
    c_compile->add_option("--out", out_path);
    auto* c_canonical = c_tm->add_subcommand("canonical");
    c_canonical->add_option("--machine", machine_path)->required();
    c_canonical->add_option("--word", word);
    c_canonical->add_option("--out", out_path);

    auto* c_exp = app.add_subcommand("experiment", "desk-scale experiment reports");
    c_exp->add_option("name", experiment_name, "tait-structure | tait-graph | gurevich")->required();
    c_exp->add_option("--n", n);
    c_exp->add_option("--k", k);
    c_exp->add_option("--machine", machine_path);
    c_exp->add_option("--word", word);
    c_exp->add_option("--report", report_path);

    // global flags are accepted after subcommand names too
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands([](const CLI::App*) { return true; })) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        std::vector<const char*> cargv;
        cargv.push_back("finmod");
        for (const auto& a : args) cargv.push_back(a.c_str());
        app.parse(static_cast<int>(cargv.size()), const_cast<char**>(cargv.data()));

        if (*c_eval) return command_eval(common, structure_path, sentence, out);
        if (*c_fk) return command_fk(common, sentence, k, out_path, out);
        if (*c_f2u) return command_f2u(in_path, out_path, out);
        if (*c_u2f) return command_u2f(common, sentence, k, out_path, out);
        if (*c_univeq) return command_univeq(common, univeq_a, univeq_b, out);
        if (*c_enum) return command_enumerate(common, max_size, sentence, count_only, out);
        if (*c_encode) return command_gadget_encode(common, in_path, out_path, roles_path, out);
        if (*c_decode) return command_gadget_decode(common, in_path, out_path, out);
        if (*c_tax) return command_gadget_taxonomy(common, in_path, max_len, out);
        if (*c_translate) return command_interp_translate(common, sentence, interp_spec, out_path, out);
        if (*c_apply) return command_interp_apply(common, in_path, interp_spec, fast, out_path, out);
        if (*c_run) return command_tm_run(machine_path, word, max_steps, out);
        if (*c_compile) return command_tm_compile(machine_path, word, family, out_path, out);
        if (*c_canonical) return command_tm_canonical(machine_path, word, out_path, out);
        if (*c_exp) {
            Budget budget = common.budget();
            ExperimentReport report;
            if (experiment_name == "tait-structure") {
                report = experiment_tait_structure(n, &budget);
            } else if (experiment_name == "tait-graph") {
                report = experiment_tait_graph(n, k, &budget);
            } else if (experiment_name == "gurevich") {
                if (machine_path.empty()) throw Error("experiment gurevich requires --machine");
                report = experiment_gurevich_demo(load_machine(machine_path), word, k, &budget);
            } else {
                throw Error("unknown experiment " + experiment_name);
            }
            emit_report(report, report_path, out);
            return report.pass() ? kExitTrue : kExitFalse;
        }
        err << "error: no subcommand selected\n";
        return kExitError;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitTrue;
        }
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const BudgetExceeded& e) {
        err << "error: budget exceeded: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace finmod
