#include "finmod/tm.hpp"

#include <algorithm>

#include "finmod/builtins.hpp"
#include "finmod/interp.hpp"

namespace finmod {

void TuringMachine::validate() const {
    if (start == halt) throw Error("start and halt states must differ");
    auto known = [&](const std::string& q) {
        return std::find(states.begin(), states.end(), q) != states.end();
    };
    if (!known(start) || !known(halt)) throw Error("start/halt state not declared");
    std::set<std::string> names(states.begin(), states.end());
    if (names.size() != states.size()) throw Error("duplicate state name");
    std::set<std::pair<std::string, int>> keys;
    for (const auto& in : instructions) {
        if (!known(in.from_state) || !known(in.to_state)) throw Error("instruction uses unknown state");
        if (in.read < 0 || in.read > 1 || in.write < 0 || in.write > 1)
            throw Error("tape symbols must be 0 or 1");
        if (in.dir < -1 || in.dir > 1) throw Error("direction must be -1, 0 or 1");
        if (in.from_state == halt) throw Error("no instructions allowed in the halt state");
        if (!keys.insert({in.from_state, in.read}).second)
            throw Error("machine not deterministic at (" + in.from_state + ", " +
                        std::to_string(in.read) + ")");
    }
}

int RunTrace::cell(int i, int j) const {
    const auto& tape = configs.at(j).tape;
    return i < static_cast<int>(tape.size()) ? tape[i] : 0;
}

RunTrace run(const TuringMachine& m, std::string_view word, int max_steps) {
    m.validate();
    if (max_steps < 0) throw Error("max_steps must be nonnegative");
    RunTrace trace;
    trace.word = std::string(word);
    Config cfg;
    cfg.state = m.start;
    for (char c : word) {
        if (c != '0' && c != '1') throw Error("word must be over {0,1}");
        cfg.tape.push_back(c - '0');
    }
    trace.configs.push_back(cfg);
    for (int step = 0; step < max_steps; ++step) {
        if (cfg.state == m.halt) break;
        int read = cfg.head < static_cast<int>(cfg.tape.size()) ? cfg.tape[cfg.head] : 0;
        const Instruction* instr = nullptr;
        for (const auto& in : m.instructions)
            if (in.from_state == cfg.state && in.read == read) {
                instr = &in;
                break;
            }
        if (!instr)
            throw Error("machine stuck: no instruction for (" + cfg.state + ", " +
                        std::to_string(read) + ")");
        while (cfg.head >= static_cast<int>(cfg.tape.size())) cfg.tape.push_back(0);
        cfg.tape[cfg.head] = instr->write;
        cfg.head += instr->dir;
        if (cfg.head < 0) throw Error("head moved left of cell 0");
        cfg.state = instr->to_state;
        trace.configs.push_back(cfg);
        trace.steps = step + 1;
        if (cfg.state == m.halt) {
            trace.halted = true;
            break;
        }
    }
    if (!trace.configs.empty() && trace.configs.back().state == m.halt) trace.halted = true;
    if (trace.configs.size() == 1 && m.start == m.halt) trace.halted = true;
    return trace;
}

Vocabulary machine_vocabulary(const TuringMachine& m) {
    std::vector<std::tuple<std::string, std::string, int>> added;
    added.emplace_back("C0", "C0_comp", 2);
    for (const auto& q : m.states) added.emplace_back("H_" + q, "H_" + q + "_comp", 2);
    return tau_pairs(added);
}

namespace {

std::string h_sym(const std::string& q, bool comp = false) {
    return "H_" + q + (comp ? "_comp" : "");
}

// C_a: C0 for a = 0, its complement (written C_1 in places) for a = 1
std::string c_sym(int a) { return a == 0 ? "C0" : "C0_comp"; }

FormulaPtr lt(const std::string& a, const std::string& b) { return f_atom("<", {a, b}); }

// the instruction conjunct of phi_2; the d = -1 and d = 0 cases mirror the
// d = 1 template with the head target adjusted
FormulaPtr instruction_conjunct(const TuringMachine& m, const Instruction& in) {
    const std::string x = "x", xp = "x'", t = "t", tp = "t'", y = "y";
    const std::string head_target = in.dir == 0 ? x : xp;

    std::vector<FormulaPtr> ante;
    ante.push_back(f_atom(h_sym(in.from_state), {x, t}));
    ante.push_back(f_atom(c_sym(in.read), {x, t}));
    if (in.dir == 1) ante.push_back(f_atom("S", {x, xp}));
    if (in.dir == -1) ante.push_back(f_atom("S", {xp, x}));
    ante.push_back(f_atom("S", {t, tp}));

    std::vector<FormulaPtr> cons;
    cons.push_back(f_and(f_not(f_atom(c_sym(1 - in.write), {x, tp})),
                         f_not(f_atom(h_sym(in.to_state, true), {head_target, tp}))));
    // at time t' the head fact is unique: state p sits only at the target
    // cell and no other state sits anywhere
    std::vector<FormulaPtr> no_other_state;
    for (const auto& q : m.states)
        if (q != in.to_state) no_other_state.push_back(f_not(f_atom(h_sym(q), {y, tp})));
    if (!no_other_state.empty()) cons.push_back(f_conj(no_other_state));
    cons.push_back(
        f_implies(f_not(f_equal(y, head_target)), f_not(f_atom(h_sym(in.to_state), {y, tp}))));
    cons.push_back(f_implies(
        f_not(f_equal(y, x)),
        f_and(f_implies(f_atom("C0", {y, t}), f_not(f_atom("C0_comp", {y, tp}))),
              f_implies(f_atom("C0_comp", {y, t}), f_not(f_atom("C0", {y, tp}))))));

    std::vector<std::string> vars{x};
    if (in.dir != 0) vars.push_back(xp);
    vars.push_back(t);
    vars.push_back(tp);
    vars.push_back(y);
    return f_forall_many(vars, f_implies(f_conj(ante), f_conj(cons)));
}

std::vector<FormulaPtr> initial_configuration(const TuringMachine& m, std::string_view word) {
    std::vector<FormulaPtr> out;
    const int len = static_cast<int>(word.size());
    auto xvar = [](int i) { return "x" + std::to_string(i); };

    std::vector<std::string> xs;
    for (int i = 1; i <= len; ++i) xs.push_back(xvar(i));
    std::vector<FormulaPtr> chain;
    if (len > 0) {
        chain.push_back(f_atom("U_min", {xvar(1)}));
        for (int i = 1; i < len; ++i) chain.push_back(f_atom("S", {xvar(i), xvar(i + 1)}));
    }

    if (len > 0) {
        std::vector<FormulaPtr> cells;
        for (int i = 1; i <= len; ++i) {
            bool is_zero = word[i - 1] == '0';
            cells.push_back(f_not(f_atom(is_zero ? "C0_comp" : "C0", {xvar(i), xvar(1)})));
        }
        out.push_back(f_forall_many(xs, f_implies(f_conj(chain), f_conj(cells))));
    }

    if (len > 0) {
        std::vector<FormulaPtr> beyond = chain;
        beyond.push_back(lt(xvar(len), "x"));
        std::vector<std::string> vars = xs;
        vars.push_back("x");
        out.push_back(
            f_forall_many(vars, f_implies(f_conj(beyond), f_not(f_atom("C0_comp", {"x", xvar(1)})))));
    } else {
        // empty word: every cell is 0 at time min
        out.push_back(f_forall(
            xvar(1), f_forall("x", f_implies(f_atom("U_min", {xvar(1)}),
                                             f_not(f_atom("C0_comp", {"x", xvar(1)}))))));
    }

    // the initial head fact is unique as well: the start state only at the
    // cell of U_min and no other state anywhere
    std::vector<FormulaPtr> head;
    head.push_back(f_not(f_atom(h_sym(m.start, true), {"x", "x"})));
    for (const auto& q : m.states)
        if (q != m.start) head.push_back(f_not(f_atom(h_sym(q), {"y", "x"})));
    head.push_back(f_implies(f_not(f_equal("y", "x")), f_not(f_atom(h_sym(m.start), {"y", "x"}))));
    out.push_back(
        f_forall("x", f_forall("y", f_implies(f_atom("U_min", {"x"}), f_conj(head)))));
    return out;
}

FormulaPtr phi_0w(const TuringMachine& m, std::string_view word) {
    std::vector<FormulaPtr> cs;
    cs.push_back(builtin_formula("phi0"));
    Vocabulary vocab = machine_vocabulary(m);
    for (const auto& sym : vocab.symbols()) {
        auto comp = vocab.complement_of(sym.name);
        if (!comp) continue;
        cs.push_back(f_forall(
            "x", f_forall("t", f_or(f_not(f_atom(sym.name, {"x", "t"})),
                                    f_not(f_atom(*comp, {"x", "t"}))))));
    }
    for (const auto& in : m.instructions) cs.push_back(instruction_conjunct(m, in));
    auto init = initial_configuration(m, word);
    cs.insert(cs.end(), init.begin(), init.end());
    return f_conj(cs);
}

FormulaPtr gamma_m(const TuringMachine& m) {
    auto halting = f_and(f_atom("U_max", {"t"}), f_atom(h_sym(m.halt), {"x", "t"}));
    auto none_before =
        f_forall("t'", f_forall("y", f_implies(lt("t'", "t"), f_not(f_atom(h_sym(m.halt), {"y", "t'"})))));
    return f_exists("t", f_exists("x", f_and(halting, none_before)));
}

}  // namespace

SentenceFamily family_from_name(const std::string& name) {
    if (name == "phi0w") return SentenceFamily::Phi0w;
    if (name == "phi1M") return SentenceFamily::Phi1M;
    if (name == "gamma") return SentenceFamily::Gamma;
    if (name == "chi") return SentenceFamily::Chi;
    if (name == "pi") return SentenceFamily::Pi;
    if (name == "alpha") return SentenceFamily::Alpha;
    if (name == "rho") return SentenceFamily::Rho;
    throw Error("unknown sentence family " + name);
}

FormulaPtr compile_sentence(const TuringMachine& m, std::string_view word, SentenceFamily family) {
    m.validate();
    for (char c : word)
        if (c != '0' && c != '1') throw Error("word must be over {0,1}");
    BuiltinParams tau_params;
    tau_params.vocab = machine_vocabulary(m);
    switch (family) {
        case SentenceFamily::Phi0w:
            return phi_0w(m, word);
        case SentenceFamily::Phi1M:
            return builtin_formula("phi1_tau", tau_params);
        case SentenceFamily::Gamma:
            return gamma_m(m);
        case SentenceFamily::Chi:
            return f_and(phi_0w(m, word),
                         f_implies(builtin_formula("phi1_tau", tau_params), f_not(gamma_m(m))));
        case SentenceFamily::Pi:
            return f_and(f_and(phi_0w(m, word), builtin_formula("phi1_tau", tau_params)), gamma_m(m));
        case SentenceFamily::Alpha:
            return f_and(phi_0w(m, word),
                         f_implies(builtin_formula("phi1_tau", tau_params), gamma_m(m)));
        case SentenceFamily::Rho: {
            Interpretation interp = builtin_interp_pairs(machine_vocabulary(m));
            auto chi = compile_sentence(m, word, SentenceFamily::Chi);
            auto no_universe = f_forall("x1", f_forall("x2", f_not(interp.univ)));
            return f_or(no_universe, translate(*chi, interp));
        }
    }
    throw Error("unreachable");
}

FinStructure canonical_model(const TuringMachine& m, std::string_view word, int max_steps) {
    RunTrace trace = run(m, word, max_steps);
    if (!trace.halted) throw Error("machine does not halt within the step budget");
    const int h = trace.steps;
    const int size = h + 1;
    FinStructure a(machine_vocabulary(m), size);
    for (int i = 1; i <= size; ++i)
        for (int j = i + 1; j <= size; ++j) a.add_tuple("<", {i, j});
    a.add_tuple("U_min", {1});
    a.add_tuple("U_max", {size});
    for (int i = 1; i < size; ++i) a.add_tuple("S", {i, i + 1});

    for (int i = 0; i <= h; ++i)
        for (int j = 0; j <= h; ++j) {
            if (trace.cell(i, j) == 0)
                a.add_tuple("C0", {i + 1, j + 1});
            else
                a.add_tuple("C0_comp", {i + 1, j + 1});
            const Config& cfg = trace.configs[j];
            for (const auto& q : m.states) {
                bool holds = cfg.state == q && cfg.head == i;
                a.add_tuple(h_sym(q, !holds), {i + 1, j + 1});
            }
        }
    return a;
}

bool verify_encoding(const FinStructure& a, const TuringMachine& m, std::string_view word, int r) {
    if (r + 1 > a.size()) throw Error("structure too small for r steps");
    if (!a.vocab().contains("<")) throw Error("vocabulary does not contain <");
    // rank elements by the strict total order <
    const int n = a.size();
    std::vector<int> below(n, 0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) {
                if (a.has("<", {i, i})) throw Error("< is not a strict order");
                continue;
            }
            bool ij = a.has("<", {i, j}), ji = a.has("<", {j, i});
            if (ij == ji) throw Error("< is not a linear order");
            if (ji) ++below[i - 1];
        }
    std::vector<int> by_rank(n);
    for (int i = 0; i < n; ++i) by_rank[below[i]] = i + 1;

    RunTrace trace = run(m, word, r);
    if (static_cast<int>(trace.configs.size()) <= r)
        throw Error("machine runs fewer than r steps on this word");

    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= r; ++j) {
            int ai = by_rank[i], aj = by_rank[j];
            bool zero = trace.cell(i, j) == 0;
            if (a.has("C0", {ai, aj}) != zero) return false;
            const Config& cfg = trace.configs[j];
            for (const auto& q : m.states) {
                bool holds = cfg.state == q && cfg.head == i;
                if (a.has(h_sym(q), {ai, aj}) != holds) return false;
            }
        }
    return true;
}

}  // namespace finmod
