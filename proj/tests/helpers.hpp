#ifndef FINMOD_TESTS_HELPERS_HPP
#define FINMOD_TESTS_HELPERS_HPP

#include <random>

#include "finmod/builtins.hpp"
#include "finmod/formula.hpp"
#include "finmod/structure.hpp"
#include "finmod/tm.hpp"

namespace finmod::testing {

// halts in one step on "0"
inline TuringMachine halt1_machine() {
    TuringMachine m;
    m.name = "halt1";
    m.states = {"q0", "qh"};
    m.start = "q0";
    m.halt = "qh";
    m.instructions = {{"q0", 0, "qh", 1, 0}};
    return m;
}

// halts in two steps on "00"
inline TuringMachine halt2_machine() {
    TuringMachine m;
    m.name = "halt2";
    m.states = {"q0", "q1", "qh"};
    m.start = "q0";
    m.halt = "qh";
    m.instructions = {{"q0", 0, "q1", 1, 1}, {"q1", 0, "qh", 1, 0}};
    return m;
}

// Reference evaluator: plain recursion, quantifiers iterate the whole
// universe. Deliberately independent of the optimized evaluation path.
inline bool naive_eval(const FinStructure& a, const Formula& f,
                       std::map<std::string, int>& env) {
    switch (f.kind) {
        case Kind::Equal:
            return env.at(f.args[0]) == env.at(f.args[1]);
        case Kind::Atom: {
            Tuple t;
            for (const auto& v : f.args) t.push_back(env.at(v));
            return a.has(f.rel, t);
        }
        case Kind::Not:
            return !naive_eval(a, *f.left, env);
        case Kind::And:
            return naive_eval(a, *f.left, env) && naive_eval(a, *f.right, env);
        case Kind::Or:
            return naive_eval(a, *f.left, env) || naive_eval(a, *f.right, env);
        case Kind::Implies:
            return !naive_eval(a, *f.left, env) || naive_eval(a, *f.right, env);
        case Kind::Forall:
        case Kind::Exists: {
            auto saved = env.find(f.var) != env.end() ? std::optional<int>(env[f.var])
                                                      : std::nullopt;
            bool uni = f.kind == Kind::Forall;
            bool result = uni;
            for (int v = 1; v <= a.size(); ++v) {
                env[f.var] = v;
                bool sub = naive_eval(a, *f.left, env);
                if (uni && !sub) {
                    result = false;
                    break;
                }
                if (!uni && sub) {
                    result = true;
                    break;
                }
            }
            if (saved)
                env[f.var] = *saved;
            else
                env.erase(f.var);
            return result;
        }
    }
    return false;
}

inline bool naive_models(const FinStructure& a, const Formula& f) {
    std::map<std::string, int> env;
    return naive_eval(a, f, env);
}

struct FormulaGen {
    std::mt19937 rng;
    Vocabulary vocab;
    std::vector<std::string> names{"x", "y", "z", "u", "v", "w"};

    int pick(int n) { return static_cast<int>(rng() % n); }

    FormulaPtr atom(const std::vector<std::string>& scope) {
        const auto& syms = vocab.symbols();
        int choice = pick(static_cast<int>(syms.size()) + 1);
        if (choice == static_cast<int>(syms.size()))
            return f_equal(scope[pick(scope.size())], scope[pick(scope.size())]);
        const auto& sym = syms[choice];
        std::vector<std::string> args;
        for (int i = 0; i < sym.arity; ++i) args.push_back(scope[pick(scope.size())]);
        return f_atom(sym.name, args);
    }

    FormulaPtr gen(int depth, std::vector<std::string> scope) {
        if (scope.empty() || (depth > 0 && pick(5) == 0)) {
            std::string v = names[pick(names.size())];
            auto inner = scope;
            inner.push_back(v);
            auto body = gen(depth - 1, inner);
            return pick(2) ? f_forall(v, body) : f_exists(v, body);
        }
        if (depth <= 0) return atom(scope);
        switch (pick(6)) {
            case 0: return atom(scope);
            case 1: return f_not(gen(depth - 1, scope));
            case 2: return f_and(gen(depth - 1, scope), gen(depth - 1, scope));
            case 3: return f_or(gen(depth - 1, scope), gen(depth - 1, scope));
            case 4: return f_implies(gen(depth - 1, scope), gen(depth - 1, scope));
            default: {
                std::string v = names[pick(names.size())];
                auto inner = scope;
                inner.push_back(v);
                auto body = gen(depth - 1, inner);
                return pick(2) ? f_forall(v, body) : f_exists(v, body);
            }
        }
    }

    FormulaPtr sentence(int depth) { return gen(depth, {}); }

    FinStructure structure(int max_size) {
        int n = 1 + pick(max_size);
        FinStructure s(vocab, n);
        for (const auto& sym : vocab.symbols())
            for (const auto& t : all_tuples(n, sym.arity))
                if (pick(2)) s.add_tuple(sym.name, t);
        return s;
    }
};

// Path 1..7 from a = 1 to b = 7 with the 4-ear 8,9,10,11 attached at 6.
inline Graph figure_graph() {
    FinStructure s(tau_E(), 11);
    auto edge = [&](int u, int v) {
        s.add_tuple("E", {u, v});
        s.add_tuple("E", {v, u});
    };
    for (int i = 1; i < 7; ++i) edge(i, i + 1);
    edge(8, 9);
    edge(9, 10);
    edge(10, 11);
    edge(11, 8);
    edge(6, 8);
    return Graph(std::move(s));
}

inline Graph cycle_graph(int n) {
    FinStructure s(tau_E(), n);
    for (int i = 1; i <= n; ++i) {
        int j = i % n + 1;
        s.add_tuple("E", {i, j});
        s.add_tuple("E", {j, i});
    }
    return Graph(std::move(s));
}

inline FinStructure h0() {
    FinStructure s(tau_E(), 1);
    s.add_tuple("E", {1, 1});
    return s;
}

inline FinStructure h1() {
    FinStructure s(tau_E(), 2);
    s.add_tuple("E", {1, 2});
    return s;
}

}  // namespace finmod::testing

#endif
