#include "finmod/interp.hpp"

#include <algorithm>

#include "finmod/analysis.hpp"
#include "finmod/builtins.hpp"

namespace finmod {

namespace {

std::set<std::string> allowed_frees(int arity) {
    if (arity == 1) return {"x1", "x2"};
    return {"x1", "x2", "y1", "y2"};
}

}  // namespace

void Interpretation::validate() const {
    if (!univ) throw Error("interpretation lacks a universe formula");
    Vocabulary graph_vocab = tau_E();
    check_against_vocabulary(*univ, graph_vocab);
    for (const auto& v : free_variables(*univ))
        if (v != "x1" && v != "x2") throw Error("universe formula may only use x1, x2 free");
    for (const auto& sym : source.symbols()) {
        if (sym.arity > 2) throw Error("width-2 interpretations support arity <= 2 only");
        auto it = defs.find(sym.name);
        if (it == defs.end()) throw Error("no defining formula for " + sym.name);
        check_against_vocabulary(*it->second, graph_vocab);
        auto allowed = allowed_frees(sym.arity);
        for (const auto& v : free_variables(*it->second))
            if (!allowed.count(v))
                throw Error("defining formula for " + sym.name + " uses unexpected free variable " + v);
    }
}

bool check_strongly_existential(const Interpretation& i) {
    if (!i.source.contains("<")) throw Error("source vocabulary does not contain <");
    auto existential = [](const Formula& f) {
        auto c = classify(f);
        return c == SyntacticClass::Existential || c == SyntacticClass::QuantifierFree;
    };
    if (!existential(*i.univ)) return false;
    for (const auto& [name, def] : i.defs) {
        if (!existential(*def)) return false;
        if (name == "<" && classify(*def) != SyntacticClass::QuantifierFree) return false;
    }
    return true;
}

namespace {

struct Translator {
    const Interpretation& interp;
    std::set<std::string> taken;
    std::map<std::string, std::pair<std::string, std::string>> doubled_of;

    // Variables double; names stay deterministic and capture-free.
    const std::pair<std::string, std::string>& doubled(const std::string& v) {
        auto it = doubled_of.find(v);
        if (it != doubled_of.end()) return it->second;
        std::string a = v + "_1", b = v + "_2";
        while (taken.count(a) || taken.count(b)) {
            a += "'";
            b += "'";
        }
        taken.insert(a);
        taken.insert(b);
        return doubled_of.emplace(v, std::make_pair(a, b)).first->second;
    }

    FormulaPtr univ_at(const std::pair<std::string, std::string>& xs) const {
        return rename_free(interp.univ, {{"x1", xs.first}, {"x2", xs.second}});
    }

    FormulaPtr def_at(const std::string& rel, const std::vector<std::string>& args) {
        const FormulaPtr& def = interp.defs.at(rel);
        std::map<std::string, std::string> repl;
        auto x = doubled(args[0]);
        repl["x1"] = x.first;
        repl["x2"] = x.second;
        if (args.size() == 2) {
            auto y = doubled(args[1]);
            repl["y1"] = y.first;
            repl["y2"] = y.second;
        }
        return rename_free(def, repl);
    }

    FormulaPtr go(const Formula& f) {
        switch (f.kind) {
            case Kind::Equal: {
                auto a = doubled(f.args[0]);
                auto b = doubled(f.args[1]);
                return f_and(f_equal(a.first, b.first), f_equal(a.second, b.second));
            }
            case Kind::Atom: {
                if (!interp.defs.count(f.rel)) throw Error("symbol not defined by the interpretation: " + f.rel);
                return def_at(f.rel, f.args);
            }
            case Kind::Not:
                return f_not(go(*f.left));
            case Kind::And:
                return f_and(go(*f.left), go(*f.right));
            case Kind::Or:
                return f_or(go(*f.left), go(*f.right));
            case Kind::Implies:
                return f_implies(go(*f.left), go(*f.right));
            case Kind::Forall: {
                auto saved = save_binding(f.var);
                auto xs = doubled(f.var);
                auto body = f_implies(univ_at(xs), go(*f.left));
                auto out = f_forall(xs.first, f_forall(xs.second, body));
                restore_binding(f.var, saved);
                return out;
            }
            case Kind::Exists: {
                auto saved = save_binding(f.var);
                auto xs = doubled(f.var);
                auto body = f_and(univ_at(xs), go(*f.left));
                auto out = f_exists(xs.first, f_exists(xs.second, body));
                restore_binding(f.var, saved);
                return out;
            }
        }
        throw Error("unreachable");
    }

    // shadowed binders get their own doubled pair
    std::optional<std::pair<std::string, std::string>> save_binding(const std::string& v) {
        auto it = doubled_of.find(v);
        if (it == doubled_of.end()) return std::nullopt;
        auto saved = it->second;
        doubled_of.erase(it);
        return saved;
    }

    void restore_binding(const std::string& v, const std::optional<std::pair<std::string, std::string>>& saved) {
        doubled_of.erase(v);
        if (saved) doubled_of.emplace(v, *saved);
    }
};

}  // namespace

FormulaPtr translate(const Formula& f, const Interpretation& i) {
    i.validate();
    check_against_vocabulary(f, i.source);
    Translator tr{i, {}, {}};
    tr.taken = all_variable_names(f);
    auto add_names = [&](const Formula& g) {
        auto names = all_variable_names(g);
        tr.taken.insert(names.begin(), names.end());
    };
    add_names(*i.univ);
    for (const auto& [name, def] : i.defs) add_names(*def);
    return tr.go(f);
}

std::optional<InterpResult> apply_interp(const Graph& g, const Interpretation& i, Budget* budget) {
    i.validate();
    const FinStructure& gs = g.structure();
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= g.size(); ++a)
        for (int b = 1; b <= g.size(); ++b)
            if (satisfies(gs, *i.univ, {{"x1", a}, {"x2", b}}, budget)) pairs.emplace_back(a, b);
    if (pairs.empty()) return std::nullopt;

    FinStructure out(i.source, static_cast<int>(pairs.size()));
    for (const auto& sym : i.source.symbols()) {
        const FormulaPtr& def = i.defs.at(sym.name);
        if (sym.arity == 1) {
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (satisfies(gs, *def, {{"x1", pairs[p].first}, {"x2", pairs[p].second}}, budget))
                    out.add_tuple(sym.name, {static_cast<int>(p) + 1});
        } else {
            for (std::size_t p = 0; p < pairs.size(); ++p)
                for (std::size_t q = 0; q < pairs.size(); ++q)
                    if (satisfies(gs, *def,
                                  {{"x1", pairs[p].first},
                                   {"x2", pairs[p].second},
                                   {"y1", pairs[q].first},
                                   {"y2", pairs[q].second}},
                                  budget))
                        out.add_tuple(sym.name, {static_cast<int>(p) + 1, static_cast<int>(q) + 1});
        }
    }
    return InterpResult{std::move(out), std::move(pairs)};
}

namespace {

// vertices lying on some cycle of the given length
std::vector<bool> on_cycle_of(const Graph& g, int len, Budget* budget) {
    std::vector<bool> on(g.size() + 1, false);
    for (int v = 1; v <= g.size(); ++v) {
        if (budget) budget->charge();
        on[v] = find_cycle_through(g, v, len).has_value();
    }
    return on;
}

}  // namespace

std::optional<InterpResult> fast_apply(const Graph& g, const Interpretation& i, Budget* budget) {
    if (!i.builtin_plan) throw Error("fast_apply requires a builtin interpretation");
    const GadgetPlan& plan = *i.builtin_plan;
    // on-cycle tables per needed length; the ear tables double as exact
    // pre-filters for the first ear vertex of the path searches
    std::map<int, std::vector<bool>> on_cycle;
    auto table = [&](int len) -> const std::vector<bool>& {
        auto it = on_cycle.find(len);
        if (it == on_cycle.end()) it = on_cycle.emplace(len, on_cycle_of(g, len, budget)).first;
        return it->second;
    };

    const auto& on_basic = table(plan.basic_cycle);
    const auto& on_companion = table(plan.companion_cycle);
    const auto& link_gate = table(plan.link_ear);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= g.size(); ++a) {
        if (!on_basic[a]) continue;
        for (int b = 1; b <= g.size(); ++b) {
            if (!on_companion[b]) continue;
            if (budget) budget->charge();
            if (find_path_with_ear(g, a, b, plan.path_len, plan.link_ear, &link_gate))
                pairs.emplace_back(a, b);
        }
    }
    if (pairs.empty()) return std::nullopt;

    FinStructure out(i.source, static_cast<int>(pairs.size()));
    for (const auto& sym : i.source.symbols()) {
        if (sym.arity == 1) {
            const auto& on = table(plan.unary_cycle.at(sym.name));
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (on[pairs[p].first]) out.add_tuple(sym.name, {static_cast<int>(p) + 1});
        } else if (sym.name == "<") {
            for (std::size_t p = 0; p < pairs.size(); ++p)
                for (std::size_t q = 0; q < pairs.size(); ++q)
                    if (g.adjacent(pairs[p].second, pairs[q].first))
                        out.add_tuple("<", {static_cast<int>(p) + 1, static_cast<int>(q) + 1});
        } else {
            int ear = plan.binary_ear.at(sym.name);
            const auto& gate = table(ear);
            for (std::size_t p = 0; p < pairs.size(); ++p)
                for (std::size_t q = 0; q < pairs.size(); ++q) {
                    if (budget) budget->charge();
                    bool holds =
                        find_path_with_ear(g, pairs[p].first, pairs[q].first, plan.path_len, ear,
                                           &gate)
                            .has_value();
                    if (!holds && plan.diagonal_binary && p == q)
                        holds = find_path_with_ear(g, pairs[p].first, pairs[p].second,
                                                   plan.path_len, ear, &gate)
                                    .has_value();
                    if (holds)
                        out.add_tuple(sym.name, {static_cast<int>(p) + 1, static_cast<int>(q) + 1});
                }
        }
    }
    return InterpResult{std::move(out), std::move(pairs)};
}

namespace {

std::vector<std::string> numbered(const std::string& base, int from, int to) {
    std::vector<std::string> vs;
    for (int i = from; i <= to; ++i) vs.push_back(base + std::to_string(i));
    return vs;
}

FormulaPtr exists_cycle(const std::string& x, const std::string& base, int len) {
    auto vars = numbered(base, 1, len);
    return f_exists_many(vars, cycle_formula(x, vars));
}

FormulaPtr exists_path_ear(const std::string& x, const std::string& y, int path_len, int ear_len) {
    auto zs = numbered("z", 0, path_len);
    auto ws = numbered("w", 1, ear_len);
    std::vector<std::string> all = zs;
    all.insert(all.end(), ws.begin(), ws.end());
    return f_exists_many(all, path_ear_formula(x, y, zs, ws));
}

Interpretation build_interp(const Vocabulary& tau, GadgetPlan plan) {
    plan.validate();
    Interpretation interp;
    interp.source = tau;

    auto us = numbered("u", 1, plan.basic_cycle);
    auto vs = numbered("v", 1, plan.companion_cycle);
    auto zs = numbered("z", 0, plan.path_len);
    auto ws = numbered("w", 1, plan.link_ear);
    auto eta = f_and(f_and(cycle_formula("x1", us), cycle_formula("x2", vs)),
                     path_ear_formula("x1", "x2", zs, ws));
    std::vector<std::string> bound = us;
    bound.insert(bound.end(), vs.begin(), vs.end());
    bound.insert(bound.end(), zs.begin(), zs.end());
    bound.insert(bound.end(), ws.begin(), ws.end());
    interp.univ = f_exists_many(bound, eta);

    for (const auto& sym : tau.symbols()) {
        if (sym.name == "<") {
            interp.defs["<"] = f_atom("E", {"x2", "y1"});
        } else if (sym.arity == 1) {
            interp.defs[sym.name] = exists_cycle("x1", "c", plan.unary_cycle.at(sym.name));
        } else {
            auto def = exists_path_ear("x1", "y1", plan.path_len, plan.binary_ear.at(sym.name));
            if (plan.diagonal_binary) {
                // reflexive facts are drawn towards the companion
                auto same = f_and(f_equal("x1", "y1"), f_equal("x2", "y2"));
                auto to_companion =
                    exists_path_ear("x1", "x2", plan.path_len, plan.binary_ear.at(sym.name));
                def = f_or(def, f_and(same, to_companion));
            }
            interp.defs[sym.name] = def;
        }
    }
    interp.builtin_plan = std::move(plan);
    interp.validate();
    return interp;
}

}  // namespace

Interpretation builtin_interp_tau0() { return build_interp(tau_0(), default_plan(tau_0())); }

Interpretation builtin_interp_pairs(const Vocabulary& tau) {
    GadgetPlan plan = default_plan(tau);
    plan.diagonal_binary = true;
    return build_interp(tau, std::move(plan));
}

Ratio measure_translation_constant(const Interpretation& i, const std::vector<FormulaPtr>& corpus) {
    if (corpus.empty()) throw Error("empty corpus");
    Ratio best{0, 1};
    for (const auto& f : corpus) {
        Ratio r{formula_size(*translate(*f, i)), formula_size(*f)};
        if (best < r) best = r;
    }
    return best;
}

}  // namespace finmod
