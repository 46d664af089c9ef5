#include "finmod/eval.hpp"

#include <algorithm>

namespace finmod {

namespace {

struct Env {
    std::vector<std::pair<std::string, int>> stack;

    explicit Env(const Assignment& asg) {
        for (const auto& [k, v] : asg) stack.emplace_back(k, v);
    }
    int lookup(const std::string& name) const {
        for (auto it = stack.rbegin(); it != stack.rend(); ++it)
            if (it->first == name) return it->second;
        throw Error("unbound free variable " + name);
    }
    void push(const std::string& name, int v) { stack.emplace_back(name, v); }
    void pop() { stack.pop_back(); }
};

// --- backtracking witness search for quantifier blocks over literal matrices ---

struct BlockLiteral {
    bool positive;
    bool is_equal;
    const std::string* rel = nullptr;
    std::vector<int> var_of_arg;    // block-variable index per argument, -1 = constant
    std::vector<int> const_of_arg;  // environment value where var_of_arg is -1
    int unassigned = 0;             // distinct block variables still open
};

struct BlockSolver {
    const FinStructure& a;
    Budget* budget;
    int n = 0;
    std::size_t num_vars = 0;
    std::vector<BlockLiteral> lits;
    std::vector<std::vector<int>> lits_of_var;
    std::vector<int> value;  // 0 = unassigned
    std::size_t num_assigned = 0;

    int arg_value(const BlockLiteral& l, std::size_t i) const {
        int v = l.var_of_arg[i];
        return v >= 0 ? value[v] : l.const_of_arg[i];
    }

    bool literal_holds(const BlockLiteral& l) const {
        if (l.is_equal) return (arg_value(l, 0) == arg_value(l, 1)) == l.positive;
        Tuple t(l.var_of_arg.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = arg_value(l, i);
        return a.has(*l.rel, t) == l.positive;
    }

    // Values of `var` satisfying a positive literal whose only open variable
    // is `var`; sorted ascending.
    std::vector<int> candidates_from(const BlockLiteral& l, int var) const {
        if (l.is_equal) {
            if (l.var_of_arg[0] == var && l.var_of_arg[1] == var) {
                std::vector<int> all(n);
                for (int i = 0; i < n; ++i) all[i] = i + 1;
                return all;  // v = v constrains nothing
            }
            int other = l.var_of_arg[0] == var ? 1 : 0;
            return {arg_value(l, other)};
        }
        const auto& rel = a.relation(*l.rel);
        std::vector<int> out;
        if (l.var_of_arg.size() == 2 && l.var_of_arg[0] != var) {
            int first = arg_value(l, 0);
            for (auto it = rel.lower_bound(Tuple{first}); it != rel.end() && (*it)[0] == first; ++it)
                out.push_back((*it)[1]);
        } else {
            for (const auto& t : rel) {
                bool match = true;
                int v = -1;
                for (std::size_t i = 0; i < t.size() && match; ++i) {
                    if (l.var_of_arg[i] == var) {
                        if (v < 0)
                            v = t[i];
                        else if (v != t[i])
                            match = false;
                    } else if (arg_value(l, i) != t[i]) {
                        match = false;
                    }
                }
                if (match && v > 0) out.push_back(v);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool solve() {
        if (num_assigned == num_vars) return true;
        int best = -1;
        std::optional<std::vector<int>> best_dom;
        std::size_t best_size = SIZE_MAX;
        for (std::size_t v = 0; v < num_vars; ++v) {
            if (value[v]) continue;
            std::optional<std::vector<int>> dom;
            for (int li : lits_of_var[v]) {
                const auto& l = lits[li];
                if (!l.positive || l.unassigned != 1) continue;
                auto cand = candidates_from(l, static_cast<int>(v));
                if (!dom) {
                    dom = std::move(cand);
                } else {
                    std::vector<int> merged;
                    std::set_intersection(dom->begin(), dom->end(), cand.begin(), cand.end(),
                                          std::back_inserter(merged));
                    *dom = std::move(merged);
                }
                if (dom->empty()) break;
            }
            std::size_t sz = dom ? dom->size() : static_cast<std::size_t>(n);
            if (sz < best_size) {
                best_size = sz;
                best = static_cast<int>(v);
                best_dom = std::move(dom);
            }
            if (best_size == 0) return false;
        }
        std::vector<int> domain;
        if (best_dom) {
            domain = std::move(*best_dom);
        } else {
            domain.resize(n);
            for (int i = 0; i < n; ++i) domain[i] = i + 1;
        }
        for (int li : lits_of_var[best]) {
            const auto& l = lits[li];
            if (l.positive || !l.is_equal || l.unassigned != 1) continue;
            int other = l.var_of_arg[0] == best ? 1 : 0;
            if (l.var_of_arg[other] == best) return false;  // v != v
            int bad = arg_value(l, other);
            domain.erase(std::remove(domain.begin(), domain.end(), bad), domain.end());
        }
        for (int cand : domain) {
            if (budget) budget->charge();
            value[best] = cand;
            bool ok = true;
            for (int li : lits_of_var[best]) {
                auto& l = lits[li];
                if (--l.unassigned == 0 && ok && !literal_holds(l)) ok = false;
            }
            if (ok) {
                ++num_assigned;
                if (solve()) return true;
                --num_assigned;
            }
            for (int li : lits_of_var[best]) ++lits[li].unassigned;
            value[best] = 0;
        }
        return false;
    }
};

struct BlockPlan {
    bool literal_matrix = false;
    std::vector<std::string> block;
    FormulaPtr matrix;  // keeps literal pointers alive (NNF copy for forall)
    std::vector<const Formula*> literals;
};

class Evaluator {
public:
    Evaluator(const FinStructure& a, Budget* budget) : a_(a), budget_(budget) {}

    bool eval(const Formula& f, Env& env) {
        if (budget_) budget_->charge();
        switch (f.kind) {
            case Kind::Equal:
                return env.lookup(f.args[0]) == env.lookup(f.args[1]);
            case Kind::Atom: {
                Tuple t;
                t.reserve(f.args.size());
                for (const auto& v : f.args) t.push_back(env.lookup(v));
                return a_.has(f.rel, t);
            }
            case Kind::Not:
                return !eval(*f.left, env);
            case Kind::And:
                return eval(*f.left, env) && eval(*f.right, env);
            case Kind::Or:
                return eval(*f.left, env) || eval(*f.right, env);
            case Kind::Implies:
                return !eval(*f.left, env) || eval(*f.right, env);
            case Kind::Exists:
            case Kind::Forall: {
                bool existential = f.kind == Kind::Exists;
                const BlockPlan& plan = plan_for(f);
                if (plan.literal_matrix) {
                    bool witness = solve_block(plan, env);
                    return existential ? witness : !witness;
                }
                for (int v = 1; v <= a_.size(); ++v) {
                    env.push(f.var, v);
                    bool sub = eval(*f.left, env);
                    env.pop();
                    if (existential && sub) return true;
                    if (!existential && !sub) return false;
                }
                return !existential;
            }
        }
        throw Error("unreachable");
    }

private:
    const BlockPlan& plan_for(const Formula& f) {
        auto it = plans_.find(&f);
        if (it != plans_.end()) return it->second;
        BlockPlan plan;
        const Formula* body = &f;
        while (body->kind == f.kind) {
            plan.block.push_back(body->var);
            body = body->left.get();
        }
        plan.matrix = f.kind == Kind::Exists ? body->shared_from_this()
                                             : to_nnf(f_not(body->shared_from_this()));
        plan.literal_matrix = collect_literals(*plan.matrix, plan.literals);
        if (!plan.literal_matrix) plan.literals.clear();
        return plans_.emplace(&f, std::move(plan)).first->second;
    }

    static bool collect_literals(const Formula& f, std::vector<const Formula*>& out) {
        if (f.kind == Kind::And)
            return collect_literals(*f.left, out) && collect_literals(*f.right, out);
        if (f.is_literal()) {
            out.push_back(&f);
            return true;
        }
        return false;
    }

    bool solve_block(const BlockPlan& plan, Env& env) {
        const std::size_t nvars = plan.block.size();
        std::vector<BlockLiteral> lits;
        std::vector<std::set<int>> vars_of_lit;
        auto var_index = [&](const std::string& name) {
            for (int i = static_cast<int>(nvars) - 1; i >= 0; --i)
                if (plan.block[i] == name) return i;  // innermost binder wins
            return -1;
        };
        for (const Formula* lf : plan.literals) {
            BlockLiteral l;
            l.positive = lf->kind != Kind::Not;
            const Formula& atom = l.positive ? *lf : *lf->left;
            l.is_equal = atom.kind == Kind::Equal;
            if (!l.is_equal) l.rel = &atom.rel;
            std::set<int> distinct;
            for (const auto& name : atom.args) {
                int vi = var_index(name);
                l.var_of_arg.push_back(vi);
                l.const_of_arg.push_back(vi >= 0 ? 0 : env.lookup(name));
                if (vi >= 0) distinct.insert(vi);
            }
            l.unassigned = static_cast<int>(distinct.size());
            if (l.unassigned == 0) {  // constants-only literal decides right away
                BlockSolver probe{a_, budget_, a_.size(), 0, {}, {}, {}, 0};
                if (!probe.literal_holds(l)) return false;
                continue;
            }
            lits.push_back(std::move(l));
            vars_of_lit.push_back(std::move(distinct));
        }

        // variables sharing a literal form independent subproblems; solving
        // them separately avoids re-enumerating one group's witnesses while
        // another group fails
        std::vector<int> root(nvars);
        for (std::size_t v = 0; v < nvars; ++v) root[v] = static_cast<int>(v);
        std::function<int(int)> find = [&](int v) {
            while (root[v] != v) v = root[v] = root[root[v]];
            return v;
        };
        for (const auto& vs : vars_of_lit) {
            int first = find(*vs.begin());
            for (int v : vs) root[find(v)] = first;
        }
        std::map<int, std::vector<std::size_t>> lits_by_comp;
        std::map<int, std::vector<int>> vars_by_comp;
        for (std::size_t li = 0; li < lits.size(); ++li)
            lits_by_comp[find(*vars_of_lit[li].begin())].push_back(li);
        for (std::size_t v = 0; v < nvars; ++v) vars_by_comp[find(static_cast<int>(v))].push_back(static_cast<int>(v));

        for (const auto& [comp, lit_ids] : lits_by_comp) {
            const auto& comp_vars = vars_by_comp.at(comp);
            std::map<int, int> remap;
            for (std::size_t i = 0; i < comp_vars.size(); ++i) remap[comp_vars[i]] = static_cast<int>(i);

            // pigeonhole: a clique of pairwise-distinct variables larger
            // than the universe is unsatisfiable
            {
                std::set<std::pair<int, int>> distinct_edges;
                for (std::size_t li : lit_ids) {
                    const auto& l = lits[li];
                    if (l.positive || !l.is_equal || vars_of_lit[li].size() != 2) continue;
                    auto it = vars_of_lit[li].begin();
                    int u = remap.at(*it), w = remap.at(*std::next(it));
                    distinct_edges.insert({std::min(u, w), std::max(u, w)});
                }
                std::vector<int> clique;
                for (std::size_t v = 0; v < comp_vars.size(); ++v) {
                    bool all = true;
                    for (int c : clique)
                        if (!distinct_edges.count({std::min<int>(c, v), std::max<int>(c, v)})) {
                            all = false;
                            break;
                        }
                    if (all) clique.push_back(static_cast<int>(v));
                }
                if (static_cast<int>(clique.size()) > a_.size()) return false;
            }

            BlockSolver solver{a_, budget_, a_.size(), comp_vars.size(), {}, {}, {}, 0};
            solver.lits_of_var.assign(comp_vars.size(), {});
            solver.value.assign(comp_vars.size(), 0);
            for (std::size_t li : lit_ids) {
                BlockLiteral l = lits[li];
                for (auto& vi : l.var_of_arg)
                    if (vi >= 0) vi = remap.at(vi);
                int index = static_cast<int>(solver.lits.size());
                solver.lits.push_back(std::move(l));
                for (int vi : vars_of_lit[li]) solver.lits_of_var[remap.at(vi)].push_back(index);
            }
            if (!solver.solve()) return false;
        }
        return true;  // variables in no literal are unconstrained
    }

    const FinStructure& a_;
    Budget* budget_;
    std::map<const Formula*, BlockPlan> plans_;
};

// --- three-valued evaluation over partially decided structures ---

enum class TV : std::int8_t { False = 0, True = 1, Unknown = 2 };

TV tv_not(TV t) {
    if (t == TV::Unknown) return TV::Unknown;
    return t == TV::True ? TV::False : TV::True;
}

struct PartialStructure {
    const Vocabulary& vocab;
    int n;
    // per relation: lexicographic tuple list and a decision per index
    std::map<std::string, std::vector<std::int8_t>> state;
    std::map<std::string, std::vector<Tuple>> tuples;

    PartialStructure(const Vocabulary& v, int size) : vocab(v), n(size) {
        for (const auto& sym : v.symbols()) {
            tuples[sym.name] = all_tuples(size, sym.arity);
            state[sym.name].assign(tuples[sym.name].size(), static_cast<std::int8_t>(TV::Unknown));
        }
    }

    std::size_t index_of(const Tuple& t) const {
        std::size_t idx = 0;
        for (int e : t) idx = idx * n + (e - 1);
        return idx;
    }

    TV lookup(const std::string& rel, const Tuple& t) const {
        return static_cast<TV>(state.at(rel)[index_of(t)]);
    }

    FinStructure freeze() const {  // undecided tuples become absent
        FinStructure out(vocab, n);
        for (const auto& [rel, sts] : state) {
            std::set<Tuple> content;
            for (std::size_t i = 0; i < sts.size(); ++i)
                if (static_cast<TV>(sts[i]) == TV::True) content.insert(tuples.at(rel)[i]);
            out.set_relation(rel, content);
        }
        return out;
    }
};

class Eval3 {
public:
    Eval3(const PartialStructure& ps, Budget* budget) : ps_(ps), budget_(budget) {}

    TV eval(const Formula& f, Env& env) {
        if (budget_) budget_->charge();
        switch (f.kind) {
            case Kind::Equal:
                return env.lookup(f.args[0]) == env.lookup(f.args[1]) ? TV::True : TV::False;
            case Kind::Atom: {
                Tuple t;
                t.reserve(f.args.size());
                for (const auto& v : f.args) t.push_back(env.lookup(v));
                return ps_.lookup(f.rel, t);
            }
            case Kind::Not:
                return tv_not(eval(*f.left, env));
            case Kind::And: {
                TV l = eval(*f.left, env);
                if (l == TV::False) return TV::False;
                TV r = eval(*f.right, env);
                if (r == TV::False) return TV::False;
                return (l == TV::Unknown || r == TV::Unknown) ? TV::Unknown : TV::True;
            }
            case Kind::Or: {
                TV l = eval(*f.left, env);
                if (l == TV::True) return TV::True;
                TV r = eval(*f.right, env);
                if (r == TV::True) return TV::True;
                return (l == TV::Unknown || r == TV::Unknown) ? TV::Unknown : TV::False;
            }
            case Kind::Implies: {
                TV l = eval(*f.left, env);
                if (l == TV::False) return TV::True;
                TV r = eval(*f.right, env);
                if (r == TV::True) return TV::True;
                if (l == TV::Unknown || r == TV::Unknown) return TV::Unknown;
                return TV::False;
            }
            case Kind::Forall:
            case Kind::Exists: {
                bool uni = f.kind == Kind::Forall;
                bool unknown = false;
                for (int v = 1; v <= ps_.n; ++v) {
                    env.push(f.var, v);
                    TV sub = eval(*f.left, env);
                    env.pop();
                    if (uni && sub == TV::False) return TV::False;
                    if (!uni && sub == TV::True) return TV::True;
                    if (sub == TV::Unknown) unknown = true;
                }
                if (unknown) return TV::Unknown;
                return uni ? TV::True : TV::False;
            }
        }
        throw Error("unreachable");
    }

private:
    const PartialStructure& ps_;
    Budget* budget_;
};

void flatten_conjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == Kind::And) {
        flatten_conjuncts(f->left, out);
        flatten_conjuncts(f->right, out);
    } else {
        out.push_back(f);
    }
}

struct ModelSearch {
    PartialStructure ps;
    Budget* budget;
    std::vector<FormulaPtr> conjuncts;
    std::vector<std::set<std::string>> conjunct_rels;
    std::vector<std::pair<std::string, std::size_t>> slots;  // (relation, tuple index)
    std::optional<FinStructure> found;

    TV recheck(std::size_t c) {
        Env env{{}};
        if (budget) budget->charge();
        return Eval3(ps, budget).eval(*conjuncts[c], env);
    }

    bool run(std::size_t slot, std::vector<TV>& status) {
        bool all_true = std::all_of(status.begin(), status.end(),
                                    [](TV t) { return t == TV::True; });
        if (all_true) {
            found = ps.freeze();
            return true;
        }
        if (slot == slots.size()) return false;  // fully decided but some conjunct false-free? impossible
        const auto& [rel, ti] = slots[slot];
        for (TV choice : {TV::False, TV::True}) {
            ps.state[rel][ti] = static_cast<std::int8_t>(choice);
            std::vector<TV> next = status;
            bool dead = false;
            for (std::size_t c = 0; c < conjuncts.size() && !dead; ++c) {
                if (next[c] != TV::Unknown || !conjunct_rels[c].count(rel)) continue;
                next[c] = recheck(c);
                if (next[c] == TV::False) dead = true;
            }
            if (!dead && run(slot + 1, next)) return true;
        }
        ps.state[rel][ti] = static_cast<std::int8_t>(TV::Unknown);
        return false;
    }
};

}  // namespace

bool satisfies(const FinStructure& a, const Formula& f, const Assignment& asg, Budget* budget) {
    check_against_vocabulary(f, a.vocab());
    for (const auto& v : free_variables(f))
        if (!asg.count(v)) throw Error("unbound free variable " + v);
    Env env(asg);
    return Evaluator(a, budget).eval(f, env);
}

bool models(const FinStructure& a, const Formula& sentence, Budget* budget) {
    return satisfies(a, sentence, {}, budget);
}

struct EvalSession::Impl {
    Evaluator evaluator;
};

EvalSession::EvalSession(const FinStructure& a, Budget* budget)
    : impl_(std::make_unique<Impl>(Impl{Evaluator(a, budget)})) {}

EvalSession::~EvalSession() = default;

bool EvalSession::models(const Formula& sentence) { return satisfies(sentence, {}); }

bool EvalSession::satisfies(const Formula& f, const Assignment& asg) {
    Env env(asg);
    return impl_->evaluator.eval(f, env);
}

std::optional<FinStructure> find_model(const Formula& sentence, const Vocabulary& vocab, int size,
                                       Budget* budget) {
    if (size < 1) throw Error("model size must be at least 1");
    if (!is_sentence(sentence)) throw Error("find_model expects a sentence");
    check_against_vocabulary(sentence, vocab);

    ModelSearch search{PartialStructure(vocab, size), budget, {}, {}, {}, std::nullopt};
    flatten_conjuncts(sentence.shared_from_this(), search.conjuncts);
    for (const auto& c : search.conjuncts) search.conjunct_rels.push_back(relation_symbols(*c));
    for (const auto& sym : vocab.symbols())
        for (std::size_t i = 0; i < search.ps.tuples[sym.name].size(); ++i)
            search.slots.emplace_back(sym.name, i);

    std::vector<TV> status(search.conjuncts.size());
    for (std::size_t c = 0; c < search.conjuncts.size(); ++c) {
        status[c] = search.recheck(c);
        if (status[c] == TV::False) return std::nullopt;
    }
    search.run(0, status);
    return search.found;
}

}  // namespace finmod
