#include "finmod/formula.hpp"

#include <algorithm>
#include <map>

namespace finmod {

namespace {

std::shared_ptr<Formula> make(Kind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

}  // namespace

bool Formula::is_literal() const {
    if (kind == Kind::Equal || kind == Kind::Atom) return true;
    return kind == Kind::Not && (left->kind == Kind::Equal || left->kind == Kind::Atom);
}

FormulaPtr f_equal(std::string a, std::string b) {
    auto f = make(Kind::Equal);
    f->args = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr f_atom(std::string rel, std::vector<std::string> args) {
    auto f = make(Kind::Atom);
    f->rel = std::move(rel);
    f->args = std::move(args);
    return f;
}

FormulaPtr f_not(FormulaPtr x) {
    auto f = make(Kind::Not);
    f->left = std::move(x);
    return f;
}

static FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b) {
    auto f = make(k);
    f->left = std::move(a);
    f->right = std::move(b);
    return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return binary(Kind::Implies, std::move(a), std::move(b)); }

FormulaPtr f_forall(std::string var, FormulaPtr body) {
    auto f = make(Kind::Forall);
    f->var = std::move(var);
    f->left = std::move(body);
    return f;
}

FormulaPtr f_exists(std::string var, FormulaPtr body) {
    auto f = make(Kind::Exists);
    f->var = std::move(var);
    f->left = std::move(body);
    return f;
}

FormulaPtr f_conj(std::span<const FormulaPtr> fs) {
    if (fs.empty()) throw Error("empty conjunction");
    FormulaPtr acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
    return acc;
}

FormulaPtr f_disj(std::span<const FormulaPtr> fs) {
    if (fs.empty()) throw Error("empty disjunction");
    FormulaPtr acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
    return acc;
}

FormulaPtr f_forall_many(std::span<const std::string> vars, FormulaPtr body) {
    FormulaPtr acc = std::move(body);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) acc = f_forall(*it, acc);
    return acc;
}

FormulaPtr f_exists_many(std::span<const std::string> vars, FormulaPtr body) {
    FormulaPtr acc = std::move(body);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) acc = f_exists(*it, acc);
    return acc;
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.rel != b.rel || a.args != b.args || a.var != b.var) return false;
    if ((a.left == nullptr) != (b.left == nullptr)) return false;
    if (a.left && !structurally_equal(*a.left, *b.left)) return false;
    if ((a.right == nullptr) != (b.right == nullptr)) return false;
    if (a.right && !structurally_equal(*a.right, *b.right)) return false;
    return true;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind) {
        case Kind::Equal:
        case Kind::Atom:
            for (const auto& v : f.args)
                if (!bound.count(v)) out.insert(v);
            return;
        case Kind::Not:
            collect_free(*f.left, bound, out);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            collect_free(*f.left, bound, out);
            collect_free(*f.right, bound, out);
            return;
        case Kind::Forall:
        case Kind::Exists: {
            bool was = bound.count(f.var) > 0;
            bound.insert(f.var);
            collect_free(*f.left, bound, out);
            if (!was) bound.erase(f.var);
            return;
        }
    }
}

void collect_all_names(const Formula& f, std::set<std::string>& out) {
    if (f.kind == Kind::Equal || f.kind == Kind::Atom)
        out.insert(f.args.begin(), f.args.end());
    if (f.is_quantifier()) out.insert(f.var);
    if (f.left) collect_all_names(*f.left, out);
    if (f.right) collect_all_names(*f.right, out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> all_variable_names(const Formula& f) {
    std::set<std::string> out;
    collect_all_names(f, out);
    return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

std::set<std::string> relation_symbols(const Formula& f) {
    std::set<std::string> out;
    if (f.kind == Kind::Atom) out.insert(f.rel);
    if (f.left) {
        auto l = relation_symbols(*f.left);
        out.insert(l.begin(), l.end());
    }
    if (f.right) {
        auto r = relation_symbols(*f.right);
        out.insert(r.begin(), r.end());
    }
    return out;
}

void check_against_vocabulary(const Formula& f, const Vocabulary& vocab) {
    if (f.kind == Kind::Atom) {
        if (!vocab.contains(f.rel)) throw Error("undeclared relation symbol " + f.rel);
        if (vocab.arity(f.rel) != static_cast<int>(f.args.size()))
            throw Error("arity mismatch for " + f.rel);
    }
    if (f.left) check_against_vocabulary(*f.left, vocab);
    if (f.right) check_against_vocabulary(*f.right, vocab);
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    std::string name = base;
    while (taken.count(name)) name += "'";
    return name;
}

FormulaPtr rename_impl(const FormulaPtr& f, std::map<std::string, std::string> repl,
                       std::set<std::string> avoid) {
    switch (f->kind) {
        case Kind::Equal:
        case Kind::Atom: {
            auto g = std::make_shared<Formula>(*f);
            for (auto& a : g->args) {
                auto it = repl.find(a);
                if (it != repl.end()) a = it->second;
            }
            return g;
        }
        case Kind::Not:
            return f_not(rename_impl(f->left, repl, avoid));
        case Kind::And:
            return f_and(rename_impl(f->left, repl, avoid), rename_impl(f->right, repl, avoid));
        case Kind::Or:
            return f_or(rename_impl(f->left, repl, avoid), rename_impl(f->right, repl, avoid));
        case Kind::Implies:
            return f_implies(rename_impl(f->left, repl, avoid), rename_impl(f->right, repl, avoid));
        case Kind::Forall:
        case Kind::Exists: {
            std::string v = f->var;
            repl.erase(v);  // shadowing: inner binder wins
            bool capture = false;
            for (const auto& [from, to] : repl)
                if (to == v) capture = true;
            if (capture) {
                std::string nv = fresh_name(v, avoid);
                avoid.insert(nv);
                repl[v] = nv;
                v = nv;
            }
            auto body = rename_impl(f->left, repl, avoid);
            return f->kind == Kind::Forall ? f_forall(v, body) : f_exists(v, body);
        }
    }
    throw Error("unreachable");
}

}  // namespace

FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& repl) {
    std::set<std::string> avoid = all_variable_names(*f);
    for (const auto& [from, to] : repl) avoid.insert(to);
    return rename_impl(f, repl, avoid);
}

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool negate) {
    switch (f->kind) {
        case Kind::Equal:
        case Kind::Atom:
            return negate ? f_not(f) : f;
        case Kind::Not:
            return nnf(f->left, !negate);
        case Kind::And:
            return negate ? f_or(nnf(f->left, true), nnf(f->right, true))
                          : f_and(nnf(f->left, false), nnf(f->right, false));
        case Kind::Or:
            return negate ? f_and(nnf(f->left, true), nnf(f->right, true))
                          : f_or(nnf(f->left, false), nnf(f->right, false));
        case Kind::Implies:  // a -> b == !a | b
            return negate ? f_and(nnf(f->left, false), nnf(f->right, true))
                          : f_or(nnf(f->left, true), nnf(f->right, false));
        case Kind::Forall:
            return negate ? f_exists(f->var, nnf(f->left, true))
                          : f_forall(f->var, nnf(f->left, false));
        case Kind::Exists:
            return negate ? f_forall(f->var, nnf(f->left, true))
                          : f_exists(f->var, nnf(f->left, false));
    }
    throw Error("unreachable");
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, false); }

}  // namespace finmod
