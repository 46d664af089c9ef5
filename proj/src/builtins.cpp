#include "finmod/builtins.hpp"

namespace finmod {

namespace {

FormulaPtr lt(const std::string& a, const std::string& b) { return f_atom("<", {a, b}); }

FormulaPtr ordering_axioms() {
    std::vector<FormulaPtr> cs;
    cs.push_back(f_forall("x", f_not(lt("x", "x"))));
    cs.push_back(f_forall("x", f_forall("y", f_or(f_or(lt("x", "y"), f_equal("x", "y")), lt("y", "x")))));
    cs.push_back(f_forall(
        "x", f_forall("y", f_forall("z", f_implies(f_and(lt("x", "y"), lt("y", "z")), lt("x", "z"))))));
    cs.push_back(f_forall(
        "x", f_forall("y", f_implies(f_atom("U_min", {"x"}), f_or(f_equal("x", "y"), lt("x", "y"))))));
    cs.push_back(f_forall(
        "x", f_forall("y", f_implies(f_atom("U_max", {"x"}), f_or(f_equal("x", "y"), lt("y", "x"))))));
    cs.push_back(f_forall("x", f_forall("y", f_implies(f_atom("S", {"x", "y"}), lt("x", "y")))));
    cs.push_back(f_forall(
        "x", f_forall("y", f_forall("z", f_implies(f_and(lt("x", "y"), lt("y", "z")),
                                                   f_not(f_atom("S", {"x", "z"})))))));
    return f_conj(cs);
}

FormulaPtr successor_totality() {
    return f_forall("x", f_forall("y", f_implies(lt("x", "y"), f_exists("z", f_atom("S", {"x", "z"})))));
}

std::vector<std::string> tuple_vars(int arity) {
    if (arity == 1) return {"x"};
    if (arity == 2) return {"x", "y"};
    std::vector<std::string> vs;
    for (int i = 1; i <= arity; ++i) vs.push_back("x" + std::to_string(i));
    return vs;
}

// One totality conjunct forall xbar (R xbar | R_comp xbar) per standard
// symbol, in vocabulary order.
std::vector<FormulaPtr> totality_conjuncts(const Vocabulary& vocab) {
    std::vector<FormulaPtr> cs;
    for (const auto& sym : vocab.symbols()) {
        auto comp = vocab.complement_of(sym.name);
        if (!comp) continue;
        auto vars = tuple_vars(sym.arity);
        auto body = f_or(f_atom(sym.name, vars), f_atom(*comp, vars));
        cs.push_back(f_forall_many(vars, body));
    }
    return cs;
}

FormulaPtr phi1(bool require_max) {
    std::vector<FormulaPtr> cs;
    cs.push_back(f_exists("x", f_atom("U_min", {"x"})));
    if (require_max) cs.push_back(f_exists("x", f_atom("U_max", {"x"})));
    cs.push_back(successor_totality());
    return f_conj(cs);
}

FormulaPtr with_totality(FormulaPtr base, const Vocabulary& vocab) {
    std::vector<FormulaPtr> cs{std::move(base)};
    auto tot = totality_conjuncts(vocab);
    cs.insert(cs.end(), tot.begin(), tot.end());
    return f_conj(cs);
}

}  // namespace

FormulaPtr cycle_formula(const std::string& x, const std::vector<std::string>& cycle_vars) {
    const int r = static_cast<int>(cycle_vars.size());
    if (r < 3) throw Error("cycle length must be at least 3");
    std::vector<FormulaPtr> cs;
    cs.push_back(f_equal(x, cycle_vars[0]));
    cs.push_back(f_atom("E", {cycle_vars[r - 1], cycle_vars[0]}));
    for (int i = 0; i + 1 < r; ++i) cs.push_back(f_atom("E", {cycle_vars[i], cycle_vars[i + 1]}));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) cs.push_back(f_not(f_equal(cycle_vars[i], cycle_vars[j])));
    return f_conj(cs);
}

FormulaPtr path_ear_formula(const std::string& x, const std::string& y,
                            const std::vector<std::string>& path_vars,
                            const std::vector<std::string>& ear_vars) {
    const int r = static_cast<int>(path_vars.size()) - 1;
    const int s = static_cast<int>(ear_vars.size());
    if (r < 3 || s < 3) throw Error("path and ear lengths must be at least 3");
    std::vector<FormulaPtr> cs;
    cs.push_back(f_equal(x, path_vars[0]));
    cs.push_back(f_equal(y, path_vars[r]));
    for (int i = 0; i < r; ++i) cs.push_back(f_atom("E", {path_vars[i], path_vars[i + 1]}));
    for (int i = 0; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j) cs.push_back(f_not(f_equal(path_vars[i], path_vars[j])));
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j < s; ++j) cs.push_back(f_not(f_equal(path_vars[i], ear_vars[j])));
    cs.push_back(cycle_formula(ear_vars[0], ear_vars));
    cs.push_back(f_atom("E", {path_vars[r - 1], ear_vars[0]}));
    return f_conj(cs);
}

FormulaPtr builtin_formula(const std::string& name, const BuiltinParams& params) {
    if (name == "phi_DG") return f_forall("x", f_not(f_atom("E", {"x", "x"})));
    if (name == "phi_Graph") {
        auto sym = f_forall("x", f_forall("y", f_implies(f_atom("E", {"x", "y"}), f_atom("E", {"y", "x"}))));
        return f_and(builtin_formula("phi_DG"), sym);
    }
    if (name == "phi0") return ordering_axioms();
    if (name == "phi1") return phi1(true);
    if (name == "phi1_star") {
        auto base = phi1(false);
        return params.vocab ? with_totality(base, *params.vocab) : base;
    }
    if (name == "phi1_tau") {
        if (!params.vocab) throw Error("phi1_tau requires a paired vocabulary");
        return with_totality(phi1(true), *params.vocab);
    }
    if (name == "phi_c") {
        if (params.r < 3) throw Error("phi_c requires r >= 3");
        std::vector<std::string> zs;
        for (int i = 1; i <= params.r; ++i) zs.push_back("z" + std::to_string(i));
        return cycle_formula("x", zs);
    }
    if (name == "phi_pe") {
        if (params.r < 3 || params.s < 3) throw Error("phi_pe requires r,s >= 3");
        std::vector<std::string> zs, ws;
        for (int i = 0; i <= params.r; ++i) zs.push_back("z" + std::to_string(i));
        for (int j = 1; j <= params.s; ++j) ws.push_back("w" + std::to_string(j));
        return path_ear_formula("x", "y", zs, ws);
    }
    throw Error("unknown builtin formula " + name);
}

}  // namespace finmod
