#ifndef FINMOD_FORMULA_HPP
#define FINMOD_FORMULA_HPP

#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "finmod/vocabulary.hpp"

namespace finmod {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Kind { Equal, Atom, Not, And, Or, Implies, Forall, Exists };

/// Immutable FO formula node. Connectives are binary; conjunctions built
/// from lists are left-associated. Variables are named and lexically
/// scoped; shadowing is allowed.
class Formula : public std::enable_shared_from_this<Formula> {
public:
    Kind kind;
    std::string rel;                 // Atom: relation symbol
    std::vector<std::string> args;   // Atom arguments; Equal: {lhs, rhs}
    std::string var;                 // Forall/Exists: bound variable
    FormulaPtr left;                 // Not/Forall/Exists: operand; binary: lhs
    FormulaPtr right;                // binary: rhs

    bool is_quantifier() const { return kind == Kind::Forall || kind == Kind::Exists; }
    bool is_literal() const;  // atom/equality, possibly under one negation
};

FormulaPtr f_equal(std::string a, std::string b);
FormulaPtr f_atom(std::string rel, std::vector<std::string> args);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_forall(std::string var, FormulaPtr body);
FormulaPtr f_exists(std::string var, FormulaPtr body);

/// Left-associated conjunction/disjunction of a nonempty list.
FormulaPtr f_conj(std::span<const FormulaPtr> fs);
FormulaPtr f_disj(std::span<const FormulaPtr> fs);
FormulaPtr f_forall_many(std::span<const std::string> vars, FormulaPtr body);
FormulaPtr f_exists_many(std::span<const std::string> vars, FormulaPtr body);

bool structurally_equal(const Formula& a, const Formula& b);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> all_variable_names(const Formula& f);
bool is_sentence(const Formula& f);

/// All relation symbols occurring in f.
std::set<std::string> relation_symbols(const Formula& f);

/// Throws if some atom uses an undeclared symbol or wrong arity.
void check_against_vocabulary(const Formula& f, const Vocabulary& vocab);

/// Capture-avoiding simultaneous substitution of variables for variables.
FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& repl);

/// -> eliminated and negations pushed to atoms.
FormulaPtr to_nnf(const FormulaPtr& f);

}  // namespace finmod

#endif
