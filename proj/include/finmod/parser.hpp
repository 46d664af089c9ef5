#ifndef FINMOD_PARSER_HPP
#define FINMOD_PARSER_HPP

#include <string_view>

#include "finmod/formula.hpp"

namespace finmod {

/// Parses the ASCII formula grammar:
///   forall v. F | exists v. F | F -> F | F "|" F | F & F | !F | (F)
///   | R(v,...,v) | v = v | v != v
/// Precedence ! > & > "|" > ->; quantifier scope extends maximally to the
/// right. Relation names are identifiers or "<". All relation symbols must
/// be declared in `vocab` with matching arity.
FormulaPtr parse_formula(std::string_view text, const Vocabulary& vocab);

/// Deterministic canonical printing; re-parses to a structurally identical
/// AST under the same vocabulary.
std::string render_formula(const Formula& f);

}  // namespace finmod

#endif
