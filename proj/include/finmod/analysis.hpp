#ifndef FINMOD_ANALYSIS_HPP
#define FINMOD_ANALYSIS_HPP

#include <cstddef>
#include <string>

#include "finmod/formula.hpp"

namespace finmod {

/// AST node count: each quantifier, connective and atom is one node, plus
/// one node per variable occurrence in an atom. |x = y| = 3, |Exx| = 3.
std::size_t formula_size(const Formula& f);

enum class SyntacticClass { QuantifierFree, Existential, Universal, Sigma2, Pi2, General };

/// Classification after eliminating -> and pushing negations to atoms,
/// reading the left-to-right prenex quantifier pattern. Purely syntactic;
/// semantic prenex-class membership is not decided.
SyntacticClass classify(const Formula& f);

std::string to_string(SyntacticClass c);

/// The left-to-right quantifier pattern of the NNF ("A"/"E" per quantifier).
std::string prenex_pattern(const Formula& f);

enum class Polarity { Positive, Negative, Mixed, Absent };

/// Occurrence polarity of relation symbol `rel` in f after unfolding ->
/// (an implication negates its antecedent).
Polarity polarity(const std::string& rel, const Formula& f);

std::string to_string(Polarity p);

}  // namespace finmod

#endif
