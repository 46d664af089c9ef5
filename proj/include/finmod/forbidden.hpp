#ifndef FINMOD_FORBIDDEN_HPP
#define FINMOD_FORBIDDEN_HPP

#include "finmod/eval.hpp"
#include "finmod/formula.hpp"
#include "finmod/structure.hpp"

namespace finmod {

/// A finite list of labeled structures, all with universe size <= bound.
struct ForbiddenSet {
    Vocabulary vocab;
    std::vector<FinStructure> members;
    int bound = 0;

    void validate() const;

    /// One representative per isomorphism class (first in enumeration
    /// order). Presentation only: membership in Forb is unchanged.
    ForbiddenSet deduplicated() const;
};

/// All labeled structures with universe [l], l <= k, falsifying phi, in
/// the deterministic enumeration order of for_each_structure.
ForbiddenSet compute_Fk(const Formula& phi, const Vocabulary& vocab, int k,
                        Budget* budget = nullptr);

/// True iff no member of f is isomorphic to an induced substructure of a.
bool forb_member(const FinStructure& a, const ForbiddenSet& f);

/// Conjunction of all literals over x1..xk satisfied by the enumeration
/// (which must cover the universe of a, repeats allowed). Literal order:
/// equalities first, then relational atoms per symbol in vocabulary order,
/// argument tuples lexicographic; each atom contributes itself or its
/// negation.
FormulaPtr delta_description(const FinStructure& a, const std::vector<int>& enumeration);

/// forall x1..xk of the conjunction of negated delta-descriptions, one per
/// member (elements enumerated as 1,..,|A|, padded by repeating the last);
/// for an empty set, forall x. x = x.
FormulaPtr forbidden_to_universal(const ForbiddenSet& f);

/// Decides equivalence (equally: finite equivalence) of two universal
/// sentences by comparing F_l for l = max of the prenex quantifier counts.
bool universal_equivalent(const Formula& mu1, const Formula& mu2, const Vocabulary& vocab,
                          Budget* budget = nullptr);

}  // namespace finmod

#endif
