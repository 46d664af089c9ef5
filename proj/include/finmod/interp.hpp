#ifndef FINMOD_INTERP_HPP
#define FINMOD_INTERP_HPP

#include <optional>

#include "finmod/gadgets.hpp"

namespace finmod {

/// Width-2 interpretation of tau-structures in graphs. The universe formula
/// has free variables x1, x2; unary defining formulas use x1, x2 and binary
/// ones x1, x2, y1, y2. All formulas are over tau_E.
struct Interpretation {
    Vocabulary source;
    FormulaPtr univ;
    std::map<std::string, FormulaPtr> defs;
    std::optional<GadgetPlan> builtin_plan;  // present for builtin interpretations

    void validate() const;
};

/// True iff every formula of i classifies as existential (or quantifier
/// free) and the formula for < is quantifier-free.
bool check_strongly_existential(const Interpretation& i);

/// The relativized translation: variables double (x -> x_1, x_2 fresh),
/// universal quantifiers guard with ->, existential ones with &, atoms map
/// to their defining formulas and equality to componentwise equality.
FormulaPtr translate(const Formula& f, const Interpretation& i);

struct InterpResult {
    FinStructure structure;
    std::vector<std::pair<int, int>> universe_pairs;  // lexicographic, elt i = pair[i-1]
};

/// The interpreted structure on the pairs satisfying the universe formula,
/// or absent when that set is empty.
std::optional<InterpResult> apply_interp(const Graph& g, const Interpretation& i,
                                         Budget* budget = nullptr);

/// Same output as apply_interp for builtin interpretations, computed with
/// the direct cycle and path-with-ear searches instead of formula
/// evaluation.
std::optional<InterpResult> fast_apply(const Graph& g, const Interpretation& i,
                                       Budget* budget = nullptr);

/// The tau_0 interpretation: universe via a 9-cycle, an 11-cycle and a
/// 17-path with a 15-ear; < is the quantifier-free edge test.
Interpretation builtin_interp_tau0();

/// The generalization to a pairs vocabulary under its default plan.
Interpretation builtin_interp_pairs(const Vocabulary& tau);

struct Ratio {
    std::size_t num = 0;
    std::size_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator<(const Ratio& o) const { return num * o.den < o.num * den; }
};

/// max |translate(f)| / |f| over the corpus.
Ratio measure_translation_constant(const Interpretation& i, const std::vector<FormulaPtr>& corpus);

}  // namespace finmod

#endif
