#ifndef FINMOD_BUILTINS_HPP
#define FINMOD_BUILTINS_HPP

#include <optional>

#include "finmod/formula.hpp"

namespace finmod {

struct BuiltinParams {
    int r = 0;
    int s = 0;
    std::optional<Vocabulary> vocab;  // for phi1_tau / phi1_star over a pairs vocabulary
};

/// Named formulas:
///   phi_DG     forall x. !E(x,x)
///   phi_Graph  phi_DG & forall x. forall y. (E(x,y) -> E(y,x))
///   phi0       the tau_0 ordering axioms (universal)
///   phi1       completeness: realized min, max and successor
///   phi1_star  phi1 without the U_max conjunct
///   phi1_tau   phi1 plus totality of every standard/complement pair (needs vocab)
///   phi_c      r-cycle through x, free variables x, z1..zr (r >= 3)
///   phi_pe     r-path from x to y with an s-ear, free variables
///              x, y, z0..zr, w1..ws (r,s >= 3)
/// phi_c and phi_pe are quantifier-free; everything else is a sentence.
FormulaPtr builtin_formula(const std::string& name, const BuiltinParams& params = {});

/// Cycle formula with custom variable names: `x` lies on the cycle
/// cycle_vars[0..r-1] (the first cycle variable is equated with x).
FormulaPtr cycle_formula(const std::string& x, const std::vector<std::string>& cycle_vars);

/// Path-with-ear formula over explicit variable lists; path_vars has r+1
/// entries z0..zr with z0 = x and zr = y, ear_vars has s entries.
FormulaPtr path_ear_formula(const std::string& x, const std::string& y,
                            const std::vector<std::string>& path_vars,
                            const std::vector<std::string>& ear_vars);

}  // namespace finmod

#endif
