#ifndef FINMOD_EXPERIMENTS_HPP
#define FINMOD_EXPERIMENTS_HPP

#include "finmod/eval.hpp"
#include "finmod/report.hpp"
#include "finmod/tm.hpp"

namespace finmod {

/// Builds the complete ordering on [n], checks it models phi0 & phi1 and
/// that every proper nonempty induced substructure models phi0 & !phi1
/// (exhaustively over all 2^n - 2 subsets).
ExperimentReport experiment_tait_structure(int n, Budget* budget = nullptr);

/// Encodes the complete ordering on [n] as a graph G and checks, for
/// phi := forall xbar !phi_univ | (phi0^I & !phi1^I), that G models
/// phi_Graph & !phi while every induced subgraph with at most k vertices
/// models phi_Graph & phi. Requires n >= k^2 + 1.
ExperimentReport experiment_tait_graph(int n, int k, Budget* budget = nullptr);

/// Encodes the canonical model of the halting run of m on word and checks
/// the forbidden-set witness for rho_w: G models phi_Graph & !rho_w while
/// every induced subgraph with at most k vertices models phi_Graph & rho_w.
/// When k^2 >= h(w)+1 the report notes that no lower-bound witness is
/// claimed.
ExperimentReport experiment_gurevich_demo(const TuringMachine& m, std::string_view word, int k,
                                          Budget* budget = nullptr);

}  // namespace finmod

#endif
