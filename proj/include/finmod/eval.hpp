#ifndef FINMOD_EVAL_HPP
#define FINMOD_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "finmod/formula.hpp"
#include "finmod/structure.hpp"

namespace finmod {

/// Node-expansion budget shared across an evaluation or experiment.
/// Exceeding it raises BudgetExceeded; it is never reported as "false".
struct Budget {
    std::uint64_t limit = 100'000'000;
    std::uint64_t used = 0;

    void charge(std::uint64_t n = 1) {
        used += n;
        if (used > limit) throw BudgetExceeded("evaluation budget exceeded");
    }
};

using Assignment = std::map<std::string, int>;

/// Tarskian truth of f in a under asg. Quantifier blocks whose matrix is a
/// conjunction of literals are decided by backtracking witness search with
/// incremental literal checks and candidate domains read off the relations;
/// other shapes fall back to universe iteration.
bool satisfies(const FinStructure& a, const Formula& f, const Assignment& asg,
               Budget* budget = nullptr);

bool models(const FinStructure& a, const Formula& sentence, Budget* budget = nullptr);

/// Batch evaluation against one structure object: formula analysis is
/// cached across calls, and the bound structure may be mutated between
/// calls (the caches only depend on the formulas).
class EvalSession {
public:
    explicit EvalSession(const FinStructure& a, Budget* budget = nullptr);
    ~EvalSession();
    bool models(const Formula& sentence);
    bool satisfies(const Formula& f, const Assignment& asg);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Exhaustive search for a model with universe exactly [size]; absence is a
/// proof at that size. Relations are decided tuple-by-tuple with
/// three-valued pruning of the sentence, so only candidates consistent with
/// every already-refutable conjunct are explored.
std::optional<FinStructure> find_model(const Formula& sentence, const Vocabulary& vocab, int size,
                                       Budget* budget = nullptr);

}  // namespace finmod

#endif
