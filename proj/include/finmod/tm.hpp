#ifndef FINMOD_TM_HPP
#define FINMOD_TM_HPP

#include <string>
#include <vector>

#include "finmod/eval.hpp"
#include "finmod/formula.hpp"
#include "finmod/structure.hpp"

namespace finmod {

struct Instruction {
    std::string from_state;
    int read = 0;  // 0 or 1
    std::string to_state;
    int write = 0;
    int dir = 0;  // -1 left, 0 stay, 1 right
};

/// Deterministic one-tape machine over {0,1} on a one-way infinite tape;
/// 0 doubles as blank.
struct TuringMachine {
    std::string name;
    std::vector<std::string> states;
    std::string start;
    std::string halt;
    std::vector<Instruction> instructions;

    void validate() const;
};

struct Config {
    std::string state;
    int head = 0;
    std::vector<int> tape;  // written prefix; cells beyond are 0
};

struct RunTrace {
    std::string word;
    std::vector<Config> configs;  // configs[j] = after j steps
    bool halted = false;
    int steps = 0;  // h(w) when halted

    int cell(int i, int j) const;  // content of cell i after j steps
};

/// Simulates at most max_steps steps. Throws on a move left of cell 0 and
/// on a missing instruction in a non-halt state.
RunTrace run(const TuringMachine& m, std::string_view word, int max_steps);

/// tau_M: tau_0 plus the pairs C0/C0_comp and H_<q>/H_<q>_comp per state.
Vocabulary machine_vocabulary(const TuringMachine& m);

enum class SentenceFamily { Phi0w, Phi1M, Gamma, Chi, Pi, Alpha, Rho };

SentenceFamily family_from_name(const std::string& name);

/// The sentence family of the machine/word pair; Rho is over tau_E (the
/// translation of Chi under the pairs interpretation), everything else over
/// tau_M.
FormulaPtr compile_sentence(const TuringMachine& m, std::string_view word, SentenceFamily family);

/// The unique (h(w)+1)-element model of Pi: the natural ordering carrying
/// the halting computation, with complements taken exactly.
FinStructure canonical_model(const TuringMachine& m, std::string_view word, int max_steps = 100000);

/// True iff the first r+1 elements of <^a reproduce the tape contents and
/// head positions of the first r steps of m on word.
bool verify_encoding(const FinStructure& a, const TuringMachine& m, std::string_view word, int r);

}  // namespace finmod

#endif
