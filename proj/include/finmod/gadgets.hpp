#ifndef FINMOD_GADGETS_HPP
#define FINMOD_GADGETS_HPP

#include "finmod/eval.hpp"
#include "finmod/structure.hpp"

namespace finmod {

/// Cycle and ear lengths for the graph encoding. Cycle lengths (unary
/// symbols plus the basic/companion markers) are odd, >= 5 and pairwise
/// distinct; ear lengths are odd, pairwise distinct and larger than every
/// cycle length; the uniform path length exceeds every cycle length.
struct GadgetPlan {
    std::map<std::string, int> unary_cycle;  // per unary relation symbol
    std::map<std::string, int> binary_ear;   // per binary relation symbol except <
    int basic_cycle = 9;
    int companion_cycle = 11;
    int link_ear = 15;
    int path_len = 17;
    // Reflexive binary facts cannot be drawn as paths between distinct
    // endpoints; over pairs vocabularies they run to the companion instead
    // and the defining formulas carry a diagonal disjunct.
    bool diagonal_binary = false;

    void validate() const;
    std::vector<int> cycle_lengths() const;
};

/// Default lengths: unary symbols in vocabulary order get 5, 7, ...,
/// followed by the basic and companion cycles; ears continue the odd
/// sequence as S, companion link, then the remaining binary symbols in
/// vocabulary order; the path length is the largest ear plus 2. For tau_0
/// this is U_min 5, U_max 7, basic 9, companion 11, S 13, link 15, path 17.
GadgetPlan default_plan(const Vocabulary& vocab);

enum class VertexRole { Basic, Companion, CycleMember, PathMember, EarMember };

struct RoleInfo {
    VertexRole role;
    std::string tag;  // symbol name, or "B"/"C"/"L" for basic/companion/link gadgets
    Tuple fact;       // base element for cycles, the related tuple for paths/ears
};

struct GadgetGraph {
    Graph graph;
    std::vector<RoleInfo> roles;  // indexed by vertex - 1
    GadgetPlan plan;
    Vocabulary source_vocab;
};

/// The graph encoding of a complete tau-ordering: basic elements and
/// companions joined by the order edges, one fresh cycle per unary fact,
/// one fresh path-with-ear per binary fact and per companion link.
/// Requires a model of the ordering axioms with realized min/max/successor
/// (and exact complements over a pairs vocabulary).
GadgetGraph encode(const FinStructure& a, const GadgetPlan* plan = nullptr,
                   Budget* budget = nullptr);

/// Direct decoding of an arbitrary graph to a tau_0 structure (absent when
/// the extracted universe is empty). Ignores provenance.
std::optional<FinStructure> decode(const Graph& g, Budget* budget = nullptr);

/// Decoding against a pairs vocabulary using its default plan.
std::optional<FinStructure> decode_pairs(const Graph& g, const Vocabulary& vocab,
                                         Budget* budget = nullptr);

struct CycleRecord {
    std::vector<int> vertices;
    std::string category;  // "F", "T", "ear", "mixed"
    std::string tag;       // gadget tag for T/ear cycles
};

struct CycleTaxonomy {
    int max_len = 0;
    std::vector<CycleRecord> cycles;                // every chordless cycle up to max_len
    std::map<std::string, std::map<int, int>> counts;  // category -> length -> count
};

/// Classifies every chordless cycle of length <= max_len of an encoded
/// graph using its provenance annotations.
CycleTaxonomy cycle_taxonomy(const GadgetGraph& gg, int max_len, Budget* budget = nullptr);

}  // namespace finmod

#endif
