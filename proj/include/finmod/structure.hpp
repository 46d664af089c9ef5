#ifndef FINMOD_STRUCTURE_HPP
#define FINMOD_STRUCTURE_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "finmod/vocabulary.hpp"

namespace finmod {

using Tuple = std::vector<int>;

/// Finite relational structure with universe [n] (elements 1..n). Every
/// declared symbol has an entry, possibly empty. Immutable by convention
/// once built.
class FinStructure {
public:
    FinStructure(Vocabulary vocab, int size);

    const Vocabulary& vocab() const { return vocab_; }
    int size() const { return size_; }

    void add_tuple(const std::string& rel, Tuple t);
    void remove_tuple(const std::string& rel, const Tuple& t);
    void set_relation(const std::string& rel, std::set<Tuple> tuples);
    bool has(const std::string& rel, const Tuple& t) const;
    const std::set<Tuple>& relation(const std::string& rel) const;

    bool operator==(const FinStructure&) const = default;

private:
    Vocabulary vocab_;
    int size_;
    std::map<std::string, std::set<Tuple>> rels_;
};

/// Universe relabeled to [|elems|] order-preservingly; relations restricted.
/// `elems` must be a nonempty strictly increasing list of elements of A.
FinStructure induced_substructure(const FinStructure& a, const std::vector<int>& elems);

/// True iff, under the injective embedding (element i of b -> embedding[i-1]),
/// every relation of b maps into a's and < is the full restriction.
bool is_lt_substructure(const FinStructure& b, const FinStructure& a,
                        const std::vector<int>& embedding);

/// Relation-preserving-both-ways bijection, if any: result[i-1] is the image
/// of element i of a.
std::optional<std::vector<int>> find_isomorphism(const FinStructure& a, const FinStructure& b);
bool isomorphic(const FinStructure& a, const FinStructure& b);

/// Calls fn for every structure with universe [l], 1 <= l <= max_size, that
/// satisfies pred, in deterministic order: sizes ascending; relation
/// contents as a mixed-radix counter over symbols in vocabulary order, the
/// last symbol varying fastest; each relation's tuple set counted in binary
/// with the lexicographically least tuple as the least significant bit.
/// Stops early if fn returns false.
void for_each_structure(const Vocabulary& vocab, int max_size,
                        const std::function<bool(const FinStructure&)>& pred,
                        const std::function<bool(const FinStructure&)>& fn);

std::vector<FinStructure> enumerate_structures(const Vocabulary& vocab, int max_size,
                                               const std::function<bool(const FinStructure&)>& pred);

/// All arity-length tuples over [n] in lexicographic order.
std::vector<Tuple> all_tuples(int n, int arity);

/// The complete tau_0 ordering on [n]: natural <, U_min = {1}, U_max = {n},
/// S the successor pairs.
FinStructure complete_ordering(int n);

/// Validated undirected graph over tau_E with an adjacency cache.
class Graph {
public:
    explicit Graph(FinStructure s);  // throws unless E is irreflexive and symmetric

    const FinStructure& structure() const { return s_; }
    int size() const { return s_.size(); }
    const std::vector<int>& neighbors(int v) const { return adj_[v - 1]; }
    bool adjacent(int u, int v) const;

private:
    FinStructure s_;
    std::vector<std::vector<int>> adj_;
};

/// r distinct vertices starting at v forming a cycle of length r, avoiding
/// `avoid`; agrees with satisfiability of exists zbar phi_cr(v, zbar).
std::optional<std::vector<int>> find_cycle_through(const Graph& g, int v, int r,
                                                   const std::set<int>* avoid = nullptr);

struct PathEarWitness {
    std::vector<int> path;  // z0..zr, z0 = a, zr = b
    std::vector<int> ear;   // w1..ws, w1 adjacent to z_{r-1}
};

/// Path of length r from a to b with an s-ear; agrees with satisfiability
/// of exists zbar wbar phi_pe_rs(a, b, zbar, wbar). `ear_gate`, when given,
/// restricts the first ear vertex to gated vertices; pass a superset of the
/// vertices on any s-cycle to keep the search exact.
std::optional<PathEarWitness> find_path_with_ear(const Graph& g, int a, int b, int r, int s,
                                                 const std::vector<bool>* ear_gate = nullptr);

}  // namespace finmod

#endif
