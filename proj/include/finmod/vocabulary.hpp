#ifndef FINMOD_VOCABULARY_HPP
#define FINMOD_VOCABULARY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finmod/errors.hpp"

namespace finmod {

struct RelSymbol {
    std::string name;
    int arity = 0;
    bool operator==(const RelSymbol&) const = default;
};

/// A finite set of relation symbols, optionally with standard/complement
/// pairing. Symbol order is the declaration order and is significant for
/// every deterministic enumeration built on top of it.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<RelSymbol> symbols,
                        std::map<std::string, std::string> pairs = {});

    const std::vector<RelSymbol>& symbols() const { return symbols_; }
    const std::map<std::string, std::string>& pairs() const { return pairs_; }

    bool contains(const std::string& name) const;
    int arity(const std::string& name) const;

    bool is_standard(const std::string& name) const { return pairs_.count(name) > 0; }
    bool is_complement(const std::string& name) const;
    std::optional<std::string> complement_of(const std::string& standard) const;

    bool operator==(const Vocabulary&) const = default;

private:
    void validate() const;
    std::vector<RelSymbol> symbols_;
    std::map<std::string, std::string> pairs_;  // standard -> complement
};

/// tau_E = {E/2}.
Vocabulary tau_E();

/// tau_0 = {</2, U_min/1, U_max/1, S/2}.
Vocabulary tau_0();

/// Extends tau_0 with paired symbols. `added` lists (standard, complement,
/// arity) triples, appended after tau_0 in the given order.
Vocabulary tau_pairs(const std::vector<std::tuple<std::string, std::string, int>>& added);

}  // namespace finmod

#endif
