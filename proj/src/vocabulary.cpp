#include "finmod/vocabulary.hpp"

#include <set>

namespace finmod {

Vocabulary::Vocabulary(std::vector<RelSymbol> symbols, std::map<std::string, std::string> pairs)
    : symbols_(std::move(symbols)), pairs_(std::move(pairs)) {
    validate();
}

void Vocabulary::validate() const {
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.arity < 1) throw Error("relation symbol " + s.name + " must have positive arity");
        if (!seen.insert(s.name).second) throw Error("duplicate relation symbol " + s.name);
    }
    std::set<std::string> in_pair;
    for (const auto& [std_sym, comp_sym] : pairs_) {
        if (std_sym == comp_sym) throw Error("symbol " + std_sym + " paired with itself");
        if (!contains(std_sym) || !contains(comp_sym))
            throw Error("pair (" + std_sym + ", " + comp_sym + ") uses undeclared symbols");
        if (arity(std_sym) != arity(comp_sym))
            throw Error("paired symbols " + std_sym + "/" + comp_sym + " differ in arity");
        if (!in_pair.insert(std_sym).second || !in_pair.insert(comp_sym).second)
            throw Error("symbol occurs in more than one pair");
    }
}

bool Vocabulary::contains(const std::string& name) const {
    for (const auto& s : symbols_)
        if (s.name == name) return true;
    return false;
}

int Vocabulary::arity(const std::string& name) const {
    for (const auto& s : symbols_)
        if (s.name == name) return s.arity;
    throw Error("unknown relation symbol " + name);
}

bool Vocabulary::is_complement(const std::string& name) const {
    for (const auto& [std_sym, comp_sym] : pairs_)
        if (comp_sym == name) return true;
    return false;
}

std::optional<std::string> Vocabulary::complement_of(const std::string& standard) const {
    auto it = pairs_.find(standard);
    if (it == pairs_.end()) return std::nullopt;
    return it->second;
}

Vocabulary tau_E() { return Vocabulary({{"E", 2}}); }

Vocabulary tau_0() {
    return Vocabulary({{"<", 2}, {"U_min", 1}, {"U_max", 1}, {"S", 2}});
}

Vocabulary tau_pairs(const std::vector<std::tuple<std::string, std::string, int>>& added) {
    std::vector<RelSymbol> syms = tau_0().symbols();
    std::map<std::string, std::string> pairs;
    for (const auto& [std_sym, comp_sym, arity] : added) {
        syms.push_back({std_sym, arity});
        syms.push_back({comp_sym, arity});
        pairs[std_sym] = comp_sym;
    }
    return Vocabulary(std::move(syms), std::move(pairs));
}

}  // namespace finmod
