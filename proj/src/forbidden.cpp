#include "finmod/forbidden.hpp"

#include <algorithm>

#include "finmod/analysis.hpp"

namespace finmod {

void ForbiddenSet::validate() const {
    for (const auto& m : members) {
        if (m.vocab() != vocab) throw Error("forbidden set member over a different vocabulary");
        if (m.size() > bound) throw Error("forbidden set member larger than the bound");
    }
}

ForbiddenSet ForbiddenSet::deduplicated() const {
    ForbiddenSet out{vocab, {}, bound};
    for (const auto& m : members) {
        bool seen = false;
        for (const auto& kept : out.members)
            if (isomorphic(m, kept)) {
                seen = true;
                break;
            }
        if (!seen) out.members.push_back(m);
    }
    return out;
}

ForbiddenSet compute_Fk(const Formula& phi, const Vocabulary& vocab, int k, Budget* budget) {
    if (k < 1) throw Error("k must be at least 1");
    if (!is_sentence(phi)) throw Error("compute_Fk expects a sentence");
    check_against_vocabulary(phi, vocab);
    ForbiddenSet out{vocab, {}, k};
    for_each_structure(
        vocab, k, [&](const FinStructure& s) { return !models(s, phi, budget); },
        [&](const FinStructure& s) {
            out.members.push_back(s);
            return true;
        });
    return out;
}

namespace {

// Ordered injective embedding search for "b isomorphic to an induced
// substructure of a": both directions of the induced condition are checked
// as soon as all elements of a tuple are placed.
struct InducedEmbed {
    const FinStructure& b;
    const FinStructure& a;
    std::vector<int> image;  // b-element i -> image[i-1], 0 = unplaced
    std::vector<bool> used;

    bool check_new(int placed) {
        for (const auto& sym : b.vocab().symbols()) {
            int arity = sym.arity;
            // tuples over placed b-elements that involve the newest one
            std::vector<Tuple> stack;
            Tuple t(arity, 1);
            for (;;) {
                bool involves = std::find(t.begin(), t.end(), placed) != t.end();
                bool in_range = std::all_of(t.begin(), t.end(), [&](int e) { return e <= placed; });
                if (involves && in_range) {
                    Tuple m(arity);
                    for (int i = 0; i < arity; ++i) m[i] = image[t[i] - 1];
                    if (b.has(sym.name, t) != a.has(sym.name, m)) return false;
                }
                int i = arity - 1;
                while (i >= 0 && t[i] == placed) t[i--] = 1;
                if (i < 0) break;
                ++t[i];
            }
        }
        return true;
    }

    bool extend(int i) {
        if (i > b.size()) return true;
        for (int cand = 1; cand <= a.size(); ++cand) {
            if (used[cand - 1]) continue;
            image[i - 1] = cand;
            used[cand - 1] = true;
            if (check_new(i) && extend(i + 1)) return true;
            used[cand - 1] = false;
            image[i - 1] = 0;
        }
        return false;
    }
};

bool has_induced_copy(const FinStructure& b, const FinStructure& a) {
    if (b.size() > a.size()) return false;
    InducedEmbed search{b, a, std::vector<int>(b.size(), 0), std::vector<bool>(a.size(), false)};
    return search.extend(1);
}

}  // namespace

bool forb_member(const FinStructure& a, const ForbiddenSet& f) {
    for (const auto& m : f.members) {
        if (m.vocab() != a.vocab()) throw Error("vocabulary mismatch");
        if (has_induced_copy(m, a)) return false;
    }
    return true;
}

FormulaPtr delta_description(const FinStructure& a, const std::vector<int>& enumeration) {
    const int k = static_cast<int>(enumeration.size());
    if (k < a.size()) throw Error("enumeration shorter than the universe");
    std::vector<bool> covered(a.size(), false);
    for (int e : enumeration) {
        if (e < 1 || e > a.size()) throw Error("enumeration entry out of universe");
        covered[e - 1] = true;
    }
    if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }))
        throw Error("enumeration must cover the universe");

    auto xvar = [](int i) { return "x" + std::to_string(i); };
    std::vector<FormulaPtr> literals;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            auto atom = f_equal(xvar(i), xvar(j));
            literals.push_back(enumeration[i - 1] == enumeration[j - 1] ? atom : f_not(atom));
        }
    for (const auto& sym : a.vocab().symbols()) {
        for (const auto& idx : all_tuples(k, sym.arity)) {
            std::vector<std::string> args;
            Tuple values;
            for (int i : idx) {
                args.push_back(xvar(i));
                values.push_back(enumeration[i - 1]);
            }
            auto atom = f_atom(sym.name, args);
            literals.push_back(a.has(sym.name, values) ? atom : f_not(atom));
        }
    }
    return f_conj(literals);
}

FormulaPtr forbidden_to_universal(const ForbiddenSet& f) {
    f.validate();
    if (f.members.empty()) return f_forall("x", f_equal("x", "x"));
    const int k = f.bound;
    std::vector<FormulaPtr> negated;
    for (const auto& m : f.members) {
        std::vector<int> enumeration;
        for (int i = 1; i <= k; ++i) enumeration.push_back(std::min(i, m.size()));
        negated.push_back(f_not(delta_description(m, enumeration)));
    }
    std::vector<std::string> vars;
    for (int i = 1; i <= k; ++i) vars.push_back("x" + std::to_string(i));
    return f_forall_many(vars, f_conj(negated));
}

bool universal_equivalent(const Formula& mu1, const Formula& mu2, const Vocabulary& vocab,
                          Budget* budget) {
    if (classify(mu1) != SyntacticClass::Universal || classify(mu2) != SyntacticClass::Universal)
        throw Error("universal_equivalent expects universal sentences");
    int k1 = static_cast<int>(prenex_pattern(mu1).size());
    int k2 = static_cast<int>(prenex_pattern(mu2).size());
    int l = std::max({k1, k2, 1});
    ForbiddenSet f1 = compute_Fk(mu1, vocab, l, budget);
    ForbiddenSet f2 = compute_Fk(mu2, vocab, l, budget);
    return f1.members == f2.members;
}

}  // namespace finmod
