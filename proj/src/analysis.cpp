#include "finmod/analysis.hpp"

#include <algorithm>

namespace finmod {

std::size_t formula_size(const Formula& f) {
    switch (f.kind) {
        case Kind::Equal:
            return 3;
        case Kind::Atom:
            return 1 + f.args.size();
        case Kind::Not:
        case Kind::Forall:
        case Kind::Exists:
            return 1 + formula_size(*f.left);
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            return 1 + formula_size(*f.left) + formula_size(*f.right);
    }
    return 0;
}

namespace {

void pattern(const Formula& f, std::string& out) {
    switch (f.kind) {
        case Kind::Forall:
            out += 'A';
            pattern(*f.left, out);
            return;
        case Kind::Exists:
            out += 'E';
            pattern(*f.left, out);
            return;
        case Kind::And:
        case Kind::Or:
            pattern(*f.left, out);
            pattern(*f.right, out);
            return;
        default:
            return;  // NNF: Not only wraps atoms
    }
}

}  // namespace

std::string prenex_pattern(const Formula& f) {
    auto n = to_nnf(std::make_shared<Formula>(f));
    std::string out;
    pattern(*n, out);
    return out;
}

SyntacticClass classify(const Formula& f) {
    std::string p = prenex_pattern(f);
    if (p.empty()) return SyntacticClass::QuantifierFree;
    std::size_t as = std::count(p.begin(), p.end(), 'A');
    std::size_t es = p.size() - as;
    if (es == 0) return SyntacticClass::Universal;
    if (as == 0) return SyntacticClass::Existential;
    std::size_t flips = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] != p[i - 1]) ++flips;
    if (flips == 1) return p[0] == 'A' ? SyntacticClass::Pi2 : SyntacticClass::Sigma2;
    return SyntacticClass::General;
}

std::string to_string(SyntacticClass c) {
    switch (c) {
        case SyntacticClass::QuantifierFree: return "quantifier-free";
        case SyntacticClass::Existential: return "existential";
        case SyntacticClass::Universal: return "universal";
        case SyntacticClass::Sigma2: return "Sigma2";
        case SyntacticClass::Pi2: return "Pi2";
        case SyntacticClass::General: return "general";
    }
    return "?";
}

namespace {

void scan_polarity(const std::string& rel, const Formula& f, bool negated, bool& pos, bool& neg) {
    switch (f.kind) {
        case Kind::Equal:
            return;
        case Kind::Atom:
            if (f.rel == rel) (negated ? neg : pos) = true;
            return;
        case Kind::Not:
            scan_polarity(rel, *f.left, !negated, pos, neg);
            return;
        case Kind::And:
        case Kind::Or:
            scan_polarity(rel, *f.left, negated, pos, neg);
            scan_polarity(rel, *f.right, negated, pos, neg);
            return;
        case Kind::Implies:
            scan_polarity(rel, *f.left, !negated, pos, neg);
            scan_polarity(rel, *f.right, negated, pos, neg);
            return;
        case Kind::Forall:
        case Kind::Exists:
            scan_polarity(rel, *f.left, negated, pos, neg);
            return;
    }
}

}  // namespace

Polarity polarity(const std::string& rel, const Formula& f) {
    bool pos = false, neg = false;
    scan_polarity(rel, f, false, pos, neg);
    if (pos && neg) return Polarity::Mixed;
    if (pos) return Polarity::Positive;
    if (neg) return Polarity::Negative;
    return Polarity::Absent;
}

std::string to_string(Polarity p) {
    switch (p) {
        case Polarity::Positive: return "positive";
        case Polarity::Negative: return "negative";
        case Polarity::Mixed: return "mixed";
        case Polarity::Absent: return "absent";
    }
    return "?";
}

}  // namespace finmod
