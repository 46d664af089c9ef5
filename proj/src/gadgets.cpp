#include "finmod/gadgets.hpp"

#include <algorithm>

#include "finmod/builtins.hpp"
#include "finmod/interp.hpp"

namespace finmod {

std::vector<int> GadgetPlan::cycle_lengths() const {
    std::vector<int> lens{basic_cycle, companion_cycle};
    for (const auto& [sym, len] : unary_cycle) lens.push_back(len);
    return lens;
}

void GadgetPlan::validate() const {
    auto cycles = cycle_lengths();
    std::vector<int> ears{link_ear};
    for (const auto& [sym, len] : binary_ear) ears.push_back(len);
    for (int c : cycles)
        if (c < 5 || c % 2 == 0) throw Error("cycle lengths must be odd and at least 5");
    for (int e : ears)
        if (e % 2 == 0) throw Error("ear lengths must be odd");
    auto has_dup = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    if (has_dup(cycles)) throw Error("cycle lengths must be pairwise distinct");
    if (has_dup(ears)) throw Error("ear lengths must be pairwise distinct");
    int max_cycle = *std::max_element(cycles.begin(), cycles.end());
    for (int e : ears)
        if (e <= max_cycle) throw Error("ear lengths must exceed every cycle length");
    if (path_len <= max_cycle) throw Error("path length must exceed every cycle length");
}

GadgetPlan default_plan(const Vocabulary& vocab) {
    GadgetPlan plan;
    int next = 5;
    auto take = [&next]() {
        int v = next;
        next += 2;
        return v;
    };
    for (const auto& sym : vocab.symbols())
        if (sym.arity == 1) plan.unary_cycle[sym.name] = take();
    plan.basic_cycle = take();
    plan.companion_cycle = take();
    if (!vocab.contains("S")) throw Error("gadget plans expect the tau_0 symbol S");
    plan.binary_ear["S"] = take();
    plan.link_ear = take();
    for (const auto& sym : vocab.symbols()) {
        if (sym.arity != 2 || sym.name == "<" || sym.name == "S") continue;
        plan.binary_ear[sym.name] = take();
    }
    plan.path_len = next;  // largest ear plus 2
    plan.validate();
    return plan;
}

namespace {

// phi_0 and phi_1 together with exact-complement conjuncts for every pair;
// the precondition of the graph encoding.
FormulaPtr encoding_precondition(const Vocabulary& vocab) {
    std::vector<FormulaPtr> cs;
    cs.push_back(builtin_formula("phi0"));
    for (const auto& sym : vocab.symbols()) {
        auto comp = vocab.complement_of(sym.name);
        if (!comp) continue;
        std::vector<std::string> vars;
        for (int i = 1; i <= sym.arity; ++i) vars.push_back("x" + std::to_string(i));
        cs.push_back(f_forall_many(
            vars, f_or(f_not(f_atom(sym.name, vars)), f_not(f_atom(*comp, vars)))));
    }
    BuiltinParams p;
    p.vocab = vocab;
    cs.push_back(builtin_formula("phi1_tau", p));
    return f_conj(cs);
}

struct Builder {
    std::set<std::pair<int, int>> edges;
    std::vector<RoleInfo> roles;
    int next_vertex;

    int fresh(RoleInfo role) {
        roles.push_back(std::move(role));
        return next_vertex++;
    }

    void edge(int u, int v) {
        edges.insert({u, v});
        edges.insert({v, u});
    }

    // cycle of `len` vertices through base: base plus len-1 fresh ones
    void add_cycle(int base, int len, const std::string& tag, const Tuple& fact) {
        int prev = base;
        int first = base;
        for (int i = 1; i < len; ++i) {
            int v = fresh({VertexRole::CycleMember, tag, fact});
            edge(prev, v);
            prev = v;
        }
        edge(prev, first);
    }

    // path of length `plen` from a to b plus an attached ear cycle of `elen`
    void add_path_ear(int a, int b, int plen, int elen, const std::string& tag, const Tuple& fact) {
        int prev = a;
        int last_internal = 0;
        for (int i = 1; i < plen; ++i) {
            int v = fresh({VertexRole::PathMember, tag, fact});
            edge(prev, v);
            prev = v;
            last_internal = v;
        }
        edge(prev, b);
        int w1 = fresh({VertexRole::EarMember, tag, fact});
        edge(last_internal, w1);
        int wprev = w1;
        for (int i = 1; i < elen; ++i) {
            int v = fresh({VertexRole::EarMember, tag, fact});
            edge(wprev, v);
            wprev = v;
        }
        edge(wprev, w1);
    }
};

}  // namespace

GadgetGraph encode(const FinStructure& a, const GadgetPlan* plan_in, Budget* budget) {
    const Vocabulary& vocab = a.vocab();
    const Vocabulary base = tau_0();
    for (const auto& sym : base.symbols())
        if (!vocab.contains(sym.name) || vocab.arity(sym.name) != sym.arity)
            throw Error("encode expects a vocabulary extending tau_0");
    GadgetPlan plan = plan_in ? *plan_in : default_plan(vocab);
    plan.validate();
    for (const auto& sym : vocab.symbols()) {
        if (sym.arity == 1 && !plan.unary_cycle.count(sym.name))
            throw Error("plan lacks a cycle length for " + sym.name);
        if (sym.arity == 2 && sym.name != "<" && !plan.binary_ear.count(sym.name))
            throw Error("plan lacks an ear length for " + sym.name);
    }
    if (!models(a, *encoding_precondition(vocab), budget))
        throw Error("encode requires a complete ordering with exact complements");

    const int n = a.size();
    Builder b;
    b.next_vertex = 2 * n + 1;
    for (int i = 1; i <= n; ++i) b.roles.push_back({VertexRole::Basic, "", {i}});
    for (int i = 1; i <= n; ++i) b.roles.push_back({VertexRole::Companion, "", {i}});
    auto companion = [n](int i) { return n + i; };

    // order edges: companion of a joined to every larger basic element
    for (const auto& t : a.relation("<")) b.edge(companion(t[0]), t[1]);

    for (const auto& [sym, len] : plan.unary_cycle)
        for (const auto& t : a.relation(sym)) b.add_cycle(t[0], len, sym, t);
    for (int i = 1; i <= n; ++i) b.add_cycle(i, plan.basic_cycle, "B", {i});
    for (int i = 1; i <= n; ++i) b.add_cycle(companion(i), plan.companion_cycle, "C", {i});

    // reflexive facts run to the companion: a path from a to a cannot
    // carry the endpoint-distinct path formula
    auto ear_target = [&](const Tuple& t) { return t[0] == t[1] ? companion(t[1]) : t[1]; };
    for (const auto& t : a.relation("S"))
        b.add_path_ear(t[0], ear_target(t), plan.path_len, plan.binary_ear.at("S"), "S", t);
    for (int i = 1; i <= n; ++i)
        b.add_path_ear(i, companion(i), plan.path_len, plan.link_ear, "L", {i, companion(i)});
    for (const auto& sym : vocab.symbols()) {
        if (sym.arity != 2 || sym.name == "<" || sym.name == "S") continue;
        for (const auto& t : a.relation(sym.name))
            b.add_path_ear(t[0], ear_target(t), plan.path_len, plan.binary_ear.at(sym.name),
                           sym.name, t);
    }

    FinStructure gs(tau_E(), b.next_vertex - 1);
    for (const auto& [u, v] : b.edges) gs.add_tuple("E", {u, v});
    return GadgetGraph{Graph(std::move(gs)), std::move(b.roles), std::move(plan), vocab};
}

std::optional<FinStructure> decode(const Graph& g, Budget* budget) {
    auto res = fast_apply(g, builtin_interp_tau0(), budget);
    if (!res) return std::nullopt;
    return std::move(res->structure);
}

std::optional<FinStructure> decode_pairs(const Graph& g, const Vocabulary& vocab, Budget* budget) {
    auto res = fast_apply(g, builtin_interp_pairs(vocab), budget);
    if (!res) return std::nullopt;
    return std::move(res->structure);
}

namespace {

struct ChordlessEnum {
    const Graph& g;
    int max_len;
    Budget* budget;
    std::vector<int> path;
    std::vector<bool> in_path;
    std::vector<int> dist;  // from the anchor, within vertices >= anchor
    std::vector<std::vector<int>>& found;

    void bfs_from(int v0) {
        dist.assign(g.size() + 1, -1);
        dist[v0] = 0;
        std::vector<int> queue{v0};
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int w : g.neighbors(u)) {
                if (w < v0 || dist[w] >= 0) continue;
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }

    void extend() {
        if (budget) budget->charge();
        int v0 = path.front();
        int last = path.back();
        int len = static_cast<int>(path.size());
        for (int w : g.neighbors(last)) {
            if (w <= v0 || in_path[w]) continue;
            bool chord = false;
            for (int i = 1; i + 1 < len && !chord; ++i)
                if (g.adjacent(w, path[i])) chord = true;
            if (chord) continue;
            if (len >= 2 && g.adjacent(w, v0)) {
                // closing: orientation canon picks the direction with the
                // smaller second vertex; extending past w would leave the
                // chord w-v0
                if (path[1] < w) {
                    path.push_back(w);
                    found.push_back(path);
                    path.pop_back();
                }
                continue;
            }
            if (len + 1 >= max_len) continue;
            if (dist[w] < 0 || dist[w] > max_len - len) continue;
            path.push_back(w);
            in_path[w] = true;
            extend();
            in_path[w] = false;
            path.pop_back();
        }
    }
};

}  // namespace

CycleTaxonomy cycle_taxonomy(const GadgetGraph& gg, int max_len, Budget* budget) {
    const Graph& g = gg.graph;
    CycleTaxonomy tax;
    tax.max_len = max_len;

    std::vector<std::vector<int>> raw;
    ChordlessEnum en{g, max_len, budget, {}, std::vector<bool>(g.size() + 1, false), {}, raw};
    for (int v0 = 1; v0 <= g.size(); ++v0) {
        en.bfs_from(v0);
        en.path = {v0};
        en.in_path.assign(g.size() + 1, false);
        en.in_path[v0] = true;
        en.extend();
    }

    // gadget vertex sets, keyed by (tag, fact): cycles include their base
    int num_basic = 0;
    for (const auto& r : gg.roles)
        if (r.role == VertexRole::Basic) ++num_basic;
    std::map<std::pair<std::string, Tuple>, std::set<int>> cycle_sets, ear_sets;
    std::map<int, std::pair<std::string, Tuple>> owner_cycle, owner_ear;
    for (int v = 1; v <= g.size(); ++v) {
        const RoleInfo& r = gg.roles[v - 1];
        auto key = std::make_pair(r.tag, r.fact);
        if (r.role == VertexRole::CycleMember) {
            cycle_sets[key].insert(v);
            owner_cycle[v] = key;
        } else if (r.role == VertexRole::EarMember) {
            ear_sets[key].insert(v);
            owner_ear[v] = key;
        }
    }
    for (auto& [key, verts] : cycle_sets) {
        int base = key.second[0];
        if (key.first == "C") base += num_basic;  // companion cycles sit on companions
        verts.insert(base);
    }

    for (const auto& cyc : raw) {
        CycleRecord rec;
        rec.vertices = cyc;
        std::set<int> vs(cyc.begin(), cyc.end());
        bool all_core = true;
        for (int v : cyc) {
            auto role = gg.roles[v - 1].role;
            if (role != VertexRole::Basic && role != VertexRole::Companion) all_core = false;
        }
        rec.category = all_core ? "F" : "mixed";
        // the first gadget-owned vertex decides: an exact match with that
        // gadget's vertex set is a T- or ear-cycle
        for (int v : cyc) {
            if (all_core) break;
            if (auto it = owner_cycle.find(v); it != owner_cycle.end()) {
                if (vs == cycle_sets.at(it->second)) {
                    rec.category = "T";
                    rec.tag = it->second.first;
                }
                break;
            }
            if (auto it = owner_ear.find(v); it != owner_ear.end()) {
                if (vs == ear_sets.at(it->second)) {
                    rec.category = "ear";
                    rec.tag = it->second.first;
                }
                break;
            }
        }
        tax.counts[rec.category][static_cast<int>(cyc.size())]++;
        tax.cycles.push_back(std::move(rec));
    }
    return tax;
}

}  // namespace finmod
