#include "finmod/structure.hpp"

#include <algorithm>
#include <queue>

namespace finmod {

FinStructure::FinStructure(Vocabulary vocab, int size) : vocab_(std::move(vocab)), size_(size) {
    if (size_ < 1) throw Error("universe must be nonempty");
    for (const auto& s : vocab_.symbols()) rels_[s.name] = {};
}

void FinStructure::add_tuple(const std::string& rel, Tuple t) {
    auto it = rels_.find(rel);
    if (it == rels_.end()) throw Error("undeclared relation symbol " + rel);
    if (static_cast<int>(t.size()) != vocab_.arity(rel)) throw Error("arity mismatch for " + rel);
    for (int e : t)
        if (e < 1 || e > size_) throw Error("tuple entry out of universe in " + rel);
    it->second.insert(std::move(t));
}

void FinStructure::remove_tuple(const std::string& rel, const Tuple& t) {
    auto it = rels_.find(rel);
    if (it == rels_.end()) throw Error("undeclared relation symbol " + rel);
    it->second.erase(t);
}

void FinStructure::set_relation(const std::string& rel, std::set<Tuple> tuples) {
    auto it = rels_.find(rel);
    if (it == rels_.end()) throw Error("undeclared relation symbol " + rel);
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != vocab_.arity(rel)) throw Error("arity mismatch for " + rel);
        for (int e : t)
            if (e < 1 || e > size_) throw Error("tuple entry out of universe in " + rel);
    }
    it->second = std::move(tuples);
}

bool FinStructure::has(const std::string& rel, const Tuple& t) const {
    return relation(rel).count(t) > 0;
}

const std::set<Tuple>& FinStructure::relation(const std::string& rel) const {
    auto it = rels_.find(rel);
    if (it == rels_.end()) throw Error("undeclared relation symbol " + rel);
    return it->second;
}

FinStructure induced_substructure(const FinStructure& a, const std::vector<int>& elems) {
    if (elems.empty()) throw Error("induced substructure needs a nonempty element set");
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        int e = elems[i];
        if (e < 1 || e > a.size()) throw Error("element out of universe");
        if (i > 0 && elems[i - 1] >= e) throw Error("element set must be strictly increasing");
        relabel[e] = static_cast<int>(i) + 1;
    }
    FinStructure out(a.vocab(), static_cast<int>(elems.size()));
    for (const auto& sym : a.vocab().symbols()) {
        for (const auto& t : a.relation(sym.name)) {
            Tuple mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (int e : t) {
                auto it = relabel.find(e);
                if (it == relabel.end()) {
                    inside = false;
                    break;
                }
                mapped.push_back(it->second);
            }
            if (inside) out.add_tuple(sym.name, std::move(mapped));
        }
    }
    return out;
}

bool is_lt_substructure(const FinStructure& b, const FinStructure& a,
                        const std::vector<int>& embedding) {
    if (b.vocab() != a.vocab()) throw Error("vocabulary mismatch");
    if (!b.vocab().contains("<")) throw Error("vocabulary does not contain <");
    if (static_cast<int>(embedding.size()) != b.size()) throw Error("embedding size mismatch");
    std::set<int> image;
    for (int e : embedding) {
        if (e < 1 || e > a.size()) throw Error("embedding target out of universe");
        if (!image.insert(e).second) throw Error("embedding not injective");
    }
    auto map_tuple = [&](const Tuple& t) {
        Tuple m;
        m.reserve(t.size());
        for (int e : t) m.push_back(embedding[e - 1]);
        return m;
    };
    for (const auto& sym : b.vocab().symbols()) {
        if (sym.name == "<") continue;
        for (const auto& t : b.relation(sym.name))
            if (!a.has(sym.name, map_tuple(t))) return false;
    }
    for (int i = 1; i <= b.size(); ++i)
        for (int j = 1; j <= b.size(); ++j) {
            bool in_b = b.has("<", {i, j});
            bool in_a = a.has("<", {embedding[i - 1], embedding[j - 1]});
            if (in_b != in_a) return false;
        }
    return true;
}

namespace {

// Position-wise incidence counts refined by neighbor multisets over binary
// relations; used only to prune the isomorphism backtracking.
std::vector<std::uint64_t> invariant_labels(const FinStructure& s) {
    auto combine = [](std::uint64_t h, std::uint64_t v) {
        return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    };
    int n = s.size();
    std::vector<std::uint64_t> label(n, 1);
    // order-independent accumulation: incident tuples arrive in an order
    // that depends on the labeling
    for (const auto& sym : s.vocab().symbols()) {
        std::uint64_t sh = std::hash<std::string>{}(sym.name);
        for (const auto& t : s.relation(sym.name))
            for (std::size_t p = 0; p < t.size(); ++p)
                label[t[p] - 1] += combine(sh, p + 1);
    }
    for (int round = 0; round < 2; ++round) {
        std::vector<std::uint64_t> next = label;
        for (const auto& sym : s.vocab().symbols()) {
            if (sym.arity != 2) continue;
            std::uint64_t sh = std::hash<std::string>{}(sym.name);
            std::vector<std::vector<std::uint64_t>> feats(n);
            for (const auto& t : s.relation(sym.name)) {
                feats[t[0] - 1].push_back(combine(sh, combine(1, label[t[1] - 1])));
                feats[t[1] - 1].push_back(combine(sh, combine(2, label[t[0] - 1])));
            }
            for (int v = 0; v < n; ++v)
                for (auto fv : feats[v]) next[v] += fv;  // commutative on purpose
        }
        label = next;
    }
    return label;
}

struct IsoSearch {
    const FinStructure& a;
    const FinStructure& b;
    std::vector<std::uint64_t> la, lb;
    std::vector<int> map;      // a-element -> b-element (0 = unassigned)
    std::vector<bool> used_b;
    // tuples of a bucketed by their maximum element, checked as soon as
    // that element is assigned
    std::vector<std::vector<std::pair<const std::string*, const Tuple*>>> buckets;

    bool extend(int i) {
        int n = a.size();
        if (i > n) return true;
        for (int cand = 1; cand <= n; ++cand) {
            if (used_b[cand - 1] || la[i - 1] != lb[cand - 1]) continue;
            map[i - 1] = cand;
            used_b[cand - 1] = true;
            bool ok = true;
            for (const auto& [rel, t] : buckets[i]) {
                Tuple m;
                m.reserve(t->size());
                for (int e : *t) m.push_back(map[e - 1]);
                if (!b.has(*rel, m)) {
                    ok = false;
                    break;
                }
            }
            if (ok && extend(i + 1)) return true;
            used_b[cand - 1] = false;
            map[i - 1] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FinStructure& a, const FinStructure& b) {
    if (a.vocab() != b.vocab()) throw Error("vocabulary mismatch");
    if (a.size() != b.size()) return std::nullopt;
    for (const auto& sym : a.vocab().symbols())
        if (a.relation(sym.name).size() != b.relation(sym.name).size()) return std::nullopt;
    IsoSearch search{a, b, invariant_labels(a), invariant_labels(b), {}, {}, {}};
    {
        auto sa = search.la, sb = search.lb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    search.map.assign(a.size(), 0);
    search.used_b.assign(a.size(), false);
    search.buckets.assign(a.size() + 1, {});
    for (const auto& sym : a.vocab().symbols())
        for (const auto& t : a.relation(sym.name)) {
            int mx = *std::max_element(t.begin(), t.end());
            search.buckets[mx].emplace_back(&sym.name, &t);
        }
    if (!search.extend(1)) return std::nullopt;
    return search.map;
}

bool isomorphic(const FinStructure& a, const FinStructure& b) {
    return find_isomorphism(a, b).has_value();
}

std::vector<Tuple> all_tuples(int n, int arity) {
    std::vector<Tuple> out;
    Tuple cur(arity, 1);
    for (;;) {
        out.push_back(cur);
        int i = arity - 1;
        while (i >= 0 && cur[i] == n) cur[i--] = 1;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

namespace {

void enumerate_rec(const Vocabulary& vocab, int size, std::size_t sym_index,
                   const std::vector<std::vector<Tuple>>& tuple_space, FinStructure& work,
                   const std::function<bool(const FinStructure&)>& pred,
                   const std::function<bool(const FinStructure&)>& fn, bool& keep_going) {
    if (!keep_going) return;
    if (sym_index == vocab.symbols().size()) {
        if (pred(work)) keep_going = fn(work);
        return;
    }
    const auto& tuples = tuple_space[sym_index];
    if (tuples.size() > 62) throw Error("relation too large to enumerate exhaustively");
    const std::string& rel = vocab.symbols()[sym_index].name;
    for (std::uint64_t mask = 0; mask < (1ULL << tuples.size()); ++mask) {
        std::set<Tuple> content;
        for (std::size_t bit = 0; bit < tuples.size(); ++bit)
            if (mask & (1ULL << bit)) content.insert(tuples[bit]);
        work.set_relation(rel, std::move(content));
        enumerate_rec(vocab, size, sym_index + 1, tuple_space, work, pred, fn, keep_going);
        if (!keep_going) return;
    }
    work.set_relation(rel, {});
}

}  // namespace

void for_each_structure(const Vocabulary& vocab, int max_size,
                        const std::function<bool(const FinStructure&)>& pred,
                        const std::function<bool(const FinStructure&)>& fn) {
    if (max_size < 1) throw Error("max_size must be at least 1");
    bool keep_going = true;
    for (int size = 1; size <= max_size && keep_going; ++size) {
        std::vector<std::vector<Tuple>> tuple_space;
        for (const auto& sym : vocab.symbols()) tuple_space.push_back(all_tuples(size, sym.arity));
        FinStructure work(vocab, size);
        enumerate_rec(vocab, size, 0, tuple_space, work, pred, fn, keep_going);
    }
}

std::vector<FinStructure> enumerate_structures(const Vocabulary& vocab, int max_size,
                                               const std::function<bool(const FinStructure&)>& pred) {
    std::vector<FinStructure> out;
    for_each_structure(vocab, max_size, pred, [&](const FinStructure& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

FinStructure complete_ordering(int n) {
    FinStructure a(tau_0(), n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) a.add_tuple("<", {i, j});
    a.add_tuple("U_min", {1});
    a.add_tuple("U_max", {n});
    for (int i = 1; i < n; ++i) a.add_tuple("S", {i, i + 1});
    return a;
}

Graph::Graph(FinStructure s) : s_(std::move(s)) {
    if (s_.vocab() != tau_E()) throw Error("graph must be a tau_E structure");
    adj_.assign(s_.size(), {});
    for (const auto& t : s_.relation("E")) {
        if (t[0] == t[1]) throw Error("graph validation failed: loop at " + std::to_string(t[0]));
        if (!s_.has("E", {t[1], t[0]}))
            throw Error("graph validation failed: asymmetric edge (" + std::to_string(t[0]) + "," +
                        std::to_string(t[1]) + ")");
        adj_[t[0] - 1].push_back(t[1]);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::adjacent(int u, int v) const {
    const auto& nb = adj_[u - 1];
    return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

// BFS distances from src, treating `avoid` as deleted; -1 = unreachable.
std::vector<int> bfs_dist(const Graph& g, int src, const std::set<int>* avoid) {
    std::vector<int> dist(g.size(), -1);
    if (avoid && avoid->count(src)) return dist;
    dist[src - 1] = 0;
    std::queue<int> q;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.neighbors(u)) {
            if (dist[w - 1] >= 0 || (avoid && avoid->count(w))) continue;
            dist[w - 1] = dist[u - 1] + 1;
            q.push(w);
        }
    }
    return dist;
}

struct CycleSearch {
    const Graph& g;
    int origin;
    int r;
    const std::set<int>* avoid;
    std::vector<int> dist_to_origin;
    std::vector<int> path;
    std::vector<bool> used;

    bool extend() {
        int len = static_cast<int>(path.size());
        int last = path.back();
        if (len == r) return g.adjacent(last, origin);
        for (int w : g.neighbors(last)) {
            if (used[w - 1] || w == origin || (avoid && avoid->count(w))) continue;
            // After adding w the cycle still needs r - len edges back to the
            // origin; BFS distance is a lower bound on that.
            if (dist_to_origin[w - 1] < 0 || dist_to_origin[w - 1] > r - len) continue;
            path.push_back(w);
            used[w - 1] = true;
            if (extend()) return true;
            used[w - 1] = false;
            path.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_cycle_through(const Graph& g, int v, int r,
                                                   const std::set<int>* avoid) {
    if (r < 3) throw Error("cycle length must be at least 3");
    if (v < 1 || v > g.size() || (avoid && avoid->count(v))) return std::nullopt;
    CycleSearch cs{g, v, r, avoid, bfs_dist(g, v, avoid), {v}, std::vector<bool>(g.size(), false)};
    cs.used[v - 1] = true;
    if (cs.extend()) return cs.path;
    return std::nullopt;
}

namespace {

struct PathEarSearch {
    const Graph& g;
    int target;
    int r, s;
    const std::vector<bool>* ear_gate;
    std::vector<int> dist_to_target;
    std::vector<int> path;
    std::vector<bool> used;
    PathEarWitness result;

    bool try_close() {
        // path holds z0..z_{r-1}; complete with z_r = target and search the
        // ear on a neighbor of z_{r-1}.
        int zprev = path.back();
        if (!g.adjacent(zprev, target)) return false;
        path.push_back(target);
        std::set<int> zset(path.begin(), path.end());
        for (int w1 : g.neighbors(zprev)) {
            if (zset.count(w1) || (ear_gate && !(*ear_gate)[w1])) continue;  // gate indexed by vertex
            if (auto ear = find_cycle_through(g, w1, s, &zset)) {
                result.path = path;
                result.ear = *ear;
                path.pop_back();
                return true;
            }
        }
        path.pop_back();
        return false;
    }

    bool extend() {
        int len = static_cast<int>(path.size());  // vertices placed: z0..z_{len-1}
        if (len == r) return try_close();
        int last = path.back();
        for (int w : g.neighbors(last)) {
            if (used[w - 1] || w == target) continue;
            if (dist_to_target[w - 1] < 0 || dist_to_target[w - 1] > r - len) continue;
            path.push_back(w);
            used[w - 1] = true;
            if (extend()) return true;
            used[w - 1] = false;
            path.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<PathEarWitness> find_path_with_ear(const Graph& g, int a, int b, int r, int s,
                                                 const std::vector<bool>* ear_gate) {
    if (r < 3 || s < 3) throw Error("path and ear lengths must be at least 3");
    if (a == b || a < 1 || b < 1 || a > g.size() || b > g.size()) return std::nullopt;
    PathEarSearch ps{g,  b, r, s, ear_gate, bfs_dist(g, b, nullptr),
                     {a}, std::vector<bool>(g.size(), false), {}};
    if (ps.dist_to_target[a - 1] < 0 || ps.dist_to_target[a - 1] > r) return std::nullopt;
    ps.used[a - 1] = true;
    if (ps.extend()) return ps.result;
    return std::nullopt;
}

}  // namespace finmod
