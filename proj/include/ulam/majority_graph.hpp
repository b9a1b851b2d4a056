#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ulam/rational.hpp"
#include "ulam/types.hpp"

namespace ulam {

struct Cycle {
    int length = 0;
    std::vector<int> vertices;  // in traversal order, starting at the BFS root
};

// Directed precedence-majority graph over the symbols {1..n}: edge (i,j) is
// present iff i appears before j in at least (1-2*alpha)*m of the input
// permutations. The threshold test is exact integer arithmetic. Vertices are
// removed (never added) during cycle deletion; dead vertices stay in the
// adjacency lists and are filtered on traversal.
class MajorityGraph {
public:
    MajorityGraph(int n, int m, Rational alpha)
        : n_(n), m_(m), alpha_(alpha),
          out_(static_cast<std::size_t>(n) + 1),
          in_(static_cast<std::size_t>(n) + 1),
          alive_(static_cast<std::size_t>(n) + 1, 1),
          alive_count_(n) {
        alive_[0] = 0;
        // smallest integer count c with c*q >= (q - 2p)*m
        const std::int64_t p = alpha.num(), q = alpha.den();
        threshold_count_ = ((q - 2 * p) * m + q - 1) / q;
    }

    int n() const { return n_; }
    int m() const { return m_; }
    Rational alpha() const { return alpha_; }
    std::int64_t threshold_count() const { return threshold_count_; }

    bool alive(int v) const { return alive_[static_cast<std::size_t>(v)] != 0; }
    int alive_count() const { return alive_count_; }

    std::vector<int> alive_vertices() const {
        std::vector<int> vs;
        vs.reserve(static_cast<std::size_t>(alive_count_));
        for (int v = 1; v <= n_; ++v) {
            if (alive(v)) vs.push_back(v);
        }
        return vs;
    }

    // Raw adjacency (includes dead endpoints; callers filter with alive()).
    const std::vector<int>& out_neighbors(int v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& in_neighbors(int v) const { return in_[static_cast<std::size_t>(v)]; }

    void add_edge(int i, int j) {
        out_[static_cast<std::size_t>(i)].push_back(j);
        in_[static_cast<std::size_t>(j)].push_back(i);
    }

    void sort_adjacency() {
        for (auto& l : out_) std::sort(l.begin(), l.end());
        for (auto& l : in_) std::sort(l.begin(), l.end());
    }

    bool has_edge(int i, int j) const {
        if (!alive(i) || !alive(j)) return false;
        const auto& l = out_[static_cast<std::size_t>(i)];
        return std::binary_search(l.begin(), l.end(), j);
    }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (int v = 1; v <= n_; ++v) {
            if (!alive(v)) continue;
            for (int u : out_[static_cast<std::size_t>(v)]) {
                if (alive(u)) ++c;
            }
        }
        return c;
    }

    void remove_vertices(const std::vector<int>& vs) {
        for (int v : vs) {
            if (alive(v)) {
                alive_[static_cast<std::size_t>(v)] = 0;
                --alive_count_;
            }
        }
    }

    // Shortest directed cycle containing v: BFS over out-edges from v, then
    // close with any edge (u, v). Neighbors are explored in ascending id;
    // among equally short closings the earliest-discovered u wins, so the
    // result is deterministic.
    std::optional<Cycle> shortest_cycle_through(int v, const std::vector<int>* component = nullptr) const {
        if (!alive(v)) return std::nullopt;
        constexpr int kInf = std::numeric_limits<int>::max();
        std::vector<int> dist(static_cast<std::size_t>(n_) + 1, kInf);
        std::vector<int> parent(static_cast<std::size_t>(n_) + 1, 0);
        std::vector<int> order;
        order.reserve(64);
        std::queue<int> bfs;
        dist[static_cast<std::size_t>(v)] = 0;
        bfs.push(v);
        const int comp_v = component ? (*component)[static_cast<std::size_t>(v)] : 0;
        while (!bfs.empty()) {
            const int u = bfs.front();
            bfs.pop();
            order.push_back(u);
            for (int w : out_[static_cast<std::size_t>(u)]) {
                if (!alive(w) || dist[static_cast<std::size_t>(w)] != kInf) continue;
                if (component && (*component)[static_cast<std::size_t>(w)] != comp_v) continue;
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                parent[static_cast<std::size_t>(w)] = u;
                bfs.push(w);
            }
        }
        int best_u = 0, best_len = kInf;
        for (int u : order) {
            if (dist[static_cast<std::size_t>(u)] + 1 < best_len && has_edge(u, v)) {
                best_u = u;
                best_len = dist[static_cast<std::size_t>(u)] + 1;
            }
        }
        if (best_u == 0) return std::nullopt;
        Cycle c;
        c.length = best_len;
        std::vector<int> rev;
        for (int w = best_u; w != v; w = parent[static_cast<std::size_t>(w)]) rev.push_back(w);
        c.vertices.push_back(v);
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) c.vertices.push_back(*it);
        return c;
    }

    // Globally minimum-length cycle; ties broken by smallest root id, then
    // by the root's BFS discovery order inside shortest_cycle_through.
    std::optional<Cycle> find_min_cycle() const {
        std::optional<Cycle> best;
        for (int v = 1; v <= n_; ++v) {
            if (!alive(v)) continue;
            auto c = shortest_cycle_through(v);
            if (c && (!best || c->length < best->length)) {
                best = std::move(c);
                if (best->length == 2) break;  // nothing shorter exists
            }
        }
        return best;
    }

    std::optional<int> girth() const {
        auto c = find_min_cycle();
        if (!c) return std::nullopt;
        return c->length;
    }

    bool is_acyclic() const { return !find_min_cycle().has_value(); }

    // Kahn's algorithm with a min-id priority among zero-indegree vertices.
    // Requires the alive subgraph to be acyclic.
    std::vector<int> topological_order_min_id() const {
        std::vector<int> indeg(static_cast<std::size_t>(n_) + 1, 0);
        for (int v = 1; v <= n_; ++v) {
            if (!alive(v)) continue;
            for (int u : out_[static_cast<std::size_t>(v)]) {
                if (alive(u)) ++indeg[static_cast<std::size_t>(u)];
            }
        }
        std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
        for (int v = 1; v <= n_; ++v) {
            if (alive(v) && indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
        }
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(alive_count_));
        while (!ready.empty()) {
            const int v = ready.top();
            ready.pop();
            order.push_back(v);
            for (int u : out_[static_cast<std::size_t>(v)]) {
                if (alive(u) && --indeg[static_cast<std::size_t>(u)] == 0) ready.push(u);
            }
        }
        if (static_cast<int>(order.size()) != alive_count_) {
            throw std::logic_error("topological sort on a cyclic graph");
        }
        return order;
    }

    // Tarjan over the alive vertices in `candidates` (edges restricted to the
    // set), writing component ids >= first_id into comp. Returns the sizes of
    // the new components indexed from first_id.
    std::vector<int> assign_sccs(const std::vector<int>& candidates, std::vector<int>& comp,
                                 int first_id) const {
        constexpr int kUnvisited = -1;
        std::vector<int> index(static_cast<std::size_t>(n_) + 1, kUnvisited);
        std::vector<int> low(static_cast<std::size_t>(n_) + 1, 0);
        std::vector<char> onstack(static_cast<std::size_t>(n_) + 1, 0);
        std::vector<char> in_set(static_cast<std::size_t>(n_) + 1, 0);
        for (int v : candidates) {
            if (alive(v)) in_set[static_cast<std::size_t>(v)] = 1;
        }
        std::vector<int> stack, sizes;
        int next_index = 0, next_comp = first_id;

        struct Frame {
            int v;
            std::size_t edge;
        };
        std::vector<Frame> dfs;
        for (int root : candidates) {
            if (!in_set[static_cast<std::size_t>(root)] || index[static_cast<std::size_t>(root)] != kUnvisited) continue;
            dfs.push_back({root, 0});
            index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
            stack.push_back(root);
            onstack[static_cast<std::size_t>(root)] = 1;
            while (!dfs.empty()) {
                Frame& f = dfs.back();
                const auto& adj = out_[static_cast<std::size_t>(f.v)];
                bool descended = false;
                while (f.edge < adj.size()) {
                    const int w = adj[f.edge++];
                    if (!in_set[static_cast<std::size_t>(w)]) continue;
                    if (index[static_cast<std::size_t>(w)] == kUnvisited) {
                        index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next_index++;
                        stack.push_back(w);
                        onstack[static_cast<std::size_t>(w)] = 1;
                        dfs.push_back({w, 0});
                        descended = true;
                        break;
                    }
                    if (onstack[static_cast<std::size_t>(w)]) {
                        low[static_cast<std::size_t>(f.v)] =
                            std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
                    }
                }
                if (descended) continue;
                const int v = f.v;
                dfs.pop_back();
                if (!dfs.empty()) {
                    low[static_cast<std::size_t>(dfs.back().v)] =
                        std::min(low[static_cast<std::size_t>(dfs.back().v)], low[static_cast<std::size_t>(v)]);
                }
                if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                    int size = 0;
                    while (true) {
                        const int w = stack.back();
                        stack.pop_back();
                        onstack[static_cast<std::size_t>(w)] = 0;
                        comp[static_cast<std::size_t>(w)] = next_comp;
                        ++size;
                        if (w == v) break;
                    }
                    sizes.push_back(size);
                    ++next_comp;
                }
            }
        }
        return sizes;
    }

private:
    int n_;
    int m_;
    Rational alpha_;
    std::int64_t threshold_count_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<char> alive_;
    int alive_count_;
};

// Pairwise precedence counting in O(n^2 * m): one pass per permutation over
// its position array, accumulating into a triangular count matrix.
inline MajorityGraph build_majority_graph(const std::vector<Permutation>& S, const Rational& alpha) {
    if (alpha.num() <= 0 || Rational(1, 10) < alpha) {
        throw std::invalid_argument("alpha out of range (0, 1/10]");
    }
    if (S.empty()) throw std::invalid_argument("empty input set");
    const int n = S.front().size();
    for (const auto& x : S) {
        if (x.size() != n) throw std::invalid_argument("dimension mismatch");
    }
    const int m = static_cast<int>(S.size());
    if (m > std::numeric_limits<std::uint16_t>::max()) {
        throw std::invalid_argument("too many input permutations");
    }

    MajorityGraph g(n, m, alpha);
    const std::size_t pair_count = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<std::uint16_t> before(pair_count, 0);  // count of "i before j" for i < j
    for (const auto& x : S) {
        const std::vector<int> pos = x.positions();
        std::size_t at = 0;
        for (int i = 1; i <= n; ++i) {
            const int pi = pos[static_cast<std::size_t>(i)];
            for (int j = i + 1; j <= n; ++j, ++at) {
                before[at] += pi < pos[static_cast<std::size_t>(j)] ? 1 : 0;
            }
        }
    }

    const std::int64_t p = alpha.num(), q = alpha.den();
    const std::int64_t rhs = (q - 2 * p) * m;  // admit iff count * q >= rhs
    std::size_t at = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j, ++at) {
            const std::int64_t cij = before[at];
            const std::int64_t cji = m - cij;
            if (cij * q >= rhs) g.add_edge(i, j);
            if (cji * q >= rhs) g.add_edge(j, i);
        }
    }
    g.sort_adjacency();
    return g;
}

}  // namespace ulam
