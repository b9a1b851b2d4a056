#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulam/distance.hpp"
#include "ulam/majority_graph.hpp"
#include "ulam/rational.hpp"
#include "ulam/types.hpp"

namespace ulam {

enum class CycleStrategy {
    GlobalMin,  // repeatedly delete a globally minimum-length cycle
    PerVertex,  // one pass over vertices, deleting a shortest cycle through each
};

struct MedianResult {
    std::vector<int> median;  // one-line sequence; a permutation for the Ulam metric
    Metric metric = Metric::Ulam;
    long long objective = 0;
    std::string algorithm;
    std::optional<std::size_t> source_index;  // set when the median is an input element

    Permutation as_permutation() const { return Permutation(median); }
};

// Called after the initial graph build and after every cycle deletion.
using GraphStageObserver = std::function<void(const MajorityGraph&)>;

namespace detail {

template <typename Seq, typename DistanceFn>
MedianResult best_from_input_impl(const std::vector<Seq>& S, Metric metric, DistanceFn&& dist) {
    if (S.empty()) throw std::invalid_argument("empty input set");
    const std::size_t m = S.size();
    // One pairwise matrix, reused for all m objectives.
    std::vector<long long> obj(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const long long d = dist(S[i], S[j]);
            obj[i] += d;
            obj[j] += d;
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (obj[i] < obj[best]) best = i;
    }
    MedianResult r;
    r.median = S[best].elems();
    r.metric = metric;
    r.objective = obj[best];
    r.algorithm = "best-from-input";
    r.source_index = best;
    return r;
}

}  // namespace detail

// The folklore (2 - 1/(m+1))-approximation: return the input element with the
// smallest objective; ties go to the smallest index.
inline MedianResult best_from_input(const std::vector<Permutation>& S) {
    return detail::best_from_input_impl(S, Metric::Ulam,
                                        [](const Permutation& a, const Permutation& b) { return ulam_distance(a, b); });
}

inline MedianResult best_from_input(const std::vector<SymbolString>& S) {
    for (const auto& s : S) {
        if (s.length() != S.front().length()) throw std::invalid_argument("dimension mismatch");
    }
    return detail::best_from_input_impl(S, Metric::EditIndel,
                                        [](const SymbolString& a, const SymbolString& b) { return edit_distance_indel(a, b); });
}

// Majority graph -> iterative cycle deletion -> topological order, with the
// symbols dropped during deletion appended in ascending numeric order. Always
// yields a valid permutation of {1..n}.
inline Permutation relative_order(const std::vector<Permutation>& S, const Rational& alpha,
                                  CycleStrategy strategy = CycleStrategy::PerVertex,
                                  const GraphStageObserver& observer = {}) {
    MajorityGraph g = build_majority_graph(S, alpha);
    if (observer) observer(g);
    const int n = g.n();

    if (strategy == CycleStrategy::GlobalMin) {
        while (auto c = g.find_min_cycle()) {
            g.remove_vertices(c->vertices);
            if (observer) observer(g);
        }
    } else {
        // Cycles live entirely inside strongly connected components, so
        // vertices in singleton components are skipped without a BFS. The
        // affected component is re-decomposed after each deletion.
        std::vector<int> comp(static_cast<std::size_t>(n) + 1, -1);
        std::vector<int> comp_size;
        comp_size = g.assign_sccs(g.alive_vertices(), comp, 0);
        for (int v = 1; v <= n; ++v) {
            if (!g.alive(v)) continue;
            const int cid = comp[static_cast<std::size_t>(v)];
            if (comp_size[static_cast<std::size_t>(cid)] < 2) continue;
            auto c = g.shortest_cycle_through(v, &comp);
            if (!c) continue;
            g.remove_vertices(c->vertices);
            if (observer) observer(g);
            std::vector<int> remaining;
            for (int u = 1; u <= n; ++u) {
                if (g.alive(u) && comp[static_cast<std::size_t>(u)] == cid) remaining.push_back(u);
            }
            const int first_id = static_cast<int>(comp_size.size());
            const std::vector<int> sizes = g.assign_sccs(remaining, comp, first_id);
            comp_size.insert(comp_size.end(), sizes.begin(), sizes.end());
        }
    }

    std::vector<int> order = g.topological_order_min_id();
    for (int v = 1; v <= n; ++v) {
        if (!g.alive(v)) order.push_back(v);
    }
    return Permutation(std::move(order));
}

// Combined algorithm: the better of best_from_input and relative_order; ties
// go to best_from_input's answer.
inline MedianResult ulam_median_approx(const std::vector<Permutation>& S,
                                       const Rational& alpha = Rational(1, 10),
                                       CycleStrategy strategy = CycleStrategy::PerVertex) {
    MedianResult best = best_from_input(S);
    const Permutation ordered = relative_order(S, alpha, strategy);
    const long long ordered_obj = objective(S, ordered);
    if (ordered_obj < best.objective) {
        MedianResult r;
        r.median = ordered.elems();
        r.metric = Metric::Ulam;
        r.objective = ordered_obj;
        r.algorithm = "combined/relative-order";
        return r;
    }
    best.algorithm = "combined/best-from-input";
    return best;
}

}  // namespace ulam
