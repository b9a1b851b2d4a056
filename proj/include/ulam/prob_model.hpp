#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ulam/median_approx.hpp"
#include "ulam/random.hpp"
#include "ulam/rational.hpp"
#include "ulam/types.hpp"

namespace ulam {

// Parameters of the perturbation model: every symbol is selected
// independently with probability epsilon and moved to a uniformly random
// destination. epsilon = 0 is the degenerate exact-copy model.
struct ModelParams {
    Rational epsilon;
    int m = 1;
    std::uint64_t seed = 0;

    void validate() const {
        if (epsilon.num() < 0 || epsilon >= Rational(1, 1)) {
            throw std::invalid_argument("epsilon out of [0, 1)");
        }
        if (m < 1) throw std::invalid_argument("m must be positive");
    }
};

// The moves that produced one sample, in application order (ascending moved
// symbol). destination == symbol is a recorded no-op.
struct PerturbationRecord {
    std::vector<std::pair<int, int>> moves;  // (moved symbol a, destination b(a))

    std::vector<int> sigma() const {
        std::vector<int> s;
        s.reserve(moves.size());
        for (const auto& [a, b] : moves) {
            (void)b;
            s.push_back(a);
        }
        return s;
    }
};

struct SampleSet {
    Permutation source;
    ModelParams params;
    std::vector<Permutation> samples;
    std::vector<PerturbationRecord> records;

    SampleSet(Permutation src, ModelParams p) : source(std::move(src)), params(std::move(p)) {}
};

// Replay a record on x: each move deletes symbol a from the current sequence
// and reinserts it immediately after the current position of its destination.
inline Permutation apply_record(const Permutation& x, const PerturbationRecord& record) {
    std::vector<int> cur = x.elems();
    for (const auto& [a, b] : record.moves) {
        if (a == b) continue;
        auto ita = std::find(cur.begin(), cur.end(), a);
        cur.erase(ita);
        auto itb = std::find(cur.begin(), cur.end(), b);
        cur.insert(itb + 1, a);
    }
    return Permutation(std::move(cur));
}

// Draw m perturbed copies of x. Sample i uses an independent substream of the
// seed: first a Bernoulli(epsilon) pass over the symbols in ascending order,
// then one uniform destination per selected symbol, then the moves are
// applied in ascending symbol order.
inline SampleSet generate(const Permutation& x, const ModelParams& params) {
    params.validate();
    const int n = x.size();
    SampleSet out(x, params);
    out.samples.reserve(static_cast<std::size_t>(params.m));
    out.records.reserve(static_cast<std::size_t>(params.m));
    for (int i = 0; i < params.m; ++i) {
        std::mt19937_64 eng = substream_engine(params.seed, static_cast<std::uint64_t>(i));
        PerturbationRecord rec;
        for (int a = 1; a <= n; ++a) {
            if (bernoulli_rational(eng, params.epsilon)) rec.moves.emplace_back(a, 0);
        }
        for (auto& [a, b] : rec.moves) {
            (void)a;
            b = 1 + static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(n)));
        }
        out.samples.push_back(apply_record(x, rec));
        out.records.push_back(std::move(rec));
    }
    return out;
}

// True iff a appears before b in at least half the samples (a count of
// exactly m/2 resolves to "precedes").
inline bool majority_precedes(const std::vector<Permutation>& S, int a, int b) {
    if (a == b) throw std::invalid_argument("symbols must differ");
    int count = 0;
    for (const auto& x : S) {
        const auto& e = x.elems();
        for (int v : e) {
            if (v == a) {
                ++count;
                break;
            }
            if (v == b) break;
        }
    }
    return 2 * count >= static_cast<int>(S.size());
}

// Subset size used by the large-m reconstruction: ceil(32 * log2 n).
inline int large_m_subset_size(int n) {
    if (n <= 1) return 1;
    const double raw = 32.0 * std::log2(static_cast<double>(n));
    return static_cast<int>(std::ceil(raw - 1e-9));
}

inline bool uses_large_m_branch(int n, int m) { return m >= large_m_subset_size(n); }

namespace detail {

// Hand-rolled merge sort: std::sort-family requires a strict weak ordering,
// which a majority vote need not satisfy, and we must return a valid
// permutation regardless.
inline void majority_merge_sort(std::vector<int>& items,
                                const std::vector<std::vector<int>>& positions, int lo, int hi,
                                std::vector<int>& scratch) {
    if (hi - lo < 2) return;
    const int mid = lo + (hi - lo) / 2;
    majority_merge_sort(items, positions, lo, mid, scratch);
    majority_merge_sort(items, positions, mid, hi, scratch);
    int i = lo, j = mid;
    scratch.clear();
    while (i < mid && j < hi) {
        const int a = items[static_cast<std::size_t>(i)];
        const int b = items[static_cast<std::size_t>(j)];
        int count = 0;
        for (const auto& pos : positions) {
            if (pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]) ++count;
        }
        if (2 * count >= static_cast<int>(positions.size())) {
            scratch.push_back(a);
            ++i;
        } else {
            scratch.push_back(b);
            ++j;
        }
    }
    while (i < mid) scratch.push_back(items[static_cast<std::size_t>(i++)]);
    while (j < hi) scratch.push_back(items[static_cast<std::size_t>(j++)]);
    std::copy(scratch.begin(), scratch.end(), items.begin() + lo);
}

}  // namespace detail

// Merge sort of the symbols under the majority-precedence comparator,
// evaluated over the first min(m, ceil(32 log2 n)) samples. Exact recovery of
// the source with probability at least 1 - 1/n in the model's regime.
inline Permutation reconstruct_large_m(const std::vector<Permutation>& S) {
    if (S.empty()) throw std::invalid_argument("empty input set");
    const int n = S.front().size();
    const int want = std::min(static_cast<int>(S.size()), large_m_subset_size(n));
    const int take = std::max(want, 1);
    std::vector<std::vector<int>> positions;
    positions.reserve(static_cast<std::size_t>(take));
    for (int i = 0; i < take; ++i) {
        if (S[static_cast<std::size_t>(i)].size() != n) throw std::invalid_argument("dimension mismatch");
        positions.push_back(S[static_cast<std::size_t>(i)].positions());
    }
    std::vector<int> items(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) items[static_cast<std::size_t>(v - 1)] = v;
    std::vector<int> scratch;
    scratch.reserve(items.size());
    detail::majority_merge_sort(items, positions, 0, n, scratch);
    return Permutation(std::move(items));
}

// Majority-graph ordering with alpha = 1/10 - epsilon, i.e. (1+delta)*epsilon
// for delta = 1/(10 epsilon) - 2. The distance guarantee kicks in below
// epsilon = 1/40; any epsilon < 1/10 keeps alpha in range and yields a valid
// permutation.
inline Permutation reconstruct_small_m(const std::vector<Permutation>& S, const Rational& epsilon) {
    if (S.empty()) throw std::invalid_argument("empty input set");
    if (epsilon.num() < 0 || Rational(1, 10) <= epsilon) {
        throw std::invalid_argument("epsilon out of [0, 1/10)");
    }
    const Rational alpha = Rational(1, 10) - epsilon;
    return relative_order(S, alpha, CycleStrategy::PerVertex);
}

// Branch by sample count: majority mergesort when m >= 32 log2 n, otherwise
// the relative-order route.
inline Permutation reconstruct(const std::vector<Permutation>& S, const Rational& epsilon) {
    if (S.empty()) throw std::invalid_argument("empty input set");
    const int n = S.front().size();
    const int m = static_cast<int>(S.size());
    if (uses_large_m_branch(n, m)) return reconstruct_large_m(S);
    return reconstruct_small_m(S, epsilon);
}

}  // namespace ulam
