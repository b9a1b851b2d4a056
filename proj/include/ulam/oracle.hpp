#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ulam/distance.hpp"
#include "ulam/exact_dp.hpp"
#include "ulam/types.hpp"

namespace ulam::oracle {

struct OracleResult {
    std::vector<int> optimum;  // lexicographically smallest argmin
    long long opt_value = 0;
    std::uint64_t search_space_size = 0;
    std::chrono::duration<double> elapsed{0};
};

struct PermutationSpace {
    static constexpr int kMaxN = 8;
};

struct StringSpace {
    int sigma = 0;
    int length = 0;
    static constexpr std::uint64_t kMaxCandidates = 1'000'000;
};

namespace detail {

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// saturates instead of overflowing; only compared against caps
inline std::uint64_t ipow_saturating(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        r *= b;
    }
    return r;
}

}  // namespace detail

// Exhaustive median over all permutations of [n]. Enumeration is
// lexicographic, so the first strict minimum encountered is the
// lexicographically smallest argmin; an objective of zero ends the scan.
inline OracleResult brute_force_median(const std::vector<std::vector<int>>& S, Metric metric, int n) {
    if (S.empty()) throw std::invalid_argument("empty input set");
    if (n > PermutationSpace::kMaxN) {
        throw cap_exceeded("oracle space too large: " + std::to_string(n) + "! = " +
                           std::to_string(detail::factorial(n)) + " permutations, cap n=" +
                           std::to_string(PermutationSpace::kMaxN));
    }
    const auto start = std::chrono::steady_clock::now();
    OracleResult r;
    r.search_space_size = detail::factorial(n);
    std::vector<int> candidate(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) candidate[static_cast<std::size_t>(i)] = i + 1;
    bool first = true;
    do {
        const long long obj = objective_raw(S, candidate, metric);
        if (first || obj < r.opt_value) {
            r.opt_value = obj;
            r.optimum = candidate;
            first = false;
            if (obj == 0) break;
        }
    } while (std::next_permutation(candidate.begin(), candidate.end()));
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

inline OracleResult brute_force_median(const std::vector<Permutation>& S) {
    std::vector<std::vector<int>> raw;
    raw.reserve(S.size());
    const int n = S.empty() ? 0 : S.front().size();
    for (const auto& x : S) {
        if (x.size() != n) throw std::invalid_argument("dimension mismatch");
        raw.push_back(x.elems());
    }
    return brute_force_median(raw, Metric::Ulam, n);
}

// Exhaustive length-L edit-median over all sigma^L strings.
inline OracleResult brute_force_median(const std::vector<SymbolString>& S, const StringSpace& space) {
    if (S.empty()) throw std::invalid_argument("empty input set");
    const std::uint64_t total = detail::ipow_saturating(static_cast<std::uint64_t>(space.sigma), space.length);
    if (total > StringSpace::kMaxCandidates) {
        throw cap_exceeded("oracle space too large: sigma^L = " + std::to_string(total) +
                           " strings, cap " + std::to_string(StringSpace::kMaxCandidates));
    }
    std::vector<std::vector<int>> raw;
    raw.reserve(S.size());
    for (const auto& x : S) raw.push_back(x.elems());

    const auto start = std::chrono::steady_clock::now();
    OracleResult r;
    r.search_space_size = total;
    std::vector<int> candidate(static_cast<std::size_t>(space.length), 1);
    bool first = true;
    for (std::uint64_t it = 0; it < total; ++it) {
        const long long obj = objective_raw(raw, candidate, Metric::EditIndel);
        if (first || obj < r.opt_value) {
            r.opt_value = obj;
            r.optimum = candidate;
            first = false;
            if (obj == 0) break;
        }
        // lexicographic odometer
        for (int i = space.length - 1; i >= 0; --i) {
            if (candidate[static_cast<std::size_t>(i)] < space.sigma) {
                ++candidate[static_cast<std::size_t>(i)];
                break;
            }
            candidate[static_cast<std::size_t>(i)] = 1;
        }
    }
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

// Literal reading of the Ulam distance: BFS over single-move neighbors until
// y is reached. Exists solely to certify the LIS-based distance.
inline int brute_force_ulam_bfs(const Permutation& x, const Permutation& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    const int n = x.size();
    if (n > 5) throw cap_exceeded("BFS distance capped at n=5, got n=" + std::to_string(n));
    if (x == y) return 0;

    const auto encode = [n](const std::vector<int>& p) {
        std::uint64_t code = 0;
        for (int v : p) code = code * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(v);
        return code;
    };
    const std::uint64_t target = encode(y.elems());
    std::unordered_map<std::uint64_t, int> dist;
    std::queue<std::vector<int>> frontier;
    dist[encode(x.elems())] = 0;
    frontier.push(x.elems());
    while (!frontier.empty()) {
        const std::vector<int> cur = std::move(frontier.front());
        frontier.pop();
        const int d = dist[encode(cur)];
        for (int i = 0; i < n; ++i) {
            std::vector<int> without = cur;
            const int symbol = without[static_cast<std::size_t>(i)];
            without.erase(without.begin() + i);
            for (int j = 0; j <= n - 1; ++j) {
                if (j == i) continue;  // reinserting in place is not a move
                std::vector<int> next = without;
                next.insert(next.begin() + j, symbol);
                const std::uint64_t code = encode(next);
                if (dist.count(code)) continue;
                dist[code] = d + 1;
                if (code == target) return d + 1;
                frontier.push(std::move(next));
            }
        }
    }
    throw std::logic_error("BFS exhausted without reaching the target");
}

struct RatioRow {
    std::string label;
    long long objective = 0;
    std::optional<double> ratio;  // objective / OPT when an oracle result is present
};

struct RatioReport {
    std::optional<long long> opt;
    std::vector<RatioRow> rows;
};

// Objective table for candidate medians, with ratios against the oracle
// optimum when one is supplied.
inline RatioReport ratio_report(const std::vector<std::vector<int>>& S,
                                const std::vector<std::pair<std::string, std::vector<int>>>& candidates,
                                Metric metric, const std::optional<OracleResult>& oracle = std::nullopt) {
    RatioReport rep;
    if (oracle) rep.opt = oracle->opt_value;
    for (const auto& [label, seq] : candidates) {
        RatioRow row;
        row.label = label;
        row.objective = objective_raw(S, seq, metric);
        if (oracle) {
            row.ratio = oracle->opt_value == 0
                            ? (row.objective == 0 ? 1.0 : std::numeric_limits<double>::infinity())
                            : static_cast<double>(row.objective) / static_cast<double>(oracle->opt_value);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace ulam::oracle
