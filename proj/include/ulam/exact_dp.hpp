#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulam/alignment.hpp"
#include "ulam/distance.hpp"
#include "ulam/median_approx.hpp"
#include "ulam/types.hpp"

namespace ulam {

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DpCaps {
    std::optional<int> n_cap;  // default depends on m, see default_n_cap
    int m_cap = 4;
};

inline int default_n_cap(int m) {
    switch (m) {
        case 2: return 200;
        case 3: return 80;
        case 4: return 20;
        case 5: return 10;
        default: return 6;
    }
}

enum class RepairMode {
    ExactThree,  // m == 3: objective-preserving repair
    ApproxM,     // general m: 1.5-factor repair
};

// Result of the length-n median-string DP: the optimal string over [n]^n,
// its summed indel cost, and the per-input alignments read off the
// traceback's match transitions. alignments[i] pairs (position in S[i],
// position in value), 1-based.
struct DpMedianString {
    SymbolString value;
    long long total_indel_cost = 0;
    std::vector<AlignmentPairs> alignments;
};

namespace detail {

// Cell count is (n+1)^(m+1); the hard guard keeps the table under ~500 MB.
constexpr std::uint64_t kMaxDpCells = 80'000'000;

struct DpTable {
    int m = 0;
    int n = 0;
    std::uint64_t cells = 0;
    std::vector<std::uint64_t> stride;     // stride[t] for index i_t, t in 0..m-1; l has stride 1
    std::vector<std::uint32_t> cost;
    std::vector<std::uint8_t> back;        // bit7: advancing; bits 0..6: advance mask; 0xFF: base
    std::vector<std::uint8_t> symbol;      // chosen symbol for advancing transitions
};

inline void check_dp_caps(int m, int n, const DpCaps& caps) {
    if (m < 2) throw std::invalid_argument("DP needs at least 2 inputs");
    if (m > caps.m_cap) throw cap_exceeded("DP size exceeds cap: m=" + std::to_string(m) +
                                           ", cap " + std::to_string(caps.m_cap));
    if (m > 6) throw cap_exceeded("DP size exceeds cap: at most 6 inputs supported");
    const int n_cap = caps.n_cap.value_or(default_n_cap(m));
    if (n > n_cap) throw cap_exceeded("DP memory exceeds cap: n=" + std::to_string(n) +
                                      ", cap " + std::to_string(n_cap));
    if (n > 255) throw cap_exceeded("DP memory exceeds cap: n must be at most 255");
    std::uint64_t cells = 1;
    for (int t = 0; t < m + 1; ++t) {
        cells *= static_cast<std::uint64_t>(n) + 1;
        if (cells > kMaxDpCells) {
            throw cap_exceeded("DP memory exceeds cap: table would need more than " +
                               std::to_string(kMaxDpCells) + " cells");
        }
    }
}

}  // namespace detail

// STEP 1 of the exact-median algorithm: the string x' of length exactly n
// over alphabet [n] minimizing the summed indel distance to the inputs,
// computed by an (m+1)-dimensional DP with unit insert/delete costs and
// cost-2 mismatches. Transitions either emit a median symbol (advancing a
// chosen subset of the inputs) or delete input characters; emitted-symbol
// candidates are restricted to the advanced inputs' current characters,
// which dominate all others.
inline DpMedianString dp_length_n_median(const std::vector<Permutation>& S, const DpCaps& caps = {}) {
    const int m = static_cast<int>(S.size());
    if (m < 1) throw std::invalid_argument("empty input set");
    const int n = S.front().size();
    for (const auto& x : S) {
        if (x.size() != n) throw std::invalid_argument("dimension mismatch");
    }
    detail::check_dp_caps(m, n, caps);

    detail::DpTable tab;
    tab.m = m;
    tab.n = n;
    tab.stride.assign(static_cast<std::size_t>(m), 0);
    std::uint64_t s = static_cast<std::uint64_t>(n) + 1;  // innermost: l
    for (int t = m - 1; t >= 0; --t) {
        tab.stride[static_cast<std::size_t>(t)] = s;
        s *= static_cast<std::uint64_t>(n) + 1;
    }
    tab.cells = s;
    constexpr std::uint32_t kInf = 0xFFFFFFFFu;
    tab.cost.assign(tab.cells, kInf);
    tab.back.assign(tab.cells, 0xFF);
    tab.symbol.assign(tab.cells, 0);
    tab.cost[0] = 0;

    const int masks = 1 << m;
    std::vector<int> idx(static_cast<std::size_t>(m), 0);  // current (i_1..i_m)
    std::vector<int> cur(static_cast<std::size_t>(m), 0);  // current characters x_t(i_t)

    // Lexicographic sweep over (i_1..i_m), l innermost: every predecessor has
    // already been finalized when a cell is visited.
    while (true) {
        std::uint64_t base = 0;
        for (int t = 0; t < m; ++t) {
            base += static_cast<std::uint64_t>(idx[static_cast<std::size_t>(t)]) * tab.stride[static_cast<std::size_t>(t)];
            cur[static_cast<std::size_t>(t)] =
                idx[static_cast<std::size_t>(t)] > 0
                    ? S[static_cast<std::size_t>(t)].elems()[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)]) - 1]
                    : 0;
        }
        int avail_mask = 0;
        for (int t = 0; t < m; ++t) {
            if (idx[static_cast<std::size_t>(t)] > 0) avail_mask |= 1 << t;
        }

        for (int l = 0; l <= n; ++l) {
            const std::uint64_t cell = base + static_cast<std::uint64_t>(l);
            std::uint32_t best = cell == 0 ? 0 : kInf;
            std::uint8_t best_back = 0xFF;
            std::uint8_t best_symbol = 0;

            if (l >= 1) {
                // Advancing transitions: subset T of inputs consumes its
                // current character against the emitted symbol a.
                for (int mask = 0; mask < masks; ++mask) {
                    if ((mask & avail_mask) != mask) continue;
                    std::uint64_t from = cell - 1;
                    int inserts = m;
                    for (int t = 0; t < m; ++t) {
                        if (mask & (1 << t)) {
                            from -= tab.stride[static_cast<std::size_t>(t)];
                            --inserts;
                        }
                    }
                    const std::uint32_t from_cost = tab.cost[from];
                    if (from_cost == kInf) continue;
                    if (mask == 0) {
                        // pure insertion; the symbol is immaterial, fixed to 1
                        const std::uint32_t c = from_cost + static_cast<std::uint32_t>(m);
                        if (c < best) {
                            best = c;
                            best_back = 0x80;
                            best_symbol = 1;
                        }
                        continue;
                    }
                    for (int t = 0; t < m; ++t) {
                        if (!(mask & (1 << t))) continue;
                        const int a = cur[static_cast<std::size_t>(t)];
                        bool seen = false;
                        for (int u = 0; u < t; ++u) {
                            if ((mask & (1 << u)) && cur[static_cast<std::size_t>(u)] == a) {
                                seen = true;
                                break;
                            }
                        }
                        if (seen) continue;
                        std::uint32_t c = from_cost + static_cast<std::uint32_t>(inserts);
                        for (int u = 0; u < m; ++u) {
                            if ((mask & (1 << u)) && cur[static_cast<std::size_t>(u)] != a) c += 2;
                        }
                        if (c < best) {
                            best = c;
                            best_back = static_cast<std::uint8_t>(0x80 | mask);
                            best_symbol = static_cast<std::uint8_t>(a);
                        }
                    }
                }
            }
            // Deletion transitions: a nonempty subset T of inputs drops its
            // current character, one unit each; l is unchanged.
            for (int mask = 1; mask < masks; ++mask) {
                if ((mask & avail_mask) != mask) continue;
                std::uint64_t from = cell;
                std::uint32_t c = 0;
                for (int t = 0; t < m; ++t) {
                    if (mask & (1 << t)) {
                        from -= tab.stride[static_cast<std::size_t>(t)];
                        ++c;
                    }
                }
                if (tab.cost[from] == kInf) continue;
                c += tab.cost[from];
                if (c < best) {
                    best = c;
                    best_back = static_cast<std::uint8_t>(mask);
                }
            }

            if (cell != 0) {
                tab.cost[cell] = best;
                tab.back[cell] = best_back;
                tab.symbol[cell] = best_symbol;
            }
        }

        // odometer over (i_1..i_m)
        int t = m - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] == n) {
            idx[static_cast<std::size_t>(t)] = 0;
            --t;
        }
        if (t < 0) break;
        ++idx[static_cast<std::size_t>(t)];
    }

    // Traceback from the full cell.
    DpMedianString result;
    result.alignments.assign(static_cast<std::size_t>(m), {});
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    std::vector<int> at(static_cast<std::size_t>(m), n);
    std::uint64_t cell = tab.cells - 1;
    result.total_indel_cost = tab.cost[cell];
    int l = n;
    while (cell != 0) {
        const std::uint8_t b = tab.back[cell];
        if (b == 0xFF) throw std::logic_error("DP traceback hit an unreachable cell");
        const int mask = b & 0x7F;
        if (b & 0x80) {
            const int a = tab.symbol[cell];
            out.push_back(a);
            std::uint64_t prev = cell - 1;
            for (int t = 0; t < m; ++t) {
                if (mask & (1 << t)) {
                    if (S[static_cast<std::size_t>(t)].elems()[static_cast<std::size_t>(at[static_cast<std::size_t>(t)]) - 1] == a) {
                        result.alignments[static_cast<std::size_t>(t)].pairs.emplace_back(at[static_cast<std::size_t>(t)], l);
                    }
                    prev -= tab.stride[static_cast<std::size_t>(t)];
                    --at[static_cast<std::size_t>(t)];
                }
            }
            --l;
            cell = prev;
        } else {
            std::uint64_t prev = cell;
            for (int t = 0; t < m; ++t) {
                if (mask & (1 << t)) {
                    prev -= tab.stride[static_cast<std::size_t>(t)];
                    --at[static_cast<std::size_t>(t)];
                }
            }
            cell = prev;
        }
    }
    std::reverse(out.begin(), out.end());
    for (auto& a : result.alignments) std::reverse(a.pairs.begin(), a.pairs.end());
    result.value = SymbolString(std::move(out), n);
    return result;
}

// STEP 2: turn the DP string into a permutation. Duplicate symbols keep the
// occurrence with the most alignment matches (leftmost on ties); missing
// symbols are inserted right after the image of their closest matched
// predecessor in S[0] (at the front when no predecessor is matched). When
// x_prime is the DP optimum, the summed indel cost is preserved exactly for
// m == 3 and grows by at most a factor 3/2 in general; for an arbitrary
// x_prime the output's cost never exceeds these bounds relative to it.
inline Permutation permutation_repair(const SymbolString& x_prime, const std::vector<Permutation>& S,
                                      RepairMode mode,
                                      const std::vector<AlignmentPairs>* alignments = nullptr) {
    const int m = static_cast<int>(S.size());
    if (m < 1) throw std::invalid_argument("empty input set");
    if (mode == RepairMode::ExactThree && m != 3) {
        throw std::invalid_argument("exact repair requires exactly 3 inputs");
    }
    const int n = S.front().size();
    for (const auto& x : S) {
        if (x.size() != n) throw std::invalid_argument("dimension mismatch");
    }
    if (x_prime.length() != n) throw std::invalid_argument("length mismatch");
    for (int v : x_prime.elems()) {
        if (v < 1 || v > n) throw std::invalid_argument("alphabet mismatch");
    }
    if (alignments && static_cast<int>(alignments->size()) != m) {
        throw std::invalid_argument("alignment count mismatch");
    }

    if (x_prime.is_permutation()) return Permutation(x_prime.elems());

    std::vector<AlignmentPairs> local;
    if (!alignments) {
        local.reserve(static_cast<std::size_t>(m));
        for (const auto& x : S) {
            local.push_back(lcs_alignment(x.elems(), x_prime.elems()));
        }
        alignments = &local;
    }

    const std::vector<int>& xp = x_prime.elems();
    // matches per x_prime position (1-based)
    std::vector<int> match_count(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& a : *alignments) {
        for (const auto& [i, p] : a.pairs) {
            (void)i;
            ++match_count[static_cast<std::size_t>(p)];
        }
    }

    // Step i: for every repeated symbol keep the best-matched occurrence.
    std::vector<std::vector<int>> occ(static_cast<std::size_t>(n) + 1);
    for (int p = 1; p <= n; ++p) occ[static_cast<std::size_t>(xp[static_cast<std::size_t>(p - 1)])].push_back(p);
    std::vector<char> keep(static_cast<std::size_t>(n) + 1, 1);
    for (int symb = 1; symb <= n; ++symb) {
        const auto& positions = occ[static_cast<std::size_t>(symb)];
        if (positions.size() < 2) continue;
        int best = positions.front();
        for (int p : positions) {
            if (match_count[static_cast<std::size_t>(p)] > match_count[static_cast<std::size_t>(best)]) best = p;
        }
        for (int p : positions) {
            if (p != best) keep[static_cast<std::size_t>(p)] = 0;
        }
    }

    std::vector<int> reduced;  // x''
    std::vector<int> new_pos(static_cast<std::size_t>(n) + 1, 0);
    for (int p = 1; p <= n; ++p) {
        if (keep[static_cast<std::size_t>(p)]) {
            reduced.push_back(xp[static_cast<std::size_t>(p - 1)]);
            new_pos[static_cast<std::size_t>(p)] = static_cast<int>(reduced.size());
        }
    }

    // A'_1 as a map: position j in S[0] -> current position in reduced.
    const std::vector<int>& x1 = S.front().elems();
    std::vector<int> match_of_x1(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [j, p] : (*alignments)[0].pairs) {
        if (keep[static_cast<std::size_t>(p)]) match_of_x1[static_cast<std::size_t>(j)] = new_pos[static_cast<std::size_t>(p)];
    }

    std::vector<char> present(static_cast<std::size_t>(n) + 1, 0);
    for (int v : reduced) present[static_cast<std::size_t>(v)] = 1;

    // Step ii: insert each missing symbol after the matched image of its
    // nearest matched predecessor in S[0].
    for (int l = 1; l <= n; ++l) {
        const int symb = x1[static_cast<std::size_t>(l - 1)];
        if (present[static_cast<std::size_t>(symb)]) continue;
        int k = 0;
        for (int j = l - 1; j >= 1; --j) {
            if (match_of_x1[static_cast<std::size_t>(j)] != 0) {
                k = match_of_x1[static_cast<std::size_t>(j)];
                break;
            }
        }
        reduced.insert(reduced.begin() + k, symb);
        for (int j = 1; j <= n; ++j) {
            if (match_of_x1[static_cast<std::size_t>(j)] > k) ++match_of_x1[static_cast<std::size_t>(j)];
        }
        match_of_x1[static_cast<std::size_t>(l)] = k + 1;
        present[static_cast<std::size_t>(symb)] = 1;
    }

    return Permutation(std::move(reduced));
}

// Exact Ulam median of three permutations: length-n DP plus the
// objective-preserving repair. The reported objective counts Ulam moves.
inline MedianResult exact_median_3(const Permutation& x1, const Permutation& x2,
                                   const Permutation& x3, const DpCaps& caps = {}) {
    const std::vector<Permutation> S{x1, x2, x3};
    const DpMedianString dp = dp_length_n_median(S, caps);
    const Permutation repaired = permutation_repair(dp.value, S, RepairMode::ExactThree, &dp.alignments);
    MedianResult r;
    r.median = repaired.elems();
    r.metric = Metric::Ulam;
    r.objective = objective(S, repaired);
    r.algorithm = "exact-3";
    return r;
}

// 1.5-approximate Ulam median for m permutations via the same DP plus the
// general repair.
inline MedianResult median_m_dp(const std::vector<Permutation>& S, const DpCaps& caps = {}) {
    const DpMedianString dp = dp_length_n_median(S, caps);
    const Permutation repaired = permutation_repair(dp.value, S, RepairMode::ApproxM, &dp.alignments);
    MedianResult r;
    r.median = repaired.elems();
    r.metric = Metric::Ulam;
    r.objective = objective(S, repaired);
    r.algorithm = "dp-median";
    return r;
}

}  // namespace ulam
