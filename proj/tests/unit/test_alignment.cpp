#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ulam/alignment.hpp"
#include "ulam/random.hpp"

using namespace ulam;

namespace {

// Test-only oracle: enumerate every maximum monotone matching by recursion
// and keep the lexicographically smallest pair list. Independent of the
// suffix-table reconstruction it certifies.
void enumerate_matchings(const std::vector<int>& a, const std::vector<int>& b, std::size_t i,
                         std::size_t j, std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& all) {
    bool extended = false;
    for (std::size_t ii = i; ii < a.size(); ++ii) {
        for (std::size_t jj = j; jj < b.size(); ++jj) {
            if (a[ii] == b[jj]) {
                extended = true;
                cur.emplace_back(static_cast<int>(ii) + 1, static_cast<int>(jj) + 1);
                enumerate_matchings(a, b, ii + 1, jj + 1, cur, all);
                cur.pop_back();
            }
        }
    }
    if (!extended) all.push_back(cur);
}

std::vector<std::pair<int, int>> brute_canonical_lcs(const std::vector<int>& a,
                                                     const std::vector<int>& b) {
    std::vector<std::vector<std::pair<int, int>>> all;
    std::vector<std::pair<int, int>> cur;
    enumerate_matchings(a, b, 0, 0, cur, all);
    std::size_t best_len = 0;
    for (const auto& w : all) best_len = std::max(best_len, w.size());
    std::vector<std::pair<int, int>> best;
    bool first = true;
    for (const auto& w : all) {
        if (w.size() != best_len) continue;
        if (first || w < best) {
            best = w;
            first = false;
        }
    }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("alignment");

TEST_CASE("lis of simple sequences") {
    CHECK(lis_length({}) == 0);
    CHECK(lis_length({5}) == 1);
    CHECK(lis_length({1, 2, 3, 4}) == 4);
    CHECK(lis_length({4, 3, 2, 1}) == 1);
    CHECK(lis_length({2, 3, 1}) == 2);
    CHECK(lis_length({3, 1, 2, 5, 4}) == 3);
}

TEST_CASE("lcs length of simple sequences") {
    CHECK(lcs_length({1, 2, 3}, {1, 2, 3}) == 3);
    CHECK(lcs_length({1, 2, 3}, {1, 3, 2}) == 2);
    CHECK(lcs_length({1, 2}, {2, 1}) == 1);
    CHECK(lcs_length({}, {1, 2}) == 0);
    CHECK(lcs_length({1, 1, 2, 2}, {2, 2, 1, 1}) == 2);
}

TEST_CASE("canonical alignment on the contract examples") {
    CHECK(lcs_alignment({1, 2, 3}, {1, 2, 3}).pairs ==
          std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}});
    CHECK(lcs_alignment({1, 2, 3}, {2, 3, 1}).pairs ==
          std::vector<std::pair<int, int>>{{2, 1}, {3, 2}});
    // both length-1 witnesses exist; the smallest first-sequence index wins
    CHECK(lcs_alignment({2, 1}, {1, 2}).pairs == std::vector<std::pair<int, int>>{{1, 2}});
}

TEST_CASE("canonical alignment matches the brute-force enumeration") {
    std::mt19937_64 eng = substream_engine(20240801, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int la = 1 + static_cast<int>(uniform_below(eng, 6));
        const int lb = 1 + static_cast<int>(uniform_below(eng, 6));
        const int sigma = 1 + static_cast<int>(uniform_below(eng, 4));
        std::vector<int> a(static_cast<std::size_t>(la)), b(static_cast<std::size_t>(lb));
        for (auto& v : a) v = 1 + static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(sigma)));
        for (auto& v : b) v = 1 + static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(sigma)));
        const auto got = lcs_alignment(a, b).pairs;
        const auto want = brute_canonical_lcs(a, b);
        REQUIRE_MESSAGE(got == want, "sequences a/b disagree on trial ", trial);
    }
}

TEST_CASE("alignment output is monotone and value-matching") {
    std::mt19937_64 eng = substream_engine(20240801, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(eng, 12));
        const auto x = random_permutation(eng, n);
        const auto y = random_permutation(eng, n);
        const auto a = lcs_alignment(x, y);
        CHECK(alignment_is_valid(a, x.elems(), y.elems()));
        CHECK(static_cast<int>(a.pairs.size()) == lcs_length(x.elems(), y.elems()));
    }
}

TEST_SUITE_END();
