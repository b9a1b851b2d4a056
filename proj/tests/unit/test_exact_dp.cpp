#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ulam/exact_dp.hpp"
#include "ulam/oracle.hpp"
#include "ulam/random.hpp"

using namespace ulam;

namespace {

long long summed_indel(const SymbolString& y, const std::vector<Permutation>& S) {
    long long total = 0;
    for (const auto& x : S) total += edit_distance_indel(SymbolString(x), y);
    return total;
}

// Independent check for the DP: minimum summed indel distance over every
// string in [n]^n, by plain enumeration.
long long brute_min_summed_indel(const std::vector<Permutation>& S) {
    const int n = S.front().size();
    std::vector<int> candidate(static_cast<std::size_t>(n), 1);
    long long best = -1;
    while (true) {
        const long long cost = summed_indel(SymbolString(candidate, n), S);
        if (best < 0 || cost < best) best = cost;
        int i = n - 1;
        while (i >= 0 && candidate[static_cast<std::size_t>(i)] == n) {
            candidate[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) break;
        ++candidate[static_cast<std::size_t>(i)];
    }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("exact dp");

TEST_CASE("dp on the contract examples") {
    const std::vector<Permutation> twins{Permutation({1, 2}), Permutation({1, 2})};
    auto r = dp_length_n_median(twins);
    CHECK(r.value.elems() == std::vector<int>{1, 2});
    CHECK(r.total_indel_cost == 0);

    const std::vector<Permutation> S1{Permutation({1, 2, 3}), Permutation({1, 2, 3}),
                                      Permutation({2, 1, 3})};
    r = dp_length_n_median(S1);
    CHECK(r.total_indel_cost == 2);
    CHECK(summed_indel(r.value, S1) == 2);

    const std::vector<Permutation> S2{Permutation({1, 2, 3}), Permutation({2, 3, 1}),
                                      Permutation({3, 1, 2})};
    r = dp_length_n_median(S2);
    CHECK(r.total_indel_cost == 4);
    CHECK(summed_indel(r.value, S2) == 4);
}

TEST_CASE("dp cost matches exhaustive enumeration at micro scale") {
    std::mt19937_64 eng = substream_engine(20240801, 12);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(eng, 2));  // n in {2,3}
        std::vector<Permutation> S;
        for (int i = 0; i < 3; ++i) S.push_back(random_permutation(eng, n));
        const auto r = dp_length_n_median(S);
        CHECK(r.total_indel_cost == brute_min_summed_indel(S));
        CHECK(summed_indel(r.value, S) == r.total_indel_cost);
        for (std::size_t i = 0; i < S.size(); ++i) {
            CHECK(alignment_is_valid(r.alignments[i], S[i].elems(), r.value.elems()));
        }
    }
}

TEST_CASE("dp traceback alignments are individually optimal") {
    std::mt19937_64 eng = substream_engine(20240801, 13);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(eng, 5));  // n up to 6
        std::vector<Permutation> S;
        for (int i = 0; i < 3; ++i) S.push_back(random_permutation(eng, n));
        const auto r = dp_length_n_median(S);
        for (std::size_t i = 0; i < S.size(); ++i) {
            CHECK(static_cast<int>(r.alignments[i].pairs.size()) ==
                  lcs_length(S[i].elems(), r.value.elems()));
        }
    }
}

TEST_CASE("dp string beats every permutation") {
    std::mt19937_64 eng = substream_engine(20240801, 14);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(eng, 3));  // n up to 4
        std::vector<Permutation> S;
        for (int i = 0; i < 3; ++i) S.push_back(random_permutation(eng, n));
        const auto r = dp_length_n_median(S);
        std::vector<int> candidate(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) candidate[static_cast<std::size_t>(i)] = i + 1;
        do {
            CHECK(r.total_indel_cost <= summed_indel(SymbolString(candidate, n), S));
        } while (std::next_permutation(candidate.begin(), candidate.end()));
    }
}

TEST_CASE("repair returns a permutation input unchanged") {
    const std::vector<Permutation> S{Permutation({2, 1}), Permutation({1, 2}), Permutation({2, 1})};
    const SymbolString already({2, 1}, 2);
    CHECK(permutation_repair(already, S, RepairMode::ExactThree).elems() == std::vector<int>{2, 1});
}

TEST_CASE("repair dedupes and inserts the missing symbol") {
    const std::vector<Permutation> S{Permutation({2, 1}), Permutation({2, 1})};
    const auto repaired = permutation_repair(SymbolString({2, 2}, 2), S, RepairMode::ApproxM);
    CHECK(repaired.elems() == std::vector<int>{2, 1});
}

TEST_CASE("repair of a non-optimal string never increases the summed cost") {
    // With a handcrafted (non-optimal) x', equality cannot be promised; the
    // exactness contract is exercised through the DP string below.
    const std::vector<Permutation> S{Permutation({1, 2, 3}), Permutation({1, 2, 3}),
                                     Permutation({1, 3, 2})};
    const SymbolString x_prime({1, 1, 3}, 3);
    const auto repaired = permutation_repair(x_prime, S, RepairMode::ExactThree);
    const long long before = summed_indel(x_prime, S);
    const long long after = summed_indel(SymbolString(repaired), S);
    CHECK(repaired.size() == 3);
    CHECK(after <= before);
}

TEST_CASE("repair preserves the dp cost exactly for three inputs") {
    std::mt19937_64 eng = substream_engine(20240801, 15);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(eng, 5));  // n up to 6
        std::vector<Permutation> S;
        for (int i = 0; i < 3; ++i) S.push_back(random_permutation(eng, n));
        const auto dp = dp_length_n_median(S);
        const auto repaired = permutation_repair(dp.value, S, RepairMode::ExactThree, &dp.alignments);
        CHECK(summed_indel(SymbolString(repaired), S) == dp.total_indel_cost);
    }
}

TEST_CASE("exact_median_3 on the contract examples") {
    const Permutation a({2, 1, 3});
    auto r = exact_median_3(a, a, a);
    CHECK(r.median == a.elems());
    CHECK(r.objective == 0);

    r = exact_median_3(Permutation({1, 2, 3}), Permutation({1, 2, 3}), Permutation({2, 1, 3}));
    CHECK(r.median == std::vector<int>{1, 2, 3});
    CHECK(r.objective == 1);

    r = exact_median_3(Permutation({1, 2, 3}), Permutation({2, 3, 1}), Permutation({3, 1, 2}));
    CHECK(r.objective == 2);
}

TEST_CASE("exact_median_3 matches the brute-force optimum") {
    std::mt19937_64 eng = substream_engine(20240801, 16);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(eng, 5));  // n up to 6
        std::vector<Permutation> S;
        for (int i = 0; i < 3; ++i) S.push_back(random_permutation(eng, n));
        const auto r = exact_median_3(S[0], S[1], S[2]);
        const auto opt = oracle::brute_force_median(S);
        CHECK(r.objective == opt.opt_value);
        CHECK(objective(S, r.as_permutation()) == r.objective);
    }
}

TEST_CASE("median_m_dp on the contract examples") {
    const std::vector<Permutation> quad(4, Permutation({3, 1, 2}));
    auto r = median_m_dp(quad);
    CHECK(r.median == std::vector<int>{3, 1, 2});
    CHECK(r.objective == 0);

    const std::vector<Permutation> S{Permutation({1, 2, 3}), Permutation({1, 2, 3}),
                                     Permutation({1, 2, 3}), Permutation({3, 2, 1})};
    r = median_m_dp(S);
    const auto opt = oracle::brute_force_median(S);
    CHECK(opt.opt_value == 2);
    CHECK(r.objective >= opt.opt_value);
    CHECK(2 * r.objective <= 3 * opt.opt_value);
}

TEST_CASE("median_m_dp stays within 1.5 OPT on random instances") {
    std::mt19937_64 eng = substream_engine(20240801, 17);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 6;
        std::vector<Permutation> S;
        for (int i = 0; i < 4; ++i) S.push_back(random_permutation(eng, n));
        const auto r = median_m_dp(S);
        const auto opt = oracle::brute_force_median(S);
        CHECK(r.objective >= opt.opt_value);
        CHECK(2 * r.objective <= 3 * opt.opt_value);
    }
}

TEST_CASE("two-input dp reduces to the pairwise distance") {
    // For m = 2 either input is an optimal length-n string, so the DP cost
    // is exactly the pairwise indel distance and the repaired median attains
    // the pairwise Ulam distance.
    std::mt19937_64 eng = substream_engine(20240801, 23);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(eng, 9));
        const auto x = random_permutation(eng, n);
        const auto y = random_permutation(eng, n);
        const std::vector<Permutation> S{x, y};
        const auto dp = dp_length_n_median(S);
        CHECK(dp.total_indel_cost == edit_distance_indel(SymbolString(x), SymbolString(y)));
        const auto r = median_m_dp(S);
        CHECK(r.objective == ulam_distance(x, y));
    }
}

TEST_CASE("exact_median_3 is exhaustively exact over all triples at n=3") {
    std::vector<std::vector<int>> perms;
    std::vector<int> p{1, 2, 3};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    for (const auto& a : perms) {
        for (const auto& b : perms) {
            for (const auto& c : perms) {
                const std::vector<Permutation> S{Permutation(a), Permutation(b), Permutation(c)};
                const auto r = exact_median_3(S[0], S[1], S[2]);
                const auto opt = oracle::brute_force_median(S);
                REQUIRE(r.objective == opt.opt_value);
            }
        }
    }
}

TEST_CASE("caps fail fast with explicit errors") {
    std::vector<Permutation> big;
    for (int i = 0; i < 5; ++i) big.push_back(Permutation::identity(4));
    CHECK_THROWS_AS(median_m_dp(big), cap_exceeded);  // m=5 > default m_cap=4

    DpCaps caps;
    caps.n_cap = 3;
    const std::vector<Permutation> wide(3, Permutation::identity(4));
    CHECK_THROWS_AS(dp_length_n_median(wide, caps), cap_exceeded);  // n=4 > cap 3

    DpCaps loose;
    loose.m_cap = 5;
    CHECK_NOTHROW(median_m_dp(big, loose));
}

TEST_SUITE_END();
