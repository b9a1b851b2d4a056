#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ulam/median_approx.hpp"
#include "ulam/oracle.hpp"
#include "ulam/random.hpp"

using namespace ulam;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("brute-force median on the contract examples") {
    const Permutation id3({1, 2, 3});
    auto r = oracle::brute_force_median({id3});
    CHECK(r.optimum == id3.elems());
    CHECK(r.opt_value == 0);
    CHECK(r.search_space_size == 6);

    r = oracle::brute_force_median({id3, Permutation({3, 1, 2})});
    CHECK(r.optimum == id3.elems());  // lex-smallest among the objective-1 medians
    CHECK(r.opt_value == 1);

    r = oracle::brute_force_median({id3, Permutation({2, 3, 1}), Permutation({3, 1, 2})});
    CHECK(r.opt_value == 2);
}

TEST_CASE("oracle refuses oversized spaces with a size estimate") {
    const std::vector<Permutation> S(2, Permutation::identity(9));
    CHECK_THROWS_WITH_AS(oracle::brute_force_median(S),
                         doctest::Contains("362880"), cap_exceeded);
    const std::vector<SymbolString> T(2, SymbolString({1, 1}, 2));
    oracle::StringSpace space;
    space.sigma = 10;
    space.length = 7;
    CHECK_THROWS_AS(oracle::brute_force_median(T, space), cap_exceeded);
}

TEST_CASE("bfs distance on the contract examples") {
    const Permutation a({1, 2, 3, 4});
    CHECK(oracle::brute_force_ulam_bfs(a, a) == 0);
    CHECK(oracle::brute_force_ulam_bfs(a, Permutation({2, 3, 4, 1})) == 1);
    CHECK(oracle::brute_force_ulam_bfs(Permutation({3, 1, 2}), Permutation({1, 2, 3})) == 1);
    CHECK_THROWS_AS(oracle::brute_force_ulam_bfs(Permutation::identity(6), Permutation::identity(6)),
                    cap_exceeded);
}

TEST_CASE("bfs distance equals n minus lcs on all of S4") {
    std::vector<int> base{1, 2, 3, 4};
    std::vector<std::vector<int>> all;
    std::vector<int> p = base;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    for (const auto& x : all) {
        for (const auto& y : all) {
            const Permutation px(x), py(y);
            CHECK(oracle::brute_force_ulam_bfs(px, py) == ulam_distance(px, py));
        }
    }
}

TEST_CASE("majority element is an oracle optimum") {
    std::mt19937_64 eng = substream_engine(20240801, 20);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5;
        const Permutation winner = random_permutation(eng, n);
        std::vector<Permutation> S(4, winner);
        S.push_back(random_permutation(eng, n));
        const auto r = oracle::brute_force_median(S);
        CHECK(r.opt_value == objective(S, winner));
    }
}

TEST_CASE("oracle lower-bounds every algorithm output") {
    std::mt19937_64 eng = substream_engine(20240801, 21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 6;
        std::vector<Permutation> S;
        for (int i = 0; i < 4; ++i) S.push_back(random_permutation(eng, n));
        const auto r = oracle::brute_force_median(S);
        CHECK(r.opt_value <= best_from_input(S).objective);
        CHECK(r.opt_value <= objective(S, relative_order(S, Rational(1, 10))));
    }
}

TEST_CASE("ratio report computes objectives and ratios") {
    const std::vector<std::vector<int>> S{{1, 2, 3}, {1, 2, 3}, {3, 2, 1}};
    const auto opt = oracle::brute_force_median(S, Metric::Ulam, 3);
    CHECK(opt.opt_value == 2);

    SUBCASE("single candidate equal to the optimum has ratio 1") {
        const auto rep = oracle::ratio_report(S, {{"oracle", opt.optimum}}, Metric::Ulam, opt);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].objective == 2);
        CHECK(rep.rows[0].ratio == 1.0);
    }

    SUBCASE("best-from-input attains ratio 1 here") {
        const std::vector<Permutation> perms{Permutation({1, 2, 3}), Permutation({1, 2, 3}),
                                             Permutation({3, 2, 1})};
        const auto best = best_from_input(perms);
        const auto rep = oracle::ratio_report(S, {{"best", best.median}}, Metric::Ulam, opt);
        CHECK(rep.rows[0].ratio == 1.0);
    }

    SUBCASE("combined never exceeds either branch") {
        const std::vector<Permutation> perms{Permutation({1, 2, 3}), Permutation({1, 2, 3}),
                                             Permutation({3, 2, 1})};
        const auto best = best_from_input(perms);
        const auto rel = relative_order(perms, Rational(1, 10));
        const auto combined = ulam_median_approx(perms);
        const auto rep = oracle::ratio_report(
            S, {{"best", best.median}, {"relorder", rel.elems()}, {"combined", combined.median}},
            Metric::Ulam, opt);
        REQUIRE(rep.rows.size() == 3);
        CHECK(*rep.rows[2].ratio <= *rep.rows[0].ratio);
        CHECK(*rep.rows[2].ratio <= *rep.rows[1].ratio);
    }

    SUBCASE("without an oracle there are no ratios") {
        const auto rep = oracle::ratio_report(S, {{"x", {1, 2, 3}}}, Metric::Ulam);
        CHECK_FALSE(rep.opt.has_value());
        CHECK_FALSE(rep.rows[0].ratio.has_value());
    }
}

TEST_SUITE_END();
