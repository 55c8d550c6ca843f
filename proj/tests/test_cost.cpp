#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellmul/cost.hpp"
#include "ellmul/errors.hpp"

using namespace ellmul;

TEST_CASE("the desk tables hold the published values") {
    int mu2[] = {1, 3, 6, 9, 13, 15, 22, 24};
    int mu3[] = {1, 3, 6, 9, 12, 15, 19, 21};
    int mhat[] = {1, 3, 5, 8, 11, 15, 19, 24};
    for (int d = 1; d <= 8; ++d) {
        CHECK(mu_cost(2, d) == mu2[d - 1]);
        CHECK(mu_cost(3, d) == mu3[d - 1]);
        CHECK(mhat_cost(d) == mhat[d - 1]);
    }
    CHECK(cost(2, 4, 1) == 9);
    CHECK(cost(3, 1, 3) == 5);
    CHECK(cost(2, 2, 2) == 9);
}

TEST_CASE("the two extended entries are consistent with the bound-table rows they came from") {
    // n = 283 row: N = [4,2,0,2,8,8,14,34,8], U = [5,2,1,1,1,1,1,1,1] sums to
    // 1668 only with mu_2(9) = 30; n = 409 row: N = [4,2,0,2,8,8,16,34,0,31],
    // U = [5,2,1,...] sums to 2495 only with mu_2(10) = 33.
    CHECK(mu_cost(2, 9) == 30);
    CHECK(mu_cost(2, 10) == 33);
    long long n283[] = {4, 2, 0, 2, 8, 8, 14, 34, 8};
    long long s = 0;
    for (int d = 1; d <= 9; ++d) s += n283[d - 1] * cost(2, d, d == 1 ? 5 : (d == 2 ? 2 : 1));
    CHECK(s == 1668);
    long long n409[] = {4, 2, 0, 2, 8, 8, 16, 34, 0, 31};
    s = 0;
    for (int d = 1; d <= 10; ++d) s += n409[d - 1] * cost(2, d, d == 1 ? 5 : (d == 2 ? 2 : 1));
    CHECK(s == 2495);
}

TEST_CASE("costs are monotone and normalized") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 9u}) {
        CHECK(cost(q, 1, 1) == 1);
        for (int d = 2; d <= cost_dmax(q); ++d) CHECK(mu_cost(q, d) >= mu_cost(q, d - 1));
    }
    for (int u = 2; u <= cost_umax(); ++u) CHECK(mhat_cost(u) >= mhat_cost(u - 1));
}

TEST_CASE("only generic counts exist away from the tabled characteristics") {
    CHECK(cost_dmax(5) == 4);
    CHECK(mu_cost(5, 3) == 6);
    CHECK(mu_cost(9, 4) == 9);
    CHECK_THROWS_AS(mu_cost(5, 5), validation_error);
    CHECK_THROWS_AS(mu_cost(2, 11), validation_error);
    CHECK_THROWS_AS(mu_cost(3, 9), validation_error);
    CHECK_THROWS_AS(mhat_cost(9), validation_error);
    CHECK_THROWS_AS(mhat_cost(0), validation_error);
}

TEST_CASE("iterated logarithm follows the tower table") {
    CHECK(log_star(2, 1) == 0);
    CHECK(log_star_companion(2, 1) == 1);
    struct Row {
        u128 lo, hi;  // inclusive range of n
        int k;
        u128 comp;
    };
    std::vector<Row> rows = {
        {2, 2, 1, 4},
        {3, 4, 2, 16},
        {5, 16, 3, 64},
        {17, 65536, 4, 256},
        {u128(65537), u128(1) << 100, 5, 1024},
    };
    for (auto& r : rows) {
        CHECK(log_star(2, r.lo) == r.k);
        CHECK(log_star(2, r.hi) == r.k);
        CHECK(log_star_companion(2, r.lo) == r.comp);
        u128 mid = r.lo + (r.hi - r.lo) / 2;
        CHECK(log_star(2, mid) == r.k);
    }
    CHECK(log_star(3, 3) == 1);
    CHECK(log_star(3, 4) == 2);
    CHECK(log_star(3, 27) == 2);
    CHECK(log_star(3, 28) == 3);
    CHECK_THROWS_AS(log_star(1, 5), validation_error);
}
