#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellmul/elliptic.hpp"
#include "ellmul/errors.hpp"
#include "ellmul/inner.hpp"
#include "ellmul/rng.hpp"

using namespace ellmul;

// Enumerate every coordinate vector of the given length over F.
static bool next_vec(const Field& F, std::vector<Elt>& v) {
    for (auto& c : v) {
        u128 i = 0;
        while (!(F.element_at(i) == c)) ++i;
        if (i + 1 < F.size()) {
            c = F.element_at(i + 1);
            return true;
        }
        c = F.element_at(0);
    }
    return false;
}

static std::vector<Elt> conv_truncated(const Field& F, const std::vector<Elt>& a, const std::vector<Elt>& b, int out) {
    std::vector<Elt> c(out, F.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if ((int)(i + j) < out) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    return c;
}

static std::vector<Elt> field_mult_ref(const Field& F, const Pol& h, const std::vector<Elt>& a,
                                       const std::vector<Elt>& b) {
    Pol r = pol_mod(F, pol_mul(F, pol_trim(Pol(a.begin(), a.end())), pol_trim(Pol(b.begin(), b.end()))), h);
    std::vector<Elt> out(deg(h), F.zero());
    for (int i = 0; i <= deg(r); ++i) out[i] = r[i];
    return out;
}

TEST_CASE("truncated products verify exhaustively and use the tabled count") {
    int counts[4] = {0, 1, 3, 5};
    for (std::uint32_t q : {2u, 3u}) {
        FieldPtr F = catalog_field(q);
        for (int u = 1; u <= 3; ++u) {
            InnerAlgorithm A = inner_truncated(F, u);
            CHECK(A.m == counts[u]);
            CHECK(A.k == u);
            CHECK(A.out == u);
            std::vector<Elt> a(u, F->zero());
            do {
                std::vector<Elt> b(u, F->zero());
                do {
                    CHECK(inner_apply(*F, A, a, b) == conv_truncated(*F, a, b, u));
                } while (next_vec(*F, b));
            } while (next_vec(*F, a));
        }
    }
}

TEST_CASE("the order-3 truncated algorithm has the printed shape") {
    FieldPtr F = catalog_field(3);
    InnerAlgorithm A = inner_truncated(F, 3);
    // m4 = (A0+A1).(B0+B1) and C1 = m4 - m1 - m2
    CHECK(A.forms.at(3, 0) == F->one());
    CHECK(A.forms.at(3, 1) == F->one());
    CHECK(F->is_zero(A.forms.at(3, 2)));
    CHECK(A.recon.at(1, 3) == F->one());
    CHECK(A.recon.at(1, 0) == F->neg(F->one()));
    CHECK(A.recon.at(1, 1) == F->neg(F->one()));
    CHECK(F->is_zero(A.recon.at(1, 2)));
    CHECK(F->is_zero(A.recon.at(1, 4)));
}

TEST_CASE("field multiplication verifies exhaustively for d <= 3") {
    struct Case {
        std::uint32_t q;
        std::vector<long long> h;
    };
    std::vector<Case> cases = {
        {2, {1, 1}},          // x + 1
        {2, {1, 1, 1}},       // x^2 + x + 1
        {2, {1, 1, 0, 1}},    // x^3 + x + 1
        {3, {2, 0, 1}},       // x^2 + 2 (note x^2 + 2 = x^2 - 1 is not irreducible; reduction still well-defined)
        {3, {1, 2, 0, 1}},    // x^3 + 2x + 1
    };
    int counts[5] = {0, 1, 3, 6, 9};
    for (auto& c : cases) {
        FieldPtr F = catalog_field(c.q);
        Pol h = pol_from_ints(*F, c.h);
        InnerAlgorithm A = inner_field_mult(F, h);
        int d = deg(h);
        CHECK(A.m == counts[d]);
        std::vector<Elt> a(d, F->zero());
        do {
            std::vector<Elt> b(d, F->zero());
            do {
                CHECK(inner_apply(*F, A, a, b) == field_mult_ref(*F, h, a, b));
            } while (next_vec(*F, b));
        } while (next_vec(*F, a));
    }
}

TEST_CASE("degree-2 field mult sends (1,0)x(0,1) to (0,1)") {
    FieldPtr F = catalog_field(3);
    Pol h = pol_from_ints(*F, {2, 2, 1});  // x^2 + 2x + 2, irreducible over F_3
    InnerAlgorithm A = inner_field_mult(F, h);
    std::vector<Elt> one = {F->one(), F->zero()}, w = {F->zero(), F->one()};
    CHECK(inner_apply(*F, A, one, w) == w);
}

TEST_CASE("degree-4 field mult verifies on random samples over F_2 and F_3") {
    for (std::uint32_t q : {2u, 3u}) {
        FieldPtr F = catalog_field(q);
        Pol h = q == 2 ? pol_from_ints(*F, {1, 1, 0, 0, 1}) : pol_from_ints(*F, {2, 0, 0, 2, 1});
        InnerAlgorithm A = inner_field_mult(F, h);
        CHECK(A.m == 9);
        Rng rng(4242);
        for (int t = 0; t < 500; ++t) {
            std::vector<Elt> a(4), b(4);
            for (auto& c : a) c = F->random(rng);
            for (auto& c : b) c = F->random(rng);
            CHECK(inner_apply(*F, A, a, b) == field_mult_ref(*F, h, a, b));
        }
    }
}

TEST_CASE("composed truncated-over-field algorithms multiply jet blocks") {
    for (std::uint32_t q : {2u, 3u}) {
        FieldPtr F = catalog_field(q);
        Pol h = q == 2 ? pol_from_ints(*F, {1, 1, 1}) : pol_from_ints(*F, {2, 2, 1});
        for (int u : {2, 3}) {
            InnerAlgorithm T = inner_truncated(F, u);
            InnerAlgorithm M = inner_field_mult(F, h);
            InnerAlgorithm A = inner_compose(F, T, M);
            CHECK(A.k == 2 * u);
            CHECK(A.m == T.m * M.m);
            Rng rng(99);
            for (int t = 0; t < 400; ++t) {
                std::vector<Elt> a(A.k), b(A.k);
                for (auto& c : a) c = F->random(rng);
                for (auto& c : b) c = F->random(rng);
                // reference: coefficients in F[w]/(h), truncated product
                std::vector<std::vector<Elt>> have_blocks;
                auto block = [&](const std::vector<Elt>& v, int l) {
                    return std::vector<Elt>(v.begin() + l * 2, v.begin() + l * 2 + 2);
                };
                std::vector<Elt> want;
                for (int l = 0; l < u; ++l) {
                    std::vector<Elt> cl(2, F->zero());
                    for (int i = 0; i <= l; ++i) {
                        auto p = field_mult_ref(*F, h, block(a, i), block(b, l - i));
                        cl[0] = F->add(cl[0], p[0]);
                        cl[1] = F->add(cl[1], p[1]);
                    }
                    want.push_back(cl[0]);
                    want.push_back(cl[1]);
                }
                CHECK(inner_apply(*F, A, a, b) == want);
            }
        }
    }
}

TEST_CASE("unsupported sizes and malformed moduli are rejected") {
    FieldPtr F = catalog_field(2);
    CHECK_THROWS_AS(inner_truncated(F, 4), validation_error);
    CHECK_THROWS_AS(inner_truncated(F, 0), validation_error);
    CHECK_THROWS_AS(inner_field_mult(F, pol_from_ints(*F, {1, 1, 1, 1, 1, 1})), validation_error);
    CHECK_THROWS_AS(inner_field_mult(F, pol_from_ints(*F, {1})), validation_error);
    InnerAlgorithm A = inner_truncated(F, 2);
    std::vector<Elt> a(3, F->zero());
    CHECK_THROWS_AS(inner_apply(*F, A, a, a, nullptr), validation_error);
}
