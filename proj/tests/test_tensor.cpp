#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "ellmul/build.hpp"
#include "ellmul/errors.hpp"
#include "ellmul/optimizer.hpp"
#include "ellmul/tensor.hpp"

using namespace ellmul;

namespace {

// (a0 + a1 X)(b0 + b1 X) mod X^2 + 1 with the three Karatsuba products.
TensorDecomposition karatsuba(std::uint32_t p) {
    FieldPtr F = std::make_shared<Field>(p);
    auto E = [&](long long v) { return F->from_int(v); };
    TensorDecomposition T;
    T.F = F;
    T.n = 2;
    T.h = pol_from_ints(*F, {1, 0, 1});
    T.basis_change = mat_identity(*F, 2);
    T.products = {{{E(1), E(0)}, {E(1), E(-1)}},
                  {{E(1), E(1)}, {E(0), E(1)}},
                  {{E(0), E(1)}, {E(-1), E(-1)}}};
    T.declared_rank = 3;
    return T;
}

TensorDecomposition small_build() {
    BoundResult br = best_curve(3, 4, 2);
    BuildPlan plan = build(3, 4, br.curve, br.shape, 1);
    return assemble_tensor(plan);
}

}  // namespace

TEST_CASE("the Karatsuba tensor verifies and emits three products") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        CAPTURE(p);
        TensorDecomposition T = karatsuba(p);
        VerifyReport r = tensor_verify(T);
        CHECK(r.pass());
        CHECK(r.pairs_checked == 4);
        CHECK(r.winograd);  // 3 == 2n - 1
        SlpProgram P = emit_slp(T);
        CHECK(P.products == 3);
        const Field& F = *T.F;
        Rng rng(3);
        for (int t = 0; t < 50; ++t) {
            std::vector<Elt> a = {F.random(rng), F.random(rng)}, b = {F.random(rng), F.random(rng)};
            auto got = tensor_apply(T, a, b);
            // reference: (a0 b0 - a1 b1, a0 b1 + a1 b0)
            Elt c0 = F.sub(F.mul(a[0], b[0]), F.mul(a[1], b[1]));
            Elt c1 = F.add(F.mul(a[0], b[1]), F.mul(a[1], b[0]));
            CHECK(got == std::vector<Elt>{c0, c1});
            CHECK(slp_run(F, P, a, b) == got);
        }
    }
}

TEST_CASE("verification catches a perturbed bundle with a witness") {
    TensorDecomposition T = small_build();
    REQUIRE(tensor_verify(T).pass());
    const Field& F = *T.F;

    TensorDecomposition bad = T;
    bad.products[4].w[2] = F.add(bad.products[4].w[2], F.one());
    VerifyReport r = tensor_verify(bad);
    CHECK_FALSE(r.multiplies);
    CHECK(r.witness.has_value());
    auto [i, j] = *r.witness;
    CHECK(i < T.n);
    CHECK(j < T.n);

    bad = T;
    bad.products[0].phi[1] = F.add(bad.products[0].phi[1], F.one());
    CHECK_FALSE(tensor_verify(bad).multiplies);

    bad = T;
    bad.declared_rank += 1;
    r = tensor_verify(bad);
    CHECK_FALSE(r.rank_consistent);
    CHECK_FALSE(r.pass());

    bad = T;
    bad.provenance.N = {1, 1};  // costs 1 + 3, nowhere near the rank
    bad.provenance.U = {1, 1};
    CHECK_FALSE(tensor_verify(bad).rank_consistent);

    bad = T;
    bad.symmetric = false;
    CHECK_FALSE(tensor_verify(bad).pass());

    bad = T;
    bad.basis_change = Mat(F, T.n, T.n);  // all-zero, singular
    r = tensor_verify(bad);
    CHECK_FALSE(r.basis_invertible);
    CHECK_FALSE(r.pass());
}

TEST_CASE("too few products fail the rank lower bound") {
    FieldPtr F = std::make_shared<Field>(3);
    TensorDecomposition T;
    T.F = F;
    T.n = 2;
    T.h = pol_from_ints(*F, {1, 0, 1});
    T.basis_change = mat_identity(*F, 2);
    T.products = {{{F->one(), F->zero()}, {F->one(), F->zero()}},
                  {{F->zero(), F->one()}, {F->zero(), F->one()}}};
    T.declared_rank = 2;
    VerifyReport r = tensor_verify(T);
    CHECK_FALSE(r.winograd);
    CHECK_FALSE(r.multiplies);  // 2 products cannot multiply F_9
    CHECK_FALSE(r.pass());
}

TEST_CASE("replay tracks apply across one thousand random pairs") {
    TensorDecomposition T = small_build();
    SlpProgram P = emit_slp(T);
    CHECK(P.products == T.rank());
    CHECK(static_cast<int>(P.out.size()) == T.n);
    const Field& F = *T.F;
    Rng rng(17);
    for (int t = 0; t < 1000; ++t) {
        std::vector<Elt> a, b;
        for (int i = 0; i < T.n; ++i) a.push_back(F.random(rng));
        for (int i = 0; i < T.n; ++i) b.push_back(F.random(rng));
        CHECK(slp_run(F, P, a, b) == tensor_apply(T, a, b));
    }
}

TEST_CASE("the program text lists every instruction in the printable forms") {
    TensorDecomposition T = small_build();
    SlpProgram P = emit_slp(T);
    CHECK(P.text.find("# q = 3, n = 4") == 0);
    CHECK(P.text.find("# inputs: x0..x3, y0..y3") != std::string::npos);
    CHECK(P.text.find("# outputs: z0..z3") != std::string::npos);
    CHECK(P.text.find("m1 = ") != std::string::npos);
    CHECK(P.text.find("m" + std::to_string(T.rank()) + " = ") != std::string::npos);
    CHECK(P.text.find("z0 = ") != std::string::npos);
    // every non-comment line is one of the three instruction forms
    std::size_t pos = 0;
    int lines = 0, ops = 0;
    while (pos < P.text.size()) {
        std::size_t e = P.text.find('\n', pos);
        std::string line = P.text.substr(pos, e - pos);
        pos = e + 1;
        if (line.empty() || line[0] == '#') continue;
        ++lines;
        bool form = line.find(" = ") != std::string::npos &&
                    (line.find(" + ") != std::string::npos || line.find(" - ") != std::string::npos ||
                     line.find(" * ") != std::string::npos);
        CHECK(form);
    }
    ops = static_cast<int>(P.ops.size());
    CHECK(lines == ops);
    CHECK(P.products + P.adds + P.smuls == ops);
}

TEST_CASE("bad operand lengths are rejected") {
    TensorDecomposition T = karatsuba(3);
    const Field& F = *T.F;
    std::vector<Elt> good = {F.one(), F.zero()}, bad = {F.one()};
    CHECK_THROWS_AS(tensor_apply(T, bad, good), validation_error);
    CHECK_THROWS_AS(tensor_apply(T, good, bad), validation_error);
    SlpProgram P = emit_slp(T);
    CHECK_THROWS_AS(slp_run(F, P, bad, good), validation_error);
    // zero operand annihilates
    std::vector<Elt> z = {F.zero(), F.zero()};
    CHECK(tensor_apply(T, z, good) == z);
}
