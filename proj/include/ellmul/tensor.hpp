#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellmul/linalg.hpp"
#include "ellmul/poly.hpp"

namespace ellmul {

// One bilinear product: the same linear form phi on both operands (in the
// algorithm basis), and the product's contribution w in the power basis of
// the reference field F_q[X]/(h).
struct TensorProduct {
    std::vector<Elt> phi;
    std::vector<Elt> w;
};

struct Provenance {
    std::string curve;
    std::vector<int> N, U;
    std::uint64_t seed = 0;
};

// A symmetric bilinear multiplication algorithm for F_{q^n} = F_q[X]/(h):
//   alpha * beta = sum_j phi_j(a) phi_j(b) w_j
// where a, b are the operands' coordinates in the algorithm basis, reached
// from power-basis coordinates through basis_change.
struct TensorDecomposition {
    FieldPtr F;          // the base field F_q
    int n = 0;
    Pol h;               // monic irreducible of degree n over F_q
    Mat basis_change;    // n x n: power-basis coordinates -> algorithm basis
    std::vector<TensorProduct> products;
    bool symmetric = true;
    int declared_rank = 0;
    Provenance provenance;

    int rank() const { return static_cast<int>(products.size()); }
};

// Multiply two elements given by power-basis coordinate vectors of length n.
// Exactly rank() two-variable base-field products are performed.
std::vector<Elt> tensor_apply(const TensorDecomposition& T, const std::vector<Elt>& a,
                              const std::vector<Elt>& b);

struct VerifyReport {
    bool multiplies = false;       // all n^2 power-basis pairs match X^i X^j mod h
    bool symmetric = false;        // one form per product, used on both sides
    bool rank_consistent = false;  // declared rank == stored products == declared shape cost
    bool winograd = false;         // rank >= 2n - 1
    bool basis_invertible = false;
    int pairs_checked = 0;
    std::optional<std::pair<int, int>> witness;  // first failing basis pair
    bool pass() const {
        return multiplies && symmetric && rank_consistent && winograd && basis_invertible;
    }
    std::string describe() const;
};

// Exhaustive check of the multiplication identity on every pair of
// power-basis elements; by bilinearity this is a complete proof.
VerifyReport tensor_verify(const TensorDecomposition& T);

// Straight-line program over base-field scalars.  Registers: x0..x{n-1}
// and y0..y{n-1} hold the operands' power-basis coordinates, m1..mr the
// bilinear products, z0..z{n-1} the result.
struct SlpOp {
    enum Kind : std::uint8_t { kAdd, kSub, kSmul, kMul };
    Kind kind = kAdd;
    int dst = 0, a = 0, b = 0;  // register indices; b unused for kSmul
    Elt c;                      // scalar, kSmul only
};

struct SlpProgram {
    int n = 0;
    int nregs = 0;
    std::vector<SlpOp> ops;
    std::vector<int> out;  // n registers holding the product's coordinates
    int products = 0, adds = 0, smuls = 0;
    std::string text;      // printable form, one instruction per line
};

SlpProgram emit_slp(const TensorDecomposition& T);
std::vector<Elt> slp_run(const Field& F, const SlpProgram& P, const std::vector<Elt>& a,
                         const std::vector<Elt>& b);

}  // namespace ellmul
