#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ellmul/rng.hpp"

namespace ellmul {

using u128 = unsigned __int128;

// Element of F_{p^k}: k coefficients over F_p, little-endian in the field
// generator, always exactly k entries.
using Elt = std::vector<std::uint8_t>;

// F_{p^k} = F_p[z]/(modulus), with the prime field as the k = 1 case
// (modulus z).  Towers are always presented as one-step extensions of the
// prime field; subfields enter through Embedding below.
class Field {
public:
    explicit Field(std::uint32_t p);
    Field(std::uint32_t p, std::vector<std::uint8_t> modulus);

    std::uint32_t p() const { return p_; }
    int dim() const { return k_; }
    u128 size() const { return size_; }
    const std::vector<std::uint8_t>& modulus() const { return mod_; }
    bool prime() const { return k_ == 1; }
    bool same(const Field& o) const { return p_ == o.p_ && mod_ == o.mod_; }

    Elt zero() const { return Elt(k_, 0); }
    Elt one() const;
    Elt from_int(long long v) const;
    // z^j reduced into the field (j < dim); the generator itself is gen(1).
    Elt gen(int j = 1) const;
    bool is_zero(const Elt& a) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    void addmul(Elt& acc, const Elt& a, const Elt& b) const;  // acc += a*b
    Elt smul(const Elt& a, std::uint32_t c) const;            // prime scalar
    Elt inv(const Elt& a) const;
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }
    Elt pow(const Elt& a, u128 e) const;

    Elt random(Rng& rng) const;
    // Enumeration order: idx written base p, digits = coefficients.
    Elt element_at(u128 idx) const;

    // Trace to the prime subfield.
    std::uint32_t trace(const Elt& a) const;

private:
    std::uint32_t p_;
    int k_;
    std::vector<std::uint8_t> mod_;  // monic, degree k
    u128 size_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Square root in F_{p^k}; empty when the element is a non-residue.
// Char 2 always succeeds (Frobenius is bijective); odd characteristic uses
// the |F| = 3 mod 4 shortcut or Tonelli-Shanks with a deterministically
// located non-residue.
std::optional<Elt> sqrt_elt(const Field& F, const Elt& a);

// Solve y^2 + y = c over F_{2^k}; empty iff the absolute trace of c is 1.
// Solved as an F_2-linear system, which works for every k.
std::optional<Elt> solve_artin_schreier(const Field& F, const Elt& c);

// F_small -> F_big through a fixed root of the small modulus.  Only
// [F_small : F_p] <= 2 is ever needed (q in {4, 9}); the root is the
// lexicographically least one, so embeddings are reproducible.
class Embedding {
public:
    Embedding() = default;
    Embedding(FieldPtr small, FieldPtr big);

    const Field& small() const { return *small_; }
    const Field& big() const { return *big_; }
    const FieldPtr& small_ptr() const { return small_; }
    const FieldPtr& big_ptr() const { return big_; }
    const Elt& gen_image() const { return gen_image_; }

    Elt apply(const Elt& a) const;

private:
    FieldPtr small_, big_;
    Elt gen_image_;
};

// Coordinates of F_big relative to F_small with respect to the basis
// {1, xi, ..., xi^{d-1}}, where d = [F_big : F_small] and xi generates
// F_big over F_small.  Backed by one F_p matrix inversion.
class RelBasis {
public:
    RelBasis() = default;
    RelBasis(const Embedding& emb, const Elt& xi, int d);   // basis 1, xi, ..., xi^{d-1}
    RelBasis(const Embedding& emb, std::vector<Elt> basis); // arbitrary basis over the small field

    int d() const { return d_; }
    const std::vector<Elt>& basis() const { return basis_; }
    const Embedding& embedding() const { return emb_; }

    std::vector<Elt> to_coords(const Elt& a) const;   // d small-field elements
    Elt from_coords(const std::vector<Elt>& c) const;
    // For a in the embedded copy of F_small: its preimage.  Throws if a is
    // not actually down in the subfield.
    Elt down(const Elt& a) const;

private:
    void init();

    Embedding emb_;
    std::vector<Elt> basis_;
    int d_ = 0;
    int K_ = 0;                       // dim of big field over F_p
    std::vector<std::uint8_t> inv_;   // K x K over F_p, row-major
};

}  // namespace ellmul
