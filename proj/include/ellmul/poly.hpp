#pragma once

#include <vector>

#include "ellmul/field.hpp"
#include "ellmul/rng.hpp"

namespace ellmul {

// Univariate polynomial over a Field: ascending coefficients, trailing
// zeros trimmed, zero polynomial = empty vector.
using Pol = std::vector<Elt>;

inline int deg(const Pol& f) { return static_cast<int>(f.size()) - 1; }  // deg 0 = -1

Pol pol_trim(Pol f);
Pol pol_zero();
Pol pol_const(const Field& F, const Elt& c);
Pol pol_x(const Field& F);
Pol pol_from_ints(const Field& F, const std::vector<long long>& c);
bool pol_eq(const Pol& a, const Pol& b);
bool pol_is_zero(const Pol& f);

Pol pol_add(const Field& F, const Pol& a, const Pol& b);
Pol pol_sub(const Field& F, const Pol& a, const Pol& b);
Pol pol_neg(const Field& F, const Pol& a);
Pol pol_mul(const Field& F, const Pol& a, const Pol& b);
Pol pol_smul(const Field& F, const Elt& c, const Pol& a);
Pol pol_shift(const Pol& a, int k);  // multiply by x^k
// Division with remainder by a nonzero divisor; quotient returned,
// remainder left in r.
Pol pol_divmod(const Field& F, const Pol& a, const Pol& b, Pol& r);
Pol pol_mod(const Field& F, const Pol& a, const Pol& b);
Pol pol_monic(const Field& F, const Pol& a);
Pol pol_gcd(const Field& F, Pol a, Pol b);  // monic
Pol pol_pow_mod(const Field& F, Pol base, u128 e, const Pol& mod);
Elt pol_eval(const Field& F, const Pol& f, const Elt& x);
// Coefficients mapped through an embedding (e.g. F_q[x] into F_{q^d}[x]).
Pol pol_lift(const Embedding& emb, const Pol& f);

// Distinct-degree sieve: irreducible iff no factor of degree <= deg/2.
bool pol_is_irreducible(const Field& F, const Pol& f);
Pol random_irreducible(const Field& F, int d, Rng& rng);  // monic

// Extension field F = F_p[z]/(m) with m = random_irreducible of degree d
// drawn from the given stream; the canonical way this project builds
// residue and reference fields.
FieldPtr extension_field(std::uint32_t p, int d, Rng rng);

}  // namespace ellmul
