#pragma once

#include <string>

#include "ellmul/optimizer.hpp"
#include "ellmul/tensor.hpp"

namespace ellmul {

// Integer code of a field element, sum_i coeff_i p^i; element_at inverts
// it, fq_elt range-checks on the way in.
long long fq_int(const Field& F, const Elt& a);
Elt fq_elt(const Field& F, long long code);

// The coefficient field with q elements: the prime field, or the fixed
// catalog presentation when q is 4 or 9.
FieldPtr field_for(std::uint32_t q);

// "3·5 + 6·3 + 11·6 + 15·9 = 234": N_d places times the per-place cost,
// low degrees first.
std::string bound_breakdown(std::uint32_t q, const DivisorShape& shape);

// {q, n, curve, case, slack, N, U, bound, degG}.
std::string bound_json(std::uint32_t q, int n, const BoundResult& r);

// {q, n, modulus, basis_change, products: [{phi, w}], symmetric, rank,
// provenance: {curve, shape, seed}} with field elements as integer codes,
// the modulus ascending, and the matrix row-major.  Dumps are canonical:
// the same decomposition always serializes to the same bytes.
std::string bundle_json(const TensorDecomposition& T);
TensorDecomposition bundle_from_json(const std::string& text);

}  // namespace ellmul
