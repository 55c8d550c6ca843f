#pragma once

#include "ellmul/linalg.hpp"
#include "ellmul/poly.hpp"

namespace ellmul {

// A symmetric bilinear algorithm over F: from the two coordinate vectors a, b
// (length k each) it computes m products m_j = (forms_j . a) * (forms_j . b)
// and reconstructs the out output coordinates as recon * m.
struct InnerAlgorithm {
    int k = 1;    // input coordinates per operand
    int m = 1;    // bilinear products
    int out = 1;  // output coordinates
    Mat forms;    // m x k, shared by both sides
    Mat recon;    // out x m
};

// Product of two u-term polynomials truncated mod t^u, u <= 3.
InnerAlgorithm inner_truncated(const FieldPtr& F, int u);

// Multiplication in F[w]/(h) on the power basis 1, w, ..., w^{d-1}; deg h <= 4.
// The convolution reconstruction is solved from the printed forms and the
// reduction modulo h is folded into it.
InnerAlgorithm inner_field_mult(const FieldPtr& F, const Pol& h);

// Truncated multiplication with coefficients in F[w]/(h): the truncated
// algorithm applied coefficientwise through the field-mult algorithm.  Input
// coordinates are laid out as trunc.k blocks of field.k.
InnerAlgorithm inner_compose(const FieldPtr& F, const InnerAlgorithm& trunc, const InnerAlgorithm& field);

// Run the algorithm on concrete coordinates; prods receives the m bilinear
// products when non-null.
std::vector<Elt> inner_apply(const Field& F, const InnerAlgorithm& alg, const std::vector<Elt>& a,
                             const std::vector<Elt>& b, std::vector<Elt>* prods = nullptr);

}  // namespace ellmul
