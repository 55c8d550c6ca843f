#pragma once

#include "ellmul/field.hpp"

namespace ellmul {

// Desk tables of known multiplication complexities: mu_cost(q, d) bounds the
// products needed for one F_{q^d} multiplication, mhat_cost(u) for one u-term
// truncated polynomial product.  For q outside {2, 3} only the generic
// algorithms shipped here are available, so the row is their product counts
// (d <= 4).
int mu_cost(std::uint32_t q, int d);
int mhat_cost(int u);
int cost(std::uint32_t q, int d, int u);  // mu_cost(q, d) * mhat_cost(u)
int cost_dmax(std::uint32_t q);           // largest tabled d for this q
int cost_umax();                          // largest tabled u

// Iterated-logarithm tower: the least k with n <= q^q^...^q (k levels), and
// the companion value (2q)^k.
int log_star(std::uint32_t q, u128 n);
u128 log_star_companion(std::uint32_t q, u128 n);

}  // namespace ellmul
