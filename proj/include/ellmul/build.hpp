#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellmul/elliptic.hpp"
#include "ellmul/function_field.hpp"
#include "ellmul/inner.hpp"
#include "ellmul/optimizer.hpp"
#include "ellmul/tensor.hpp"

namespace ellmul {

// One evaluation site of the interpolation divisor G: a place taken with
// jet order u, a generator presentation of its residue field over the base
// field, and the bilinear sub-algorithm for truncated products of jets.
struct Site {
    Place P;
    int u = 1;
    Elt theta;                       // generates R over the base (d >= 2)
    Pol hmin;                        // its minimal polynomial over the base
    std::optional<RelBasis> coords;  // R -> d base-field coordinates (d >= 2)
    InnerAlgorithm inner;
    int row0 = 0;   // first row of this site's block in the evaluation matrix
    int prod0 = 0;  // first bilinear product index
};

struct BuildPlan {
    Curve curve;
    std::uint32_t q = 0;
    int n = 0;
    DivisorShape shape;
    std::uint64_t seed = 0;
    int attempt = 0;

    Place Q;                  // evaluation place, degree n
    Place D;                  // pole place, degree n, not Q
    std::vector<Site> sites;  // the divisor G, by degree then canonical order
    long long degG = 0;

    std::vector<FElem> fD;   // basis of L(D), n functions
    std::vector<FElem> f2D;  // basis of L(2D); starts with fD
    Mat eval;       // degG x 2n: jet coordinates of f2D at the sites
    Mat eval_inv;   // 2n x degG left inverse (the inverse when square)
    Mat qeval;      // n x n: row i = power coordinates of f_i(Q)
    Mat reduction;  // n x n: row i = algorithm-basis coordinates of e_{n+i}
    Pol h;          // minimal polynomial of x(Q): the reference modulus
    RelBasis qcoords;  // residue field at Q -> n base-field coordinates
};

struct ConditionReport {
    bool disjoint = false;         // supp D avoids Q and every site
    bool eval_rank_full = false;   // evaluation matrix has rank 2n
    bool qeval_rank_full = false;  // Q-evaluation matrix has rank n
    bool sections_vanish = false;  // 2D - G criterion: negative degree or sigma mismatch
    bool nonspecial = false;       // D - Q criterion: sigma(D) != sigma(Q)
    bool routes_agree = false;     // matrix ranks match the two sigma criteria
    bool pass() const;
    std::string describe() const;
};

// One sampling attempt: places drawn from rng, matrices assembled, no
// retries and no judgement of the outcome (eval_inv and reduction stay
// empty; see complete_plan).  shuffled picks G-places in seeded random
// order instead of canonically from the front.
BuildPlan sample_plan(std::uint32_t q, int n, const Curve& C, const DivisorShape& shape, Rng rng,
                      bool shuffled = false);

// Independent verdicts on the interpolation conditions of a sampled plan.
ConditionReport check_conditions(const BuildPlan& plan);

// Fill in eval_inv and reduction; requires full ranks.
void complete_plan(BuildPlan& plan);

// Sample until check_conditions passes (bounded retries, each attempt on a
// child stream of seed), then complete the plan.
BuildPlan build(std::uint32_t q, int n, const Curve& C, const DivisorShape& shape,
                std::uint64_t seed);

// Compose every site's jet map with its inner algorithm into flat linear
// forms of length n, and push each product's reconstruction through the
// interpolation inverse, the reduction, and the Q-evaluation.
TensorDecomposition assemble_tensor(const BuildPlan& plan);

}  // namespace ellmul
