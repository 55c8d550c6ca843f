#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellmul/elliptic.hpp"

namespace ellmul {

// Per-degree shape of the interpolation divisor: N[i] places of degree
// i + 1, each carrying jets of order U[i].  Degrees with no places keep
// U = 1, and trailing empty degrees are trimmed.
struct DivisorShape {
    std::vector<int> N, U;
    long long degree = 0;  // sum_d N_d * d * u_d
    long long cost = 0;    // sum_d N_d * cost(q, d, u_d)
};

struct OptimizeOptions {
    int umax = 5;               // largest jet order per place
    bool tight_case_b = false;  // case b: aim at 2n instead of 2n + 1,
                                // relying on the sigma(G) check at build time
};

struct BoundResult {
    Curve curve;
    std::string equation;
    CurveClass cls;
    long long target = 0;  // 2n + slack
    DivisorShape shape;
    long long bound = 0;     // == shape.cost
    int catalog_index = -1;  // position when chosen from the catalog
};

// Cheapest divisor shape on C with total degree >= 2n + slack(case),
// subject to N_d <= B_d and the jet orders the assembly stage realizes
// (u_1 <= umax, u_2 <= 2, u_d = 1 beyond), by depth-first enumeration
// over (u_d, N_d) with a fractional-covering lower bound for pruning.
// Ties fall to lower total degree, then the largest jet order at rational
// points, then the smallest jet orders beyond, then lexicographically
// least N.  construction_error when the places up to dmax cannot reach
// the target (the message carries the maximum achievable degree).
BoundResult optimize_bound(std::uint32_t q, int n, const Curve& C, int dmax,
                           const OptimizeOptions& opt = {});

// optimize_bound across catalog(q), returning the cheapest curve; catalog
// order breaks ties.  Curves that cannot reach their target are skipped.
BoundResult best_curve(std::uint32_t q, int n, int dmax, const OptimizeOptions& opt = {});

}  // namespace ellmul
