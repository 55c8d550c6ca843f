#include "ellmul/cost.hpp"

#include "ellmul/errors.hpp"

namespace ellmul {

namespace {

// d = 1..10; the last two entries are back-solved from the n = 283 and 409
// rows of the published bound table rather than printed directly.
constexpr int MU2[] = {1, 3, 6, 9, 13, 15, 22, 24, 30, 33};
// d = 1..8
constexpr int MU3[] = {1, 3, 6, 9, 12, 15, 19, 21};
// generic algorithm counts, d = 1..4, any q
constexpr int MU_GEN[] = {1, 3, 6, 9};
// u = 1..8
constexpr int MHAT[] = {1, 3, 5, 8, 11, 15, 19, 24};

}  // namespace

int mu_cost(std::uint32_t q, int d) {
    if (d < 1 || d > cost_dmax(q)) throw validation_error("extension degree outside the cost table");
    if (q == 2) return MU2[d - 1];
    if (q == 3) return MU3[d - 1];
    return MU_GEN[d - 1];
}

int mhat_cost(int u) {
    if (u < 1 || u > cost_umax()) throw validation_error("truncation order outside the cost table");
    return MHAT[u - 1];
}

int cost(std::uint32_t q, int d, int u) { return mu_cost(q, d) * mhat_cost(u); }

int cost_dmax(std::uint32_t q) {
    if (q == 2) return 10;
    if (q == 3) return 8;
    return 4;
}

int cost_umax() { return 8; }

int log_star(std::uint32_t q, u128 n) {
    if (q < 2) throw validation_error("iterated logarithm needs a base of at least 2");
    int k = 0;
    u128 tower = 1;
    while (n > tower) {
        ++k;
        // tower <- q^tower, saturating once it can no longer be exceeded
        u128 t = 1;
        bool huge = false;
        for (u128 i = 0; i < tower; ++i) {
            if (t > ~u128(0) / q) {
                huge = true;
                break;
            }
            t *= q;
        }
        if (huge) return k;
        tower = t;
    }
    return k;
}

u128 log_star_companion(std::uint32_t q, u128 n) {
    int k = log_star(q, n);
    u128 r = 1;
    for (int i = 0; i < k; ++i) r *= 2 * (u128)q;
    return r;
}

}  // namespace ellmul
