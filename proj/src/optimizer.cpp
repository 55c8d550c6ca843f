#include "ellmul/optimizer.hpp"

#include <algorithm>
#include <optional>

#include "ellmul/cost.hpp"
#include "ellmul/errors.hpp"

namespace ellmul {

namespace {

// One marginal unit source for the pruning bound: raising a degree-den
// place's jet order by one step adds den degree units at num products;
// cap is how many units are available at this rate.
struct Marginal {
    long long num = 0;
    int den = 1;
    long long cap = 0;
};

constexpr long long kDen = 2520;  // lcm(1..10), common denominator for bounds

// Jet orders the assembly stage can realize: full truncated products at
// degree-1 places, order 2 at degree-2 places, plain evaluation beyond.
int jet_cap(int d) { return d == 1 ? 5 : d == 2 ? 2 : 1; }

struct Searcher {
    std::uint32_t q = 2;
    int dmax = 1, umax = 1;
    long long target = 0;
    std::vector<long long> B;                 // B[d], 1-based
    std::vector<int> mu, mhat;                // mu[d], mhat[u], 1-based
    std::vector<int> ucap;                    // ucap[d] = min(umax, jet_cap(d))
    std::vector<std::vector<Marginal>> marg;  // marg[d]: sources at degrees >= d
    std::vector<long long> capacity;          // capacity[d]: max units from degrees >= d

    bool found = false;
    long long bestCost = 0, bestDeg = 0;
    std::vector<int> bestN, bestU, curN, curU;

    void prepare();
    long long lower_bound(int d, long long rem) const;
    void dfs(int d, long long deg, long long cost);
};

void Searcher::prepare() {
    mu.assign(dmax + 1, 0);
    for (int d = 1; d <= dmax; ++d) mu[d] = mu_cost(q, d);
    mhat.assign(umax + 1, 0);
    for (int u = 1; u <= umax; ++u) mhat[u] = mhat_cost(u);
    ucap.assign(dmax + 1, 1);
    for (int d = 1; d <= dmax; ++d) ucap[d] = std::min(umax, jet_cap(d));
    capacity.assign(dmax + 2, 0);
    marg.assign(dmax + 2, {});
    for (int d = dmax; d >= 1; --d) {
        capacity[d] = capacity[d + 1] + B[d] * d * ucap[d];
        auto items = marg[d + 1];
        if (B[d] > 0)
            for (int s = 1; s <= ucap[d]; ++s)
                items.push_back({(long long)mu[d] * (mhat[s] - mhat[s - 1]), d, B[d] * d});
        std::sort(items.begin(), items.end(), [](const Marginal& a, const Marginal& b) {
            return a.num * b.den < b.num * a.den;
        });
        marg[d] = std::move(items);
    }
    curN.assign(dmax + 2, 0);
    curU.assign(dmax + 2, 1);
}

// Fractional covering relaxation: fill rem units from the cheapest
// marginal sources.  Any shape over degrees >= d covering rem costs at
// least this many products.
long long Searcher::lower_bound(int d, long long rem) const {
    if (rem <= 0) return 0;
    long long acc = 0;  // scaled by kDen
    for (const Marginal& it : marg[d]) {
        long long take = std::min(rem, it.cap);
        acc += take * it.num * (kDen / it.den);
        rem -= take;
        if (rem <= 0) break;
    }
    return (acc + kDen - 1) / kDen;
}

void Searcher::dfs(int d, long long deg, long long cost) {
    long long rem = target - deg;
    if (found && cost + lower_bound(d, rem) > bestCost) return;
    if (d > dmax) {
        if (rem > 0) return;
        bool take = !found;
        if (!take && cost == bestCost) {
            if (deg != bestDeg)
                take = deg < bestDeg;
            else if (curU[1] != bestU[1])
                take = curU[1] > bestU[1];
            else if (dmax > 1 && !std::equal(curU.begin() + 2, curU.begin() + dmax + 1, bestU.begin() + 2))
                take = std::lexicographical_compare(curU.begin() + 2, curU.begin() + dmax + 1,
                                                    bestU.begin() + 2, bestU.begin() + dmax + 1);
            else
                take = std::lexicographical_compare(curN.begin() + 1, curN.begin() + dmax + 1,
                                                    bestN.begin() + 1, bestN.begin() + dmax + 1);
        } else if (!take) {
            take = cost < bestCost;
        }
        if (take) {
            found = true;
            bestCost = cost;
            bestDeg = deg;
            bestN = curN;
            bestU = curU;
        }
        return;
    }
    if (deg + capacity[d] < target) return;
    if (B[d] > 0 && rem > 0) {
        for (int u = 1; u <= ucap[d]; ++u) {
            long long chunk = (long long)d * u;
            long long hi = std::min(B[d], (rem + chunk - 1) / chunk);
            for (long long N = hi; N >= 1; --N) {
                curN[d] = (int)N;
                curU[d] = u;
                dfs(d + 1, deg + N * chunk, cost + N * mu[d] * mhat[u]);
            }
        }
    }
    curN[d] = 0;
    curU[d] = 1;
    dfs(d + 1, deg, cost);
}

}  // namespace

BoundResult optimize_bound(std::uint32_t q, int n, const Curve& C, int dmax, const OptimizeOptions& opt) {
    if (n < 1) throw validation_error("n must be positive");
    if (C.field().size() != q) throw validation_error("curve is not defined over F_q");
    if (dmax < 1 || dmax > cost_dmax(q))
        throw validation_error("dmax must be between 1 and " + std::to_string(cost_dmax(q)));
    int umax = std::min(opt.umax, cost_umax());
    if (umax < 1) throw validation_error("umax must be positive");

    CurveClass cls = classify(C);
    int slack = cls.slack;
    if (cls.label == 'b' && opt.tight_case_b) slack = 0;
    long long target = 2LL * n + slack;

    ZetaData z = zeta_counts(C, dmax);
    Searcher s;
    s.q = q;
    s.dmax = dmax;
    s.umax = umax;
    s.target = target;
    s.B.assign(dmax + 1, 0);
    for (int d = 1; d <= dmax; ++d) s.B[d] = z.B[d - 1];
    s.prepare();
    if (s.capacity[1] < target)
        throw construction_error("degree target " + std::to_string(target) +
                                 " is out of reach: places of degree up to " + std::to_string(dmax) +
                                 " with jet order up to " + std::to_string(umax) + " give at most " +
                                 std::to_string(s.capacity[1]));
    s.dfs(1, 0, 0);
    if (!s.found) throw internal_error("bound search missed a feasible shape");

    DivisorShape shape;
    int len = dmax;
    while (len > 1 && s.bestN[len] == 0) --len;
    for (int d = 1; d <= len; ++d) {
        shape.N.push_back(s.bestN[d]);
        shape.U.push_back(s.bestN[d] > 0 ? s.bestU[d] : 1);
    }
    shape.degree = s.bestDeg;
    shape.cost = s.bestCost;
    return {C, equation_of(C), cls, target, std::move(shape), s.bestCost, -1};
}

BoundResult best_curve(std::uint32_t q, int n, int dmax, const OptimizeOptions& opt) {
    std::optional<BoundResult> best;
    auto entries = catalog(q);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        try {
            BoundResult r = optimize_bound(q, n, entries[i].curve, dmax, opt);
            r.catalog_index = (int)i;
            r.equation = entries[i].equation;
            if (!best || r.bound < best->bound) best.emplace(std::move(r));
        } catch (const construction_error&) {
        }
    }
    if (!best)
        throw construction_error("no catalog curve over F_" + std::to_string(q) +
                                 " reaches the degree target with dmax " + std::to_string(dmax));
    return *best;
}

}  // namespace ellmul
