#include "ellmul/build.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ellmul/cost.hpp"
#include "ellmul/errors.hpp"

namespace ellmul {

namespace {

constexpr int kAttempts = 40;

bool point_eq(const Point& a, const Point& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
}

int min_n(std::uint32_t q) { return q == 2 ? 7 : q == 3 ? 4 : 3; }

// Least monic relation of theta over the base field, coordinates read
// through the ambient basis; zero polynomial when none exists up to dcap.
Pol min_poly(const Field& base, const Field& R, const RelBasis& amb, const Elt& theta, int dcap) {
    int d = amb.d();
    std::vector<Elt> pows;
    Elt p = R.one();
    for (int j = 0; j <= dcap; ++j) {
        pows.push_back(p);
        if (j < dcap) p = R.mul(p, theta);
    }
    for (int m = 1; m <= dcap; ++m) {
        Mat A(base, d, m);
        for (int j = 0; j < m; ++j) {
            auto col = amb.to_coords(pows[j]);
            for (int i = 0; i < d; ++i) A.at(i, j) = col[i];
        }
        auto sol = mat_solve(base, A, amb.to_coords(R.neg(pows[m])));
        if (!sol) continue;
        Pol f = std::move(*sol);
        f.push_back(base.one());
        return pol_trim(std::move(f));
    }
    return pol_zero();
}

Site make_site(const FuncField& FF, const Place& P, int u) {
    Site s;
    s.P = P;
    s.u = u;
    const FieldPtr& base = FF.base_ptr();
    int d = P.d;
    if (d == 1) {
        s.inner = inner_truncated(base, u);
        return s;
    }
    const Field& R = *P.R;
    std::vector<Elt> cands;
    if (P.dx == d) {
        cands.push_back(P.x0);
    } else {
        cands.push_back(P.y0);
        for (u128 i = 1; i < base->size(); ++i)
            cands.push_back(R.add(P.x0, R.mul(P.emb->apply(base->element_at(i)), P.y0)));
    }
    for (const Elt& th : cands) {
        Pol f = min_poly(*base, R, *P.rb, th, d);
        if (deg(f) != d) continue;
        s.theta = th;
        s.hmin = f;
        s.coords = RelBasis(*P.emb, th, d);
        InnerAlgorithm fm = inner_field_mult(base, f);
        s.inner = u == 1 ? fm : inner_compose(base, inner_truncated(base, u), fm);
        return s;
    }
    throw internal_error("no power-basis generator found for a residue field");
}

void site_rows(const FuncField& FF, const Site& s, const std::vector<FElem>& fs, Mat& E) {
    int d = s.P.d;
    auto blocks = FF.jet_block(fs, s.P, s.u);
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (int t = 0; t < s.u; ++t) {
            const Elt& c = blocks[j][t];
            if (d == 1) {
                E.at(s.row0 + t, static_cast<int>(j)) = c;
            } else {
                auto co = s.coords->to_coords(c);
                for (int i = 0; i < d; ++i) E.at(s.row0 + t * d + i, static_cast<int>(j)) = co[i];
            }
        }
}

void validate_request(std::uint32_t q, int n, const Curve& C, const DivisorShape& shape) {
    if (C.field().size() != q) throw validation_error("curve is not defined over F_q");
    if (n < min_n(q))
        throw validation_error("n = " + std::to_string(n) + " is below the place-existence criterion (need n >= " +
                               std::to_string(min_n(q)) + " for q = " + std::to_string(q) + ")");
    if (shape.N.empty() || shape.N.size() != shape.U.size())
        throw validation_error("malformed divisor shape");
    ZetaData z = zeta_counts(C, static_cast<int>(shape.N.size()));
    long long degsum = 0;
    for (std::size_t i = 0; i < shape.N.size(); ++i) {
        int d = static_cast<int>(i) + 1, N = shape.N[i], u = shape.U[i];
        if (N < 0 || u < 1) throw validation_error("malformed divisor shape");
        if (N == 0) continue;
        if (N > z.B[i])
            throw validation_error("shape asks for " + std::to_string(N) + " places of degree " +
                                   std::to_string(d) + " but the curve only has " + std::to_string(z.B[i]));
        if (d > 4)
            throw validation_error("places of degree " + std::to_string(d) +
                                   " are beyond the shipped field algorithms (degree <= 4)");
        int ucap = d == 1 ? 3 : d == 2 ? 2 : 1;
        if (u > ucap)
            throw validation_error("jet order " + std::to_string(u) + " at degree " + std::to_string(d) +
                                   " is beyond the assembly stage (<= 3 at rational points, <= 2 at degree-2 "
                                   "places, plain evaluation beyond)");
        degsum += static_cast<long long>(N) * d * u;
    }
    if (degsum < 2LL * n)
        throw validation_error("divisor shape has degree " + std::to_string(degsum) + " < 2n = " +
                               std::to_string(2LL * n));
}

}  // namespace

bool ConditionReport::pass() const {
    return disjoint && eval_rank_full && qeval_rank_full && sections_vanish && nonspecial && routes_agree;
}

std::string ConditionReport::describe() const {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream os;
    os << "support disjoint: " << yn(disjoint) << "; evaluation rank full: " << yn(eval_rank_full)
       << "; Q-evaluation rank full: " << yn(qeval_rank_full)
       << "; sections of 2D-G vanish: " << yn(sections_vanish)
       << "; D-Q nonspecial: " << yn(nonspecial) << "; routes agree: " << yn(routes_agree);
    return os.str();
}

BuildPlan sample_plan(std::uint32_t q, int n, const Curve& C, const DivisorShape& shape, Rng rng,
                      bool shuffled) {
    validate_request(q, n, C, shape);
    FuncField FF(C);
    BuildPlan plan{C};
    plan.q = q;
    plan.n = n;
    plan.shape = shape;
    plan.shape.degree = plan.shape.cost = 0;
    for (std::size_t i = 0; i < shape.N.size(); ++i) {
        plan.shape.degree += static_cast<long long>(shape.N[i]) * (static_cast<int>(i) + 1) * shape.U[i];
        plan.shape.cost += shape.N[i] * cost(q, static_cast<int>(i) + 1, shape.U[i]);
    }
    plan.seed = rng.seed();

    Rng rq = rng.derive(1), rd = rng.derive(2), rg = rng.derive(3);
    plan.Q = FF.random_place(n, rq);
    for (int t = 0;; ++t) {
        if (t == 200)
            throw construction_error("could not sample a pole place distinct from the evaluation place");
        plan.D = FF.random_place(n, rd);
        if (!place_eq(plan.D, plan.Q)) break;
    }

    int row = 0, prod = 0;
    for (std::size_t i = 0; i < shape.N.size(); ++i) {
        int d = static_cast<int>(i) + 1, want = shape.N[i];
        if (!want) continue;
        Rng rp = rg.derive(d);
        auto all = FF.places_of_degree(d, rp);
        std::erase_if(all, [&](const Place& P) { return place_eq(P, plan.Q) || place_eq(P, plan.D); });
        if (static_cast<int>(all.size()) < want)
            throw construction_error("only " + std::to_string(all.size()) + " places of degree " +
                                     std::to_string(d) +
                                     " remain after excluding the pole and evaluation places (need " +
                                     std::to_string(want) + ")");
        if (shuffled) {
            Rng rs = rg.derive(100 + d);
            for (int k = static_cast<int>(all.size()) - 1; k > 0; --k)
                std::swap(all[k], all[rs.below(static_cast<std::uint64_t>(k) + 1)]);
        }
        for (int k = 0; k < want; ++k) {
            Site s = make_site(FF, all[k], shape.U[i]);
            s.row0 = row;
            s.prod0 = prod;
            row += d * s.u;
            prod += s.inner.m;
            plan.sites.push_back(std::move(s));
        }
    }
    plan.degG = row;

    Divisor Dv, D2;
    Dv.add(plan.D, 1);
    D2.add(plan.D, 2);
    plan.fD = FF.rr_basis(Dv);
    plan.f2D = FF.rr_basis(D2, &plan.fD);
    if (static_cast<int>(plan.fD.size()) != n || static_cast<int>(plan.f2D.size()) != 2 * n)
        throw internal_error("Riemann-Roch dimensions are off");

    plan.eval = Mat(FF.base(), row, 2 * n);
    for (const Site& s : plan.sites) site_rows(FF, s, plan.f2D, plan.eval);

    plan.h = plan.Q.xmin;
    plan.qcoords = *plan.Q.rb;
    plan.qeval = Mat(FF.base(), n, n);
    for (int i = 0; i < n; ++i) {
        auto co = plan.qcoords.to_coords(FF.evaluate(plan.fD[i], plan.Q));
        for (int j = 0; j < n; ++j) plan.qeval.at(i, j) = co[j];
    }
    return plan;
}

ConditionReport check_conditions(const BuildPlan& plan) {
    ConditionReport r;
    FuncField FF(plan.curve);
    const Field& F = FF.base();
    int n = plan.n;

    r.disjoint = !place_eq(plan.D, plan.Q);
    for (const Site& s : plan.sites)
        if (place_eq(s.P, plan.D)) r.disjoint = false;

    r.eval_rank_full = plan.eval.rows >= 2 * n && mat_rank(F, plan.eval) == 2 * n;
    r.qeval_rank_full = mat_rank(F, plan.qeval) == n;

    Divisor D2, G;
    D2.add(plan.D, 2);
    for (const Site& s : plan.sites) G.add(s.P, s.u);
    long long dd = 2LL * n - plan.degG;
    if (dd < 0)
        r.sections_vanish = true;
    else if (dd == 0)
        r.sections_vanish = !point_eq(FF.sigma(D2), FF.sigma(G));
    else
        r.sections_vanish = false;

    Divisor D1, Q1;
    D1.add(plan.D, 1);
    Q1.add(plan.Q, 1);
    r.nonspecial = !point_eq(FF.sigma(D1), FF.sigma(Q1));

    r.routes_agree =
        r.eval_rank_full == r.sections_vanish && r.qeval_rank_full == r.nonspecial;
    return r;
}

void complete_plan(BuildPlan& plan) {
    const Field& F = plan.curve.field();
    int n = plan.n;
    plan.eval_inv =
        plan.degG == 2 * n ? mat_inverse(F, plan.eval) : mat_left_inverse(F, plan.eval);
    FuncField FF(plan.curve);
    Mat B = mat_inverse(F, mat_transpose(plan.qeval));
    plan.reduction = Mat(F, n, n);
    for (int i = 0; i < n; ++i) {
        auto co = plan.qcoords.to_coords(FF.evaluate(plan.f2D[n + i], plan.Q));
        auto v = mat_vec(F, B, co);
        for (int j = 0; j < n; ++j) plan.reduction.at(i, j) = v[j];
    }
}

BuildPlan build(std::uint32_t q, int n, const Curve& C, const DivisorShape& shape,
                std::uint64_t seed) {
    Rng root(seed);
    std::string last = "no attempt ran";
    for (int t = 0; t < kAttempts; ++t) {
        std::optional<BuildPlan> plan;
        try {
            plan.emplace(sample_plan(q, n, C, shape, root.derive(static_cast<std::uint64_t>(t)), t > 0));
        } catch (const construction_error& e) {
            last = e.what();
            continue;
        }
        plan->seed = seed;
        plan->attempt = t;
        ConditionReport rep = check_conditions(*plan);
        if (!rep.pass()) {
            last = rep.describe();
            continue;
        }
        complete_plan(*plan);
        return std::move(*plan);
    }
    throw construction_error("no valid plan after " + std::to_string(kAttempts) + " attempts (q = " +
                             std::to_string(q) + ", n = " + std::to_string(n) +
                             "); last failure: " + last);
}

TensorDecomposition assemble_tensor(const BuildPlan& plan) {
    const FieldPtr& F = plan.curve.field_ptr();
    const Field& Fq = *F;
    int n = plan.n;
    if (plan.eval_inv.rows == 0) throw validation_error("plan has not been completed");
    long long r = 0;
    for (const Site& s : plan.sites) r += s.inner.m;
    if (r != plan.shape.cost) throw internal_error("product count disagrees with the declared cost");

    TensorDecomposition T;
    T.F = F;
    T.n = n;
    T.h = plan.h;
    Mat Emat = mat_transpose(plan.qeval);
    T.basis_change = mat_inverse(Fq, Emat);
    T.declared_rank = static_cast<int>(r);
    T.symmetric = true;
    T.provenance = {equation_of(plan.curve), plan.shape.N, plan.shape.U, plan.seed};

    for (const Site& s : plan.sites) {
        for (int j = 0; j < s.inner.m; ++j) {
            TensorProduct tp;
            tp.phi.assign(n, Fq.zero());
            for (int k = 0; k < s.inner.k; ++k) {
                const Elt& c = s.inner.forms.at(j, k);
                if (Fq.is_zero(c)) continue;
                for (int i = 0; i < n; ++i) Fq.addmul(tp.phi[i], c, plan.eval.at(s.row0 + k, i));
            }
            std::vector<Elt> C(2 * n, Fq.zero());
            for (int o = 0; o < s.inner.out; ++o) {
                const Elt& c = s.inner.recon.at(o, j);
                if (Fq.is_zero(c)) continue;
                for (int i = 0; i < 2 * n; ++i) Fq.addmul(C[i], c, plan.eval_inv.at(i, s.row0 + o));
            }
            std::vector<Elt> chat(C.begin(), C.begin() + n);
            for (int t = 0; t < n; ++t) {
                const Elt& c = C[n + t];
                if (Fq.is_zero(c)) continue;
                for (int i = 0; i < n; ++i) Fq.addmul(chat[i], plan.reduction.at(t, i), c);
            }
            tp.w.assign(n, Fq.zero());
            for (int i = 0; i < n; ++i) {
                if (Fq.is_zero(chat[i])) continue;
                for (int p = 0; p < n; ++p) Fq.addmul(tp.w[p], Emat.at(p, i), chat[i]);
            }
            T.products.push_back(std::move(tp));
        }
    }
    return T;
}

}  // namespace ellmul
