#include "ellmul/inner.hpp"

#include "ellmul/errors.hpp"

namespace ellmul {

namespace {

// Rows of small integers (with -1 meaning the additive inverse of one) are
// enough to write down every printed form and reconstruction.
Mat mat_from_ints(const Field& F, const std::vector<std::vector<int>>& rows) {
    Mat M(F, (int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) {
            int v = rows[i][j];
            Elt e = F.from_int((std::uint32_t)(v < 0 ? -v : v));
            M.at(i, j) = v < 0 ? F.neg(e) : e;
        }
    return M;
}

// The printed evaluation forms for the full product of two k-term operands.
std::vector<std::vector<int>> full_forms(int k) {
    switch (k) {
        case 1:
            return {{1}};
        case 2:
            return {{1, 0}, {0, 1}, {1, 1}};
        case 3:
            return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
        case 4:
            return {{1, 0, 0, 0},
                    {0, 1, 0, 0},
                    {0, 0, 1, 0},
                    {0, 0, 0, 1},
                    {1, 1, 0, 0},
                    {1, 0, 1, 0},
                    {0, 0, 1, 1},
                    {0, 1, 0, 1},
                    {1, 1, 1, 1}};
        default:
            throw validation_error("no explicit product algorithm for this operand length");
    }
}

// Solve the reconstruction: coefficients r with sum_j r_j (f_j.a)(f_j.b) equal
// to the convolution coefficient for every a, b.  Bilinearity reduces this to
// a linear system over the k*k monomials a_s b_t.
Mat solve_convolution_recon(const Field& F, const Mat& forms) {
    int m = forms.rows, k = forms.cols;
    Mat S(F, k * k, m);
    for (int j = 0; j < m; ++j)
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t) S.at(s * k + t, j) = F.mul(forms.at(j, s), forms.at(j, t));
    Mat R(F, 2 * k - 1, m);
    for (int c = 0; c < 2 * k - 1; ++c) {
        std::vector<Elt> target(k * k, F.zero());
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t)
                if (s + t == c) target[s * k + t] = F.one();
        auto r = mat_solve(F, S, target);
        if (!r) throw internal_error("product forms do not span the convolution");
        for (int j = 0; j < m; ++j) R.at(c, j) = (*r)[j];
    }
    return R;
}

}  // namespace

InnerAlgorithm inner_truncated(const FieldPtr& F, int u) {
    InnerAlgorithm A;
    switch (u) {
        case 1:
            A.forms = mat_from_ints(*F, {{1}});
            A.recon = mat_from_ints(*F, {{1}});
            break;
        case 2:
            A.forms = mat_from_ints(*F, {{1, 0}, {0, 1}, {1, 1}});
            A.recon = mat_from_ints(*F, {{1, 0, 0}, {-1, -1, 1}});
            break;
        case 3:
            A.forms = mat_from_ints(*F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}});
            A.recon = mat_from_ints(*F, {{1, 0, 0, 0, 0}, {-1, -1, 0, 1, 0}, {-1, 1, -1, 0, 1}});
            break;
        default:
            throw validation_error("no explicit truncated-product algorithm for this order");
    }
    A.k = u;
    A.m = A.forms.rows;
    A.out = u;
    return A;
}

InnerAlgorithm inner_field_mult(const FieldPtr& F, const Pol& h) {
    int d = deg(h);
    if (d < 1) throw validation_error("field-mult modulus must be nonconstant");
    if (!(h[d] == F->one())) throw validation_error("field-mult modulus must be monic");
    InnerAlgorithm A;
    A.forms = mat_from_ints(*F, full_forms(d));
    Mat conv = solve_convolution_recon(*F, A.forms);
    // Reduction modulo h: column j holds the coordinates of x^j mod h.
    Mat red(*F, d, 2 * d - 1);
    Pol xj = {F->one()};
    for (int j = 0; j < 2 * d - 1; ++j) {
        Pol r = pol_mod(*F, xj, h);
        for (int i = 0; i <= deg(r); ++i) red.at(i, j) = r[i];
        xj = pol_shift(xj, 1);
    }
    A.recon = mat_mul(*F, red, conv);
    A.k = d;
    A.m = A.forms.rows;
    A.out = d;
    return A;
}

InnerAlgorithm inner_compose(const FieldPtr& F, const InnerAlgorithm& trunc, const InnerAlgorithm& field) {
    InnerAlgorithm A;
    A.k = trunc.k * field.k;
    A.m = trunc.m * field.m;
    A.out = trunc.out * field.out;
    A.forms = Mat(*F, A.m, A.k);
    for (int jt = 0; jt < trunc.m; ++jt)
        for (int jf = 0; jf < field.m; ++jf)
            for (int l = 0; l < trunc.k; ++l)
                for (int s = 0; s < field.k; ++s)
                    A.forms.at(jt * field.m + jf, l * field.k + s) =
                        F->mul(trunc.forms.at(jt, l), field.forms.at(jf, s));
    A.recon = Mat(*F, A.out, A.m);
    for (int lt = 0; lt < trunc.out; ++lt)
        for (int s = 0; s < field.out; ++s)
            for (int jt = 0; jt < trunc.m; ++jt)
                for (int jf = 0; jf < field.m; ++jf)
                    A.recon.at(lt * field.out + s, jt * field.m + jf) =
                        F->mul(trunc.recon.at(lt, jt), field.recon.at(s, jf));
    return A;
}

std::vector<Elt> inner_apply(const Field& F, const InnerAlgorithm& alg, const std::vector<Elt>& a,
                             const std::vector<Elt>& b, std::vector<Elt>* prods) {
    if ((int)a.size() != alg.k || (int)b.size() != alg.k)
        throw validation_error("operand length does not match the algorithm");
    std::vector<Elt> m(alg.m, F.zero());
    for (int j = 0; j < alg.m; ++j) {
        Elt la = F.zero(), lb = F.zero();
        for (int i = 0; i < alg.k; ++i) {
            la = F.add(la, F.mul(alg.forms.at(j, i), a[i]));
            lb = F.add(lb, F.mul(alg.forms.at(j, i), b[i]));
        }
        m[j] = F.mul(la, lb);
    }
    std::vector<Elt> out(alg.out, F.zero());
    for (int i = 0; i < alg.out; ++i)
        for (int j = 0; j < alg.m; ++j) out[i] = F.add(out[i], F.mul(alg.recon.at(i, j), m[j]));
    if (prods) *prods = std::move(m);
    return out;
}

}  // namespace ellmul
