#include "ellmul/linalg.hpp"

#include "ellmul/errors.hpp"

namespace ellmul {

Mat mat_identity(const Field& F, int n) {
    Mat I(F, n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = F.one();
    return I;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw internal_error("matrix product shape mismatch");
    Mat C(F, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const Elt& a = A.at(i, k);
            if (F.is_zero(a)) continue;
            for (int j = 0; j < B.cols; ++j) F.addmul(C.at(i, j), a, B.at(k, j));
        }
    return C;
}

std::vector<Elt> mat_vec(const Field& F, const Mat& A, const std::vector<Elt>& x) {
    if (static_cast<int>(x.size()) != A.cols) throw internal_error("matrix-vector shape mismatch");
    std::vector<Elt> y(A.rows, F.zero());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) F.addmul(y[i], A.at(i, j), x[j]);
    return y;
}

Mat mat_transpose(const Mat& A) {
    Mat T;
    T.rows = A.cols;
    T.cols = A.rows;
    T.a.resize(A.a.size());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.a[static_cast<size_t>(j) * T.cols + i] = A.at(i, j);
    return T;
}

bool mat_eq(const Mat& A, const Mat& B) {
    return A.rows == B.rows && A.cols == B.cols && A.a == B.a;
}

std::vector<int> mat_rref(const Field& F, Mat& A) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < A.cols && row < A.rows; ++col) {
        int pr = -1;
        for (int i = row; i < A.rows; ++i)
            if (!F.is_zero(A.at(i, col))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(row, j), A.at(pr, j));
        Elt pi = F.inv(A.at(row, col));
        for (int j = col; j < A.cols; ++j) A.at(row, j) = F.mul(A.at(row, j), pi);
        for (int i = 0; i < A.rows; ++i) {
            if (i == row) continue;
            Elt c = A.at(i, col);
            if (F.is_zero(c)) continue;
            for (int j = col; j < A.cols; ++j)
                A.at(i, j) = F.sub(A.at(i, j), F.mul(c, A.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int mat_rank(const Field& F, Mat A) { return static_cast<int>(mat_rref(F, A).size()); }

Mat mat_inverse(const Field& F, const Mat& A) {
    if (A.rows != A.cols) throw internal_error("inverse of non-square matrix");
    int n = A.rows;
    Mat W(F, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, n + i) = F.one();
    }
    auto piv = mat_rref(F, W);
    if (static_cast<int>(piv.size()) != n || piv[n - 1] != n - 1)
        throw internal_error("matrix is singular");
    Mat R(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j) = W.at(i, n + j);
    return R;
}

std::optional<std::vector<Elt>> mat_solve(const Field& F, const Mat& A, const std::vector<Elt>& b) {
    if (static_cast<int>(b.size()) != A.rows) throw internal_error("solve shape mismatch");
    Mat W(F, A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, A.cols) = b[i];
    }
    auto piv = mat_rref(F, W);
    for (size_t r = 0; r < piv.size(); ++r)
        if (piv[r] == A.cols) return std::nullopt;  // pivot in the constant column
    std::vector<Elt> x(A.cols, F.zero());
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = W.at(static_cast<int>(r), A.cols);
    return x;
}

std::vector<std::vector<Elt>> mat_nullspace(const Field& F, Mat A) {
    auto piv = mat_rref(F, A);
    std::vector<bool> is_piv(A.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<Elt>> basis;
    for (int freec = 0; freec < A.cols; ++freec) {
        if (is_piv[freec]) continue;
        std::vector<Elt> v(A.cols, F.zero());
        v[freec] = F.one();
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(A.at(static_cast<int>(r), freec));
        basis.push_back(std::move(v));
    }
    return basis;
}

Mat mat_left_inverse(const Field& F, const Mat& A, std::vector<int>* picked_rows) {
    int n = A.cols;
    // Greedily take the first n linearly independent rows.
    std::vector<int> rows;
    int got = 0;
    Mat echelon(F, n, n);  // running echelon copy for the independence test
    std::vector<int> lead(n, -1);
    for (int i = 0; i < A.rows && got < n; ++i) {
        std::vector<Elt> v(n);
        for (int j = 0; j < n; ++j) v[j] = A.at(i, j);
        // Reduce v against the rows collected so far.
        for (int r = 0; r < got; ++r) {
            int lc = lead[r];
            Elt c = v[lc];
            if (F.is_zero(c)) continue;
            for (int j = 0; j < n; ++j) v[j] = F.sub(v[j], F.mul(c, echelon.at(r, j)));
        }
        int lc = -1;
        for (int j = 0; j < n; ++j)
            if (!F.is_zero(v[j])) { lc = j; break; }
        if (lc < 0) continue;
        Elt pi = F.inv(v[lc]);
        for (int j = 0; j < n; ++j) echelon.at(got, j) = F.mul(v[j], pi);
        lead[got] = lc;
        rows.push_back(i);
        ++got;
    }
    if (got < n) throw internal_error("matrix does not have full column rank");
    Mat S(F, n, n);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) S.at(r, j) = A.at(rows[r], j);
    Mat Si = mat_inverse(F, S);
    Mat L(F, n, A.rows);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) L.at(i, rows[r]) = Si.at(i, r);
    if (picked_rows) *picked_rows = rows;
    return L;
}

}  // namespace ellmul
