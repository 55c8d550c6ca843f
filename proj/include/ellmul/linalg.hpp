#pragma once

#include <optional>
#include <vector>

#include "ellmul/field.hpp"

namespace ellmul {

// Dense matrix over a Field, row-major.  All eliminations pick the first
// usable pivot in scan order, so every result is deterministic.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Elt> a;

    Mat() = default;
    Mat(const Field& F, int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, F.zero()) {}

    Elt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Elt& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

Mat mat_identity(const Field& F, int n);
Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
std::vector<Elt> mat_vec(const Field& F, const Mat& A, const std::vector<Elt>& x);
Mat mat_transpose(const Mat& A);
bool mat_eq(const Mat& A, const Mat& B);

int mat_rank(const Field& F, Mat A);
// Reduced row echelon form in place; returns pivot columns.
std::vector<int> mat_rref(const Field& F, Mat& A);
// Square inverse; throws internal_error if singular.
Mat mat_inverse(const Field& F, const Mat& A);
// One solution of A x = b, free variables zero; empty if inconsistent.
std::optional<std::vector<Elt>> mat_solve(const Field& F, const Mat& A, const std::vector<Elt>& b);
// Basis of the right nullspace (one vector per non-pivot column of the RREF).
std::vector<std::vector<Elt>> mat_nullspace(const Field& F, Mat A);
// For A with full column rank: L with L A = I.  Built from the first
// linearly independent row set, so it is deterministic; returns the chosen
// row indices too.  Throws internal_error when rank < cols.
Mat mat_left_inverse(const Field& F, const Mat& A, std::vector<int>* picked_rows = nullptr);

}  // namespace ellmul
