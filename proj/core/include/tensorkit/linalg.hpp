#pragma once

#include "tensorkit/dense_tensor.hpp"

namespace tk {

// Small dense helpers for rank-2 tensors treated as plain d x d matrices.
// These are workhorse routines for metric and jacobian plumbing; the
// epsilon-based determinant/inverse formulas live in matrix_ops.

DenseTensor identity_matrix(int dim);

// Determinant by Gaussian elimination with partial pivoting.
double det_gauss(const DenseTensor& m);

// Gauss-Jordan inverse.  Result has each slot's variance flipped (the
// inverse of a covariant metric is contravariant); weight is reset to 0.
// Throws DomainError when a pivot falls below 1e-13 * max|entry|.
DenseTensor invert(const DenseTensor& m);

// result_ik = sum_j a_ij b_jk; variance (a slot 0, b slot 1), weights add.
DenseTensor matmul(const DenseTensor& a, const DenseTensor& b);

// result_i = sum_j m_ij v_j.
std::vector<double> matvec(const DenseTensor& m, std::span<const double> v);

} // namespace tk
