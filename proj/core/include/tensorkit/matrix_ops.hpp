#pragma once

#include "tensorkit/dense_tensor.hpp"

namespace tk {

// Cartesian matrix/vector toolkit built on the permutation symbol.  Inputs
// are rank-2 (matrices) or rank-1 (vectors); variance is not policed here
// and results come back covariant with weight 0.

double trace(const DenseTensor& m);

enum class DetMethod { by_row, by_col, double_epsilon };

// Determinant via the permutation symbol:
//   by_row:         e_{i1..in} A_{0 i1} ... A_{n-1 in}
//   by_col:         e_{i1..in} A_{i1 0} ... A_{in n-1}
//   double_epsilon: (1/n!) e_{i..} e_{j..} A_{i1 j1} ... A_{in jn}
// Supported for dim <= 6.
double det_epsilon(const DenseTensor& m, DetMethod method = DetMethod::by_row);

// 3x3 inverse, [inv]_ij = e_{jmn} e_{ipq} A_{mp} A_{nq} / (2 det A).
// DomainError when |det| <= 1e-12.
DenseTensor inverse_epsilon(const DenseTensor& m);

// [a x b]_i = e_{ijk} a_j b_k (dim 3).
DenseTensor cross(const DenseTensor& a, const DenseTensor& b);

// e_{ijk} a_i b_j c_k
double scalar_triple(const DenseTensor& a, const DenseTensor& b, const DenseTensor& c);

// [a x (b x c)]_i = e_{ijk} e_{klm} a_j b_l c_m
DenseTensor vector_triple(const DenseTensor& a, const DenseTensor& b, const DenseTensor& c);

// A:B = A_ij B_ij; with transposed=true, A..B = A_ij B_ji.
double double_dot(const DenseTensor& a, const DenseTensor& b, bool transposed = false);

struct MainInvariants {
    double I, II, III;  // traces of A, A^2, A^3
    double I1, I2, I3;  // principal: I, (I^2 - II)/2, det
};

// 3x3 only.  I3 is evaluated through the trace form (I^3 - 3 I II + 2 III)/6.
MainInvariants main_invariants(const DenseTensor& m);

struct JointInvariants {
    double tr_a, tr_b, tr_a2, tr_b2, tr_a3, tr_b3;
    double tr_ab, tr_a2b, tr_ab2, tr_a2b2;
};

// The ten joint invariants of a matrix pair, via explicit matrix products.
JointInvariants joint_invariants(const DenseTensor& a, const DenseTensor& b);

} // namespace tk
