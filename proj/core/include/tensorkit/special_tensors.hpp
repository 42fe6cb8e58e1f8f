#pragma once

#include "tensorkit/dense_tensor.hpp"

namespace tk {

// Kronecker delta: rank-2, one upper one lower slot, delta^i_j = [i == j].
DenseTensor kronecker(int dim);

// Same components with both slots covariant (cartesian working form).
DenseTensor kronecker_covariant(int dim);

// Permutation (Levi-Civita) symbol of rank n == dim, all slots covariant,
// built from permutation parity: +1 / -1 on even / odd arrangements of
// 0..n-1, zero on repeats.  2 <= n <= 8.  Weight defaults to 0; pass -1 to
// tag it as the relative tensor it transforms as.
DenseTensor epsilon(int n, int weight = 0);
DenseTensor epsilon_contravariant(int n, int weight = 1);

// Closed-form entry of the permutation symbol for one index tuple
// (0-based), supported for 2 <= n <= 8:
//   n=2: (j-i); n=3: (j-i)(k-i)(k-j)/2; n=4: product of six differences / 12;
//   general: prod_{p<q}(a_q - a_p) normalized by the superfactorial of n-1,
//   or equivalently the product of sgn(a_q - a_p).
// `use_sign_form` picks the sgn-product variant; both agree exactly.
double epsilon_closed_form(std::span<const int> idx, bool use_sign_form = false);

// Generalized Kronecker delta of 2n slots (n upper then n lower), evaluated
// as the n x n determinant det[ delta^{upper_a}_{lower_b} ].  Entries are
// exact integers (+1/0/-1 matrix determinant).
DenseTensor generalized_kronecker(int dim, int n);

// Single entry, same determinant evaluation without building the tensor.
double generalized_kronecker_entry(std::span<const int> upper, std::span<const int> lower);

} // namespace tk
