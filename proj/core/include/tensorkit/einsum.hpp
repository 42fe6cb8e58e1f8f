#pragma once

#include <map>
#include <string>

#include "tensorkit/dense_tensor.hpp"
#include "tensorkit/index_notation.hpp"

namespace tk {

using Binding = std::map<std::string, DenseTensor>;

// Evaluates an index expression over bound component arrays.
//
// Free indices become output slots, ordered by first appearance in the first
// term; their written position fixes the output variance.  Dummy indices are
// summed (cartesian mode sums same-position pairs too; strict mode insists
// on one upper one lower).  'e' and 'd' are bound automatically to the
// permutation symbol and Kronecker delta of the working dim when not bound
// explicitly.  The output weight is the per-term sum of bound weights, which
// must agree across terms.
//
// Throws ShapeError on validation failure, unbound names, rank/dim
// mismatches, derivative factors, or terms with more than 8 distinct
// indices (the loop-nest cap).
DenseTensor einsum_eval(const Expression& expr, const Binding& binding, int dim,
                        Mode mode = Mode::cartesian);

DenseTensor einsum_eval(const std::string& expr, const Binding& binding, int dim,
                        Mode mode = Mode::cartesian);

} // namespace tk
