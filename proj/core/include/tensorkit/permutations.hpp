#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tk {

// Sign of the permutation taking 0,1,...,n-1 to `perm` (+1 even, -1 odd).
// Entries must be a permutation of 0..n-1; not checked.
int permutation_parity(std::span<const int> perm);

// Calls fn(perm, parity) for every permutation of 0..n-1 in lexicographic
// order.  n! calls, so keep n small (callers here stay at n <= 8).
void for_each_permutation(int n, const std::function<void(std::span<const int>, int)>& fn);

} // namespace tk
