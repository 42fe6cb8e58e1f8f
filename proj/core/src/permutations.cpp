#include "tensorkit/permutations.hpp"

#include <algorithm>
#include <numeric>

namespace tk {

int permutation_parity(std::span<const int> perm) {
    // cycle decomposition: parity = (-1)^(n - #cycles)
    int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    return ((n - cycles) % 2 == 0) ? 1 : -1;
}

void for_each_permutation(int n, const std::function<void(std::span<const int>, int)>& fn) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        fn(perm, permutation_parity(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace tk
