#include "tensorkit/special_tensors.hpp"

#include <cmath>
#include <cstdint>

#include "tensorkit/permutations.hpp"

namespace tk {

DenseTensor kronecker(int dim) {
    DenseTensor d(dim, {Variance::contra, Variance::co});
    for (int i = 0; i < dim; ++i) d.at({i, i}) = 1.0;
    return d;
}

DenseTensor kronecker_covariant(int dim) {
    DenseTensor d(dim, {Variance::co, Variance::co});
    for (int i = 0; i < dim; ++i) d.at({i, i}) = 1.0;
    return d;
}

namespace {

DenseTensor epsilon_impl(int n, Variance v, int weight) {
    if (n < 2 || n > DenseTensor::max_rank)
        throw ShapeError("epsilon: rank must be in [2," + std::to_string(DenseTensor::max_rank) +
                         "], got " + std::to_string(n));
    DenseTensor e(n, std::vector<Variance>(n, v), weight);
    // only the n! permutation entries are nonzero
    for_each_permutation(n, [&](std::span<const int> perm, int parity) {
        e.at(perm) = static_cast<double>(parity);
    });
    return e;
}

} // namespace

DenseTensor epsilon(int n, int weight) { return epsilon_impl(n, Variance::co, weight); }

DenseTensor epsilon_contravariant(int n, int weight) {
    return epsilon_impl(n, Variance::contra, weight);
}

double epsilon_closed_form(std::span<const int> idx, bool use_sign_form) {
    int n = static_cast<int>(idx.size());
    if (n < 2 || n > DenseTensor::max_rank)
        throw ShapeError("epsilon_closed_form: tuple length out of range");
    for (int a : idx)
        if (a < 0 || a >= n) throw ShapeError("epsilon_closed_form: index out of range");

    if (use_sign_form) {
        int prod = 1;
        for (int p = 0; p < n && prod != 0; ++p)
            for (int q = p + 1; q < n; ++q) {
                int d = idx[q] - idx[p];
                prod *= (d > 0) - (d < 0);
                if (prod == 0) break;
            }
        return static_cast<double>(prod);
    }

    // Vandermonde product of index differences over the superfactorial
    // S(n-1) = 1! 2! ... (n-1)!.  For any permutation the quotient is +-1;
    // a repeated index zeroes the product.  Max magnitude (n=8) ~ 1.25e11,
    // comfortably inside 64-bit range.
    std::int64_t prod = 1;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) prod *= static_cast<std::int64_t>(idx[q] - idx[p]);
    std::int64_t super = 1, fact = 1;
    for (int k = 1; k <= n - 1; ++k) {
        fact *= k;
        super *= fact;
    }
    return static_cast<double>(prod) / static_cast<double>(super);
}

double generalized_kronecker_entry(std::span<const int> upper, std::span<const int> lower) {
    if (upper.size() != lower.size())
        throw ShapeError("generalized_kronecker_entry: tuple lengths differ");
    int n = static_cast<int>(upper.size());
    // det of the n x n 0/1 matrix M[a][b] = [upper_a == lower_b], expanded
    // over permutations; exact in integers for the small n used here.
    std::int64_t det = 0;
    for_each_permutation(n, [&](std::span<const int> perm, int parity) {
        std::int64_t prod = parity;
        for (int a = 0; a < n && prod != 0; ++a)
            if (upper[a] != lower[perm[a]]) prod = 0;
        det += prod;
    });
    return static_cast<double>(det);
}

DenseTensor generalized_kronecker(int dim, int n) {
    if (n < 1 || 2 * n > DenseTensor::max_rank)
        throw ShapeError("generalized_kronecker: need 1 <= n and 2n <= " +
                         std::to_string(DenseTensor::max_rank));
    std::vector<Variance> var(2 * n, Variance::co);
    for (int s = 0; s < n; ++s) var[s] = Variance::contra;
    DenseTensor g(dim, std::move(var));
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        std::vector<int> idx = g.unravel(flat);
        std::span<const int> upper(idx.data(), n);
        std::span<const int> lower(idx.data() + n, n);
        g.components()[flat] = generalized_kronecker_entry(upper, lower);
    }
    return g;
}

} // namespace tk
