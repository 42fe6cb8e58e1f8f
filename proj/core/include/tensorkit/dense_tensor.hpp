#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tensorkit/errors.hpp"

namespace tk {

enum class Variance : std::uint8_t { co, contra };

std::string to_string(Variance v);

// Dense tensor over R^dim with explicit variance per slot and an integer
// relative weight (0 for absolute tensors).  Components are stored flat in
// row-major order, last index fastest; size is dim^rank.
//
// rank 0 is a scalar (single component, empty variance).
class DenseTensor {
  public:
    static constexpr int max_rank = 8;
    static constexpr int max_dim = 8;

    DenseTensor() : dim_(1) {}  // scalar 0
    DenseTensor(int dim, std::vector<Variance> variance, int weight = 0);
    DenseTensor(int dim, std::vector<Variance> variance, std::vector<double> components,
                int weight = 0);

    static DenseTensor scalar(double value, int weight = 0);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(variance_.size()); }
    int weight() const { return weight_; }
    const std::vector<Variance>& variance() const { return variance_; }
    Variance variance(int slot) const { return variance_.at(slot); }

    std::size_t size() const { return components_.size(); }
    const std::vector<double>& components() const { return components_; }
    std::vector<double>& components() { return components_; }

    // Multi-index access; indices are 0-based, idx.size() must equal rank().
    double at(std::span<const int> idx) const { return components_[offset(idx)]; }
    double& at(std::span<const int> idx) { return components_[offset(idx)]; }
    double at(std::initializer_list<int> idx) const {
        return at(std::span<const int>(idx.begin(), idx.size()));
    }
    double& at(std::initializer_list<int> idx) {
        return components_[offset(std::span<const int>(idx.begin(), idx.size()))];
    }

    std::size_t offset(std::span<const int> idx) const;
    std::size_t offset(std::initializer_list<int> idx) const {
        return offset(std::span<const int>(idx.begin(), idx.size()));
    }
    // Inverse of offset(): decode flat position into a 0-based multi-index.
    std::vector<int> unravel(std::size_t flat) const;

    bool same_shape(const DenseTensor& other) const;

    double max_abs() const;

  private:
    int dim_;
    int weight_ = 0;
    std::vector<Variance> variance_;
    std::vector<double> components_ = {0.0};
};

// Elementwise ops: shapes (dim, variance, weight) must match exactly.
DenseTensor add(const DenseTensor& a, const DenseTensor& b);
DenseTensor sub(const DenseTensor& a, const DenseTensor& b);
DenseTensor scale(const DenseTensor& a, double factor);

// Largest |a - b| component; shape mismatch throws.
double max_abs_diff(const DenseTensor& a, const DenseTensor& b);

// Outer product: result rank = ra + rb, a's slots first, weights add.
DenseTensor outer_product(const DenseTensor& a, const DenseTensor& b);

// Contract two slots of one tensor (sum over their shared value).  The two
// surviving slot lists keep their order; weight is preserved.  In strict mode
// the slots must have complementary variance.
DenseTensor contract(const DenseTensor& t, int slot_a, int slot_b, bool strict = false);

// Reorder slots: result slot i takes old slot perm[i] (variance follows).
DenseTensor permute_slots(const DenseTensor& t, const std::vector<int>& perm);

// Symmetrize / antisymmetrize over a subset of slots (all of the same
// variance is not required here; slots just get averaged over permutations).
// 1/k! normalization over the k! permutations of `slots`.
DenseTensor symmetrize(const DenseTensor& t, const std::vector<int>& slots);
DenseTensor antisymmetrize(const DenseTensor& t, const std::vector<int>& slots);

// Change of basis.  jac[i][j] = d(new x^i)/d(old x^j) as a rank-2 tensor,
// inv_jac its inverse; both dim x dim.  Contravariant slots contract with
// jac, covariant slots with inv_jac, and a relative tensor of weight w picks
// up det(inv_jac)^w.  Preconditions: jac * inv_jac == I within 1e-10 and
// |det jac| >= 1e-12, else DomainError.
DenseTensor transform(const DenseTensor& t, const DenseTensor& jac, const DenseTensor& inv_jac);

} // namespace tk
