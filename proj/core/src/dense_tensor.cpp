#include "tensorkit/dense_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tensorkit/linalg.hpp"
#include "tensorkit/permutations.hpp"

namespace tk {

std::string to_string(Variance v) { return v == Variance::co ? "_" : "^"; }

namespace {

std::size_t pow_size(int dim, int rank) {
    std::size_t n = 1;
    for (int i = 0; i < rank; ++i) n *= static_cast<std::size_t>(dim);
    return n;
}

} // namespace

DenseTensor::DenseTensor(int dim, std::vector<Variance> variance, int weight)
    : dim_(dim), weight_(weight), variance_(std::move(variance)) {
    if (dim < 1 || dim > max_dim)
        throw ShapeError("tensor dim must be in [1," + std::to_string(max_dim) + "], got " +
                         std::to_string(dim));
    if (static_cast<int>(variance_.size()) > max_rank)
        throw ShapeError("tensor rank must be <= " + std::to_string(max_rank));
    components_.assign(pow_size(dim_, rank()), 0.0);
}

DenseTensor::DenseTensor(int dim, std::vector<Variance> variance, std::vector<double> components,
                         int weight)
    : DenseTensor(dim, std::move(variance), weight) {
    if (components.size() != components_.size())
        throw ShapeError("component count " + std::to_string(components.size()) +
                         " does not match dim^rank = " + std::to_string(components_.size()));
    components_ = std::move(components);
}

DenseTensor DenseTensor::scalar(double value, int weight) {
    DenseTensor t(1, {}, weight);
    t.components_[0] = value;
    return t;
}

std::size_t DenseTensor::offset(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank())
        throw ShapeError("index count " + std::to_string(idx.size()) + " does not match rank " +
                         std::to_string(rank()));
    std::size_t flat = 0;
    for (int k : idx) {
        if (k < 0 || k >= dim_) throw ShapeError("index " + std::to_string(k) + " out of range");
        flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k);
    }
    return flat;
}

std::vector<int> DenseTensor::unravel(std::size_t flat) const {
    std::vector<int> idx(rank());
    for (int s = rank() - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
        flat /= static_cast<std::size_t>(dim_);
    }
    return idx;
}

bool DenseTensor::same_shape(const DenseTensor& other) const {
    return dim_ == other.dim_ && variance_ == other.variance_ && weight_ == other.weight_;
}

double DenseTensor::max_abs() const {
    double m = 0.0;
    for (double c : components_) m = std::max(m, std::abs(c));
    return m;
}

namespace {

void require_same_shape(const DenseTensor& a, const DenseTensor& b, const char* op) {
    if (!a.same_shape(b))
        throw ShapeError(std::string(op) + ": operands must share dim, variance and weight");
}

} // namespace

DenseTensor add(const DenseTensor& a, const DenseTensor& b) {
    require_same_shape(a, b, "add");
    DenseTensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.components()[i] += b.components()[i];
    return out;
}

DenseTensor sub(const DenseTensor& a, const DenseTensor& b) {
    require_same_shape(a, b, "sub");
    DenseTensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.components()[i] -= b.components()[i];
    return out;
}

DenseTensor scale(const DenseTensor& a, double factor) {
    DenseTensor out = a;
    for (double& c : out.components()) c *= factor;
    return out;
}

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.components()[i] - b.components()[i]));
    return m;
}

DenseTensor outer_product(const DenseTensor& a, const DenseTensor& b) {
    if (a.dim() != b.dim() && a.rank() != 0 && b.rank() != 0)
        throw ShapeError("outer_product: dims differ");
    int dim = a.rank() != 0 ? a.dim() : b.dim();
    std::vector<Variance> var = a.variance();
    var.insert(var.end(), b.variance().begin(), b.variance().end());
    if (static_cast<int>(var.size()) > DenseTensor::max_rank)
        throw ShapeError("outer_product: result rank exceeds " +
                         std::to_string(DenseTensor::max_rank));
    DenseTensor out(dim, std::move(var), a.weight() + b.weight());
    std::size_t nb = b.size();
    for (std::size_t ia = 0; ia < a.size(); ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib)
            out.components()[ia * nb + ib] = a.components()[ia] * b.components()[ib];
    return out;
}

DenseTensor contract(const DenseTensor& t, int slot_a, int slot_b, bool strict) {
    int r = t.rank();
    if (slot_a < 0 || slot_a >= r || slot_b < 0 || slot_b >= r || slot_a == slot_b)
        throw ShapeError("contract: bad slot pair (" + std::to_string(slot_a) + "," +
                         std::to_string(slot_b) + ") for rank " + std::to_string(r));
    if (strict && t.variance(slot_a) == t.variance(slot_b))
        throw ShapeError("contract: strict mode needs one upper and one lower slot");
    if (slot_a > slot_b) std::swap(slot_a, slot_b);

    std::vector<Variance> var;
    for (int s = 0; s < r; ++s)
        if (s != slot_a && s != slot_b) var.push_back(t.variance(s));
    DenseTensor out(t.dim(), std::move(var), t.weight());

    std::vector<int> full(r, 0);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::vector<int> kept = out.unravel(flat);
        int pos = 0;
        for (int s = 0; s < r; ++s)
            if (s != slot_a && s != slot_b) full[s] = kept[pos++];
        double sum = 0.0;
        for (int k = 0; k < t.dim(); ++k) {
            full[slot_a] = k;
            full[slot_b] = k;
            sum += t.at(full);
        }
        out.components()[flat] = sum;
    }
    return out;
}

DenseTensor permute_slots(const DenseTensor& t, const std::vector<int>& perm) {
    int r = t.rank();
    if (static_cast<int>(perm.size()) != r) throw ShapeError("permute_slots: size != rank");
    std::vector<bool> seen(r, false);
    for (int p : perm) {
        if (p < 0 || p >= r || seen[p]) throw ShapeError("permute_slots: not a permutation");
        seen[p] = true;
    }
    std::vector<Variance> var(r);
    for (int s = 0; s < r; ++s) var[s] = t.variance(perm[s]);
    DenseTensor out(t.dim(), std::move(var), t.weight());
    std::vector<int> src(r);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::vector<int> idx = out.unravel(flat);
        for (int s = 0; s < r; ++s) src[perm[s]] = idx[s];
        out.components()[flat] = t.at(src);
    }
    return out;
}

namespace {

DenseTensor sym_impl(const DenseTensor& t, const std::vector<int>& slots, bool antisym) {
    int k = static_cast<int>(slots.size());
    if (k < 1) throw ShapeError("symmetrize: need at least one slot");
    std::vector<bool> seen(t.rank(), false);
    for (int s : slots) {
        if (s < 0 || s >= t.rank() || seen[s]) throw ShapeError("symmetrize: bad slot list");
        seen[s] = true;
    }

    DenseTensor out(t.dim(), t.variance(), t.weight());
    double norm = 1.0;
    for (int i = 2; i <= k; ++i) norm *= i;

    std::vector<int> src(t.rank());
    for_each_permutation(k, [&](std::span<const int> perm, int parity) {
        double sign = antisym ? static_cast<double>(parity) : 1.0;
        for (std::size_t flat = 0; flat < out.size(); ++flat) {
            std::vector<int> idx = out.unravel(flat);
            src = idx;
            // route the value at slots[j] into slots[perm[j]]
            for (int j = 0; j < k; ++j) src[slots[j]] = idx[slots[perm[j]]];
            out.components()[flat] += sign * t.at(src);
        }
    });
    for (double& c : out.components()) c /= norm;
    return out;
}

} // namespace

DenseTensor symmetrize(const DenseTensor& t, const std::vector<int>& slots) {
    return sym_impl(t, slots, false);
}

DenseTensor antisymmetrize(const DenseTensor& t, const std::vector<int>& slots) {
    return sym_impl(t, slots, true);
}

namespace {

// new[.., i, ..] = sum_j m(i, j) * old[.., j, ..] at `slot`
DenseTensor contract_slot_with(const DenseTensor& t, int slot,
                               const std::function<double(int, int)>& m) {
    DenseTensor out(t.dim(), t.variance(), t.weight());
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::vector<int> idx = out.unravel(flat);
        int i = idx[slot];
        double sum = 0.0;
        for (int j = 0; j < t.dim(); ++j) {
            idx[slot] = j;
            sum += m(i, j) * t.at(idx);
        }
        out.components()[flat] = sum;
    }
    return out;
}

} // namespace

DenseTensor transform(const DenseTensor& t, const DenseTensor& jac, const DenseTensor& inv_jac) {
    // a rank-0 tensor has no dim of its own; any square jacobian applies
    int d = t.rank() > 0 ? t.dim() : jac.dim();
    auto check_matrix = [d](const DenseTensor& m, const char* name) {
        if (m.rank() != 2 || m.dim() != d)
            throw ShapeError(std::string("transform: ") + name + " must be rank-2 with dim " +
                             std::to_string(d));
    };
    check_matrix(jac, "jac");
    check_matrix(inv_jac, "inv_jac");

    DenseTensor prod = matmul(jac, inv_jac);
    double dev = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            dev = std::max(dev, std::abs(prod.at({i, j}) - (i == j ? 1.0 : 0.0)));
    if (dev > 1e-10)
        throw DomainError("transform: jac * inv_jac deviates from identity by " +
                          std::to_string(dev));
    if (std::abs(det_gauss(jac)) < 1e-12)
        throw DomainError("transform: jacobian is singular");

    DenseTensor out = t;
    for (int s = 0; s < t.rank(); ++s) {
        if (t.variance(s) == Variance::contra)
            out = contract_slot_with(out, s, [&](int i, int j) { return jac.at({i, j}); });
        else
            out = contract_slot_with(out, s, [&](int i, int j) { return inv_jac.at({j, i}); });
    }

    if (t.weight() != 0) {
        // relative tensor: scale by det(inv_jac)^weight
        double dj = det_gauss(inv_jac);
        double f = 1.0;
        for (int i = 0; i < std::abs(t.weight()); ++i) f *= dj;
        if (t.weight() < 0) f = 1.0 / f;
        out = scale(out, f);
    }
    return out;
}

} // namespace tk
