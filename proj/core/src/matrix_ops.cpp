#include "tensorkit/matrix_ops.hpp"

#include <cmath>

#include "tensorkit/linalg.hpp"
#include "tensorkit/permutations.hpp"
#include "tensorkit/special_tensors.hpp"

namespace tk {

namespace {

void require_rank(const DenseTensor& t, int rank, int dim, const char* op) {
    if (t.rank() != rank)
        throw ShapeError(std::string(op) + ": rank-" + std::to_string(rank) + " input required");
    if (dim > 0 && t.dim() != dim)
        throw ShapeError(std::string(op) + ": dim " + std::to_string(dim) + " required");
}

} // namespace

double trace(const DenseTensor& m) {
    require_rank(m, 2, 0, "trace");
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i) s += m.at({i, i});
    return s;
}

double det_epsilon(const DenseTensor& m, DetMethod method) {
    require_rank(m, 2, 0, "det_epsilon");
    int n = m.dim();
    if (n > 6) throw ShapeError("det_epsilon: dim <= 6 supported");
    if (n == 1) return m.at({0, 0});

    if (method == DetMethod::double_epsilon) {
        // (1/n!) sum over both permutation symbols; only their n! nonzero
        // entries contribute, so iterate permutations directly
        double sum = 0.0;
        double fact = 1.0;
        for (int k = 2; k <= n; ++k) fact *= k;
        for_each_permutation(n, [&](std::span<const int> si, int pi) {
            std::vector<int> i(si.begin(), si.end());
            for_each_permutation(n, [&](std::span<const int> sj, int pj) {
                double prod = static_cast<double>(pi * pj);
                for (int r = 0; r < n; ++r) prod *= m.at({i[r], sj[r]});
                sum += prod;
            });
        });
        return sum / fact;
    }

    // single-epsilon expansions over all index tuples
    DenseTensor e = epsilon(n);
    double sum = 0.0;
    std::vector<int> idx(n, 0);
    for (std::size_t flat = 0; flat < e.size(); ++flat) {
        double eps = e.components()[flat];
        if (eps == 0.0) continue;
        idx = e.unravel(flat);
        double prod = eps;
        for (int r = 0; r < n; ++r)
            prod *= (method == DetMethod::by_row) ? m.at({r, idx[r]}) : m.at({idx[r], r});
        sum += prod;
    }
    return sum;
}

DenseTensor inverse_epsilon(const DenseTensor& m) {
    require_rank(m, 2, 3, "inverse_epsilon");
    double det = det_epsilon(m, DetMethod::by_row);
    if (std::abs(det) <= 1e-12) throw DomainError("inverse_epsilon: matrix is singular");

    DenseTensor e = epsilon(3);
    DenseTensor inv(3, {Variance::co, Variance::co});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int mm = 0; mm < 3; ++mm)
                for (int nn = 0; nn < 3; ++nn) {
                    double ej = e.at({j, mm, nn});
                    if (ej == 0.0) continue;
                    for (int p = 0; p < 3; ++p)
                        for (int q = 0; q < 3; ++q) {
                            double ei = e.at({i, p, q});
                            if (ei == 0.0) continue;
                            s += ej * ei * m.at({mm, p}) * m.at({nn, q});
                        }
                }
            inv.at({i, j}) = s / (2.0 * det);
        }
    return inv;
}

DenseTensor cross(const DenseTensor& a, const DenseTensor& b) {
    require_rank(a, 1, 3, "cross");
    require_rank(b, 1, 3, "cross");
    DenseTensor e = epsilon(3);
    DenseTensor out(3, {Variance::co});
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += e.at({i, j, k}) * a.at({j}) * b.at({k});
        out.at({i}) = s;
    }
    return out;
}

double scalar_triple(const DenseTensor& a, const DenseTensor& b, const DenseTensor& c) {
    require_rank(a, 1, 3, "scalar_triple");
    require_rank(b, 1, 3, "scalar_triple");
    require_rank(c, 1, 3, "scalar_triple");
    DenseTensor e = epsilon(3);
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += e.at({i, j, k}) * a.at({i}) * b.at({j}) * c.at({k});
    return s;
}

DenseTensor vector_triple(const DenseTensor& a, const DenseTensor& b, const DenseTensor& c) {
    require_rank(a, 1, 3, "vector_triple");
    require_rank(b, 1, 3, "vector_triple");
    require_rank(c, 1, 3, "vector_triple");
    DenseTensor e = epsilon(3);
    DenseTensor out(3, {Variance::co});
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    for (int mm = 0; mm < 3; ++mm)
                        s += e.at({i, j, k}) * e.at({k, l, mm}) * a.at({j}) * b.at({l}) *
                             c.at({mm});
        out.at({i}) = s;
    }
    return out;
}

double double_dot(const DenseTensor& a, const DenseTensor& b, bool transposed) {
    require_rank(a, 2, 0, "double_dot");
    require_rank(b, 2, a.dim(), "double_dot");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            s += a.at({i, j}) * (transposed ? b.at({j, i}) : b.at({i, j}));
    return s;
}

MainInvariants main_invariants(const DenseTensor& m) {
    require_rank(m, 2, 3, "main_invariants");
    DenseTensor m2 = matmul(m, m);
    DenseTensor m3 = matmul(m2, m);
    MainInvariants v{};
    v.I = trace(m);
    v.II = trace(m2);
    v.III = trace(m3);
    v.I1 = v.I;
    v.I2 = 0.5 * (v.I * v.I - v.II);
    v.I3 = (v.I * v.I * v.I - 3.0 * v.I * v.II + 2.0 * v.III) / 6.0;
    return v;
}

JointInvariants joint_invariants(const DenseTensor& a, const DenseTensor& b) {
    require_rank(a, 2, 3, "joint_invariants");
    require_rank(b, 2, 3, "joint_invariants");
    DenseTensor a2 = matmul(a, a);
    DenseTensor b2 = matmul(b, b);
    JointInvariants v{};
    v.tr_a = trace(a);
    v.tr_b = trace(b);
    v.tr_a2 = trace(a2);
    v.tr_b2 = trace(b2);
    v.tr_a3 = trace(matmul(a2, a));
    v.tr_b3 = trace(matmul(b2, b));
    v.tr_ab = trace(matmul(a, b));
    v.tr_a2b = trace(matmul(a2, b));
    v.tr_ab2 = trace(matmul(a, b2));
    v.tr_a2b2 = trace(matmul(a2, b2));
    return v;
}

} // namespace tk
