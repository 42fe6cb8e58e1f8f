#include "tensorkit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace tk {

namespace {

void require_square(const DenseTensor& m, const char* op) {
    if (m.rank() != 2) throw ShapeError(std::string(op) + ": rank-2 tensor required");
}

} // namespace

DenseTensor identity_matrix(int dim) {
    DenseTensor m(dim, {Variance::co, Variance::co});
    for (int i = 0; i < dim; ++i) m.at({i, i}) = 1.0;
    return m;
}

double det_gauss(const DenseTensor& m) {
    require_square(m, "det_gauss");
    int n = m.dim();
    std::vector<double> a = m.components();
    auto e = [&](int i, int j) -> double& { return a[i * n + j]; };

    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(e(r, col)) > std::abs(e(pivot, col))) pivot = r;
        if (e(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(e(pivot, j), e(col, j));
            det = -det;
        }
        det *= e(col, col);
        for (int r = col + 1; r < n; ++r) {
            double f = e(r, col) / e(col, col);
            for (int j = col; j < n; ++j) e(r, j) -= f * e(col, j);
        }
    }
    return det;
}

DenseTensor invert(const DenseTensor& m) {
    require_square(m, "invert");
    int n = m.dim();
    std::vector<double> a = m.components();
    std::vector<double> inv(identity_matrix(n).components());
    auto ea = [&](int i, int j) -> double& { return a[i * n + j]; };
    auto ei = [&](int i, int j) -> double& { return inv[i * n + j]; };

    double scale = m.max_abs();
    double tol = 1e-13 * std::max(1.0, scale);

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(ea(r, col)) > std::abs(ea(pivot, col))) pivot = r;
        if (std::abs(ea(pivot, col)) < tol)
            throw DomainError("invert: matrix is singular (pivot " + std::to_string(col) + ")");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(ea(pivot, j), ea(col, j));
                std::swap(ei(pivot, j), ei(col, j));
            }
        double p = ea(col, col);
        for (int j = 0; j < n; ++j) {
            ea(col, j) /= p;
            ei(col, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = ea(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                ea(r, j) -= f * ea(col, j);
                ei(r, j) -= f * ei(col, j);
            }
        }
    }

    std::vector<Variance> var;
    for (Variance v : m.variance())
        var.push_back(v == Variance::co ? Variance::contra : Variance::co);
    return DenseTensor(n, std::move(var), std::move(inv));
}

DenseTensor matmul(const DenseTensor& a, const DenseTensor& b) {
    require_square(a, "matmul");
    require_square(b, "matmul");
    if (a.dim() != b.dim()) throw ShapeError("matmul: dims differ");
    int n = a.dim();
    DenseTensor out(n, {a.variance(0), b.variance(1)}, a.weight() + b.weight());
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += a.at({i, j}) * b.at({j, k});
            out.at({i, k}) = s;
        }
    return out;
}

std::vector<double> matvec(const DenseTensor& m, std::span<const double> v) {
    require_square(m, "matvec");
    int n = m.dim();
    if (static_cast<int>(v.size()) != n) throw ShapeError("matvec: vector length != dim");
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += m.at({i, j}) * v[j];
    return out;
}

} // namespace tk
