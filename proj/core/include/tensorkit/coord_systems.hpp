#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tensorkit/dense_tensor.hpp"

namespace tk {

using Point = std::vector<double>;

// A coordinate system is its metric plus optional analytic extras.  The
// metric returns a rank-2 covariant tensor g_ij(point); metric_partials, when
// present, returns a rank-3 tensor with component (i,j,l) = d g_ij / d x^l
// (derivative slot last).  embedding maps coordinates to cartesian space,
// scale_factors returns the h_i of an orthogonal system.
struct CoordinateSystem {
    std::string name;
    int dim = 3;
    std::vector<std::string> coord_names;
    std::function<DenseTensor(const Point&)> metric;
    std::function<DenseTensor(const Point&)> metric_partials;  // may be null -> FD
    std::function<Point(const Point&)> embedding;              // may be null
    std::function<std::vector<double>(const Point&)> scale_factors;  // may be null
};

// "cartesian" (any dim), "cylindrical" (rho, phi, z), "spherical"
// (r, theta, phi); the curvilinear pair is dim 3.  All come with analytic
// partials, embedding and scale factors.
CoordinateSystem builtin_system(const std::string& name, int dim = 3);

// g_ij evaluated with regularity checks: DomainError when |det g| < 1e-12
// or (if scale factors are available) some |h_i| < 1e-9.
DenseTensor metric_at(const CoordinateSystem& sys, const Point& p);
DenseTensor inverse_metric(const CoordinateSystem& sys, const Point& p);

// Recovers g = J^T J from the embedding via central differences
// (step 1e-6 * max(1, |u_i|)).  ShapeError when no embedding is present.
DenseTensor metric_from_embedding(const CoordinateSystem& sys, const Point& p);

// FD fallback for d g_ij / d x^l, same layout as metric_partials.
DenseTensor metric_partials_fd(const CoordinateSystem& sys, const Point& p);

// Christoffel symbols of the second kind,
//   Gamma^k_ij = g^kl (d_j g_il + d_i g_jl - d_l g_ij) / 2,
// values(k,i,j), exactly symmetric in (i,j) by construction.
struct Christoffel {
    DenseTensor values;  // rank 3, variance (contra, co, co)
    double operator()(int k, int i, int j) const { return values.at({k, i, j}); }
};

Christoffel christoffel2(const CoordinateSystem& sys, const Point& p);

// Index shuffling with the metric of `sys` at `p`.  The slot keeps its place.
DenseTensor raise_index(const DenseTensor& t, const CoordinateSystem& sys, const Point& p,
                        int slot);
DenseTensor lower_index(const DenseTensor& t, const CoordinateSystem& sys, const Point& p,
                        int slot);

// A tensor field on a coordinate patch: components as functions of the
// point.  `partials`, when set, must return the rank+1 tensor of component
// partial derivatives with the derivative slot last; otherwise central
// differences with step 1e-5 * max(1, |x_q|) are used.
struct TensorField {
    int dim = 3;
    std::vector<Variance> variance;
    std::function<DenseTensor(const Point&)> eval;
    std::function<DenseTensor(const Point&)> partials;  // may be null
};

TensorField scalar_field(int dim, std::function<double(const Point&)> f);
TensorField scalar_field(int dim, std::function<double(const Point&)> f,
                         std::function<std::vector<double>(const Point&)> grad);
TensorField vector_field(int dim, Variance v, std::function<std::vector<double>(const Point&)> f);
TensorField tensor_field(int dim, std::vector<Variance> var,
                         std::function<DenseTensor(const Point&)> f);
// g_ij as a field (analytic partials wired through when available).
TensorField metric_field(const CoordinateSystem& sys);

// Covariant derivative of `field` at `p`: rank+1 result with the new
// covariant slot appended last,
//   out(idx.., q) = d_q T(idx..)
//                 + sum over contravariant slots s of Gamma^{idx_s}_{a q} T(..a..)
//                 - sum over covariant slots s of Gamma^{a}_{idx_s q} T(..a..).
DenseTensor covariant_derivative(const TensorField& field, const CoordinateSystem& sys,
                                 const Point& p);

// max|nabla(a A + b B) - a nabla A - b nabla B| at p.
double covariant_derivative_linearity_check(double a, const TensorField& A, double b,
                                            const TensorField& B, const CoordinateSystem& sys,
                                            const Point& p);

} // namespace tk
