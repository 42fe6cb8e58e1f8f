#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "tensorkit/coord_systems.hpp"
#include "tensorkit/random_fields.hpp"

namespace tk {

// Central finite differences.  First derivatives use `order` (2 or 4) with
// relative step `step1`; second derivatives always use the direct 3-point
// stencil with relative step `step2`.  Steps scale as step * max(1, |x|).
struct FDScheme {
    int order = 4;
    double step1 = 1e-3;
    double step2 = 1e-4;
};

using ScalarFn = std::function<double(const Point&)>;
using VectorFn = std::function<std::vector<double>(const Point&)>;
using Rank2Fn = std::function<DenseTensor(const Point&)>;

double fd_partial(const ScalarFn& f, const Point& p, int axis, const FDScheme& s = {});
double fd_second_partial(const ScalarFn& f, const Point& p, int axis, const FDScheme& s = {});

// Cartesian operators (curl family is dim 3; the rest follow p.size()).
std::vector<double> grad(const ScalarFn& f, const Point& p, const FDScheme& s = {});

// [grad A](i,j) = d_i A_j: derivative index first.
DenseTensor grad_vec(const VectorFn& a, const Point& p, const FDScheme& s = {});

double div(const VectorFn& a, const Point& p, const FDScheme& s = {});

// first_index:  out_i = d_j A_{ji} (derivative contracts the first slot);
// second_index: out_j = d_i A_{ji} (derivative contracts the second slot).
enum class Rank2DivForm { first_index, second_index };
std::vector<double> div_rank2(const Rank2Fn& a, const Point& p,
                              Rank2DivForm form = Rank2DivForm::first_index,
                              const FDScheme& s = {});

std::vector<double> curl(const VectorFn& a, const Point& p, const FDScheme& s = {});

// [curl A](i,j) = e_{imn} d_m A_{nj}
DenseTensor curl_rank2(const Rank2Fn& a, const Point& p, const FDScheme& s = {});

double laplacian(const ScalarFn& f, const Point& p, const FDScheme& s = {});
std::vector<double> vector_laplacian(const VectorFn& a, const Point& p, const FDScheme& s = {});

// (A . nabla) applied to a scalar or to each component of a vector.
double adotnabla(const VectorFn& a, const ScalarFn& f, const Point& p, const FDScheme& s = {});
std::vector<double> adotnabla(const VectorFn& a, const VectorFn& b, const Point& p,
                              const FDScheme& s = {});

// Curvilinear operators on physical components.  The builtin cylindrical and
// spherical systems use their explicit scale-factor formulas; any other
// orthogonal system goes through the general h1 h2 h3 forms below.
std::vector<double> curv_gradient(const CoordinateSystem& sys, const ScalarFn& f, const Point& p,
                                  const FDScheme& s = {});
double curv_divergence(const CoordinateSystem& sys, const VectorFn& a, const Point& p,
                       const FDScheme& s = {});
std::vector<double> curv_curl(const CoordinateSystem& sys, const VectorFn& a, const Point& p,
                              const FDScheme& s = {});
double curv_laplacian(const CoordinateSystem& sys, const ScalarFn& f, const Point& p,
                      const FDScheme& s = {});

// General orthogonal-coordinate path (needs sys.scale_factors); dim 3.
std::vector<double> orthogonal_gradient(const CoordinateSystem& sys, const ScalarFn& f,
                                        const Point& p, const FDScheme& s = {});
double orthogonal_divergence(const CoordinateSystem& sys, const VectorFn& a, const Point& p,
                             const FDScheme& s = {});
std::vector<double> orthogonal_curl(const CoordinateSystem& sys, const VectorFn& a,
                                    const Point& p, const FDScheme& s = {});
double orthogonal_laplacian(const CoordinateSystem& sys, const ScalarFn& f, const Point& p,
                            const FDScheme& s = {});

// ---- identity verification harness ----

struct FieldSet {
    std::vector<ScalarFn> scalars;
    std::vector<VectorFn> vectors;
    std::vector<std::vector<double>> constants;  // constant 3-vectors
};

struct IdentityCase {
    std::string id;
    int n_scalars = 0;
    int n_vectors = 0;
    // max |lhs - rhs| over the components at one point
    std::function<double(const FieldSet&, const Point&, const FDScheme&)> residual;
};

// The verified catalog: position-vector identities, second-derivative
// identities, product rules, triple products and nabla/cross combinations.
const std::vector<IdentityCase>& identity_catalog();
const IdentityCase& identity_by_id(const std::string& id);

struct IdentityReport {
    std::string id;
    int points = 0;
    std::uint64_t seed = 0;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Draws the case's fields (degree-3 polynomials, optionally with trig
// bumps) and `points` sample points in [-1,1]^3 from `seed`, then reports
// the worst residual.
IdentityReport verify_identity(const IdentityCase& c, int points, std::uint64_t seed, double tol,
                               FieldStyle style = FieldStyle::poly, const FDScheme& s = {});

// ---- integral theorems (vector fields) ----

struct IntegralReport {
    double lhs = 0.0;  // volume or surface integral
    double rhs = 0.0;  // surface or line integral
    double rel_error = 0.0;
};

// Gauss divergence theorem on the axis-aligned box [lo, hi]: midpoint rule
// with n^3 volume cells and n^2 points per face.
IntegralReport divergence_theorem_check(const VectorFn& a, const Point& lo, const Point& hi,
                                        int n, const FDScheme& s = {});

// Planar axis-aligned rectangle: normal along +axis, right-hand traversal.
// In-plane axes follow cyclically (z-normal spans x,y and so on).
struct Rect3 {
    int normal_axis = 2;
    double offset = 0.0;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
};

// Stokes theorem: curl flux through the rectangle vs circulation around it.
IntegralReport stokes_check(const VectorFn& a, const Rect3& rect, int n, const FDScheme& s = {});

} // namespace tk
