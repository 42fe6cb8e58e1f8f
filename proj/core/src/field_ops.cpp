#include "tensorkit/field_ops.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "tensorkit/special_tensors.hpp"

namespace tk {

namespace {

double step_for(double step, double x) { return step * std::max(1.0, std::abs(x)); }

Point shifted(const Point& p, int axis, double h) {
    Point q = p;
    q[axis] += h;
    return q;
}

void require_axis(const Point& p, int axis, const char* op) {
    if (axis < 0 || axis >= static_cast<int>(p.size()))
        throw ShapeError(std::string(op) + ": axis out of range");
}

} // namespace

double fd_partial(const ScalarFn& f, const Point& p, int axis, const FDScheme& s) {
    require_axis(p, axis, "fd_partial");
    double h = step_for(s.step1, p[axis]);
    if (s.order == 2) return (f(shifted(p, axis, h)) - f(shifted(p, axis, -h))) / (2.0 * h);
    if (s.order == 4)
        return (-f(shifted(p, axis, 2 * h)) + 8.0 * f(shifted(p, axis, h)) -
                8.0 * f(shifted(p, axis, -h)) + f(shifted(p, axis, -2 * h))) /
               (12.0 * h);
    throw ShapeError("fd_partial: order must be 2 or 4");
}

double fd_second_partial(const ScalarFn& f, const Point& p, int axis, const FDScheme& s) {
    require_axis(p, axis, "fd_second_partial");
    double h = step_for(s.step2, p[axis]);
    return (f(shifted(p, axis, h)) - 2.0 * f(p) + f(shifted(p, axis, -h))) / (h * h);
}

namespace {

// d/dx_axis of a vector-valued function, one stencil per axis
std::vector<double> fd_vec_partial(const VectorFn& a, const Point& p, int axis,
                                   const FDScheme& s) {
    double h = step_for(s.step1, p[axis]);
    if (s.order == 2) {
        std::vector<double> hi = a(shifted(p, axis, h)), lo = a(shifted(p, axis, -h));
        for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = (hi[i] - lo[i]) / (2.0 * h);
        return hi;
    }
    if (s.order != 4) throw ShapeError("fd_vec_partial: order must be 2 or 4");
    std::vector<double> p2 = a(shifted(p, axis, 2 * h)), p1 = a(shifted(p, axis, h)),
                        m1 = a(shifted(p, axis, -h)), m2 = a(shifted(p, axis, -2 * h));
    std::vector<double> out(p1.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h);
    return out;
}

DenseTensor fd_rank2_partial(const Rank2Fn& a, const Point& p, int axis, const FDScheme& s) {
    double h = step_for(s.step1, p[axis]);
    if (s.order == 2) {
        DenseTensor hi = a(shifted(p, axis, h)), lo = a(shifted(p, axis, -h));
        for (std::size_t i = 0; i < hi.size(); ++i)
            hi.components()[i] = (hi.components()[i] - lo.components()[i]) / (2.0 * h);
        return hi;
    }
    if (s.order != 4) throw ShapeError("fd_rank2_partial: order must be 2 or 4");
    DenseTensor p2 = a(shifted(p, axis, 2 * h)), p1 = a(shifted(p, axis, h)),
                m1 = a(shifted(p, axis, -h)), m2 = a(shifted(p, axis, -2 * h));
    DenseTensor out = p1;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.components()[i] = (-p2.components()[i] + 8.0 * p1.components()[i] -
                               8.0 * m1.components()[i] + m2.components()[i]) /
                              (12.0 * h);
    return out;
}

} // namespace

std::vector<double> grad(const ScalarFn& f, const Point& p, const FDScheme& s) {
    std::vector<double> g(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) g[i] = fd_partial(f, p, static_cast<int>(i), s);
    return g;
}

DenseTensor grad_vec(const VectorFn& a, const Point& p, const FDScheme& s) {
    int d = static_cast<int>(p.size());
    DenseTensor out(d, {Variance::co, Variance::co});
    for (int i = 0; i < d; ++i) {
        std::vector<double> di = fd_vec_partial(a, p, i, s);
        if (static_cast<int>(di.size()) != d) throw ShapeError("grad_vec: field dim mismatch");
        for (int j = 0; j < d; ++j) out.at({i, j}) = di[j];
    }
    return out;
}

double div(const VectorFn& a, const Point& p, const FDScheme& s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        sum += fd_vec_partial(a, p, static_cast<int>(i), s)[i];
    return sum;
}

std::vector<double> div_rank2(const Rank2Fn& a, const Point& p, Rank2DivForm form,
                              const FDScheme& s) {
    int d = static_cast<int>(p.size());
    std::vector<DenseTensor> D;
    D.reserve(d);
    for (int axis = 0; axis < d; ++axis) D.push_back(fd_rank2_partial(a, p, axis, s));
    std::vector<double> out(d, 0.0);
    for (int k = 0; k < d; ++k)
        for (int c = 0; c < d; ++c)
            out[k] += (form == Rank2DivForm::first_index) ? D[c].at({c, k})   // d_j A_{jk}
                                                          : D[c].at({k, c});  // d_i A_{ki}
    return out;
}

std::vector<double> curl(const VectorFn& a, const Point& p, const FDScheme& s) {
    if (p.size() != 3) throw ShapeError("curl: dim 3 required");
    std::vector<double> d0 = fd_vec_partial(a, p, 0, s), d1 = fd_vec_partial(a, p, 1, s),
                        d2 = fd_vec_partial(a, p, 2, s);
    return {d1[2] - d2[1], d2[0] - d0[2], d0[1] - d1[0]};
}

DenseTensor curl_rank2(const Rank2Fn& a, const Point& p, const FDScheme& s) {
    if (p.size() != 3) throw ShapeError("curl_rank2: dim 3 required");
    std::vector<DenseTensor> D;
    for (int axis = 0; axis < 3; ++axis) D.push_back(fd_rank2_partial(a, p, axis, s));
    DenseTensor e = epsilon(3);
    DenseTensor out(3, {Variance::co, Variance::co});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sum = 0.0;
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n) {
                    double ev = e.at({i, m, n});
                    if (ev != 0.0) sum += ev * D[m].at({n, j});
                }
            out.at({i, j}) = sum;
        }
    return out;
}

double laplacian(const ScalarFn& f, const Point& p, const FDScheme& s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        sum += fd_second_partial(f, p, static_cast<int>(i), s);
    return sum;
}

std::vector<double> vector_laplacian(const VectorFn& a, const Point& p, const FDScheme& s) {
    std::vector<double> mid = a(p);
    std::vector<double> out(mid.size(), 0.0);
    for (std::size_t axis = 0; axis < p.size(); ++axis) {
        double h = step_for(s.step2, p[axis]);
        std::vector<double> hi = a(shifted(p, static_cast<int>(axis), h)),
                            lo = a(shifted(p, static_cast<int>(axis), -h));
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += (hi[j] - 2.0 * mid[j] + lo[j]) / (h * h);
    }
    return out;
}

double adotnabla(const VectorFn& a, const ScalarFn& f, const Point& p, const FDScheme& s) {
    std::vector<double> av = a(p);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        sum += av[i] * fd_partial(f, p, static_cast<int>(i), s);
    return sum;
}

std::vector<double> adotnabla(const VectorFn& a, const VectorFn& b, const Point& p,
                              const FDScheme& s) {
    std::vector<double> av = a(p);
    std::vector<double> out(av.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<double> di = fd_vec_partial(b, p, static_cast<int>(i), s);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += av[i] * di[j];
    }
    return out;
}

// ---- curvilinear operators on physical components ----

namespace {

void require_dim3(const CoordinateSystem& sys, const Point& p, const char* op) {
    if (sys.dim != 3 || p.size() != 3)
        throw ShapeError(std::string(op) + ": dim-3 system and point required");
}

void guard_scale_factors(const CoordinateSystem& sys, const Point& p, const char* op) {
    if (!sys.scale_factors) return;
    for (double h : sys.scale_factors(p))
        if (std::abs(h) < 1e-9)
            throw DomainError(std::string(op) + ": scale factor vanishes at this point");
}

} // namespace

std::vector<double> orthogonal_gradient(const CoordinateSystem& sys, const ScalarFn& f,
                                        const Point& p, const FDScheme& s) {
    require_dim3(sys, p, "orthogonal_gradient");
    if (!sys.scale_factors) throw ShapeError("orthogonal_gradient: system has no scale factors");
    guard_scale_factors(sys, p, "orthogonal_gradient");
    std::vector<double> h = sys.scale_factors(p);
    return {fd_partial(f, p, 0, s) / h[0], fd_partial(f, p, 1, s) / h[1],
            fd_partial(f, p, 2, s) / h[2]};
}

double orthogonal_divergence(const CoordinateSystem& sys, const VectorFn& a, const Point& p,
                             const FDScheme& s) {
    require_dim3(sys, p, "orthogonal_divergence");
    if (!sys.scale_factors)
        throw ShapeError("orthogonal_divergence: system has no scale factors");
    guard_scale_factors(sys, p, "orthogonal_divergence");
    const auto& hf = sys.scale_factors;
    std::vector<double> h = hf(p);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        int u = (i + 1) % 3, v = (i + 2) % 3;
        ScalarFn inner = [&, i, u, v](const Point& q) {
            std::vector<double> hq = hf(q);
            return hq[u] * hq[v] * a(q)[i];
        };
        sum += fd_partial(inner, p, i, s);
    }
    return sum / (h[0] * h[1] * h[2]);
}

std::vector<double> orthogonal_curl(const CoordinateSystem& sys, const VectorFn& a,
                                    const Point& p, const FDScheme& s) {
    require_dim3(sys, p, "orthogonal_curl");
    if (!sys.scale_factors) throw ShapeError("orthogonal_curl: system has no scale factors");
    guard_scale_factors(sys, p, "orthogonal_curl");
    const auto& hf = sys.scale_factors;
    std::vector<double> h = hf(p);
    double vol = h[0] * h[1] * h[2];
    auto hA = [&](int k) {
        return ScalarFn([&, k](const Point& q) { return hf(q)[k] * a(q)[k]; });
    };
    std::vector<double> c(3);
    for (int i = 0; i < 3; ++i) {
        int u = (i + 1) % 3, v = (i + 2) % 3;
        c[i] = h[i] / vol * (fd_partial(hA(v), p, u, s) - fd_partial(hA(u), p, v, s));
    }
    return c;
}

double orthogonal_laplacian(const CoordinateSystem& sys, const ScalarFn& f, const Point& p,
                            const FDScheme& s) {
    require_dim3(sys, p, "orthogonal_laplacian");
    if (!sys.scale_factors)
        throw ShapeError("orthogonal_laplacian: system has no scale factors");
    guard_scale_factors(sys, p, "orthogonal_laplacian");
    const auto& hf = sys.scale_factors;
    std::vector<double> h = hf(p);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        int u = (i + 1) % 3, v = (i + 2) % 3;
        ScalarFn inner = [&, i, u, v](const Point& q) {
            std::vector<double> hq = hf(q);
            return hq[u] * hq[v] / hq[i] * fd_partial(f, q, i, s);
        };
        sum += fd_partial(inner, p, i, s);
    }
    return sum / (h[0] * h[1] * h[2]);
}

namespace {

// component accessor as a scalar function, optionally premultiplied
ScalarFn comp_fn(const VectorFn& a, int i) {
    return [&a, i](const Point& q) { return a(q)[i]; };
}

} // namespace

std::vector<double> curv_gradient(const CoordinateSystem& sys, const ScalarFn& f, const Point& p,
                                  const FDScheme& s) {
    require_dim3(sys, p, "curv_gradient");
    guard_scale_factors(sys, p, "curv_gradient");
    if (sys.name == "cylindrical") {
        double rho = p[0];
        return {fd_partial(f, p, 0, s), fd_partial(f, p, 1, s) / rho, fd_partial(f, p, 2, s)};
    }
    if (sys.name == "spherical") {
        double r = p[0], st = std::sin(p[1]);
        return {fd_partial(f, p, 0, s), fd_partial(f, p, 1, s) / r,
                fd_partial(f, p, 2, s) / (r * st)};
    }
    if (sys.name == "cartesian") return grad(f, p, s);
    return orthogonal_gradient(sys, f, p, s);
}

double curv_divergence(const CoordinateSystem& sys, const VectorFn& a, const Point& p,
                       const FDScheme& s) {
    require_dim3(sys, p, "curv_divergence");
    guard_scale_factors(sys, p, "curv_divergence");
    if (sys.name == "cylindrical") {
        double rho = p[0];
        ScalarFn rho_ar = [&a](const Point& q) { return q[0] * a(q)[0]; };
        ScalarFn rho_az = [&a](const Point& q) { return q[0] * a(q)[2]; };
        return (fd_partial(rho_ar, p, 0, s) + fd_partial(comp_fn(a, 1), p, 1, s) +
                fd_partial(rho_az, p, 2, s)) /
               rho;
    }
    if (sys.name == "spherical") {
        double r = p[0], st = std::sin(p[1]);
        ScalarFn r2_ar = [&a](const Point& q) { return q[0] * q[0] * a(q)[0]; };
        ScalarFn st_at = [&a](const Point& q) { return std::sin(q[1]) * a(q)[1]; };
        return (st * fd_partial(r2_ar, p, 0, s) + r * fd_partial(st_at, p, 1, s) +
                r * fd_partial(comp_fn(a, 2), p, 2, s)) /
               (r * r * st);
    }
    if (sys.name == "cartesian") return div(a, p, s);
    return orthogonal_divergence(sys, a, p, s);
}

std::vector<double> curv_curl(const CoordinateSystem& sys, const VectorFn& a, const Point& p,
                              const FDScheme& s) {
    require_dim3(sys, p, "curv_curl");
    guard_scale_factors(sys, p, "curv_curl");
    if (sys.name == "cylindrical") {
        // (1/rho) det[[e_rho, rho e_phi, e_z], [d_rho, d_phi, d_z],
        //             [A_rho, rho A_phi, A_z]]
        double rho = p[0];
        ScalarFn rho_aphi = [&a](const Point& q) { return q[0] * a(q)[1]; };
        // middle-row cofactor carries a rho that cancels the 1/rho prefactor
        return {(fd_partial(comp_fn(a, 2), p, 1, s) - fd_partial(rho_aphi, p, 2, s)) / rho,
                fd_partial(comp_fn(a, 0), p, 2, s) - fd_partial(comp_fn(a, 2), p, 0, s),
                (fd_partial(rho_aphi, p, 0, s) - fd_partial(comp_fn(a, 0), p, 1, s)) / rho};
    }
    if (sys.name == "spherical") {
        // (1/(r^2 sin t)) det[[e_r, r e_t, r sin t e_p], [d_r, d_t, d_p],
        //                     [A_r, r A_t, r sin t A_p]]
        double r = p[0], st = std::sin(p[1]);
        ScalarFn rst_ap = [&a](const Point& q) { return q[0] * std::sin(q[1]) * a(q)[2]; };
        ScalarFn r_at = [&a](const Point& q) { return q[0] * a(q)[1]; };
        double pre = 1.0 / (r * r * st);
        return {pre * (fd_partial(rst_ap, p, 1, s) - fd_partial(r_at, p, 2, s)),
                pre * r * (fd_partial(comp_fn(a, 0), p, 2, s) - fd_partial(rst_ap, p, 0, s)),
                pre * r * st * (fd_partial(r_at, p, 0, s) - fd_partial(comp_fn(a, 0), p, 1, s))};
    }
    if (sys.name == "cartesian") return curl(a, p, s);
    return orthogonal_curl(sys, a, p, s);
}

double curv_laplacian(const CoordinateSystem& sys, const ScalarFn& f, const Point& p,
                      const FDScheme& s) {
    require_dim3(sys, p, "curv_laplacian");
    guard_scale_factors(sys, p, "curv_laplacian");
    if (sys.name == "cylindrical") {
        double rho = p[0];
        return fd_second_partial(f, p, 0, s) + fd_partial(f, p, 0, s) / rho +
               fd_second_partial(f, p, 1, s) / (rho * rho) + fd_second_partial(f, p, 2, s);
    }
    if (sys.name == "spherical") {
        double r = p[0], st = std::sin(p[1]), ct = std::cos(p[1]);
        return fd_second_partial(f, p, 0, s) + 2.0 / r * fd_partial(f, p, 0, s) +
               fd_second_partial(f, p, 1, s) / (r * r) +
               ct / (r * r * st) * fd_partial(f, p, 1, s) +
               fd_second_partial(f, p, 2, s) / (r * r * st * st);
    }
    if (sys.name == "cartesian") return laplacian(f, p, s);
    return orthogonal_laplacian(sys, f, p, s);
}

// ---- identity catalog ----

namespace {

double dot3(std::span<const double> a, std::span<const double> b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::vector<double> cross3(std::span<const double> a, std::span<const double> b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_v(std::span<const double> a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> lin3(double ca, std::span<const double> a, double cb,
                         std::span<const double> b) {
    return {ca * a[0] + cb * b[0], ca * a[1] + cb * b[1], ca * a[2] + cb * b[2]};
}

VectorFn grad_fn(const ScalarFn& f, const FDScheme& s) {
    return [&f, s](const Point& q) { return grad(f, q, s); };
}

VectorFn curl_fn(const VectorFn& a, const FDScheme& s) {
    return [&a, s](const Point& q) { return curl(a, q, s); };
}

std::vector<IdentityCase> build_catalog() {
    std::vector<IdentityCase> cat;
    auto add = [&cat](std::string id, int ns, int nv,
                      std::function<double(const FieldSet&, const Point&, const FDScheme&)> r) {
        cat.push_back({std::move(id), ns, nv, std::move(r)});
    };

    VectorFn position = [](const Point& q) { return q; };

    add("div-position", 0, 0, [position](const FieldSet&, const Point& p, const FDScheme& s) {
        return std::abs(div(position, p, s) - 3.0);
    });
    add("curl-position", 0, 0, [position](const FieldSet&, const Point& p, const FDScheme& s) {
        return max_abs_v(curl(position, p, s));
    });
    add("grad-a-dot-r", 0, 0, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const std::vector<double>& a = fs.constants[0];
        ScalarFn f = [&a](const Point& q) { return dot3(a, q); };
        return max_diff(grad(f, p, s), a);
    });

    add("div-grad", 1, 0, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        VectorFn g = grad_fn(fs.scalars[0], s);
        return std::abs(div(g, p, s) - laplacian(fs.scalars[0], p, s));
    });
    add("div-curl", 0, 1, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        VectorFn c = curl_fn(fs.vectors[0], s);
        return std::abs(div(c, p, s));
    });
    add("curl-grad", 1, 0, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        VectorFn g = grad_fn(fs.scalars[0], s);
        return max_abs_v(curl(g, p, s));
    });
    add("curl-curl", 0, 1, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const VectorFn& a = fs.vectors[0];
        VectorFn c = curl_fn(a, s);
        std::vector<double> lhs = curl(c, p, s);
        ScalarFn diva = [&a, s](const Point& q) { return div(a, q, s); };
        std::vector<double> rhs = lin3(1.0, grad(diva, p, s), -1.0, vector_laplacian(a, p, s));
        return max_diff(lhs, rhs);
    });

    add("grad-product", 2, 0, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const ScalarFn &f = fs.scalars[0], &g = fs.scalars[1];
        ScalarFn fg = [&f, &g](const Point& q) { return f(q) * g(q); };
        std::vector<double> rhs = lin3(f(p), grad(g, p, s), g(p), grad(f, p, s));
        return max_diff(grad(fg, p, s), rhs);
    });
    add("div-scalar-product", 1, 1, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const ScalarFn& f = fs.scalars[0];
        const VectorFn& a = fs.vectors[0];
        VectorFn fa = [&f, &a](const Point& q) {
            std::vector<double> v = a(q);
            for (double& x : v) x *= f(q);
            return v;
        };
        double rhs = f(p) * div(a, p, s) + dot3(a(p), grad(f, p, s));
        return std::abs(div(fa, p, s) - rhs);
    });
    add("curl-scalar-product", 1, 1, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const ScalarFn& f = fs.scalars[0];
        const VectorFn& a = fs.vectors[0];
        VectorFn fa = [&f, &a](const Point& q) {
            std::vector<double> v = a(q);
            for (double& x : v) x *= f(q);
            return v;
        };
        std::vector<double> rhs =
            lin3(f(p), curl(a, p, s), 1.0, cross3(grad(f, p, s), a(p)));
        return max_diff(curl(fa, p, s), rhs);
    });

    add("scalar-triple-cyclic", 0, 3, [](const FieldSet& fs, const Point& p, const FDScheme&) {
        std::vector<double> a = fs.vectors[0](p), b = fs.vectors[1](p), c = fs.vectors[2](p);
        double t1 = dot3(a, cross3(b, c));
        double t2 = dot3(c, cross3(a, b));
        double t3 = dot3(b, cross3(c, a));
        return std::max(std::abs(t1 - t2), std::abs(t1 - t3));
    });
    add("vector-triple", 0, 3, [](const FieldSet& fs, const Point& p, const FDScheme&) {
        std::vector<double> a = fs.vectors[0](p), b = fs.vectors[1](p), c = fs.vectors[2](p);
        std::vector<double> lhs = cross3(a, cross3(b, c));
        std::vector<double> rhs = lin3(dot3(a, c), b, -dot3(a, b), c);
        return max_diff(lhs, rhs);
    });

    add("a-cross-curl", 0, 2, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const VectorFn &a = fs.vectors[0], &b = fs.vectors[1];
        std::vector<double> av = a(p);
        std::vector<double> lhs = cross3(av, curl(b, p, s));
        DenseTensor gb = grad_vec(b, p, s);  // (i,j) = d_i B_j
        std::vector<double> adb = adotnabla(a, b, p, s);
        std::vector<double> rhs(3);
        for (int i = 0; i < 3; ++i) {
            double gba = 0.0;
            for (int j = 0; j < 3; ++j) gba += gb.at({i, j}) * av[j];
            rhs[i] = gba - adb[i];
        }
        return max_diff(lhs, rhs);
    });
    add("grad-dot", 0, 2, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const VectorFn &a = fs.vectors[0], &b = fs.vectors[1];
        ScalarFn ab = [&a, &b](const Point& q) { return dot3(a(q), b(q)); };
        std::vector<double> lhs = grad(ab, p, s);
        std::vector<double> rhs = cross3(a(p), curl(b, p, s));
        std::vector<double> t2 = cross3(b(p), curl(a, p, s));
        std::vector<double> t3 = adotnabla(a, b, p, s);
        std::vector<double> t4 = adotnabla(b, a, p, s);
        for (int i = 0; i < 3; ++i) rhs[i] += t2[i] + t3[i] + t4[i];
        return max_diff(lhs, rhs);
    });
    add("div-cross", 0, 2, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const VectorFn &a = fs.vectors[0], &b = fs.vectors[1];
        VectorFn axb = [&a, &b](const Point& q) { return cross3(a(q), b(q)); };
        double rhs = dot3(b(p), curl(a, p, s)) - dot3(a(p), curl(b, p, s));
        return std::abs(div(axb, p, s) - rhs);
    });
    add("curl-cross", 0, 2, [](const FieldSet& fs, const Point& p, const FDScheme& s) {
        const VectorFn &a = fs.vectors[0], &b = fs.vectors[1];
        VectorFn axb = [&a, &b](const Point& q) { return cross3(a(q), b(q)); };
        std::vector<double> lhs = curl(axb, p, s);
        std::vector<double> rhs = adotnabla(b, a, p, s);
        std::vector<double> t2 = lin3(div(b, p, s), a(p), -div(a, p, s), b(p));
        std::vector<double> t3 = adotnabla(a, b, p, s);
        for (int i = 0; i < 3; ++i) rhs[i] += t2[i] - t3[i];
        return max_diff(lhs, rhs);
    });
    add("cross-dot-cross", 0, 4, [](const FieldSet& fs, const Point& p, const FDScheme&) {
        std::vector<double> a = fs.vectors[0](p), b = fs.vectors[1](p), c = fs.vectors[2](p),
                            d = fs.vectors[3](p);
        double lhs = dot3(cross3(a, b), cross3(c, d));
        double rhs = dot3(a, c) * dot3(b, d) - dot3(a, d) * dot3(b, c);
        return std::abs(lhs - rhs);
    });

    return cat;
}

} // namespace

const std::vector<IdentityCase>& identity_catalog() {
    static const std::vector<IdentityCase> cat = build_catalog();
    return cat;
}

const IdentityCase& identity_by_id(const std::string& id) {
    for (const IdentityCase& c : identity_catalog())
        if (c.id == id) return c;
    throw ShapeError("unknown identity '" + id + "'");
}

IdentityReport verify_identity(const IdentityCase& c, int points, std::uint64_t seed, double tol,
                               FieldStyle style, const FDScheme& s) {
    if (points < 1) throw ShapeError("verify_identity: need at least one point");
    Rng rng(seed);
    FieldSet fs;
    for (int i = 0; i < c.n_scalars; ++i) {
        ScalarPoly f = ScalarPoly::random(rng, style);
        fs.scalars.emplace_back([f](const Point& q) { return f.value(q); });
    }
    for (int i = 0; i < c.n_vectors; ++i) {
        VectorPoly v = VectorPoly::random(rng, style);
        fs.vectors.emplace_back([v](const Point& q) { return v.value(q); });
    }
    for (int i = 0; i < 2; ++i)
        fs.constants.push_back({rng.uniform(), rng.uniform(), rng.uniform()});

    IdentityReport rep;
    rep.id = c.id;
    rep.points = points;
    rep.seed = seed;
    rep.tol = tol;
    for (int i = 0; i < points; ++i) {
        Point p = sample_point(rng);
        rep.max_residual = std::max(rep.max_residual, c.residual(fs, p, s));
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

// ---- integral theorems ----

IntegralReport divergence_theorem_check(const VectorFn& a, const Point& lo, const Point& hi,
                                        int n, const FDScheme& s) {
    if (lo.size() != 3 || hi.size() != 3)
        throw ShapeError("divergence_theorem_check: 3d box required");
    if (n < 1) throw ShapeError("divergence_theorem_check: n >= 1 required");
    double dx[3], cell = 1.0;
    for (int i = 0; i < 3; ++i) {
        dx[i] = (hi[i] - lo[i]) / n;
        cell *= dx[i];
    }

    // midpoint rule over n^3 cells
    double volume = 0.0;
    Point p(3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                p[0] = lo[0] + (i + 0.5) * dx[0];
                p[1] = lo[1] + (j + 0.5) * dx[1];
                p[2] = lo[2] + (k + 0.5) * dx[2];
                volume += div(a, p, s);
            }
    volume *= cell;

    // 6 faces, n^2 midpoints each, outward normals
    double flux = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        int u = (axis + 1) % 3, v = (axis + 2) % 3;
        double area = dx[u] * dx[v];
        for (int side = 0; side < 2; ++side) {
            double sign = side == 0 ? -1.0 : 1.0;
            p[axis] = side == 0 ? lo[axis] : hi[axis];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    p[u] = lo[u] + (i + 0.5) * dx[u];
                    p[v] = lo[v] + (j + 0.5) * dx[v];
                    flux += sign * a(p)[axis] * area;
                }
        }
    }

    IntegralReport rep;
    rep.lhs = volume;
    rep.rhs = flux;
    rep.rel_error = std::abs(volume - flux) /
                    std::max({1.0, std::abs(volume), std::abs(flux)});
    return rep;
}

IntegralReport stokes_check(const VectorFn& a, const Rect3& rect, int n, const FDScheme& s) {
    if (rect.normal_axis < 0 || rect.normal_axis > 2)
        throw ShapeError("stokes_check: normal_axis must be 0, 1 or 2");
    if (n < 1) throw ShapeError("stokes_check: n >= 1 required");
    int w = rect.normal_axis;
    int u = (w + 1) % 3, v = (w + 2) % 3;  // right-handed with +w
    double du = (rect.hi[0] - rect.lo[0]) / n;
    double dv = (rect.hi[1] - rect.lo[1]) / n;

    Point p(3);
    p[w] = rect.offset;

    // curl flux through the surface
    double flux = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            p[u] = rect.lo[0] + (i + 0.5) * du;
            p[v] = rect.lo[1] + (j + 0.5) * dv;
            flux += curl(a, p, s)[w] * du * dv;
        }

    // circulation, counterclockwise seen from the +w side
    double circ = 0.0;
    for (int i = 0; i < n; ++i) {
        double um = rect.lo[0] + (i + 0.5) * du;
        double vm = rect.lo[1] + (i + 0.5) * dv;

        p[u] = um;
        p[v] = rect.lo[1];
        circ += a(p)[u] * du;  // along +u at v = lo

        p[u] = rect.hi[0];
        p[v] = vm;
        circ += a(p)[v] * dv;  // along +v at u = hi

        p[u] = um;
        p[v] = rect.hi[1];
        circ -= a(p)[u] * du;  // back along -u at v = hi

        p[u] = rect.lo[0];
        p[v] = vm;
        circ -= a(p)[v] * dv;  // down along -v at u = lo
    }

    IntegralReport rep;
    rep.lhs = flux;
    rep.rhs = circ;
    rep.rel_error =
        std::abs(flux - circ) / std::max({1.0, std::abs(flux), std::abs(circ)});
    return rep;
}

} // namespace tk
