#include "tensorkit/coord_systems.hpp"

#include <cmath>

#include "tensorkit/linalg.hpp"

namespace tk {

namespace {

const std::vector<Variance> rank2_co{Variance::co, Variance::co};
const std::vector<Variance> rank3_co{Variance::co, Variance::co, Variance::co};

void require_point(const CoordinateSystem& sys, const Point& p) {
    if (static_cast<int>(p.size()) != sys.dim)
        throw ShapeError("point has " + std::to_string(p.size()) + " coordinates, system '" +
                         sys.name + "' needs " + std::to_string(sys.dim));
}

CoordinateSystem make_cartesian(int dim) {
    CoordinateSystem sys;
    sys.name = "cartesian";
    sys.dim = dim;
    if (dim == 3)
        sys.coord_names = {"x", "y", "z"};
    else
        for (int i = 1; i <= dim; ++i) sys.coord_names.push_back("x" + std::to_string(i));
    sys.metric = [dim](const Point&) {
        DenseTensor g(dim, rank2_co);
        for (int i = 0; i < dim; ++i) g.at({i, i}) = 1.0;
        return g;
    };
    sys.metric_partials = [dim](const Point&) { return DenseTensor(dim, rank3_co); };
    sys.embedding = [](const Point& p) { return p; };
    sys.scale_factors = [dim](const Point&) { return std::vector<double>(dim, 1.0); };
    return sys;
}

CoordinateSystem make_cylindrical() {
    CoordinateSystem sys;
    sys.name = "cylindrical";
    sys.dim = 3;
    sys.coord_names = {"rho", "phi", "z"};
    sys.metric = [](const Point& p) {
        DenseTensor g(3, rank2_co);
        g.at({0, 0}) = 1.0;
        g.at({1, 1}) = p[0] * p[0];
        g.at({2, 2}) = 1.0;
        return g;
    };
    sys.metric_partials = [](const Point& p) {
        DenseTensor pt(3, rank3_co);
        pt.at({1, 1, 0}) = 2.0 * p[0];  // d g_phiphi / d rho
        return pt;
    };
    sys.embedding = [](const Point& p) {
        return Point{p[0] * std::cos(p[1]), p[0] * std::sin(p[1]), p[2]};
    };
    sys.scale_factors = [](const Point& p) { return std::vector<double>{1.0, p[0], 1.0}; };
    return sys;
}

CoordinateSystem make_spherical() {
    CoordinateSystem sys;
    sys.name = "spherical";
    sys.dim = 3;
    sys.coord_names = {"r", "theta", "phi"};
    sys.metric = [](const Point& p) {
        double r = p[0], st = std::sin(p[1]);
        DenseTensor g(3, rank2_co);
        g.at({0, 0}) = 1.0;
        g.at({1, 1}) = r * r;
        g.at({2, 2}) = r * r * st * st;
        return g;
    };
    sys.metric_partials = [](const Point& p) {
        double r = p[0], st = std::sin(p[1]), ct = std::cos(p[1]);
        DenseTensor pt(3, rank3_co);
        pt.at({1, 1, 0}) = 2.0 * r;
        pt.at({2, 2, 0}) = 2.0 * r * st * st;
        pt.at({2, 2, 1}) = 2.0 * r * r * st * ct;
        return pt;
    };
    sys.embedding = [](const Point& p) {
        double r = p[0], st = std::sin(p[1]), ct = std::cos(p[1]);
        return Point{r * st * std::cos(p[2]), r * st * std::sin(p[2]), r * ct};
    };
    sys.scale_factors = [](const Point& p) {
        return std::vector<double>{1.0, p[0], p[0] * std::sin(p[1])};
    };
    return sys;
}

// regularity gate shared by every metric-dependent operation
DenseTensor checked_metric(const CoordinateSystem& sys, const Point& p) {
    require_point(sys, p);
    if (!sys.metric) throw ShapeError("system '" + sys.name + "' has no metric");
    DenseTensor g = sys.metric(p);
    if (g.rank() != 2 || g.dim() != sys.dim)
        throw ShapeError("metric of '" + sys.name + "' returned a bad shape");
    if (std::abs(det_gauss(g)) < 1e-12)
        throw DomainError("metric of '" + sys.name + "' is degenerate at this point");
    if (sys.scale_factors) {
        for (double h : sys.scale_factors(p))
            if (std::abs(h) < 1e-9)
                throw DomainError("scale factor vanishes at this point in '" + sys.name + "'");
    }
    return g;
}

} // namespace

CoordinateSystem builtin_system(const std::string& name, int dim) {
    if (name == "cartesian") return make_cartesian(dim);
    if (name == "cylindrical" || name == "spherical") {
        if (dim != 3)
            throw ShapeError("system '" + name + "' is three dimensional");
        return name == "cylindrical" ? make_cylindrical() : make_spherical();
    }
    throw ShapeError("unknown coordinate system '" + name + "'");
}

DenseTensor metric_at(const CoordinateSystem& sys, const Point& p) {
    return checked_metric(sys, p);
}

DenseTensor inverse_metric(const CoordinateSystem& sys, const Point& p) {
    return invert(checked_metric(sys, p));
}

DenseTensor metric_from_embedding(const CoordinateSystem& sys, const Point& p) {
    require_point(sys, p);
    if (!sys.embedding) throw ShapeError("system '" + sys.name + "' has no embedding");
    int d = sys.dim;
    Point probe = p;
    std::vector<Point> jac_cols(d);
    for (int i = 0; i < d; ++i) {
        double h = 1e-6 * std::max(1.0, std::abs(p[i]));
        probe[i] = p[i] + h;
        Point hi = sys.embedding(probe);
        probe[i] = p[i] - h;
        Point lo = sys.embedding(probe);
        probe[i] = p[i];
        jac_cols[i].resize(hi.size());
        for (std::size_t c = 0; c < hi.size(); ++c) jac_cols[i][c] = (hi[c] - lo[c]) / (2.0 * h);
    }
    DenseTensor g(d, rank2_co);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < jac_cols[i].size(); ++c) s += jac_cols[i][c] * jac_cols[j][c];
            g.at({i, j}) = s;
        }
    return g;
}

DenseTensor metric_partials_fd(const CoordinateSystem& sys, const Point& p) {
    require_point(sys, p);
    int d = sys.dim;
    DenseTensor out(d, rank3_co);
    Point probe = p;
    for (int l = 0; l < d; ++l) {
        double h = 1e-6 * std::max(1.0, std::abs(p[l]));
        probe[l] = p[l] + h;
        DenseTensor hi = sys.metric(probe);
        probe[l] = p[l] - h;
        DenseTensor lo = sys.metric(probe);
        probe[l] = p[l];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out.at({i, j, l}) = (hi.at({i, j}) - lo.at({i, j})) / (2.0 * h);
    }
    return out;
}

Christoffel christoffel2(const CoordinateSystem& sys, const Point& p) {
    DenseTensor g = checked_metric(sys, p);
    DenseTensor ginv = invert(g);
    DenseTensor pt = sys.metric_partials ? sys.metric_partials(p) : metric_partials_fd(sys, p);
    if (pt.rank() != 3 || pt.dim() != sys.dim)
        throw ShapeError("metric partials of '" + sys.name + "' returned a bad shape");

    int d = sys.dim;
    DenseTensor values(d, {Variance::contra, Variance::co, Variance::co});
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double s = 0.0;
                for (int l = 0; l < d; ++l)
                    s += ginv.at({k, l}) *
                         (pt.at({i, l, j}) + pt.at({j, l, i}) - pt.at({i, j, l}));
                values.at({k, i, j}) = 0.5 * s;
                values.at({k, j, i}) = 0.5 * s;  // symmetric lower pair, exactly
            }
    return Christoffel{std::move(values)};
}

namespace {

// out[.., i, ..] = sum_a m(i,a) t[.., a, ..] at `slot`, flipping the slot to `to`
DenseTensor metric_contract(const DenseTensor& t, const DenseTensor& m, int slot, Variance to) {
    std::vector<Variance> var = t.variance();
    var[slot] = to;
    DenseTensor out(t.dim(), std::move(var), t.weight());
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::vector<int> idx = out.unravel(flat);
        int i = idx[slot];
        double s = 0.0;
        for (int a = 0; a < t.dim(); ++a) {
            idx[slot] = a;
            s += m.at({i, a}) * t.at(idx);
        }
        out.components()[flat] = s;
    }
    return out;
}

} // namespace

DenseTensor raise_index(const DenseTensor& t, const CoordinateSystem& sys, const Point& p,
                        int slot) {
    if (slot < 0 || slot >= t.rank()) throw ShapeError("raise_index: bad slot");
    if (t.variance(slot) != Variance::co)
        throw ShapeError("raise_index: slot is already contravariant");
    return metric_contract(t, inverse_metric(sys, p), slot, Variance::contra);
}

DenseTensor lower_index(const DenseTensor& t, const CoordinateSystem& sys, const Point& p,
                        int slot) {
    if (slot < 0 || slot >= t.rank()) throw ShapeError("lower_index: bad slot");
    if (t.variance(slot) != Variance::contra)
        throw ShapeError("lower_index: slot is already covariant");
    return metric_contract(t, metric_at(sys, p), slot, Variance::co);
}

TensorField scalar_field(int dim, std::function<double(const Point&)> f) {
    TensorField tf;
    tf.dim = dim;
    tf.eval = [f = std::move(f)](const Point& p) { return DenseTensor::scalar(f(p)); };
    return tf;
}

TensorField scalar_field(int dim, std::function<double(const Point&)> f,
                         std::function<std::vector<double>(const Point&)> grad) {
    TensorField tf = scalar_field(dim, std::move(f));
    tf.partials = [dim, grad = std::move(grad)](const Point& p) {
        return DenseTensor(dim, {Variance::co}, grad(p));
    };
    return tf;
}

TensorField vector_field(int dim, Variance v,
                         std::function<std::vector<double>(const Point&)> f) {
    TensorField tf;
    tf.dim = dim;
    tf.variance = {v};
    tf.eval = [dim, v, f = std::move(f)](const Point& p) {
        return DenseTensor(dim, {v}, f(p));
    };
    return tf;
}

TensorField tensor_field(int dim, std::vector<Variance> var,
                         std::function<DenseTensor(const Point&)> f) {
    TensorField tf;
    tf.dim = dim;
    tf.variance = std::move(var);
    tf.eval = std::move(f);
    return tf;
}

TensorField metric_field(const CoordinateSystem& sys) {
    TensorField tf;
    tf.dim = sys.dim;
    tf.variance = rank2_co;
    tf.eval = sys.metric;
    tf.partials = sys.metric_partials;  // same layout: derivative slot last
    return tf;
}

namespace {

DenseTensor field_partials(const TensorField& field, const Point& p) {
    if (field.partials) return field.partials(p);
    int d = field.dim;
    Point probe = p;
    DenseTensor sample = field.eval(p);
    std::vector<Variance> var = sample.variance();
    var.push_back(Variance::co);
    DenseTensor out(d, std::move(var), sample.weight());
    for (int q = 0; q < d; ++q) {
        double h = 1e-5 * std::max(1.0, std::abs(p[q]));
        probe[q] = p[q] + h;
        DenseTensor hi = field.eval(probe);
        probe[q] = p[q] - h;
        DenseTensor lo = field.eval(probe);
        probe[q] = p[q];
        for (std::size_t flat = 0; flat < hi.size(); ++flat) {
            // offset of (idx.., q) in out given flat offset of idx in hi
            std::size_t pos = flat * static_cast<std::size_t>(d) + static_cast<std::size_t>(q);
            out.components()[pos] = (hi.components()[flat] - lo.components()[flat]) / (2.0 * h);
        }
    }
    return out;
}

} // namespace

DenseTensor covariant_derivative(const TensorField& field, const CoordinateSystem& sys,
                                 const Point& p) {
    if (field.dim != sys.dim) throw ShapeError("covariant_derivative: field/system dim mismatch");
    Christoffel gamma = christoffel2(sys, p);
    DenseTensor t = field.eval(p);
    if ((t.rank() != 0 && t.dim() != sys.dim) || t.variance() != field.variance)
        throw ShapeError("covariant_derivative: field eval shape disagrees with declaration");

    DenseTensor part = field_partials(field, p);
    std::vector<Variance> var = t.variance();
    var.push_back(Variance::co);
    if (part.rank() != t.rank() + 1 || part.dim() != sys.dim)
        throw ShapeError("covariant_derivative: partials have a bad shape");

    int d = sys.dim;
    int r = t.rank();
    DenseTensor out(d, var, t.weight());
    std::vector<int> tidx(r);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::vector<int> idx = out.unravel(flat);  // (idx_0..idx_{r-1}, q)
        int q = idx[r];
        double s = part.components()[flat];
        for (int slot = 0; slot < r; ++slot) {
            std::copy(idx.begin(), idx.begin() + r, tidx.begin());
            double corr = 0.0;
            if (t.variance(slot) == Variance::contra) {
                int b = idx[slot];
                for (int a = 0; a < d; ++a) {
                    tidx[slot] = a;
                    corr += gamma(b, a, q) * t.at(tidx);
                }
            } else {
                int b = idx[slot];
                for (int a = 0; a < d; ++a) {
                    tidx[slot] = a;
                    corr -= gamma(a, b, q) * t.at(tidx);
                }
            }
            s += corr;
        }
        out.components()[flat] = s;
    }
    return out;
}

double covariant_derivative_linearity_check(double a, const TensorField& A, double b,
                                            const TensorField& B,
                                            const CoordinateSystem& sys, const Point& p) {
    if (A.dim != B.dim || A.variance != B.variance)
        throw ShapeError("linearity check: fields must share shape");
    TensorField combo;
    combo.dim = A.dim;
    combo.variance = A.variance;
    combo.eval = [a, b, &A, &B](const Point& q) {
        return add(scale(A.eval(q), a), scale(B.eval(q), b));
    };
    if (A.partials && B.partials)
        combo.partials = [a, b, &A, &B](const Point& q) {
            return add(scale(A.partials(q), a), scale(B.partials(q), b));
        };
    DenseTensor lhs = covariant_derivative(combo, sys, p);
    DenseTensor rhs = add(scale(covariant_derivative(A, sys, p), a),
                          scale(covariant_derivative(B, sys, p), b));
    return max_abs_diff(lhs, rhs);
}

} // namespace tk
