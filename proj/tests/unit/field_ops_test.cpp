#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "tensorkit/field_ops.hpp"

using tk::DenseTensor;
using tk::FDScheme;
using tk::Point;
using tk::Variance;

namespace {

const tk::VectorFn position = [](const Point& q) { return q; };

Point random_cyl_point(tk::Rng& rng) {
    return {rng.uniform(0.4, 2.0), rng.uniform(0.0, 6.2), rng.uniform(-1.0, 1.0)};
}

} // namespace

TEST_CASE("difference stencils are exact on cubics") {
    tk::ScalarFn cubic = [](const Point& p) {
        return p[0] * p[0] * p[0] - 2.0 * p[0] * p[1] + p[2];
    };
    Point p = {0.5, -0.3, 1.2};
    CHECK(tk::fd_partial(cubic, p, 0) ==
          doctest::Approx(3.0 * 0.25 + 0.6).epsilon(1e-11));
    CHECK(tk::fd_partial(cubic, p, 1) == doctest::Approx(-1.0).epsilon(1e-11));
    // second differences leave ~1e-7 of cancellation noise at step 1e-4
    CHECK(tk::fd_second_partial(cubic, p, 0) == doctest::Approx(3.0).epsilon(1e-6));

    FDScheme second_order;
    second_order.order = 2;
    CHECK(tk::fd_partial(cubic, p, 2, second_order) == doctest::Approx(1.0).epsilon(1e-9));

    FDScheme bad;
    bad.order = 3;
    CHECK_THROWS_AS(tk::fd_partial(cubic, p, 0, bad), tk::ShapeError);
    CHECK_THROWS_AS(tk::fd_partial(cubic, p, 5), tk::ShapeError);
}

TEST_CASE("gradient, divergence, curl on reference fields") {
    tk::ScalarFn f = [](const Point& p) { return p[0] * p[0] + p[1] * p[1]; };
    std::vector<double> g = tk::grad(f, {1.0, 2.0, 0.0});
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(g[1] == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(std::abs(g[2]) < 1e-12);

    CHECK(tk::div(position, {0.2, 0.4, -0.6}) == doctest::Approx(3.0).epsilon(1e-10));

    tk::VectorFn rot = [](const Point& p) { return std::vector<double>{-p[1], p[0], 0.0}; };
    std::vector<double> c = tk::curl(rot, {0.3, 0.8, -0.1});
    CHECK(std::abs(c[0]) < 1e-12);
    CHECK(std::abs(c[1]) < 1e-12);
    CHECK(c[2] == doctest::Approx(2.0).epsilon(1e-10));

    CHECK(tk::laplacian(f, {0.7, -0.2, 0.5}) == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("vector gradient layout: derivative index first") {
    // A = (y, 0, 0): the only nonzero entry is d_1 A_0
    tk::VectorFn a = [](const Point& p) { return std::vector<double>{p[1], 0.0, 0.0}; };
    DenseTensor g = tk::grad_vec(a, {0.1, 0.2, 0.3});
    CHECK(g.at({1, 0}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(g.at({0, 1})) < 1e-12);
}

TEST_CASE("rank-2 divergence, both contraction forms") {
    // T_{ij} = x_i v_j: d_j T_{ji} = 3 v_i while d_i T_{ji} = v_j
    std::vector<double> v = {1.5, -2.0, 0.5};
    tk::Rank2Fn t = [&v](const Point& p) {
        DenseTensor out(3, {Variance::co, Variance::co});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out.at({i, j}) = p[i] * v[j];
        return out;
    };
    Point p = {0.4, 0.6, -0.2};
    std::vector<double> first = tk::div_rank2(t, p, tk::Rank2DivForm::first_index);
    std::vector<double> second = tk::div_rank2(t, p, tk::Rank2DivForm::second_index);
    for (int i = 0; i < 3; ++i) {
        CHECK(first[i] == doctest::Approx(3.0 * v[i]).epsilon(1e-9));
        CHECK(second[i] == doctest::Approx(v[i]).epsilon(1e-9));
    }
}

TEST_CASE("rank-2 curl works column by column") {
    // T_{ij} = A_i u_j with A = (-y, x, 0): curl T = (curl A) outer u
    std::vector<double> u = {2.0, 0.5, -1.0};
    tk::Rank2Fn t = [&u](const Point& p) {
        DenseTensor out(3, {Variance::co, Variance::co});
        double a[3] = {-p[1], p[0], 0.0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out.at({i, j}) = a[i] * u[j];
        return out;
    };
    DenseTensor c = tk::curl_rank2(t, {0.3, -0.7, 0.2});
    for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(c.at({0, j})) < 1e-10);
        CHECK(std::abs(c.at({1, j})) < 1e-10);
        CHECK(c.at({2, j}) == doctest::Approx(2.0 * u[j]).epsilon(1e-9));
    }
}

TEST_CASE("laplacians agree and directional derivative works") {
    tk::Rng rng(301);
    tk::ScalarPoly poly = tk::ScalarPoly::random(rng);
    tk::ScalarFn f = [&poly](const Point& q) { return poly.value(q); };
    Point p = tk::sample_point(rng);

    // div(grad f) = laplacian f
    tk::VectorFn gf = [&f](const Point& q) { return tk::grad(f, q); };
    CHECK(tk::div(gf, p) == doctest::Approx(tk::laplacian(f, p)).epsilon(1e-6));

    // (a.nabla)f = a.grad f
    std::vector<double> a = {0.3, -0.8, 0.5};
    tk::VectorFn afn = [&a](const Point&) { return a; };
    std::vector<double> g = tk::grad(f, p);
    CHECK(tk::adotnabla(afn, f, p) ==
          doctest::Approx(a[0] * g[0] + a[1] * g[1] + a[2] * g[2]).epsilon(1e-9));

    // vector laplacian componentwise
    tk::VectorPoly vp = tk::VectorPoly::random(rng);
    tk::VectorFn vf = [&vp](const Point& q) { return vp.value(q); };
    std::vector<double> vl = tk::vector_laplacian(vf, p);
    for (int i = 0; i < 3; ++i) {
        tk::ScalarFn comp = [&vp, i](const Point& q) { return vp.comp[i].value(q); };
        CHECK(vl[i] == doctest::Approx(tk::laplacian(comp, p)).epsilon(1e-8));
    }
}

TEST_CASE("analytic polynomial gradient matches differencing") {
    tk::Rng rng(302);
    for (int rep = 0; rep < 5; ++rep) {
        tk::ScalarPoly poly = tk::ScalarPoly::random(rng, tk::FieldStyle::poly_trig);
        tk::ScalarFn f = [&poly](const Point& q) { return poly.value(q); };
        Point p = tk::sample_point(rng);
        auto g = poly.gradient(p);
        for (int i = 0; i < 3; ++i)
            CHECK(tk::fd_partial(f, p, i) == doctest::Approx(g[i]).epsilon(1e-7));
    }
}

TEST_CASE("cylindrical operators, closed-form cases") {
    tk::CoordinateSystem cyl = tk::builtin_system("cylindrical");
    Point p = {1.4, 0.9, -0.5};

    // radial field rho e_rho has divergence 2
    tk::VectorFn radial = [](const Point& q) { return std::vector<double>{q[0], 0.0, 0.0}; };
    CHECK(tk::curv_divergence(cyl, radial, p) == doctest::Approx(2.0).epsilon(1e-9));

    // rigid rotation rho e_phi: curl = (0, 0, 2)
    tk::VectorFn rot = [](const Point& q) { return std::vector<double>{0.0, q[0], 0.0}; };
    std::vector<double> c = tk::curv_curl(cyl, rot, p);
    CHECK(std::abs(c[0]) < 1e-10);
    CHECK(std::abs(c[1]) < 1e-10);
    CHECK(c[2] == doctest::Approx(2.0).epsilon(1e-9));

    // gradient of f = rho^2 + z is (2 rho, 0, 1)
    tk::ScalarFn f = [](const Point& q) { return q[0] * q[0] + q[2]; };
    std::vector<double> g = tk::curv_gradient(cyl, f, p);
    CHECK(g[0] == doctest::Approx(2.8).epsilon(1e-9));
    CHECK(std::abs(g[1]) < 1e-10);
    CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-9));

    // laplacian of rho^2 is 4
    tk::ScalarFn r2 = [](const Point& q) { return q[0] * q[0]; };
    CHECK(tk::curv_laplacian(cyl, r2, p) == doctest::Approx(4.0).epsilon(1e-6));

    CHECK_THROWS_AS(tk::curv_divergence(cyl, radial, {0.0, 0.0, 0.0}), tk::DomainError);
}

TEST_CASE("spherical operators, closed-form cases") {
    tk::CoordinateSystem sph = tk::builtin_system("spherical");
    Point p = {1.3, 0.8, 2.0};

    // laplacian of r^2 is 6, everywhere
    tk::ScalarFn r2 = [](const Point& q) { return q[0] * q[0]; };
    CHECK(tk::curv_laplacian(sph, r2, p) == doctest::Approx(6.0).epsilon(1e-6));

    // divergence of r e_r is 3
    tk::VectorFn radial = [](const Point& q) { return std::vector<double>{q[0], 0.0, 0.0}; };
    CHECK(tk::curv_divergence(sph, radial, p) == doctest::Approx(3.0).epsilon(1e-9));

    // gradient of x = r sin(theta) cos(phi), expressed physically, is the
    // constant cartesian unit vector x-hat seen from the local frame
    tk::ScalarFn x = [](const Point& q) { return q[0] * std::sin(q[1]) * std::cos(q[2]); };
    std::vector<double> g = tk::curv_gradient(sph, x, p);
    CHECK(g[0] == doctest::Approx(std::sin(0.8) * std::cos(2.0)).epsilon(1e-9));
    CHECK(g[1] == doctest::Approx(std::cos(0.8) * std::cos(2.0)).epsilon(1e-9));
    CHECK(g[2] == doctest::Approx(-std::sin(2.0)).epsilon(1e-9));

    // curl of a gradient field vanishes
    std::vector<double> c = tk::curv_curl(
        sph, [](const Point& q) { return std::vector<double>{2.0 * q[0], 0.0, 0.0}; }, p);
    CHECK(std::abs(c[0]) < 1e-9);
    CHECK(std::abs(c[1]) < 1e-9);
    CHECK(std::abs(c[2]) < 1e-9);
}

TEST_CASE("general orthogonal path reproduces the explicit formulas") {
    tk::Rng rng(303);
    tk::CoordinateSystem cyl = tk::builtin_system("cylindrical");
    tk::ScalarPoly sp = tk::ScalarPoly::random(rng);
    tk::VectorPoly vp = tk::VectorPoly::random(rng);
    tk::ScalarFn f = [&sp](const Point& q) { return sp.value(q); };
    tk::VectorFn a = [&vp](const Point& q) { return vp.value(q); };

    for (int rep = 0; rep < 5; ++rep) {
        Point p = random_cyl_point(rng);
        std::vector<double> g1 = tk::curv_gradient(cyl, f, p);
        std::vector<double> g2 = tk::orthogonal_gradient(cyl, f, p);
        for (int i = 0; i < 3; ++i) CHECK(g1[i] == doctest::Approx(g2[i]).epsilon(1e-8));

        CHECK(tk::curv_divergence(cyl, a, p) ==
              doctest::Approx(tk::orthogonal_divergence(cyl, a, p)).epsilon(1e-7));

        std::vector<double> c1 = tk::curv_curl(cyl, a, p);
        std::vector<double> c2 = tk::orthogonal_curl(cyl, a, p);
        for (int i = 0; i < 3; ++i)
            CHECK(c1[i] == doctest::Approx(c2[i]).epsilon(1e-7).scale(1.0));

        CHECK(tk::curv_laplacian(cyl, f, p) ==
              doctest::Approx(tk::orthogonal_laplacian(cyl, f, p)).epsilon(1e-4).scale(1.0));
    }

    // with unit scale factors the general path is plain cartesian calculus
    tk::CoordinateSystem cart = tk::builtin_system("cartesian");
    Point p = tk::sample_point(rng);
    std::vector<double> g1 = tk::grad(f, p);
    std::vector<double> g2 = tk::orthogonal_gradient(cart, f, p);
    for (int i = 0; i < 3; ++i) CHECK(g1[i] == doctest::Approx(g2[i]).epsilon(1e-9));
    CHECK(tk::div(a, p) == doctest::Approx(tk::orthogonal_divergence(cart, a, p)).epsilon(1e-8));

    tk::CoordinateSystem bare;  // no scale factors at all
    bare.dim = 3;
    CHECK_THROWS_AS(tk::orthogonal_gradient(bare, f, p), tk::ShapeError);
}

TEST_CASE("identity catalog composition") {
    const auto& cat = tk::identity_catalog();
    CHECK(cat.size() == 17);
    CHECK(tk::identity_by_id("div-curl").n_vectors == 1);
    CHECK_THROWS_AS(tk::identity_by_id("nope"), tk::ShapeError);
}

TEST_CASE("every identity holds on polynomial fields") {
    for (const tk::IdentityCase& c : tk::identity_catalog()) {
        tk::IdentityReport rep = tk::verify_identity(c, 25, 42, 1e-5);
        CAPTURE(rep.id);
        CHECK(rep.pass);
        CHECK(rep.max_residual < 1e-5);
    }
}

TEST_CASE("identities survive the trig bump too") {
    for (const char* id : {"div-grad", "curl-grad", "grad-dot", "curl-cross"}) {
        tk::IdentityReport rep =
            tk::verify_identity(tk::identity_by_id(id), 10, 7, 1e-5, tk::FieldStyle::poly_trig);
        CAPTURE(id);
        CHECK(rep.pass);
    }
}

TEST_CASE("seeded runs are bit-reproducible") {
    tk::IdentityReport a = tk::verify_identity(tk::identity_by_id("curl-curl"), 20, 99, 1e-5);
    tk::IdentityReport b = tk::verify_identity(tk::identity_by_id("curl-curl"), 20, 99, 1e-5);
    CHECK(a.max_residual == b.max_residual);

    tk::Rng r1(5), r2(5);
    for (int i = 0; i < 100; ++i) CHECK(r1.uniform() == r2.uniform());
}

TEST_CASE("divergence theorem on exactly integrable fields") {
    // linear field: both sides equal 3 |box| with no quadrature error
    tk::IntegralReport rep = tk::divergence_theorem_check(position, {0, 0, 0}, {1, 1, 1}, 4);
    CHECK(rep.lhs == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rep.rhs == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.rel_error < 1e-9);

    // off-origin box with a quadratic field
    tk::VectorFn quad = [](const Point& q) {
        return std::vector<double>{q[0] * q[0], 0.0, 0.0};
    };
    // integral of div = 2x over [1,2]^3 is 3; flux: 4 - 1 = 3
    tk::IntegralReport rep2 = tk::divergence_theorem_check(quad, {1, 1, 1}, {2, 2, 2}, 32);
    CHECK(rep2.lhs == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(rep2.rel_error < 1e-3);
}

TEST_CASE("stokes check on the reference rotation field") {
    tk::VectorFn rot = [](const Point& q) { return std::vector<double>{-q[1], q[0], 0.0}; };
    tk::Rect3 rect;  // unit square in the z=0 plane
    tk::IntegralReport rep = tk::stokes_check(rot, rect, 8);
    CHECK(rep.lhs == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.rhs == doctest::Approx(2.0).epsilon(1e-12));

    // a rectangle with a different normal axis
    tk::Rect3 ry;
    ry.normal_axis = 1;
    ry.offset = 0.3;
    ry.lo = {-0.5, -0.5};
    ry.hi = {0.5, 1.0};
    tk::VectorFn swirl = [](const Point& q) {
        return std::vector<double>{q[2] * q[2], q[0] * q[2], -q[0] * q[1]};
    };
    tk::IntegralReport rep2 = tk::stokes_check(swirl, ry, 64);
    CHECK(rep2.rel_error < 1e-3);
}

TEST_CASE("quadrature error decays at second order") {
    tk::Rng rng(304);
    tk::VectorPoly vp = tk::VectorPoly::random(rng);
    tk::VectorFn a = [&vp](const Point& q) { return vp.value(q); };

    double e16 = tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, 16).rel_error;
    double e32 = tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, 32).rel_error;
    double e64 = tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, 64).rel_error;
    if (e32 > 1e-11) {  // above rounding floor
        CHECK(e16 / e32 > 3.0);
        CHECK(e16 / e32 < 5.0);
    }
    if (e64 > 1e-11) {
        CHECK(e32 / e64 > 3.0);
        CHECK(e32 / e64 < 5.0);
    }
}

TEST_CASE("sampled points stay in the unit cube") {
    tk::Rng rng(305);
    for (int i = 0; i < 50; ++i) {
        Point p = tk::sample_point(rng);
        REQUIRE(p.size() == 3);
        for (double x : p) {
            CHECK(x >= -1.0);
            CHECK(x < 1.0);
        }
    }
}
