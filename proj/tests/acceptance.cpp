// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances and sample counts are part of the contract; do not loosen them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "tensorkit/coord_systems.hpp"
#include "tensorkit/field_ops.hpp"
#include "tensorkit/index_notation.hpp"
#include "tensorkit/linalg.hpp"
#include "tensorkit/matrix_ops.hpp"
#include "tensorkit/random_fields.hpp"
#include "tensorkit/special_tensors.hpp"

using tk::DenseTensor;
using tk::Point;
using tk::Variance;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
void for_each_tuple(int dim, int rank, Fn&& fn) {
    std::vector<int> idx(rank, 0);
    while (true) {
        fn(idx);
        int pos = rank - 1;
        while (pos >= 0 && ++idx[pos] == dim) idx[pos--] = 0;
        if (pos < 0) break;
    }
}

std::string fmt_err(double worst) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst %.3e", worst);
    return buf;
}

// 1. delta/epsilon contraction identities, exact integer arithmetic
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    DenseTensor e = tk::epsilon(3);
    DenseTensor d = tk::kronecker_covariant(3);
    bool ok = true;

    // e_ijk e_lmk = d_il d_jm - d_im d_jl, all 81 (i,j,l,m)
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                for (int m = 0; m < 3; ++m) {
                    double lhs = 0.0;
                    for (int k = 0; k < 3; ++k) lhs += e.at({i, j, k}) * e.at({l, m, k});
                    double rhs = d.at({i, l}) * d.at({j, m}) - d.at({i, m}) * d.at({j, l});
                    ok = ok && lhs == rhs;
                }

    // e_ijk e_ljk = 2 d_il
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l) {
            double lhs = 0.0;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) lhs += e.at({i, j, k}) * e.at({l, j, k});
            ok = ok && lhs == 2.0 * d.at({i, l});
        }

    // e_ijk e_ijk = 6, and the rank-n self contraction is n!
    double self3 = 0.0;
    for (double x : e.components()) self3 += x * x;
    ok = ok && self3 == 6.0;
    for (int n = 2; n <= 5; ++n) {
        DenseTensor en = tk::epsilon(n);
        double total = 0.0;
        for (double x : en.components()) total += x * x;
        double factorial = 1.0;
        for (int k = 2; k <= n; ++k) factorial *= k;
        ok = ok && total == factorial;
    }

    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    char detail[64];
    std::snprintf(detail, sizeof detail, "exact, %.2fs", dt);
    report(1, "delta/epsilon identity suite", ok, detail);
}

// 2. closed-form epsilon vs. transposition-parity oracle
void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int n = 2; n <= 5 && ok; ++n) {
        for_each_tuple(n, n, [&](const std::vector<int>& idx) {
            double want = oracle::tuple_parity(idx);
            if (tk::epsilon_closed_form(idx) != want) ok = false;
            if (tk::epsilon_closed_form(idx, true) != want) ok = false;
        });
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 5.0;
    char detail[64];
    std::snprintf(detail, sizeof detail, "exact on all tuples n<=5, %.2fs", dt);
    report(2, "closed-form permutation symbol", ok, detail);
}

// 3. generalized Kronecker delta: determinant vs permutation definition
void criterion_3() {
    bool ok = true;
    for (int d = 1; d <= 4; ++d)
        for (int n = 1; n <= 3; ++n)
            for_each_tuple(d, 2 * n, [&](const std::vector<int>& idx) {
                std::span<const int> up(idx.data(), n), lo(idx.data() + n, n);
                if (tk::generalized_kronecker_entry(up, lo) !=
                    static_cast<double>(oracle::gk_permutation_def(up, lo)))
                    ok = false;
            });

    // top-rank delta against the permutation symbol
    for (int n = 2; n <= 4; ++n) {
        DenseTensor e = tk::epsilon(n);
        std::vector<int> upper(n);
        for (int i = 0; i < n; ++i) upper[i] = i;
        for_each_tuple(n, n, [&](const std::vector<int>& lower) {
            if (tk::generalized_kronecker_entry(upper, lower) !=
                e.at(std::span<const int>(lower)))
                ok = false;
        });
    }
    report(3, "generalized Kronecker delta", ok, "exact, n<=3 d<=4 + top rank");
}

// 4. epsilon determinants vs Leibniz; epsilon inverse quality
void criterion_4() {
    tk::Rng rng(42);
    double worst = 0.0;
    for (int d = 1; d <= 5; ++d)
        for (int rep = 0; rep < 20; ++rep) {
            oracle::Matrix m = oracle::random_matrix(rng, d);
            double want = oracle::det_leibniz(m);
            DenseTensor t = oracle::to_tensor(m);
            for (tk::DetMethod method : {tk::DetMethod::by_row, tk::DetMethod::by_col,
                                         tk::DetMethod::double_epsilon}) {
                double rel = std::abs(tk::det_epsilon(t, method) - want) /
                             std::max(1.0, std::abs(want));
                worst = std::max(worst, rel);
            }
        }
    bool ok = worst < 1e-9;

    double worst_inv = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        DenseTensor a = oracle::to_tensor(oracle::well_conditioned(rng, 3));
        DenseTensor prod = tk::matmul(a, tk::inverse_epsilon(a));
        worst_inv = std::max(worst_inv, tk::max_abs_diff(prod, tk::identity_matrix(3)));
    }
    ok = ok && worst_inv < 1e-9;
    report(4, "epsilon determinant and inverse", ok,
           fmt_err(std::max(worst, worst_inv)) + ", 100 matrices each");
}

// 5. invariant relations and rotation invariance
void criterion_5() {
    tk::Rng rng(42);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        DenseTensor a = oracle::to_tensor(oracle::random_matrix(rng, 3));
        tk::MainInvariants mi = tk::main_invariants(a);
        auto rel = [](double x, double y) {
            return std::abs(x - y) / std::max(1.0, std::max(std::abs(x), std::abs(y)));
        };
        worst = std::max(worst, rel(mi.I, mi.I1));
        worst = std::max(worst, rel(mi.II, mi.I1 * mi.I1 - 2.0 * mi.I2));
        worst = std::max(worst,
                         rel(mi.III, std::pow(mi.I1, 3) - 3.0 * mi.I1 * mi.I2 + 3.0 * mi.I3));
    }
    bool ok = worst < 1e-9;

    double worst_rot = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        oracle::Matrix r = oracle::random_rotation(rng);
        DenseTensor a = oracle::to_tensor(oracle::random_matrix(rng, 3));
        oracle::Matrix conj =
            oracle::matmul(oracle::matmul(r, oracle::from_tensor(a)), oracle::transpose(r));
        tk::MainInvariants mi = tk::main_invariants(a);
        tk::MainInvariants mj = tk::main_invariants(oracle::to_tensor(conj));
        double d = 0.0;
        d = std::max(d, std::abs(mi.I - mj.I));
        d = std::max(d, std::abs(mi.II - mj.II));
        d = std::max(d, std::abs(mi.III - mj.III));
        d = std::max(d, std::abs(mi.I1 - mj.I1));
        d = std::max(d, std::abs(mi.I2 - mj.I2));
        d = std::max(d, std::abs(mi.I3 - mj.I3));
        worst_rot = std::max(worst_rot, d);
    }
    ok = ok && worst_rot < 1e-8;
    report(5, "tensor invariants", ok, fmt_err(std::max(worst, worst_rot)));
}

// 6. Christoffel symbols vs the closed forms of both curvilinear systems
void criterion_6() {
    tk::Rng rng(42);
    double worst_analytic = 0.0, worst_fd = 0.0;
    bool cart_exact = true;

    auto expected_cyl = [](const Point& p, int k, int i, int j) -> double {
        double rho = p[0];
        if (k == 0 && i == 1 && j == 1) return -rho;
        if (k == 1 && ((i == 0 && j == 1) || (i == 1 && j == 0))) return 1.0 / rho;
        return 0.0;
    };
    auto expected_sph = [](const Point& p, int k, int i, int j) -> double {
        double r = p[0], st = std::sin(p[1]), ct = std::cos(p[1]);
        if (k == 0 && i == 1 && j == 1) return -r;
        if (k == 0 && i == 2 && j == 2) return -r * st * st;
        if (k == 1 && i == 2 && j == 2) return -st * ct;
        if (k == 1 && ((i == 0 && j == 1) || (i == 1 && j == 0))) return 1.0 / r;
        if (k == 2 && ((i == 0 && j == 2) || (i == 2 && j == 0))) return 1.0 / r;
        if (k == 2 && ((i == 1 && j == 2) || (i == 2 && j == 1))) return ct / st;
        return 0.0;
    };

    for (int rep = 0; rep < 50; ++rep) {
        Point pc = {rng.uniform(0.3, 2.5), rng.uniform(0.0, 6.2), rng.uniform(-1.0, 1.0)};
        Point ps = {rng.uniform(0.3, 2.5), rng.uniform(0.3, 2.8), rng.uniform(0.0, 6.2)};

        for (int variant = 0; variant < 2; ++variant) {
            tk::CoordinateSystem cyl = tk::builtin_system("cylindrical");
            tk::CoordinateSystem sph = tk::builtin_system("spherical");
            if (variant == 1) {
                cyl.metric_partials = nullptr;  // force differencing
                sph.metric_partials = nullptr;
            }
            tk::Christoffel gc = tk::christoffel2(cyl, pc);
            tk::Christoffel gs = tk::christoffel2(sph, ps);
            double& worst = variant == 0 ? worst_analytic : worst_fd;
            for (int k = 0; k < 3; ++k)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        worst = std::max(worst,
                                         std::abs(gc(k, i, j) - expected_cyl(pc, k, i, j)));
                        worst = std::max(worst,
                                         std::abs(gs(k, i, j) - expected_sph(ps, k, i, j)));
                    }
        }

        tk::Christoffel gcart = tk::christoffel2(tk::builtin_system("cartesian"),
                                                 {rng.uniform(), rng.uniform(), rng.uniform()});
        cart_exact = cart_exact && gcart.values.max_abs() == 0.0;
    }
    bool ok = worst_analytic < 1e-9 && worst_fd < 1e-5 && cart_exact;
    char detail[96];
    std::snprintf(detail, sizeof detail, "analytic %.2e, fd %.2e, cartesian exact %s",
                  worst_analytic, worst_fd, cart_exact ? "yes" : "no");
    report(6, "Christoffel closed forms", ok, detail);
}

// 7. covariant derivative properties in spherical coordinates
void criterion_7() {
    tk::Rng rng(42);
    tk::CoordinateSystem sph = tk::builtin_system("spherical");

    double worst_g = 0.0;
    tk::TensorField gfield = tk::metric_field(sph);
    for (int rep = 0; rep < 50; ++rep) {
        Point p = {rng.uniform(0.3, 2.5), rng.uniform(0.3, 2.8), rng.uniform(0.0, 6.2)};
        worst_g = std::max(worst_g, tk::covariant_derivative(gfield, sph, p).max_abs());
    }
    bool ok = worst_g < 1e-6;

    // scalar covariant derivative == gradient, checked with a different step
    tk::ScalarPoly poly = tk::ScalarPoly::random(rng);
    tk::TensorField f = tk::scalar_field(3, [&poly](const Point& q) { return poly.value(q); });
    std::function<double(const std::vector<double>&)> fval =
        [&poly](const std::vector<double>& q) { return poly.value(q); };
    double worst_s = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        Point p = {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.6), rng.uniform(0.0, 6.2)};
        DenseTensor df = tk::covariant_derivative(f, sph, p);
        for (int i = 0; i < 3; ++i)
            worst_s = std::max(worst_s, std::abs(df.at({i}) - oracle::fd_central(fval, p, i)));
    }
    ok = ok && worst_s < 1e-8;

    // nabla commutes with lowering: nabla(g A) == g nabla(A)
    tk::VectorPoly vp = tk::VectorPoly::random(rng);
    tk::TensorField a = tk::vector_field(3, Variance::contra,
                                         [&vp](const Point& q) { return vp.value(q); });
    tk::TensorField lowered = tk::tensor_field(
        3, {Variance::co}, [&vp, &sph](const Point& q) {
            DenseTensor v(3, {Variance::contra}, vp.value(q));
            return tk::lower_index(v, sph, q, 0);
        });
    double worst_b = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        Point p = {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.6), rng.uniform(0.0, 6.2)};
        DenseTensor lhs = tk::covariant_derivative(lowered, sph, p);   // (i, m)
        DenseTensor da = tk::covariant_derivative(a, sph, p);          // (i, m)
        DenseTensor rhs = tk::lower_index(da, sph, p, 0);
        worst_b = std::max(worst_b, tk::max_abs_diff(lhs, rhs));
    }
    ok = ok && worst_b < 1e-6;

    char detail[96];
    std::snprintf(detail, sizeof detail, "nabla g %.2e, scalar %.2e, bypass %.2e", worst_g,
                  worst_s, worst_b);
    report(7, "covariant derivative", ok, detail);
}

// 8. the 17-case vector identity harness
void criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    const char* second_derivative_ids[] = {"div-grad", "div-curl", "curl-grad", "curl-curl"};
    int second_found = 0;
    for (const tk::IdentityCase& c : tk::identity_catalog()) {
        tk::IdentityReport rep = tk::verify_identity(c, 100, 42, 1e-5);
        ok = ok && rep.pass;
        worst = std::max(worst, rep.max_residual);
        for (const char* id : second_derivative_ids)
            if (rep.id == id) {
                ++second_found;
                ok = ok && rep.max_residual < 1e-5;
            }
    }
    ok = ok && tk::identity_catalog().size() == 17 && second_found == 4;
    double dt = seconds_since(t0);
    ok = ok && dt < 30.0;
    char detail[96];
    std::snprintf(detail, sizeof detail, "17 cases, worst %.3e, %.1fs", worst, dt);
    report(8, "vector identity harness", ok, detail);
}

// 9. integral theorems with O(N^-2) quadrature decay
void criterion_9() {
    bool ok = true;
    double worst64 = 0.0;
    bool decay_ok = true;
    std::string ratios;

    for (std::uint64_t seed : {42ull, 43ull, 44ull}) {
        tk::Rng rng(seed);
        tk::VectorPoly vp = tk::VectorPoly::random(rng);
        tk::VectorFn a = [&vp](const Point& q) { return vp.value(q); };

        double div16 = tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, 16).rel_error;
        double div32 = tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, 32).rel_error;
        double div64 = tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, 64).rel_error;
        double stk16 = tk::stokes_check(a, tk::Rect3{}, 16).rel_error;
        double stk32 = tk::stokes_check(a, tk::Rect3{}, 32).rel_error;
        double stk64 = tk::stokes_check(a, tk::Rect3{}, 64).rel_error;

        worst64 = std::max({worst64, div64, stk64});
        ok = ok && div64 < 1e-3 && stk64 < 1e-3;

        auto check_decay = [&](double e_coarse, double e_fine) {
            if (e_fine < 1e-11) return;  // at the rounding floor
            double ratio = e_coarse / e_fine;
            char buf[16];
            std::snprintf(buf, sizeof buf, " %.2f", ratio);
            ratios += buf;
            if (ratio < 3.0 || ratio > 5.0) decay_ok = false;
        };
        check_decay(div16, div32);
        check_decay(div32, div64);
        check_decay(stk16, stk32);
        check_decay(stk32, stk64);
    }
    ok = ok && decay_ok;
    char detail[128];
    std::snprintf(detail, sizeof detail, "worst at N=64 %.3e, ratios%s", worst64,
                  ratios.c_str());
    report(9, "integral theorems", ok, detail);
}

// 10. validator classification and round-trip stability
void criterion_10() {
    bool ok = true;

    const char* good_exprs[] = {"A^{ij}_{ij}", "A^{im}_m + B^{ink}_{nk}"};
    for (const char* s : good_exprs)
        ok = ok && tk::validate(tk::parse_expression(s), tk::Mode::strict).ok;
    const char* good_eqs[] = {"C_{ij} = A_{ij} - B_{ij}", "a = B^j_j"};
    for (const char* s : good_eqs)
        ok = ok && tk::validate(tk::parse_equation(s), tk::Mode::strict).ok;

    const char* bad_exprs[] = {"B^{ii}_i", "A_i + B_{ij}", "A^i + B^j", "A_i - B^i"};
    for (const char* s : bad_exprs)
        ok = ok && !tk::validate(tk::parse_expression(s), tk::Mode::strict).ok;
    ok = ok && !tk::validate(tk::parse_equation("A^i_i = B_i"), tk::Mode::strict).ok;

    // 50-expression corpus: render then reparse reproduces the structure
    tk::Rng rng(42);
    auto letter = [&rng](const char* pool, int n) {
        return pool[static_cast<int>(rng.uniform(0.0, 1.0) * n) % n];
    };
    int stable = 0;
    for (int rep = 0; rep < 50; ++rep) {
        tk::Expression e;
        int nterms = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        for (int t = 0; t < nterms; ++t) {
            tk::Term term;
            long long num = static_cast<long long>(rng.uniform(-6.0, 7.0));
            if (num == 0) num = 3;
            term.coefficient = tk::Rational(num, 1 + static_cast<long long>(rng.uniform(0.0, 4.0)));
            int nfac = 1 + static_cast<int>(rng.uniform(0.0, 2.5));
            for (int fi = 0; fi < nfac; ++fi) {
                tk::TensorFactor fac;
                fac.name = std::string(1, letter("ABCDEFGHS", 9));
                int nidx = static_cast<int>(rng.uniform(0.0, 4.0));
                for (int k = 0; k < nidx; ++k)
                    fac.indices.emplace_back(letter("ijklmnpq", 8), rng.uniform() > 0
                                                                        ? Variance::contra
                                                                        : Variance::co);
                term.factors.push_back(fac);
            }
            e.terms.push_back(term);
        }
        if (tk::parse_expression(tk::render(e)) == e) ++stable;
    }
    ok = ok && stable == 50;
    char detail[64];
    std::snprintf(detail, sizeof detail, "9 classifications, %d/50 round trips", stable);
    report(10, "index notation validator", ok, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
