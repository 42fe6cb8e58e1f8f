// Microbenchmarks for the hot paths: permutation-symbol machinery, the
// epsilon determinant forms, einsum evaluation and the field operators.

#include <benchmark/benchmark.h>

#include "tensorkit/coord_systems.hpp"
#include "tensorkit/einsum.hpp"
#include "tensorkit/field_ops.hpp"
#include "tensorkit/linalg.hpp"
#include "tensorkit/matrix_ops.hpp"
#include "tensorkit/random_fields.hpp"
#include "tensorkit/special_tensors.hpp"

namespace {

tk::DenseTensor random_matrix(int d, std::uint64_t seed) {
    tk::Rng rng(seed);
    tk::DenseTensor m(d, {tk::Variance::co, tk::Variance::co});
    for (double& x : m.components()) x = rng.uniform();
    return m;
}

void bm_epsilon_build(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tk::epsilon(n));
}
BENCHMARK(bm_epsilon_build)->Arg(4)->Arg(6)->Arg(8);

void bm_generalized_kronecker(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tk::generalized_kronecker(3, 3));
}
BENCHMARK(bm_generalized_kronecker);

void bm_det_by_row(benchmark::State& state) {
    tk::DenseTensor m = random_matrix(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(tk::det_epsilon(m, tk::DetMethod::by_row));
}
BENCHMARK(bm_det_by_row)->Arg(3)->Arg(5);

void bm_det_double_epsilon(benchmark::State& state) {
    tk::DenseTensor m = random_matrix(static_cast<int>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(tk::det_epsilon(m, tk::DetMethod::double_epsilon));
}
BENCHMARK(bm_det_double_epsilon)->Arg(3)->Arg(5);

void bm_det_gauss(benchmark::State& state) {
    tk::DenseTensor m = random_matrix(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(tk::det_gauss(m));
}
BENCHMARK(bm_det_gauss)->Arg(3)->Arg(5);

void bm_einsum_matmul(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    tk::Binding binding{{"A", random_matrix(d, 2)}, {"B", random_matrix(d, 3)}};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            tk::einsum_eval("A_{ij} B_{jk}", binding, d, tk::Mode::cartesian));
}
BENCHMARK(bm_einsum_matmul)->Arg(3)->Arg(8);

void bm_einsum_epsilon_det(benchmark::State& state) {
    tk::Binding binding{{"A", random_matrix(3, 2)}, {"B", random_matrix(3, 3)},
                        {"C", random_matrix(3, 4)}};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            tk::einsum_eval("e_{ijk} A_{ai} B_{bj} C_{ck}", binding, 3, tk::Mode::cartesian));
}
BENCHMARK(bm_einsum_epsilon_det);

void bm_christoffel_spherical(benchmark::State& state) {
    tk::CoordinateSystem sph = tk::builtin_system("spherical");
    tk::Point p = {1.7, 0.9, 2.1};
    for (auto _ : state) benchmark::DoNotOptimize(tk::christoffel2(sph, p));
}
BENCHMARK(bm_christoffel_spherical);

void bm_covariant_derivative(benchmark::State& state) {
    tk::CoordinateSystem sph = tk::builtin_system("spherical");
    tk::Rng rng(5);
    tk::VectorPoly vp = tk::VectorPoly::random(rng);
    tk::TensorField a = tk::vector_field(3, tk::Variance::contra,
                                         [vp](const tk::Point& q) { return vp.value(q); });
    tk::Point p = {1.7, 0.9, 2.1};
    for (auto _ : state) benchmark::DoNotOptimize(tk::covariant_derivative(a, sph, p));
}
BENCHMARK(bm_covariant_derivative);

void bm_identity_curl_curl(benchmark::State& state) {
    const tk::IdentityCase& c = tk::identity_by_id("curl-curl");
    for (auto _ : state)
        benchmark::DoNotOptimize(tk::verify_identity(c, 1, 42, 1e-5));
}
BENCHMARK(bm_identity_curl_curl);

void bm_divergence_theorem(benchmark::State& state) {
    tk::Rng rng(6);
    tk::VectorPoly vp = tk::VectorPoly::random(rng);
    tk::VectorFn a = [&vp](const tk::Point& q) { return vp.value(q); };
    int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tk::divergence_theorem_check(a, {0, 0, 0}, {1, 1, 1}, n));
}
BENCHMARK(bm_divergence_theorem)->Arg(8)->Arg(16);

} // namespace

BENCHMARK_MAIN();
