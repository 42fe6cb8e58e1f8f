#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "tensorkit/coord_systems.hpp"

namespace tk {

// mt19937_64 with a fixed bits-to-double mapping, so that a seed pins the
// generated fields regardless of standard library internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo = -1.0, double hi = 1.0) {
        double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;  // [0,1)
        return lo + (hi - lo) * u;
    }

  private:
    std::mt19937_64 gen_;
};

enum class FieldStyle { poly, poly_trig };

// Trivariate polynomial of total degree <= 3 (20 monomials, coefficients
// U[-1,1]); poly_trig adds a small sinusoidal bump a sin(k.x + c) to keep
// the test fields from being too kind to finite differences.
class ScalarPoly {
  public:
    static ScalarPoly random(Rng& rng, FieldStyle style = FieldStyle::poly);

    double value(const Point& p) const;
    std::array<double, 3> gradient(const Point& p) const;  // analytic

  private:
    std::array<double, 20> coeff_{};
    double amp_ = 0.0;
    double phase_ = 0.0;
    std::array<double, 3> wave_{};
};

struct VectorPoly {
    std::array<ScalarPoly, 3> comp;

    static VectorPoly random(Rng& rng, FieldStyle style = FieldStyle::poly);
    std::vector<double> value(const Point& p) const;
};

// Uniform sample in [-1,1]^3.
Point sample_point(Rng& rng);

} // namespace tk
