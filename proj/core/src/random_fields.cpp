#include "tensorkit/random_fields.hpp"

#include <cmath>

namespace tk {

namespace {

// exponent triples (a,b,c), a+b+c <= 3, fixed order shared by value/gradient
struct Monomial {
    int a, b, c;
};

const std::array<Monomial, 20>& monomials() {
    static const std::array<Monomial, 20> table = [] {
        std::array<Monomial, 20> t{};
        int n = 0;
        for (int total = 0; total <= 3; ++total)
            for (int a = total; a >= 0; --a)
                for (int b = total - a; b >= 0; --b) t[n++] = {a, b, total - a - b};
        return t;
    }();
    return table;
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

} // namespace

ScalarPoly ScalarPoly::random(Rng& rng, FieldStyle style) {
    ScalarPoly f;
    for (double& c : f.coeff_) c = rng.uniform();
    if (style == FieldStyle::poly_trig) {
        f.amp_ = 0.2 * rng.uniform(0.5, 1.0);
        for (double& k : f.wave_) k = rng.uniform(-2.0, 2.0);
        f.phase_ = rng.uniform(0.0, 6.283185307179586);
    }
    return f;
}

double ScalarPoly::value(const Point& p) const {
    double s = 0.0;
    for (std::size_t m = 0; m < coeff_.size(); ++m) {
        const Monomial& mo = monomials()[m];
        s += coeff_[m] * ipow(p[0], mo.a) * ipow(p[1], mo.b) * ipow(p[2], mo.c);
    }
    if (amp_ != 0.0)
        s += amp_ * std::sin(wave_[0] * p[0] + wave_[1] * p[1] + wave_[2] * p[2] + phase_);
    return s;
}

std::array<double, 3> ScalarPoly::gradient(const Point& p) const {
    std::array<double, 3> g{};
    for (std::size_t m = 0; m < coeff_.size(); ++m) {
        const Monomial& mo = monomials()[m];
        double xa = ipow(p[0], mo.a), yb = ipow(p[1], mo.b), zc = ipow(p[2], mo.c);
        if (mo.a > 0) g[0] += coeff_[m] * mo.a * ipow(p[0], mo.a - 1) * yb * zc;
        if (mo.b > 0) g[1] += coeff_[m] * mo.b * xa * ipow(p[1], mo.b - 1) * zc;
        if (mo.c > 0) g[2] += coeff_[m] * mo.c * xa * yb * ipow(p[2], mo.c - 1);
    }
    if (amp_ != 0.0) {
        double cs =
            amp_ * std::cos(wave_[0] * p[0] + wave_[1] * p[1] + wave_[2] * p[2] + phase_);
        for (int i = 0; i < 3; ++i) g[i] += cs * wave_[i];
    }
    return g;
}

VectorPoly VectorPoly::random(Rng& rng, FieldStyle style) {
    return {ScalarPoly::random(rng, style), ScalarPoly::random(rng, style),
            ScalarPoly::random(rng, style)};
}

std::vector<double> VectorPoly::value(const Point& p) const {
    return {comp[0].value(p), comp[1].value(p), comp[2].value(p)};
}

Point sample_point(Rng& rng) { return {rng.uniform(), rng.uniform(), rng.uniform()}; }

} // namespace tk
