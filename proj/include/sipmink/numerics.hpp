#pragma once

// Shared numerical kernels: finite differences, composite Simpson quadrature,
// a deterministic Nelder-Mead simplex minimizer and seeded sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "vector.hpp"

namespace sipmink {

struct Tolerances {
    double eq_tol = 1e-9;    // equality residuals
    double fd_tol = 1e-5;    // finite-difference cross-checks
    double opt_tol = 1e-7;   // minimizer convergence (simplex diameter)
    double class_tol = 1e-9; // light-like classification

    void validate() const {
        if (!(eq_tol > 0 && fd_tol > 0 && opt_tol > 0 && class_tol > 0)) {
            throw DomainError("tolerances must be strictly positive");
        }
        if (!(fd_tol > eq_tol)) throw DomainError("fd_tol must exceed eq_tol");
    }
};

struct Seed {
    std::uint64_t value = 0;
};

/// Deterministic generator. Uses mt19937_64 (whose output sequence is fixed by
/// the standard) and converts to doubles by hand, so streams are identical on
/// every conforming platform.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed.value) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

    Vector vector(std::size_t n, double radius) {
        Vector v(n);
        for (;;) {
            for (double& c : v) c = uniform(-radius, radius);
            if (!is_zero(v)) return v;
        }
    }

    /// Nonzero real with magnitude in [lo, hi] and random sign.
    double signed_magnitude(double lo, double hi) {
        const double m = uniform(lo, hi);
        return unit() < 0.5 ? -m : m;
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {
inline double checked(double v, const char* where) {
    if (!std::isfinite(v)) throw NumericalError(std::string(where) + ": non-finite function value");
    return v;
}
} // namespace detail

/// Step for a first central difference around `anchor`.
inline double first_step(double anchor_scale = 0.0) {
    return std::max(1.0, std::abs(anchor_scale)) * std::cbrt(std::numeric_limits<double>::epsilon());
}

/// Step for a second central difference (or a nested first difference).
inline double second_step(double anchor_scale = 0.0) {
    return std::max(1.0, std::abs(anchor_scale)) * std::pow(std::numeric_limits<double>::epsilon(), 0.25);
}

template <class F>
double central_diff(F&& f, double t, double h) {
    if (!(h > 0)) throw DomainError("central_diff: step must be positive");
    const double fp = detail::checked(f(t + h), "central_diff");
    const double fm = detail::checked(f(t - h), "central_diff");
    return (fp - fm) / (2.0 * h);
}

template <class F>
double second_diff(F&& f, double t, double h) {
    if (!(h > 0)) throw DomainError("second_diff: step must be positive");
    const double fp = detail::checked(f(t + h), "second_diff");
    const double f0 = detail::checked(f(t), "second_diff");
    const double fm = detail::checked(f(t - h), "second_diff");
    return (fp - 2.0 * f0 + fm) / (h * h);
}

/// Composite Simpson rule with m (even) subintervals.
template <class F>
double integrate(F&& f, double a, double b, int m) {
    if (m < 2 || m % 2 != 0) throw DomainError("integrate: m must be even and >= 2");
    const double h = (b - a) / m;
    double sum = detail::checked(f(a), "integrate") + detail::checked(f(b), "integrate");
    for (int i = 1; i < m; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        sum += w * detail::checked(f(a + i * h), "integrate");
    }
    return sum * h / 3.0;
}

struct MinimizeResult {
    Vector point;
    double value = 0.0;
    int iterations = 0;
};

/// Nelder-Mead with the standard coefficients (reflect 1, expand 2, contract
/// 1/2, shrink 1/2). Stops when every vertex lies within `opt_tol` of the
/// best one. Deterministic: ties keep the lower vertex index.
template <class F>
MinimizeResult minimize(F&& f, const Vector& x0, double opt_tol, int max_iter, double initial_step = 0.0) {
    const std::size_t d = x0.size();
    if (d == 0) throw DimensionError("minimize: empty starting point");
    if (!(initial_step > 0)) initial_step = 0.1 * std::max(1.0, norm2(x0));

    auto eval = [&](const Vector& x) {
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<Vector> simplex(d + 1, x0);
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += initial_step;
    for (std::size_t i = 0; i <= d; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(d + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<Vector> s(d + 1);
        std::vector<double> v(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            s[i] = std::move(simplex[order[i]]);
            v[i] = values[order[i]];
        }
        simplex = std::move(s);
        values = std::move(v);
    };
    auto diameter = [&] {
        double m = 0.0;
        for (std::size_t i = 1; i <= d; ++i) m = std::max(m, max_abs_diff(simplex[i], simplex[0]));
        return m;
    };

    sort_simplex();
    for (int iter = 0; iter < max_iter; ++iter) {
        if (diameter() < opt_tol) return {simplex[0], values[0], iter};

        Vector centroid = zeros(d);
        for (std::size_t i = 0; i < d; ++i) centroid = centroid + simplex[i];
        centroid = (1.0 / static_cast<double>(d)) * centroid;

        const Vector& worst = simplex[d];
        const Vector reflected = axpy(centroid, 1.0, centroid - worst);
        const double fr = eval(reflected);

        if (fr < values[0]) {
            const Vector expanded = axpy(centroid, 2.0, centroid - worst);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex[d] = expanded;
                values[d] = fe;
            } else {
                simplex[d] = reflected;
                values[d] = fr;
            }
        } else if (fr < values[d - 1]) {
            simplex[d] = reflected;
            values[d] = fr;
        } else {
            const bool outside = fr < values[d];
            const Vector contracted =
                outside ? axpy(centroid, 0.5, reflected - centroid) : axpy(centroid, 0.5, worst - centroid);
            const double fc = eval(contracted);
            if (fc < (outside ? fr : values[d])) {
                simplex[d] = contracted;
                values[d] = fc;
            } else {
                for (std::size_t i = 1; i <= d; ++i) {
                    simplex[i] = axpy(simplex[0], 0.5, simplex[i] - simplex[0]);
                    values[i] = eval(simplex[i]);
                }
            }
        }
        sort_simplex();
    }
    if (diameter() < opt_tol) return {simplex[0], values[0], max_iter};
    throw ConvergenceError("minimize: iteration limit reached", simplex[0], values[0]);
}

/// `count` nonzero vectors with coordinates uniform in [-radius, radius].
inline std::vector<Vector> sample_vectors(Seed seed, std::size_t n, std::size_t count, double radius) {
    if (count < 1) throw DomainError("sample_vectors: count must be >= 1");
    if (n < 1) throw DimensionError("sample_vectors: dimension must be >= 1");
    Rng rng(seed);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(rng.vector(n, radius));
    return out;
}

} // namespace sipmink
