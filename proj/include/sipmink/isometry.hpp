#pragma once

// Linear maps on generalized Minkowski spaces: isometry reports, Lorentz
// boosts for the pseudo-Euclidean space-time model, distance preservation on
// H+ and the strict-convexity witness search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "hyperboloid.hpp"
#include "minkowski.hpp"
#include "norms.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "vector.hpp"

namespace sipmink {

/// Square real matrix, row-major.
class LinearMap {
public:
    explicit LinearMap(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    LinearMap(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != n_ * n_) throw DimensionError("LinearMap: expected n*n entries");
        for (double v : a_)
            if (!std::isfinite(v)) throw DomainError("LinearMap: non-finite entry");
    }

    static LinearMap identity(std::size_t n) {
        LinearMap m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t n() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Vector apply(const Vector& v) const {
        require_dim(v, n_, "LinearMap::apply");
        Vector r(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    LinearMap operator*(const LinearMap& o) const {
        if (o.n_ != n_) throw DimensionError("LinearMap: size mismatch");
        LinearMap r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k)
                for (std::size_t j = 0; j < n_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
        return r;
    }

    LinearMap transpose() const {
        LinearMap r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// LU with partial pivoting.
    double determinant() const {
        std::vector<double> a = a_;
        double det = 1.0;
        for (std::size_t c = 0; c < n_; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < n_; ++r)
                if (std::abs(a[r * n_ + c]) > std::abs(a[p * n_ + c])) p = r;
            if (a[p * n_ + c] == 0.0) return 0.0;
            if (p != c) {
                for (std::size_t j = 0; j < n_; ++j) std::swap(a[p * n_ + j], a[c * n_ + j]);
                det = -det;
            }
            det *= a[c * n_ + c];
            for (std::size_t r = c + 1; r < n_; ++r) {
                const double f = a[r * n_ + c] / a[c * n_ + c];
                for (std::size_t j = c; j < n_; ++j) a[r * n_ + j] -= f * a[c * n_ + j];
            }
        }
        return det;
    }

    double max_abs_diff(const LinearMap& o) const {
        double m = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
        return m;
    }

    const std::vector<double>& entries() const noexcept { return a_; }

private:
    std::size_t n_;
    std::vector<double> a_;
};

struct IsometryReport {
    AxiomReport checks;             // product_preservation, adjoint_identity
    double en_residual = 0.0;       // |[F e_n, F e_n]^+ + 1|
    bool en_timelike = false;
    bool en_upper = false;          // last coordinate of F e_n positive
    bool within_hypotheses = false; // S strictly convex and smooth

    bool preserves_product() const { return checks.all_pass(); }
    bool maps_upper_sheet(double tol) const { return en_timelike && en_upper && en_residual <= tol; }
};

/// Sampled checks that F preserves [.,.]^+, that [Fv, JFw]^- = [v, Jw]^-
/// (the weak form of F^-1 = J F^T J) and whether F e_n lies on H+.
/// `threshold` <= 0 selects eq_tol (fd_tol if S uses finite differences).
inline IsometryReport isometry_report(const GeneralizedMinkowskiSpace& space, const LinearMap& F, Seed seed,
                                      int trials, const Tolerances& tol = {}, double threshold = 0.0) {
    if (F.n() != space.n()) throw DimensionError("isometry_report: map size does not match the space");
    if (std::abs(F.determinant()) <= tol.eq_tol) throw SingularMapError("isometry_report: map is singular");
    if (!(threshold > 0)) threshold = space.s_space().uses_differences() ? tol.fd_tol : tol.eq_tol;

    IsometryReport rep;
    rep.checks.add("product_preservation", threshold);
    rep.checks.add("adjoint_identity", threshold);
    auto& c = rep.checks.checks;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Vector v = rng.vector(space.n(), 1.0);
        const Vector w = rng.vector(space.n(), 1.0);
        const Vector Fv = F.apply(v), Fw = F.apply(w);
        const double scale = std::max(1.0, norm2(v) * norm2(w));
        c[0].record(std::abs(product_plus(space, Fv, Fw) - product_plus(space, v, w)) / scale, {v, w});
        c[1].record(std::abs(product_minus(space, Fv, j_operator(space, Fw)) -
                             product_minus(space, v, j_operator(space, w))) /
                        scale,
                    {v, w});
    }
    if (space.space_time_model()) {
        const Vector Fe = F.apply(unit(space.n(), space.n() - 1));
        rep.en_residual = std::abs(product_plus(space, Fe, Fe) + 1.0);
        rep.en_timelike = classify(space, Fe, tol.class_tol) == VectorClass::TimeLike;
        rep.en_upper = Fe.back() > 0;
    }
    rep.within_hypotheses = space.s_space().norm.strictly_convex() && space.s_space().norm.smooth();
    return rep;
}

/// Boost mixing S-axis `axis` (0-based) with the time axis.
inline LinearMap lorentz_boost(const GeneralizedMinkowskiSpace& space, std::size_t axis, double rapidity) {
    if (!space.space_time_model() || !space.pseudo_euclidean())
        throw UnsupportedError("lorentz_boost: needs a pseudo-Euclidean space-time model");
    if (axis >= space.k()) throw DomainError("lorentz_boost: axis must index an S coordinate");
    const std::size_t n = space.n();
    LinearMap B = LinearMap::identity(n);
    B(axis, axis) = std::cosh(rapidity);
    B(axis, n - 1) = std::sinh(rapidity);
    B(n - 1, axis) = std::sinh(rapidity);
    B(n - 1, n - 1) = std::cosh(rapidity);
    return B;
}

/// Rotation by `angle` in the S coordinate plane (i, j).
inline LinearMap s_rotation(const GeneralizedMinkowskiSpace& space, std::size_t i, std::size_t j, double angle) {
    if (i >= space.k() || j >= space.k() || i == j) throw DomainError("s_rotation: needs two distinct S axes");
    LinearMap R = LinearMap::identity(space.n());
    R(i, i) = std::cos(angle);
    R(i, j) = -std::sin(angle);
    R(j, i) = std::sin(angle);
    R(j, j) = std::cos(angle);
    return R;
}

/// Samples point pairs on H+ at hyperbolic separation arccosh(-[a,b]^+) <= 3
/// and reports max |d(Fa, Fb) - d(a, b)| with geodesic distances on m nodes.
inline Check distance_preservation_check(const GeneralizedMinkowskiSpace& space, const LinearMap& F, Seed seed,
                                         int pairs, int m, const Tolerances& tol = {}, double threshold = 5e-3) {
    const auto rep = isometry_report(space, F, seed, 32, tol);
    if (!rep.preserves_product() || !rep.maps_upper_sheet(std::max(tol.eq_tol, rep.checks.worst() * 10.0)))
        throw DomainError("distance_preservation_check: map is not an isometry of H+");

    Check check{"distance_preservation", 0.0, threshold, 0, 0, {}};
    Rng rng(seed);
    int done = 0;
    while (done < pairs) {
        const HPoint a = lift(space, rng.vector(space.k(), 1.2));
        const HPoint b = lift(space, rng.vector(space.k(), 1.2));
        if (std::acosh(std::max(1.0, -product_plus(space, a.vector(), b.vector()))) > 3.0) continue;
        const HPoint Fa = to_hpoint(space, F.apply(a.vector()));
        const HPoint Fb = to_hpoint(space, F.apply(b.vector()));
        const double d = geodesic_distance(space, a, b, m, tol);
        const double dF = geodesic_distance(space, Fa, Fb, m, tol);
        check.record(std::abs(d - dF), {a.vector(), b.vector()});
        ++done;
    }
    return check;
}

/// Whether F preserves the s.i.p. and the norm of a normed space on samples.
inline AxiomReport sip_preservation_report(const SipSpace& space, const LinearMap& F, Seed seed, int trials,
                                           const Tolerances& tol = {}) {
    if (F.n() != space.dim()) throw DimensionError("sip_preservation_report: size mismatch");
    const double threshold = space.uses_differences() ? tol.fd_tol : tol.eq_tol;
    AxiomReport rep;
    rep.add("sip_preservation", threshold);
    rep.add("norm_preservation", threshold);
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Vector x = rng.vector(space.dim(), 1.0);
        const Vector y = rng.vector(space.dim(), 1.0);
        const Vector Fx = F.apply(x), Fy = F.apply(y);
        rep.checks[0].record(std::abs(sip(space, Fx, Fy) - sip(space, x, y)), {x, y});
        rep.checks[1].record(std::abs(norm(space, Fx) - norm(space, x)), {x});
    }
    return rep;
}

/// A non-parallel pair with [x,y] = ||x|| ||y|| (within 1e-9), which rules
/// out strict convexity. Tries the shared-dominant-coordinate pairs
/// x = e_j + 0.2 sum_{i!=j} e_i, y = e_j + 0.8 sum_{i!=j} e_i first, then
/// seeded random pairs.
inline std::optional<std::pair<Vector, Vector>> strict_convexity_witness(const SipSpace& space, Seed seed,
                                                                         int trials) {
    if (trials < 1) throw DomainError("strict_convexity_witness: trials must be >= 1");
    const std::size_t n = space.dim();
    auto equality = [&](const Vector& x, const Vector& y) {
        const double gap = std::abs(sip(space, x, y) - norm(space, x) * norm(space, y));
        const double c = dot(x, y);
        const bool parallel = c * c >= (1.0 - 1e-12) * dot(x, x) * dot(y, y);
        return gap <= 1e-9 && !parallel;
    };
    if (n >= 2) {
        for (std::size_t j = 0; j < n; ++j) {
            Vector x(n, 0.2), y(n, 0.8);
            x[j] = y[j] = 1.0;
            if (equality(x, y)) return std::make_pair(x, y);
        }
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Vector x = rng.vector(n, 1.0);
        const Vector y = rng.vector(n, 1.0);
        if (equality(x, y)) return std::make_pair(x, y);
    }
    return std::nullopt;
}

} // namespace sipmink
