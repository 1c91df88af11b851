#pragma once

// Semi-indefinite-inner-products: products linear in the first argument,
// homogeneous in the second, real valued and nondegenerate, that satisfy
// Cauchy-Schwarz only on positive or negative subspaces.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "norms.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "vector.hpp"

namespace sipmink {

/// [u,v] = v*(u) with v* the canonical signed functional of the face of the
/// cross-polytope whose relative interior contains v/||v||_1.
struct CrossPolytope {};

/// [u,v] = eps(v) ||v|| l_v(u), with l_v the supporting functional of a smooth
/// norm at v/||v|| and eps a +-1 sign function on the unit sphere.
struct SignFunction {
    SipSpace norm;
    std::function<int(const Vector&)> sign;
};

/// [u,v] = 1/2 u^T D^2G(v) v for a normsquare function G.
struct NormsquareHessian {
    std::function<double(const Vector&)> G;
};

/// [u,v] = sum s_i u_i v_i.
struct DiagonalIip {
    std::vector<int> signature;
};

/// The two-dimensional product (x1 x2 + 2 y1 y2)(x2^2 + y2^2)/(x2^2 + 2 y2^2),
/// associated with the Euclidean norm but violating Cauchy-Schwarz.
struct Example4 {};

class SiipSpace {
public:
    using Variant = std::variant<CrossPolytope, SignFunction, NormsquareHessian, DiagonalIip, Example4>;

    static SiipSpace cross_polytope(std::size_t dim) { return SiipSpace(CrossPolytope{}, dim); }

    static SiipSpace sign_function(SipSpace norm, std::function<int(const Vector&)> sign) {
        if (!norm.norm.smooth()) throw UnsupportedError("sign-function product needs a smooth norm");
        if (!sign) throw DomainError("sign-function product: empty sign function");
        const std::size_t dim = norm.dim();
        return SiipSpace(SignFunction{std::move(norm), std::move(sign)}, dim);
    }

    static SiipSpace normsquare_hessian(std::size_t dim, std::function<double(const Vector&)> G) {
        if (!G) throw DomainError("normsquare product: empty function");
        return SiipSpace(NormsquareHessian{std::move(G)}, dim);
    }

    static SiipSpace diagonal(std::vector<int> signature) {
        for (int s : signature)
            if (s != 1 && s != -1) throw DomainError("diagonal product: signature entries must be +-1");
        const std::size_t dim = signature.size();
        return SiipSpace(DiagonalIip{std::move(signature)}, dim);
    }

    static SiipSpace example4() { return SiipSpace(Example4{}, 2); }

    std::size_t dim() const noexcept { return dim_; }
    const Variant& variant() const noexcept { return variant_; }
    bool symmetric_bilinear() const { return std::holds_alternative<DiagonalIip>(variant_); }

private:
    SiipSpace(Variant v, std::size_t dim) : variant_(std::move(v)), dim_(dim) {
        if (dim_ < 1) throw DimensionError("siip: dimension must be >= 1");
    }

    Variant variant_;
    std::size_t dim_;
};

namespace detail {

/// Representative of the line through v: first significant coordinate positive.
inline Vector line_representative(const Vector& v) {
    const double m = norm_inf(v);
    for (double c : v) {
        if (std::abs(c) > 1e-12 * m) return c < 0 ? -v : v;
    }
    return v;
}

/// Supporting functional of a smooth norm at the unit vector `at`, as a
/// finite-difference gradient rescaled so that it takes the value 1 at `at`.
inline Vector supporting_functional(const SipSpace& space, const Vector& at) {
    const std::size_t n = at.size();
    Vector grad(n);
    const double h = first_step(1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vector e = unit(n, i);
        grad[i] = central_diff([&](double t) { return norm(space, axpy(at, t, e)); }, 0.0, h);
    }
    const double at_value = dot(grad, at);
    if (!(std::abs(at_value) > 0)) throw NumericalError("supporting functional vanished at its base point");
    return (1.0 / at_value) * grad;
}

/// Central-difference Hessian of G at y.
inline std::vector<Vector> hessian(const std::function<double(const Vector&)>& G, const Vector& y) {
    const std::size_t n = y.size();
    const double h = second_step(norm2(y));
    std::vector<Vector> H(n, Vector(n, 0.0));
    const double g0 = G(y);
    for (std::size_t i = 0; i < n; ++i) {
        const Vector ei = unit(n, i);
        H[i][i] = (G(axpy(y, h, ei)) - 2.0 * g0 + G(axpy(y, -h, ei))) / (h * h);
        for (std::size_t j = 0; j < i; ++j) {
            const Vector ej = unit(n, j);
            const Vector pp = axpy(axpy(y, h, ei), h, ej);
            const Vector pm = axpy(axpy(y, h, ei), -h, ej);
            const Vector mp = axpy(axpy(y, -h, ei), h, ej);
            const Vector mm = axpy(axpy(y, -h, ei), -h, ej);
            H[i][j] = H[j][i] = (G(pp) - G(pm) - G(mp) + G(mm)) / (4.0 * h * h);
        }
    }
    return H;
}

} // namespace detail

inline double siip(const SiipSpace& space, const Vector& u, const Vector& v, const Tolerances& tol = {}) {
    require_dim(u, space.dim(), "siip");
    require_dim(v, space.dim(), "siip");
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CrossPolytope>) {
                const double vmax = norm_inf(v);
                if (vmax == 0.0) return 0.0;
                double acc = 0.0;
                std::size_t support = 0;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (std::abs(v[i]) > tol.class_tol * vmax) {
                        ++support;
                        acc += std::copysign(1.0, v[i]) * u[i];
                    }
                }
                const double sign = (support - 1) % 2 == 0 ? 1.0 : -1.0;
                return sign * norm1(v) * acc;
            } else if constexpr (std::is_same_v<T, SignFunction>) {
                if (is_zero(v)) throw DomainError("siip: sign-function product needs v != 0");
                const double nv = norm(s.norm, v);
                const Vector vhat = (1.0 / nv) * v;
                const Vector ell = detail::supporting_functional(s.norm, vhat);
                const int eps = s.sign(detail::line_representative(vhat));
                return static_cast<double>(eps) * nv * dot(ell, u);
            } else if constexpr (std::is_same_v<T, NormsquareHessian>) {
                if (is_zero(v)) throw DomainError("siip: normsquare product needs v != 0");
                const auto H = detail::hessian(s.G, v);
                double acc = 0.0;
                for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * dot(H[i], v);
                return 0.5 * acc;
            } else if constexpr (std::is_same_v<T, DiagonalIip>) {
                double acc = 0.0;
                for (std::size_t i = 0; i < u.size(); ++i) acc += s.signature[i] * u[i] * v[i];
                return acc;
            } else {
                const double x1 = u[0], y1 = u[1], x2 = v[0], y2 = v[1];
                const double den = x2 * x2 + 2.0 * y2 * y2;
                if (den == 0.0) return 0.0;
                return (x1 * x2 + 2.0 * y1 * y2) * (x2 * x2 + y2 * y2) / den;
            }
        },
        space.variant());
}

/// Sign of the quadratic form q on the plane span{u, v}: +1 if positive on
/// every scanned direction, -1 if negative on all of them, 0 otherwise. With
/// `margin` > 0 the plane also counts as indefinite when min |q| falls below
/// margin * max |q| over the scan.
template <class Square>
int plane_sign(Square&& q, const Vector& u, const Vector& v, int directions = 360, double margin = 0.0) {
    // Scan directions uniformly in an orthonormal basis of the plane.
    const Vector a = (1.0 / norm2(u)) * u;
    Vector b = axpy(v, -dot(v, a), a);
    if (norm2(b) <= 1e-12 * norm2(v)) throw DegenerateError("plane_sign: u and v are parallel");
    b = (1.0 / norm2(b)) * b;
    bool pos = false, neg = false;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i < directions; ++i) {
        const double th = std::numbers::pi * i / directions;
        const Vector w = axpy(std::cos(th) * a, std::sin(th), b);
        const double val = q(w) / dot(w, w);
        if (val > 0) pos = true;
        else if (val < 0) neg = true;
        else return 0;
        if (pos && neg) return 0;
        lo = std::min(lo, std::abs(val));
        hi = std::max(hi, std::abs(val));
    }
    if (lo <= margin * hi) return 0;
    return pos ? 1 : -1;
}

/// Residuals of properties 1-6: additivity and homogeneity in the first
/// argument, homogeneity in the second, real squares, nondegeneracy, and
/// Cauchy-Schwarz on sampled planes that turn out to be definite (with a
/// 1% margin, so that thin indefinite slivers between scan directions do not
/// count).
inline AxiomReport siip_axiom_report(const SiipSpace& space, Seed seed, int trials, const Tolerances& tol = {}) {
    if (trials < 1) throw DomainError("siip_axiom_report: trials must be >= 1");
    const bool differences = std::holds_alternative<SignFunction>(space.variant()) ||
                             std::holds_alternative<NormsquareHessian>(space.variant());
    const double threshold = differences ? tol.fd_tol : tol.eq_tol;
    AxiomReport report;
    for (const char* name : {"additivity_first", "homogeneity_first", "homogeneity_second", "real_square",
                             "nondegeneracy", "cauchy_schwarz_definite"})
        report.add(name, threshold);
    auto& c = report.checks;

    const std::size_t n = space.dim();
    auto prod = [&](const Vector& a, const Vector& b) { return siip(space, a, b, tol); };
    auto square = [&](const Vector& a) { return prod(a, a); };

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Vector x = rng.vector(n, 2.0);
        const Vector y = rng.vector(n, 2.0);
        const Vector z = rng.vector(n, 2.0);
        const double lambda = rng.signed_magnitude(0.1, 3.0);
        const double scale = std::max(1.0, (norm2(x) + norm2(z)) * norm2(y));
        const double xy = prod(x, y);

        c[0].record(std::abs(prod(x + z, y) - xy - prod(z, y)) / scale, {x, z, y});
        c[1].record(std::abs(prod(lambda * x, y) - lambda * xy) / scale, {x, y, {lambda}});
        c[2].record(std::abs(prod(x, lambda * y) - lambda * xy) / scale, {x, y, {lambda}});
        c[3].record(std::isfinite(square(x)) ? 0.0 : 1.0, {x});

        double functional = 0.0;
        for (std::size_t i = 0; i < n; ++i) functional = std::max(functional, std::abs(prod(unit(n, i), y)));
        c[4].record(functional <= tol.eq_tol * std::max(1.0, norm2(y)) ? 1.0 : 0.0, {y});

        const double cxy = dot(x, y);
        const bool independent = cxy * cxy < (1.0 - 1e-12) * dot(x, x) * dot(y, y);
        if (n >= 2 && independent && plane_sign(square, x, y, 360, 1e-2) != 0) {
            const double xx = square(x), yy = square(y);
            c[5].record(std::max(0.0, xy * xy - xx * yy) / (scale * scale), {x, y});
        }
    }
    return report;
}

struct CauchySchwarzWitness {
    Vector u;
    Vector v;
    double margin = 0.0; // [u,v]^2 - [u,u][v,v]
};

/// Searches span(basis) for a pair violating Cauchy-Schwarz. Basis pairs and
/// the pairs (b_i + c b_j, b_i + d b_j), c, d in {-2..2}, are tried first,
/// then seeded random combinations. Returns the largest margin found.
/// Throws ConstantSignError if the squares change sign on the subspace.
template <class Product>
    requires std::invocable<Product&, const Vector&, const Vector&>
std::optional<CauchySchwarzWitness> cauchy_schwarz_witness(Product&& product, const std::vector<Vector>& basis,
                                                           Seed seed, int trials, const Tolerances& tol = {}) {
    if (basis.empty()) throw DomainError("cauchy_schwarz_witness: empty basis");
    const std::size_t n = basis.front().size();
    for (const auto& b : basis) require_dim(b, n, "cauchy_schwarz_witness");

    Rng rng(seed);
    auto combo = [&] {
        Vector v = zeros(n);
        for (const auto& b : basis) v = axpy(v, rng.uniform(-1.0, 1.0), b);
        return v;
    };

    bool pos = false, neg = false;
    for (int i = 0; i < std::max(trials, 64); ++i) {
        const Vector v = combo();
        const double q = product(v, v);
        const double scale = std::max(1.0, norm2(v) * norm2(v));
        if (q > tol.eq_tol * scale) pos = true;
        if (q < -tol.eq_tol * scale) neg = true;
    }
    if (pos && neg) throw ConstantSignError("cauchy_schwarz_witness: subspace is not definite");

    std::optional<CauchySchwarzWitness> best;
    auto consider = [&](const Vector& u, const Vector& v) {
        if (is_zero(u) || is_zero(v)) return;
        const double uv = product(u, v);
        const double margin = uv * uv - product(u, u) * product(v, v);
        if (margin > tol.eq_tol && (!best || margin > best->margin)) best = CauchySchwarzWitness{u, v, margin};
    };

    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            consider(basis[i], basis[j]);
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d)
                    if (c != d) consider(axpy(basis[i], c, basis[j]), axpy(basis[i], d, basis[j]));
        }
    }
    for (int t = 0; t < trials; ++t) consider(combo(), combo());
    return best;
}

inline std::optional<CauchySchwarzWitness> cauchy_schwarz_witness(const SiipSpace& space,
                                                                  const std::vector<Vector>& basis, Seed seed,
                                                                  int trials, const Tolerances& tol = {}) {
    return cauchy_schwarz_witness([&](const Vector& a, const Vector& b) { return siip(space, a, b, tol); }, basis,
                                  seed, trials, tol);
}

/// Checks the two normsquare axioms on samples: pn1 (quadratic homogeneity)
/// and pn2 (sqrt(+-G) convex along segments of sampled planes on which G has
/// constant sign). Planes of mixed sign are skipped for pn2.
inline AxiomReport normsquare_check(const std::function<double(const Vector&)>& G, std::size_t dim, Seed seed,
                                    int trials, const Tolerances& tol = {}) {
    if (trials < 1) throw DomainError("normsquare_check: trials must be >= 1");
    AxiomReport report;
    report.add("pn1_homogeneity", tol.eq_tol);
    report.add("pn2_convexity", tol.eq_tol);
    auto& c = report.checks;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Vector x = rng.vector(dim, 2.0);
        const double lambda = rng.signed_magnitude(0.1, 3.0);
        const double gx = G(x);
        c[0].record(std::abs(G(lambda * x) - lambda * lambda * gx) / std::max(1.0, lambda * lambda * std::abs(gx)),
                    {x, {lambda}});
        if (dim < 2) continue;
        const Vector y = rng.vector(dim, 2.0);
        int sign = 0;
        try {
            sign = plane_sign(G, x, y, 90);
        } catch (const DegenerateError&) {
        }
        if (sign == 0) continue;
        auto root = [&](const Vector& v) { return std::sqrt(std::max(0.0, sign * G(v))); };
        const Vector a = axpy(rng.uniform(-1.0, 1.0) * x, rng.uniform(-1.0, 1.0), y);
        const Vector b = axpy(rng.uniform(-1.0, 1.0) * x, rng.uniform(-1.0, 1.0), y);
        const double mu = rng.uniform(0.0, 1.0);
        const double excess = root(axpy(mu * a, 1.0 - mu, b)) - (mu * root(a) + (1.0 - mu) * root(b));
        c[1].record(std::max(0.0, excess), {a, b, {mu}});
    }
    return report;
}

/// For symmetric bilinear products: whether span(basis) is neutral. In the
/// real symmetric case this is equivalent to all pairwise products vanishing,
/// which is checked directly; sampled combinations are checked as well.
inline bool polarization_neutral_check(const SiipSpace& space, const std::vector<Vector>& basis, Seed seed,
                                       const Tolerances& tol = {}) {
    if (!space.symmetric_bilinear()) throw UnsupportedError("polarization_neutral_check: needs a symmetric product");
    for (const auto& a : basis)
        for (const auto& b : basis)
            if (std::abs(siip(space, a, b, tol)) > tol.eq_tol) return false;
    Rng rng(seed);
    for (int t = 0; t < 64; ++t) {
        Vector v = zeros(space.dim());
        for (const auto& b : basis) v = axpy(v, rng.uniform(-1.0, 1.0), b);
        if (std::abs(siip(space, v, v, tol)) > tol.eq_tol) return false;
    }
    return true;
}

} // namespace sipmink
