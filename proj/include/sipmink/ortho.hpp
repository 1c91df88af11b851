#pragma once

// Orthogonality: relations in normed planes, orthogonal companions of single
// vectors, regular (Gram-Schmidt) orthogonalization for indefinite inner
// products, Auerbach bases and the Pythagorean subspace scan.
//
// Argument order: "y is orthogonal to x" is tested as [y, x] = 0, and every
// relation below reads is_orthogonal(x, y) as "y orthogonal to x".

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "minkowski.hpp"
#include "norms.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "vector.hpp"

namespace sipmink {

enum class OrthoRelation { Roberts, Birkhoff, Isosceles, Pythagorean, Singer, SipOrtho };

inline const char* to_string(OrthoRelation r) {
    switch (r) {
    case OrthoRelation::Roberts: return "roberts";
    case OrthoRelation::Birkhoff: return "birkhoff";
    case OrthoRelation::Isosceles: return "isosceles";
    case OrthoRelation::Pythagorean: return "pythagorean";
    case OrthoRelation::Singer: return "singer";
    case OrthoRelation::SipOrtho: return "sip";
    }
    return "?";
}

inline OrthoRelation parse_relation(const std::string& name) {
    for (auto r : {OrthoRelation::Roberts, OrthoRelation::Birkhoff, OrthoRelation::Isosceles,
                   OrthoRelation::Pythagorean, OrthoRelation::Singer, OrthoRelation::SipOrtho})
        if (name == to_string(r)) return r;
    throw UsageError("unknown orthogonality relation '" + name + "'");
}

struct OrthoResult {
    bool related = false;
    double residual = 0.0;
    std::optional<double> lambda; // minimizing lambda for Birkhoff
};

struct BirkhoffResult {
    double min_value;  // min over lambda of ||x + lambda y|| for unit x, y
    double lambda;     // minimizer, in the unnormalized scale of x and y
};

/// min over lambda of ||x^ + lambda y^|| for the normalized pair, seeded by a
/// 33-point grid on [-8, 8] and refined by the simplex minimizer.
inline BirkhoffResult birkhoff_minimum(const SipSpace& space, const Vector& x, const Vector& y,
                                       double opt_tol = 1e-7) {
    const double nx = norm(space, x);
    const double ny = norm(space, y);
    const Vector xu = (1.0 / nx) * x;
    const Vector yu = (1.0 / ny) * y;
    auto f = [&](double l) { return norm(space, axpy(xu, l, yu)); };
    double best_l = -8.0, best_v = f(-8.0);
    for (int i = 1; i <= 32; ++i) {
        const double l = -8.0 + 0.5 * i;
        const double v = f(l);
        if (v < best_v) best_v = v, best_l = l;
    }
    const auto res = minimize([&](const Vector& p) { return f(p[0]); }, Vector{best_l}, opt_tol, 5000, 0.25);
    const double l = res.value < best_v ? res.point[0] : best_l;
    return {std::min(res.value, best_v), l * nx / ny};
}

inline OrthoResult ortho_test(const SipSpace& space, OrthoRelation rel, const Vector& x, const Vector& y, double tol,
                              double opt_tol = 1e-7) {
    require_dim(x, space.dim(), "is_orthogonal");
    require_dim(y, space.dim(), "is_orthogonal");
    auto nrm = [&](const Vector& v) { return norm(space, v); };
    OrthoResult out;
    switch (rel) {
    case OrthoRelation::Roberts: {
        double worst = 0.0;
        for (int k = -5; k <= 3; ++k) {
            for (double s : {1.0, -1.0}) {
                const double l = s * std::ldexp(1.0, k);
                worst = std::max(worst, std::abs(nrm(axpy(x, l, y)) - nrm(axpy(x, -l, y))));
            }
        }
        out.residual = worst;
        break;
    }
    case OrthoRelation::Birkhoff: {
        if (is_zero(x) || is_zero(y)) break;
        const auto b = birkhoff_minimum(space, x, y, opt_tol);
        out.residual = std::max(0.0, 1.0 - b.min_value);
        out.lambda = b.lambda;
        break;
    }
    case OrthoRelation::Isosceles:
        out.residual = std::abs(nrm(x + y) - nrm(x - y));
        break;
    case OrthoRelation::Pythagorean: {
        const double a = nrm(x), b = nrm(y), c = nrm(x - y);
        out.residual = std::abs(a * a + b * b - c * c);
        break;
    }
    case OrthoRelation::Singer: {
        if (is_zero(x) || is_zero(y)) break;
        const Vector xu = (1.0 / nrm(x)) * x;
        const Vector yu = (1.0 / nrm(y)) * y;
        out.residual = std::abs(nrm(xu + yu) - nrm(xu - yu));
        break;
    }
    case OrthoRelation::SipOrtho:
        out.residual = std::abs(sip(space, y, x));
        break;
    }
    out.related = out.residual <= tol;
    return out;
}

inline bool is_orthogonal(const SipSpace& space, OrthoRelation rel, const Vector& x, const Vector& y, double tol,
                          double opt_tol = 1e-7) {
    return ortho_test(space, rel, x, y, tol, opt_tol).related;
}

/// Basis of {x : product(x, u) = 0}. The functional x -> product(x, u) is read
/// off the standard basis; its kernel is spanned by e_j - (r_j / r_m) e_m,
/// j != m, where m is the first index of the largest |r_i|.
template <class Product>
std::vector<Vector> orthogonal_companion_basis(Product&& product, const Vector& u, double eq_tol = 1e-9) {
    const std::size_t n = u.size();
    if (is_zero(u)) throw DomainError("orthogonal_companion_basis: u must be nonzero");
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = product(unit(n, i), u);
    std::size_t m = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(r[i]) > std::abs(r[m])) m = i;
    if (std::abs(r[m]) <= eq_tol) throw DegenerateError("orthogonal_companion_basis: functional vanishes");
    std::vector<Vector> basis;
    basis.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == m) continue;
        Vector w = unit(n, j);
        w[m] = -r[j] / r[m];
        basis.push_back(std::move(w));
    }
    return basis;
}

struct Orthogonalization {
    std::vector<Vector> vectors;
    /// coefficients[k][i], i < k: v_k = u_k + sum_i coefficients[k][i] u_i.
    std::vector<Vector> coefficients;
};

/// Gram-Schmidt with a symmetric (possibly indefinite) product. Throws
/// NeutralPivotError when some u_k is numerically neutral.
template <class Product>
Orthogonalization regular_orthogonalization(Product&& product, const std::vector<Vector>& vectors,
                                            double eq_tol = 1e-9) {
    Orthogonalization out;
    std::vector<double> squares;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        Vector u = vectors[k];
        Vector coeff(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            coeff[i] = product(vectors[k], out.vectors[i]) / squares[i];
            u = axpy(u, -coeff[i], out.vectors[i]);
        }
        const double sq = product(u, u);
        if (std::abs(sq) <= eq_tol * std::max(1.0, dot(u, u))) throw NeutralPivotError(k + 1);
        squares.push_back(sq);
        out.vectors.push_back(std::move(u));
        out.coefficients.push_back(std::move(coeff));
    }
    return out;
}

/// max |v_k - (u_k + sum_i c_ki u_i)|: how well the triangular change of basis
/// reproduces the input vectors.
inline double span_residual(const Orthogonalization& o, const std::vector<Vector>& vectors) {
    double worst = 0.0;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        Vector v = o.vectors[k];
        for (std::size_t i = 0; i < k; ++i) v = axpy(v, o.coefficients[k][i], o.vectors[i]);
        worst = std::max(worst, max_abs_diff(v, vectors[k]));
    }
    return worst;
}

template <class Product>
std::vector<Vector> gram_matrix(Product&& product, const std::vector<Vector>& vectors) {
    const std::size_t m = vectors.size();
    std::vector<Vector> g(m, Vector(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g[i][j] = product(vectors[i], vectors[j]);
    return g;
}

namespace detail {
inline double laplace_det(const std::vector<Vector>& a) {
    const std::size_t m = a.size();
    if (m == 0) return 1.0;
    if (m == 1) return a[0][0];
    double det = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        if (a[0][c] == 0.0) continue;
        std::vector<Vector> minor;
        for (std::size_t r = 1; r < m; ++r) {
            Vector row;
            for (std::size_t j = 0; j < m; ++j)
                if (j != c) row.push_back(a[r][j]);
            minor.push_back(std::move(row));
        }
        det += (c % 2 == 0 ? 1.0 : -1.0) * a[0][c] * laplace_det(minor);
    }
    return det;
}
} // namespace detail

/// Determinant of the Gram matrix by cofactor expansion (at most 6 vectors).
template <class Product>
double gram_determinant(Product&& product, const std::vector<Vector>& vectors) {
    if (vectors.size() > 6) throw DomainError("gram_determinant: at most 6 vectors");
    return detail::laplace_det(gram_matrix(product, vectors));
}

namespace detail {
inline Vector unit_direction(const SipSpace& space, double theta) {
    const Vector d{std::cos(theta), std::sin(theta)};
    return (1.0 / norm(space, d)) * d;
}

inline double det2(const Vector& a, const Vector& b) { return a[0] * b[1] - a[1] * b[0]; }

inline bool mutually_birkhoff(const SipSpace& space, const Vector& a, const Vector& b, double tol, double opt_tol) {
    return is_orthogonal(space, OrthoRelation::Birkhoff, a, b, tol, opt_tol) &&
           is_orthogonal(space, OrthoRelation::Birkhoff, b, a, tol, opt_tol);
}
} // namespace detail

/// Pair of unit vectors of a 2-dimensional normed space maximizing |det|,
/// i.e. spanning an inscribed cross-polytope of maximal area. Grid search
/// over 720 angles per vector, then simplex refinement.
inline std::pair<Vector, Vector> auerbach_basis_2d(const SipSpace& space, double opt_tol = 1e-7) {
    if (space.dim() != 2) throw DimensionError("auerbach_basis_2d: needs dimension 2");
    constexpr int grid = 720;
    std::vector<Vector> dirs;
    dirs.reserve(grid);
    for (int i = 0; i < grid; ++i) dirs.push_back(detail::unit_direction(space, 2.0 * std::numbers::pi * i / grid));

    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double d = std::abs(detail::det2(dirs[i], dirs[j]));
            if (d > best) best = d, bi = i, bj = j;
        }
    }
    auto objective = [&](const Vector& p) {
        return -std::abs(detail::det2(detail::unit_direction(space, p[0]), detail::unit_direction(space, p[1])));
    };
    const Vector start{2.0 * std::numbers::pi * bi / grid, 2.0 * std::numbers::pi * bj / grid};
    const auto res = minimize(objective, start, opt_tol, 20000, 2.0 * std::numbers::pi / grid);
    const Vector angles = res.value < -best ? res.point : start;

    Vector u = detail::unit_direction(space, angles[0]);
    Vector v = detail::unit_direction(space, angles[1]);
    if (!detail::mutually_birkhoff(space, u, v, 10.0 * opt_tol, opt_tol)) {
        throw ConvergenceError("auerbach_basis_2d: maximal pair failed the mutual Birkhoff check", angles, res.value);
    }
    return {u, v};
}

namespace detail {

/// For unit e1 = u(theta): the unit e2 spanning the kernel of x -> [x, e1],
/// and the signed residual [e1, e2].
inline std::pair<Vector, double> sip_partner(const SipSpace& space, double theta) {
    const Vector e1 = unit_direction(space, theta);
    const Vector r{sip(space, Vector{1.0, 0.0}, e1), sip(space, Vector{0.0, 1.0}, e1)};
    Vector e2{-r[1], r[0]};
    e2 = (1.0 / norm(space, e2)) * e2;
    return {e2, sip(space, e1, e2)};
}

/// 2D basis whose vectors are mutually s.i.p.-orthogonal in both orders.
/// Scans angles for a sign change of [e1, e2(theta)] and bisects it.
inline std::pair<Vector, Vector> sip_auerbach_2d(const SipSpace& space) {
    constexpr int grid = 720;
    const double step = 2.0 * std::numbers::pi / grid;
    double prev_theta = 0.0;
    double prev = sip_partner(space, 0.0).second;
    for (int i = 0; i <= grid; ++i) {
        const double theta = step * i;
        const double r = sip_partner(space, theta).second;
        if (r == 0.0) return {unit_direction(space, theta), sip_partner(space, theta).first};
        if (i > 0 && (r > 0) != (prev > 0)) {
            double lo = prev_theta, hi = theta, flo = prev;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = sip_partner(space, mid).second;
                if (fm == 0.0) lo = hi = mid;
                else if ((fm > 0) == (flo > 0)) lo = mid, flo = fm;
                else hi = mid;
            }
            const double t = 0.5 * (lo + hi);
            return {unit_direction(space, t), sip_partner(space, t).first};
        }
        prev_theta = theta;
        prev = r;
    }
    throw ConvergenceError("sip_auerbach_2d: no mutually orthogonal pair found", {}, prev);
}

/// Auerbach basis of one block (dim 1 or 2) in block coordinates.
inline std::vector<Vector> block_auerbach(const SipSpace& space, const Tolerances& tol) {
    if (space.dim() == 1) return {Vector{1.0 / norm(space, Vector{1.0})}};
    if (space.dim() != 2) throw UnsupportedError("minkowski_auerbach: blocks larger than 2 are not supported");
    auto [a, b] = auerbach_basis_2d(space, tol.opt_tol);
    if (std::abs(sip(space, a, b)) <= tol.eq_tol && std::abs(sip(space, b, a)) <= tol.eq_tol) return {a, b};
    // Maximal-area pairs of non-smooth norms can sit at vertices where the
    // chosen s.i.p. functional is not the Birkhoff one.
    auto [c, d] = sip_auerbach_2d(space);
    return {c, d};
}

} // namespace detail

struct MinkowskiAuerbach {
    std::vector<Vector> basis;
    Check verification; // |[w, e_i]^+| for sampled w in the span of the others
};

/// Basis {e_1..e_k} in S and {e_k+1..e_n} in T with every e_i orthogonal to
/// the span of the remaining ones under the Minkowski product.
inline MinkowskiAuerbach minkowski_auerbach(const GeneralizedMinkowskiSpace& space, Seed seed = Seed{1},
                                            int samples = 100, const Tolerances& tol = {}) {
    const auto s_basis = detail::block_auerbach(space.s_space(), tol);
    const auto t_basis = detail::block_auerbach(space.t_space(), tol);
    MinkowskiAuerbach out;
    for (const auto& e : s_basis) out.basis.push_back(concat(e, zeros(space.t_space().dim())));
    for (const auto& e : t_basis) out.basis.push_back(concat(zeros(space.k()), e));

    out.verification = Check{"auerbach_orthogonality", 0.0, tol.eq_tol, 0, 0, {}};
    Rng rng(seed);
    const std::size_t n = out.basis.size();
    for (int t = 0; t < samples; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            Vector w = zeros(space.n());
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) w = axpy(w, rng.uniform(-2.0, 2.0), out.basis[j]);
            out.verification.record(std::abs(product_plus(space, w, out.basis[i])), {w, out.basis[i]});
        }
    }
    return out;
}

/// Scans pairs of directions (theta, psi) in [0, pi) for mutually
/// Pythagorean-orthogonal lines: ||u||^2 + ||mu v||^2 = ||u - mu v||^2 over a
/// ratio grid, within 1e-6. Returns the first such pair of unit vectors.
inline std::optional<std::pair<Vector, Vector>> pythagorean_subspace_scan(const SipSpace& space, int resolution) {
    if (space.dim() != 2) throw DimensionError("pythagorean_subspace_scan: needs dimension 2");
    if (resolution < 90) throw DomainError("pythagorean_subspace_scan: resolution must be >= 90");
    static constexpr double ratios[] = {0.25, 0.5, 1.0, 2.0, 4.0, -0.25, -0.5, -1.0, -2.0, -4.0};
    std::vector<Vector> dirs;
    for (int i = 0; i < resolution; ++i)
        dirs.push_back(detail::unit_direction(space, std::numbers::pi * i / resolution));
    for (int i = 0; i < resolution; ++i) {
        for (int j = i + 1; j < resolution; ++j) {
            bool ok = true;
            for (double mu : ratios) {
                const double c = norm(space, axpy(dirs[i], -mu, dirs[j]));
                if (std::abs(1.0 + mu * mu - c * c) > 1e-6) {
                    ok = false;
                    break;
                }
            }
            if (ok) return std::make_pair(dirs[i], dirs[j]);
        }
    }
    return std::nullopt;
}

} // namespace sipmink
