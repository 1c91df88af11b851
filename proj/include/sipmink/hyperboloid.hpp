#pragma once

// The imaginary unit sphere H = {v : [v,v]^+ = -1} of a space-time model
// (dim T = 1) and its upper sheet H+, parameterized by the S-coordinates s:
// v = s + f(s) e_n with f(s) = sqrt(1 + [s,s]).
//
// Curves are stored as S-coordinates of nodes and lifted pointwise, so every
// evaluated point lies exactly on H+. Velocities come from central
// differences of the lifted curve; lengths use the Minkowski product, which
// is positive on tangent vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "minkowski.hpp"
#include "norms.hpp"
#include "numerics.hpp"
#include "ortho.hpp"
#include "vector.hpp"

namespace sipmink {

struct HPoint {
    Vector s;
    double tau = 1.0;

    /// Full coordinates (s, tau).
    Vector vector() const { return concat(s, Vector{tau}); }
};

inline void require_space_time(const GeneralizedMinkowskiSpace& space, const char* where) {
    if (!space.space_time_model()) throw UnsupportedError(std::string(where) + ": needs dim T = 1");
}

/// f(s) = sqrt(1 + [s,s]_S).
inline double height(const GeneralizedMinkowskiSpace& space, const Vector& s) {
    return std::sqrt(1.0 + sip(space.s_space(), s, s));
}

inline HPoint lift(const GeneralizedMinkowskiSpace& space, const Vector& s) {
    require_space_time(space, "lift");
    require_dim(s, space.k(), "lift");
    return {s, height(space, s)};
}

/// Reads a full vector as a point of H+. Throws DomainError if it is off the
/// upper sheet by more than `tol` (relative).
inline HPoint to_hpoint(const GeneralizedMinkowskiSpace& space, const Vector& v, double tol = 1e-8) {
    require_space_time(space, "to_hpoint");
    require_dim(v, space.n(), "to_hpoint");
    HPoint p = lift(space, Vector(v.begin(), v.end() - 1));
    if (!(v.back() > 0) || std::abs(v.back() - p.tau) > tol * p.tau) throw DomainError("to_hpoint: vector is not on H+");
    return p;
}

/// Closed-form directional derivative of f at s along the S-unit vector e:
/// [e,s] / sqrt(1 + [s,s]).
inline double f_directional(const GeneralizedMinkowskiSpace& space, const Vector& s, const Vector& e) {
    require_space_time(space, "f_directional");
    if (std::abs(norm(space.s_space(), e) - 1.0) > 1e-9) throw DomainError("f_directional: e must be a unit vector");
    return sip(space.s_space(), e, s) / height(space, s);
}

/// |closed form - central difference of f along e|.
inline double lemma3_residual(const GeneralizedMinkowskiSpace& space, const Vector& s, const Vector& e) {
    const double closed = f_directional(space, s, e);
    const double h = first_step(norm2(s));
    const double fd = central_diff([&](double t) { return height(space, axpy(s, t, e)); }, 0.0, h);
    return std::abs(closed - fd);
}

struct TangentFrame {
    HPoint base;
    std::vector<Vector> vectors;
};

/// u_j = e_j + ([e_j, s] / f(s)) e_n for each S basis direction. Each u_j is
/// Minkowski-orthogonal to the base point.
inline TangentFrame tangent_frame(const GeneralizedMinkowskiSpace& space, const HPoint& v,
                                  const Tolerances& tol = {}) {
    require_space_time(space, "tangent_frame");
    const std::size_t k = space.k();
    const Vector base = v.vector();
    TangentFrame frame{v, {}};
    for (std::size_t j = 0; j < k; ++j) {
        const Vector e = unit(k, j);
        Vector u = concat(e, Vector{sip(space.s_space(), e, v.s) / v.tau});
        const double r = std::abs(product_plus(space, u, base));
        if (r > 10.0 * tol.eq_tol * std::max(1.0, norm2(u) * norm2(base)))
            throw NumericalError("tangent_frame: frame vector not orthogonal to base point");
        frame.vectors.push_back(std::move(u));
    }
    return frame;
}

/// Minkowski-Finsler semi-metric on the tangent space at v. Evaluates
/// [u1,u2]^+ directly and through the S-coordinate form
/// ([s1,s2] f^2 - [s1,s_v][s2,s_v]) / f^2; the two must agree.
inline double ds2(const GeneralizedMinkowskiSpace& space, const HPoint& v, const Vector& u1, const Vector& u2,
                  const Tolerances& tol = {}) {
    require_space_time(space, "ds2");
    const Vector base = v.vector();
    for (const Vector* u : {&u1, &u2}) {
        if (std::abs(product_plus(space, *u, base)) > 10.0 * tol.eq_tol * std::max(1.0, norm2(*u) * norm2(base)))
            throw TangentError("ds2: vector is not tangent at the base point");
    }
    const double direct = product_plus(space, u1, u2);
    const auto& S = space.s_space();
    const Vector s1(u1.begin(), u1.end() - 1);
    const Vector s2(u2.begin(), u2.end() - 1);
    const double f2 = v.tau * v.tau;
    const double formula = (sip(S, s1, s2) * f2 - sip(S, s1, v.s) * sip(S, s2, v.s)) / f2;
    if (std::abs(direct - formula) > tol.fd_tol * std::max(1.0, norm2(u1) * norm2(u2)))
        throw NumericalError("ds2: direct and coordinate forms disagree");
    return direct;
}

/// Discretized curve on H+ over the uniform parameter grid t_i = i/m.
struct Path {
    std::vector<HPoint> nodes;

    std::size_t segments() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

inline Path make_path(const GeneralizedMinkowskiSpace& space, const std::vector<Vector>& s_nodes) {
    if (s_nodes.size() < 3) throw DomainError("path: needs at least 3 nodes (m >= 2)");
    Path p;
    for (const auto& s : s_nodes) p.nodes.push_back(lift(space, s));
    return p;
}

namespace detail {

/// Length of the lifted straight S-segment from a to b, by Simpson's rule in
/// the segment parameter with `quad_m` subintervals.
inline double segment_length(const GeneralizedMinkowskiSpace& space, const Vector& a, const Vector& b, int quad_m,
                             double class_tol) {
    const Vector d = b - a;
    if (is_zero(d)) return 0.0;
    const double h = first_step(1.0);
    const double tau_scale = std::max(1.0, norm2(d));
    return integrate(
        [&](double sigma) {
            const double dtau = (height(space, axpy(a, sigma + h, d)) - height(space, axpy(a, sigma - h, d))) / (2 * h);
            const double q = sip(space.s_space(), d, d) - dtau * dtau;
            if (q < -class_tol * std::max(1.0, tau_scale * tau_scale))
                throw PathError("path_length: velocity left the space-like regime");
            return std::sqrt(std::max(q, 0.0));
        },
        0.0, 1.0, quad_m);
}

} // namespace detail

/// Sum over segments of the integral of sqrt([c', c']^+). S-coordinates are
/// interpolated linearly between nodes and lifted.
inline double path_length(const GeneralizedMinkowskiSpace& space, const Path& path, int quad_m = 8,
                          const Tolerances& tol = {}) {
    require_space_time(space, "path_length");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i)
        total += detail::segment_length(space, path.nodes[i].s, path.nodes[i + 1].s, quad_m, tol.class_tol);
    return total;
}

struct Geodesic {
    double distance = 0.0;
    Path path;
    int sweeps = 0;
};

namespace detail {

inline std::vector<Vector> resample(const std::vector<Vector>& nodes, std::size_t m) {
    const std::size_t prev = nodes.size() - 1;
    std::vector<Vector> out;
    out.reserve(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const double t = static_cast<double>(i) * static_cast<double>(prev) / static_cast<double>(m);
        const std::size_t j = std::min(static_cast<std::size_t>(t), prev - 1);
        const double w = t - static_cast<double>(j);
        out.push_back(axpy((1.0 - w) * nodes[j], w, nodes[j + 1]));
    }
    out.front() = nodes.front();
    out.back() = nodes.back();
    return out;
}

} // namespace detail

/// Minimizes the discrete curve energy sum_i L_i^2 over the interior nodes by
/// node-wise simplex descent (alternating sweep direction), on a sequence of
/// grids 2, 4, 8, ... refined up to m segments. Energy minimizers are
/// constant-speed, which removes the reparameterization freedom of the
/// length functional; the reported distance is the path length of the
/// minimizer. The start is the straight S-interpolation, so the result is a
/// local infimum.
inline Geodesic geodesic(const GeneralizedMinkowskiSpace& space, const HPoint& a, const HPoint& b, int m,
                         const Tolerances& tol = {}, int max_sweeps = 4000) {
    require_space_time(space, "geodesic_distance");
    require_dim(a.s, space.k(), "geodesic_distance");
    require_dim(b.s, space.k(), "geodesic_distance");
    if (m < 2) throw DomainError("geodesic_distance: m must be >= 2");

    std::vector<Vector> nodes{a.s, 0.5 * (a.s + b.s), b.s};
    if (a.s == b.s) {
        Geodesic g;
        g.path = make_path(space, detail::resample(nodes, static_cast<std::size_t>(m)));
        return g;
    }

    std::vector<std::size_t> levels;
    for (std::size_t l = 2; l < static_cast<std::size_t>(m); l *= 2) levels.push_back(l);
    levels.push_back(static_cast<std::size_t>(m));

    constexpr int inner_quad = 4;
    int total_sweeps = 0;
    for (std::size_t li = 0; li < levels.size(); ++li) {
        const std::size_t segs = levels[li];
        if (nodes.size() != segs + 1) nodes = detail::resample(nodes, segs);
        const bool last = li + 1 == levels.size();
        const double stop = last ? 1e-7 : 1e-5;

        std::vector<double> moved(segs + 1, 0.25 * norm2(b.s - a.s) / static_cast<double>(segs));
        int sweep = 0;
        for (;; ++sweep) {
            if (sweep >= max_sweeps) {
                Vector flat;
                for (const auto& s : nodes) flat.insert(flat.end(), s.begin(), s.end());
                throw ConvergenceError("geodesic_distance: sweep limit reached", flat,
                                       path_length(space, make_path(space, nodes), 8, tol));
            }
            double max_move = 0.0;
            for (std::size_t step = 1; step < segs; ++step) {
                const std::size_t i = sweep % 2 == 0 ? step : segs - step;
                auto local_energy = [&](const Vector& x) {
                    try {
                        const double l1 = detail::segment_length(space, nodes[i - 1], x, inner_quad, tol.class_tol);
                        const double l2 = detail::segment_length(space, x, nodes[i + 1], inner_quad, tol.class_tol);
                        return l1 * l1 + l2 * l2;
                    } catch (const PathError&) {
                        return std::numeric_limits<double>::infinity();
                    }
                };
                const double start_step = std::max(4.0 * moved[i], 100.0 * tol.opt_tol);
                const MinimizeResult res = minimize(local_energy, nodes[i], tol.opt_tol, 20000, start_step);
                if (res.value < local_energy(nodes[i])) {
                    moved[i] = max_abs_diff(res.point, nodes[i]);
                    nodes[i] = res.point;
                } else {
                    moved[i] = 0.0;
                }
                max_move = std::max(max_move, moved[i]);
            }
            if (max_move < stop) break;
        }
        total_sweeps += sweep + 1;
    }

    Geodesic g;
    g.path = make_path(space, nodes);
    g.distance = path_length(space, g.path, 8, tol);
    g.sweeps = total_sweeps;
    return g;
}

inline double geodesic_distance(const GeneralizedMinkowskiSpace& space, const HPoint& a, const HPoint& b, int m,
                                const Tolerances& tol = {}) {
    return geodesic(space, a, b, m, tol).distance;
}

/// | [a,b]^+ + cosh(d(a,b)) |.
inline double cosh_residual(const GeneralizedMinkowskiSpace& space, const HPoint& a, const HPoint& b, int m,
                            const Tolerances& tol = {}) {
    return std::abs(product_plus(space, a.vector(), b.vector()) + std::cosh(geodesic_distance(space, a, b, m, tol)));
}

} // namespace sipmink
