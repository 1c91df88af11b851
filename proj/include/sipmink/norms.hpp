#pragma once

// Norm families and their semi-inner-product representations.
//
// A semi-inner-product [x,y] is linear in x, homogeneous in y, positive and
// satisfies Cauchy-Schwarz; it represents the norm via ||x|| = sqrt([x,x]).
// For smooth norms it is unique and equals ||y|| times the directional
// derivative of the norm at y in direction x.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>

#include "error.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "vector.hpp"

namespace sipmink {

struct PNorm {
    double p;
};
struct MaxNorm {};
struct Euclidean {};
struct CustomGauge {
    std::function<double(const Vector&)> evaluator;
    bool smooth = true;
};

class NormSpec {
public:
    using Variant = std::variant<PNorm, MaxNorm, Euclidean, CustomGauge>;

    static NormSpec pnorm(std::size_t dim, double p) {
        if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("pnorm: p must satisfy 1 < p < inf");
        return NormSpec(PNorm{p}, dim);
    }
    static NormSpec max_norm(std::size_t dim) { return NormSpec(MaxNorm{}, dim); }
    static NormSpec euclidean(std::size_t dim) { return NormSpec(Euclidean{}, dim); }

    /// Registers a user gauge. Positive homogeneity and positivity are
    /// spot-checked on seeded samples; a failing gauge is rejected.
    static NormSpec custom(std::size_t dim, std::function<double(const Vector&)> gauge, bool smooth = true,
                           Seed seed = Seed{0x5eed}) {
        if (!gauge) throw DomainError("custom gauge: empty evaluator");
        Rng rng(seed);
        for (int i = 0; i < 32; ++i) {
            const Vector x = rng.vector(dim, 2.0);
            const double lambda = rng.signed_magnitude(0.1, 4.0);
            const double gx = gauge(x);
            if (!(gx > 0) || !std::isfinite(gx)) throw DomainError("custom gauge: not positive on a nonzero vector");
            const double glx = gauge(lambda * x);
            if (std::abs(glx - std::abs(lambda) * gx) > 1e-9 * std::max(1.0, std::abs(lambda) * gx)) {
                throw DomainError("custom gauge: not positively homogeneous");
            }
        }
        return NormSpec(CustomGauge{std::move(gauge), smooth}, dim);
    }

    std::size_t dim() const noexcept { return dim_; }
    const Variant& variant() const noexcept { return variant_; }

    bool is_euclidean() const { return std::holds_alternative<Euclidean>(variant_); }
    bool is_max() const { return std::holds_alternative<MaxNorm>(variant_); }
    bool is_custom() const { return std::holds_alternative<CustomGauge>(variant_); }

    /// Differentiable away from the origin.
    bool smooth() const {
        if (auto* c = std::get_if<CustomGauge>(&variant_)) return c->smooth;
        return !is_max();
    }

    bool strictly_convex() const { return !is_max() && !is_custom(); }

    /// Twice differentiable away from the origin (needed for second derivatives).
    bool twice_smooth() const {
        if (auto* p = std::get_if<PNorm>(&variant_)) return p->p >= 2.0;
        return smooth();
    }

    std::string describe() const {
        return std::visit(
            [&](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                const std::string d = "(dim " + std::to_string(dim_) + ")";
                if constexpr (std::is_same_v<T, PNorm>) return "pnorm p=" + std::to_string(v.p) + " " + d;
                else if constexpr (std::is_same_v<T, MaxNorm>) return "max " + d;
                else if constexpr (std::is_same_v<T, Euclidean>) return "euclidean " + d;
                else return "custom " + d;
            },
            variant_);
    }

private:
    NormSpec(Variant v, std::size_t dim) : variant_(std::move(v)), dim_(dim) {
        if (dim_ < 1) throw DimensionError("norm: dimension must be >= 1");
    }

    Variant variant_;
    std::size_t dim_;
};

enum class SipMode { ClosedForm, NormDerivative };

/// A normed space together with the evaluator of its semi-inner-product.
/// Custom gauges always use the norm-derivative route.
struct SipSpace {
    NormSpec norm;
    SipMode mode = SipMode::ClosedForm;

    std::size_t dim() const noexcept { return norm.dim(); }
    bool uses_differences() const { return mode == SipMode::NormDerivative || norm.is_custom(); }
};

inline SipSpace euclidean_space(std::size_t dim) { return {NormSpec::euclidean(dim), SipMode::ClosedForm}; }
inline SipSpace pnorm_space(std::size_t dim, double p, SipMode mode = SipMode::ClosedForm) {
    return {NormSpec::pnorm(dim, p), mode};
}
inline SipSpace max_space(std::size_t dim) { return {NormSpec::max_norm(dim), SipMode::ClosedForm}; }

inline double norm(const SipSpace& space, const Vector& x) {
    require_dim(x, space.dim(), "norm");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PNorm>) {
                const double scale = norm_inf(x);
                if (scale == 0.0) return 0.0;
                double s = 0.0;
                for (double c : x) s += std::pow(std::abs(c) / scale, v.p);
                return scale * std::pow(s, 1.0 / v.p);
            } else if constexpr (std::is_same_v<T, MaxNorm>) {
                return norm_inf(x);
            } else if constexpr (std::is_same_v<T, Euclidean>) {
                return norm2(x);
            } else {
                return v.evaluator(x);
            }
        },
        space.norm.variant());
}

namespace detail {

/// d/dlambda ||y + lambda x|| at 0. The direction is normalized to unit
/// Euclidean length so the step only depends on the scale of y.
inline double norm_directional(const SipSpace& space, const Vector& x, const Vector& y, double h = 0.0) {
    const double len = norm2(x);
    if (len == 0.0) return 0.0;
    const Vector dir = (1.0 / len) * x;
    if (!(h > 0)) h = first_step(norm2(y));
    return len * central_diff([&](double t) { return norm(space, axpy(y, t, dir)); }, 0.0, h);
}

/// Index of the first coordinate attaining max |y_i|.
inline std::size_t max_index(const Vector& y) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < y.size(); ++i)
        if (std::abs(y[i]) > std::abs(y[j])) j = i;
    return j;
}

} // namespace detail

/// Semi-inner-product [x, y]. Linear in x; [x, 0] = 0.
inline double sip(const SipSpace& space, const Vector& x, const Vector& y) {
    require_dim(x, space.dim(), "sip");
    require_dim(y, space.dim(), "sip");
    if (is_zero(y)) return 0.0;
    if (space.uses_differences()) return norm(space, y) * detail::norm_directional(space, x, y);

    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PNorm>) {
                // ||y||^(2-p) * sum x_i |y_i|^(p-1) sgn(y_i), with y rescaled by its
                // max coordinate to keep the powers in range.
                const double scale = norm_inf(y);
                double acc = 0.0;
                double s = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i) {
                    const double a = std::abs(y[i]) / scale;
                    s += std::pow(a, v.p);
                    acc += x[i] * std::copysign(std::pow(a, v.p - 1.0), y[i]);
                }
                const double unit_norm = std::pow(s, 1.0 / v.p);
                return scale * std::pow(unit_norm, 2.0 - v.p) * acc;
            } else if constexpr (std::is_same_v<T, MaxNorm>) {
                const std::size_t j = detail::max_index(y);
                return x[j] * y[j];
            } else if constexpr (std::is_same_v<T, Euclidean>) {
                return dot(x, y);
            } else {
                return norm(space, y) * detail::norm_directional(space, x, y);
            }
        },
        space.norm.variant());
}

/// Directional derivative of the norm at y in direction x.
inline double norm_first_derivative(const SipSpace& space, const Vector& x, const Vector& y) {
    require_dim(x, space.dim(), "norm_first_derivative");
    require_dim(y, space.dim(), "norm_first_derivative");
    if (is_zero(y)) throw DomainError("norm_first_derivative: y must be nonzero");
    return detail::norm_directional(space, x, y);
}

/// Derivative in direction z of y -> norm_first_derivative(x, y). `outer_step`
/// overrides the outer difference step (0 picks the default).
inline double norm_second_derivative(const SipSpace& space, const Vector& x, const Vector& z, const Vector& y,
                                     double outer_step = 0.0) {
    require_dim(z, space.dim(), "norm_second_derivative");
    if (is_zero(y)) throw DomainError("norm_second_derivative: y must be nonzero");
    const double len = norm2(z);
    if (len == 0.0) return 0.0;
    const Vector dir = (1.0 / len) * z;
    const double h = outer_step > 0 ? outer_step : second_step(norm2(y));
    return len * central_diff([&](double t) { return norm_first_derivative(space, x, axpy(y, t, dir)); }, 0.0, h);
}

/// [x, .]'_z(y): derivative of the s.i.p. in its second argument.
inline double sip_second_arg_derivative(const SipSpace& space, const Vector& x, const Vector& y, const Vector& z) {
    require_dim(x, space.dim(), "sip_second_arg_derivative");
    require_dim(z, space.dim(), "sip_second_arg_derivative");
    if (is_zero(y)) throw DomainError("sip_second_arg_derivative: y must be nonzero");
    const double len = norm2(z);
    if (len == 0.0) return 0.0;
    const Vector dir = (1.0 / len) * z;
    const double h = space.uses_differences() ? second_step(norm2(y)) : first_step(norm2(y));
    return len * central_diff([&](double t) { return sip(space, x, axpy(y, t, dir)); }, 0.0, h);
}

/// | ||y|| ||.||''_{x,z}(y) - [x,.]'_z(y) + [x,y][z,y]/||y||^2 |
inline double theorem2_residual(const SipSpace& space, const Vector& x, const Vector& y, const Vector& z) {
    if (is_zero(y)) throw DomainError("theorem2_residual: y must be nonzero");
    const double ny = norm(space, y);
    const double lhs = ny * norm_second_derivative(space, x, z, y);
    const double rhs = sip_second_arg_derivative(space, x, y, z) - sip(space, x, y) * sip(space, z, y) / (ny * ny);
    return std::abs(lhs - rhs);
}

/// Generalized s.i.p. [y,y]^((p-2)/p) [x,y] (Holder-type product of order p).
inline double nath_transform(const SipSpace& space, double p, const Vector& x, const Vector& y) {
    if (!(p >= 1.0)) throw DomainError("nath_transform: p must be >= 1");
    if (is_zero(y)) return 0.0;
    return std::pow(sip(space, y, y), (p - 2.0) / p) * sip(space, x, y);
}

/// Sampled axiom residuals for any product that is supposed to be an s.i.p.
/// Residuals are scaled by max(1, ||x|| ||y||) with ||v|| = sqrt([v,v]).
template <class Product>
AxiomReport sip_axiom_report_for(Product&& product, std::size_t dim, Seed seed, int trials, double threshold) {
    if (trials < 1) throw DomainError("sip_axiom_report: trials must be >= 1");
    AxiomReport report;
    for (const char* name : {"additivity_first", "homogeneity_first", "homogeneity_second", "positivity",
                             "cauchy_schwarz"})
        report.add(name, threshold);
    Check& additivity = report.checks[0];
    Check& hom_first = report.checks[1];
    Check& hom_second = report.checks[2];
    Check& positivity = report.checks[3];
    Check& cs = report.checks[4];

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Vector x = rng.vector(dim, 2.0);
        const Vector y = rng.vector(dim, 2.0);
        const Vector z = rng.vector(dim, 2.0);
        const double lambda = rng.signed_magnitude(0.1, 3.0);

        const double xx = product(x, x);
        const double yy = product(y, y);
        const double zz = product(z, z);
        const double nx = std::sqrt(std::max(xx, 0.0));
        const double ny = std::sqrt(std::max(yy, 0.0));
        const double nz = std::sqrt(std::max(zz, 0.0));
        const double scale = std::max(1.0, (nx + nz) * ny);
        const double xy = product(x, y);

        additivity.record(std::abs(product(x + z, y) - xy - product(z, y)) / scale, {x, z, y});
        hom_first.record(std::abs(product(lambda * x, y) - lambda * xy) / scale, {x, y, {lambda}});
        hom_second.record(std::abs(product(x, lambda * y) - lambda * xy) / scale, {x, y, {lambda}});
        positivity.record(xx > 0.0 ? 0.0 : std::max(-xx, 1.0), {x});
        cs.record(std::max(0.0, xy * xy - xx * yy) / (scale * scale), {x, y});
    }
    return report;
}

/// Axiom residuals of the space's own s.i.p. Threshold is eq_tol for closed
/// forms and fd_tol when finite differences are involved.
inline AxiomReport sip_axiom_report(const SipSpace& space, Seed seed, int trials, const Tolerances& tol = {}) {
    const double threshold = space.uses_differences() ? tol.fd_tol : tol.eq_tol;
    return sip_axiom_report_for([&](const Vector& x, const Vector& y) { return sip(space, x, y); }, space.dim(),
                                seed, trials, threshold);
}

} // namespace sipmink
