#pragma once

// Generalized Minkowski spaces V = S (+) T. S and T are coordinate blocks:
// coordinates [0, k) lie in S and [k, n) in T. Each block carries its own
// s.i.p.; the auxiliary product adds them and the Minkowski product subtracts
// the T-block.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "error.hpp"
#include "norms.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "vector.hpp"

namespace sipmink {

enum class VectorClass { SpaceLike, TimeLike, LightLike };
enum class ConePart { TPlus, TMinus, NotTimeLike };

inline const char* to_string(VectorClass c) {
    switch (c) {
    case VectorClass::SpaceLike: return "SpaceLike";
    case VectorClass::TimeLike: return "TimeLike";
    case VectorClass::LightLike: return "LightLike";
    }
    return "?";
}

inline const char* to_string(ConePart c) {
    switch (c) {
    case ConePart::TPlus: return "TPlus";
    case ConePart::TMinus: return "TMinus";
    case ConePart::NotTimeLike: return "NotTimeLike";
    }
    return "?";
}

class GeneralizedMinkowskiSpace {
public:
    GeneralizedMinkowskiSpace(SipSpace s_space, SipSpace t_space)
        : s_(std::move(s_space)), t_(std::move(t_space)) {}

    const SipSpace& s_space() const noexcept { return s_; }
    const SipSpace& t_space() const noexcept { return t_; }
    std::size_t k() const noexcept { return s_.dim(); }
    std::size_t n() const noexcept { return s_.dim() + t_.dim(); }

    /// dim T == 1.
    bool space_time_model() const noexcept { return t_.dim() == 1; }

    /// Both blocks Euclidean: the product is a diagonal indefinite inner product.
    bool pseudo_euclidean() const { return s_.norm.is_euclidean() && t_.norm.is_euclidean(); }

    std::string describe() const { return "S: " + s_.norm.describe() + ", T: " + t_.norm.describe(); }

private:
    SipSpace s_;
    SipSpace t_;
};

/// Pseudo-Euclidean space with `k` positive and `n_minus` negative directions.
inline GeneralizedMinkowskiSpace pseudo_euclidean(std::size_t k, std::size_t n_minus = 1) {
    return {euclidean_space(k), euclidean_space(n_minus)};
}

/// S = (R^2, max norm), T = (R, Euclidean).
inline GeneralizedMinkowskiSpace remark1_space() { return {max_space(2), euclidean_space(1)}; }

inline std::pair<Vector, Vector> split(const GeneralizedMinkowskiSpace& space, const Vector& v) {
    require_dim(v, space.n(), "split");
    const auto k = static_cast<std::ptrdiff_t>(space.k());
    return {Vector(v.begin(), v.begin() + k), Vector(v.begin() + k, v.end())};
}

/// [u,v]^- = [s1,s2]_S + [t1,t2]_T. An s.i.p. on the whole space.
inline double product_minus(const GeneralizedMinkowskiSpace& space, const Vector& u, const Vector& v) {
    require_same_dim(u, v, "product_minus");
    const auto [su, tu] = split(space, u);
    const auto [sv, tv] = split(space, v);
    return sip(space.s_space(), su, sv) + sip(space.t_space(), tu, tv);
}

/// [u,v]^+ = [s1,s2]_S - [t1,t2]_T.
inline double product_plus(const GeneralizedMinkowskiSpace& space, const Vector& u, const Vector& v) {
    require_same_dim(u, v, "product_plus");
    const auto [su, tu] = split(space, u);
    const auto [sv, tv] = split(space, v);
    return sip(space.s_space(), su, sv) - sip(space.t_space(), tu, tv);
}

/// Identity on S, negation on T.
inline Vector j_operator(const GeneralizedMinkowskiSpace& space, const Vector& v) {
    require_dim(v, space.n(), "j_operator");
    Vector r = v;
    for (std::size_t i = space.k(); i < r.size(); ++i) r[i] = -r[i];
    return r;
}

inline VectorClass classify(const GeneralizedMinkowskiSpace& space, const Vector& v, double class_tol = 1e-9) {
    const double q = product_plus(space, v, v);
    if (std::abs(q) <= class_tol * std::max(1.0, product_minus(space, v, v))) return VectorClass::LightLike;
    return q > 0 ? VectorClass::SpaceLike : VectorClass::TimeLike;
}

inline ConePart cone_part(const GeneralizedMinkowskiSpace& space, const Vector& v, double class_tol = 1e-9) {
    if (!space.space_time_model()) throw UnsupportedError("cone_part: needs dim T = 1");
    if (classify(space, v, class_tol) != VectorClass::TimeLike) return ConePart::NotTimeLike;
    return v.back() > 0 ? ConePart::TPlus : ConePart::TMinus;
}

/// Samples pairs in the future cone and convex combinations of them; any
/// combination leaving the cone is a violation. Also checks that
/// classification is invariant under nonzero scaling.
inline AxiomReport cone_convexity_check(const GeneralizedMinkowskiSpace& space, Seed seed, int trials,
                                        const Tolerances& tol = {}) {
    if (!space.space_time_model()) throw UnsupportedError("cone_convexity_check: needs dim T = 1");
    AxiomReport report;
    report.add("convexity", 0.0);
    report.add("scale_invariance", 0.0);
    auto& c = report.checks;
    Rng rng(seed);
    auto future_vector = [&] {
        for (;;) {
            Vector v = rng.vector(space.n(), 1.0);
            if (cone_part(space, v, tol.class_tol) == ConePart::TPlus) return v;
        }
    };
    for (int t = 0; t < trials; ++t) {
        const Vector a = future_vector();
        const Vector b = future_vector();
        const double mu = rng.uniform(0.0, 1.0);
        const Vector m = axpy(mu * a, 1.0 - mu, b);
        c[0].record(cone_part(space, m, tol.class_tol) == ConePart::TPlus ? 0.0 : 1.0, {a, b, {mu}});

        const Vector v = rng.vector(space.n(), 1.0);
        const double lambda = rng.signed_magnitude(0.1, 10.0);
        c[1].record(classify(space, lambda * v, tol.class_tol) == classify(space, v, tol.class_tol) ? 0.0 : 1.0,
                    {v, {lambda}});
    }
    return report;
}

} // namespace sipmink
