#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace sipmink {

/// Dense real coordinate tuple. Dimension is its size.
using Vector = std::vector<double>;

inline void require_same_dim(const Vector& a, const Vector& b, const char* where) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(where) + ": dimension mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    }
}

inline void require_dim(const Vector& a, std::size_t n, const char* where) {
    if (a.size() != n) {
        throw DimensionError(std::string(where) + ": expected dimension " + std::to_string(n) + ", got " +
                             std::to_string(a.size()));
    }
}

inline Vector zeros(std::size_t n) { return Vector(n, 0.0); }

inline Vector unit(std::size_t n, std::size_t i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    return e;
}

inline Vector operator+(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "vector +");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "vector -");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector operator-(const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Vector operator*(double s, const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Vector operator*(const Vector& a, double s) { return s * a; }

/// a + s*b
inline Vector axpy(const Vector& a, double s, const Vector& b) {
    require_same_dim(a, b, "axpy");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

inline double dot(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "dot");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm2(const Vector& a) { return std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0)); }

inline double norm_inf(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline double norm1(const Vector& a) {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s;
}

inline bool is_zero(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

inline bool all_finite(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

inline Vector concat(const Vector& a, const Vector& b) {
    Vector r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace sipmink
