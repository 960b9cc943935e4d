#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace signbalance {

// A point of R^d. Components are plain doubles; all geometry in this
// library goes through the free functions below.
struct Vector {
    std::vector<double> c;

    Vector() = default;
    Vector(std::initializer_list<double> xs) : c(xs) {}
    explicit Vector(std::vector<double> xs) : c(std::move(xs)) {}

    static Vector zero(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }

    std::size_t dim() const { return c.size(); }
    double operator[](std::size_t i) const { return c[i]; }
    double& operator[](std::size_t i) { return c[i]; }

    bool operator==(const Vector& o) const { return c == o.c; }
};

inline bool is_finite(const Vector& v) {
    for (double x : v.c)
        if (!std::isfinite(x)) return false;
    return true;
}

inline void require_same_dim(const Vector& u, const Vector& v) {
    if (u.dim() != v.dim())
        throw std::domain_error("dimension mismatch");
}

inline double dot(const Vector& u, const Vector& v) {
    require_same_dim(u, v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * v[i];
    return s;
}

inline double norm(const Vector& v) {
    double s = 0.0;
    for (double x : v.c) s += x * x;
    return std::sqrt(s);
}

inline double one_norm(const Vector& v) {
    double s = 0.0;
    for (double x : v.c) s += std::abs(x);
    return s;
}

inline double max_norm(const Vector& v) {
    double s = 0.0;
    for (double x : v.c) s = std::max(s, std::abs(x));
    return s;
}

inline bool is_zero(const Vector& v) {
    for (double x : v.c)
        if (x != 0.0) return false;
    return true;
}

inline Vector operator+(const Vector& u, const Vector& v) {
    require_same_dim(u, v);
    Vector r = u;
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] += v[i];
    return r;
}

inline Vector operator-(const Vector& u, const Vector& v) {
    require_same_dim(u, v);
    Vector r = u;
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] -= v[i];
    return r;
}

inline Vector operator*(double s, const Vector& v) {
    Vector r = v;
    for (double& x : r.c) x *= s;
    return r;
}

inline Vector& operator+=(Vector& u, const Vector& v) {
    require_same_dim(u, v);
    for (std::size_t i = 0; i < v.dim(); ++i) u[i] += v[i];
    return u;
}

inline Vector& operator-=(Vector& u, const Vector& v) {
    require_same_dim(u, v);
    for (std::size_t i = 0; i < v.dim(); ++i) u[i] -= v[i];
    return u;
}

inline double distance(const Vector& u, const Vector& v) { return norm(u - v); }

} // namespace signbalance
