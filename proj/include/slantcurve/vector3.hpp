/*
*   Copyright 2026 the slantcurve authors
*
*   Licensed under the Apache License, Version 2.0 (the "License");
*   you may not use this file except in compliance with the License.
*   You may obtain a copy of the License at
*
*       http://www.apache.org/licenses/LICENSE-2.0
*
*   Unless required by applicable law or agreed to in writing, software
*   distributed under the License is distributed on an "AS IS" BASIS,
*   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
*   See the License for the specific language governing permissions and
*   limitations under the License.
*/
#pragma once

#include <cmath>
#include <algorithm>

#include "slantcurve/errors.hpp"

namespace slant {

struct Vector3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vector3() = default;
    constexpr Vector3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vector3 operator+(const Vector3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vector3 operator-(const Vector3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vector3 operator*(double a) const { return {a * x, a * y, a * z}; }
    constexpr Vector3 operator/(double a) const { return {x / a, y / a, z / a}; }
    constexpr Vector3 operator-() const { return {-x, -y, -z}; }
    Vector3& operator+=(const Vector3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vector3& operator-=(const Vector3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    constexpr double dot(const Vector3& o) const { return x * o.x + y * o.y + z * o.z; }

    constexpr Vector3 cross(const Vector3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }

    double norm() const { return std::sqrt(dot(*this)); }
    constexpr double squared_norm() const { return dot(*this); }

    Vector3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vector3 operator*(double a, const Vector3& v) { return v * a; }

/// Angle between two unit vectors, clamped against rounding.
inline double angle_between(const Vector3& a, const Vector3& b) {
    return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

inline Vector3 checked_vector(double x, double y, double z) {
    Vector3 v{x, y, z};
    if (!v.finite()) throw InvalidValue("vector component is not finite");
    return v;
}

/// Orthonormal right-handed moving frame (tangent, normal, binormal).
struct Frame {
    Vector3 t;
    Vector3 n;
    Vector3 b;

    /// Max-norm deviation of the Gram matrix from the identity.
    double gram_deviation() const {
        const double d = std::max({std::abs(t.dot(t) - 1.0), std::abs(n.dot(n) - 1.0),
                                   std::abs(b.dot(b) - 1.0), std::abs(t.dot(n)),
                                   std::abs(t.dot(b)), std::abs(n.dot(b))});
        return d;
    }

    /// Scalar triple product t . (n x b); +1 for a right-handed frame.
    double handedness() const { return t.dot(n.cross(b)); }

    bool orthonormal(double tol) const {
        return gram_deviation() <= tol && std::abs(handedness() - 1.0) <= tol;
    }
};

/// Tolerance for frames assembled from closed-form algebra.
inline constexpr double kFrameTolConstructed = 1e-8;
/// Tolerance for frames obtained through numerical differentiation.
inline constexpr double kFrameTolNumerical = 1e-5;

inline void validate_frame(const Frame& f, double tol) {
    if (!f.t.finite() || !f.n.finite() || !f.b.finite())
        throw InvalidValue("frame has non-finite components");
    if (!f.orthonormal(tol)) throw InvalidValue("frame is not orthonormal right-handed");
}

/// One Gram-Schmidt pass: keeps t's direction, projects n, rebuilds b.
inline Frame gram_schmidt(const Vector3& t_raw, const Vector3& n_raw) {
    Frame f;
    f.t = t_raw.normalized();
    const Vector3 n_perp = n_raw - f.t * n_raw.dot(f.t);
    f.n = n_perp.normalized();
    f.b = f.t.cross(f.n);
    return f;
}

} // namespace slant
