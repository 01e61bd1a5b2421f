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
#include "slantcurve/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slant {

std::vector<double> make_uniform_grid(double s0, double s1, std::size_t n) {
    if (n < 2) throw TooFewSamples("grid needs at least 2 nodes");
    if (!(s1 > s0)) throw InvalidValue("grid span must be nondegenerate");
    std::vector<double> g(n);
    const double h = (s1 - s0) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = s0 + double(i) * h;
    g.back() = s1;
    return g;
}

void validate_grid(const std::vector<double>& grid) {
    const std::size_t n = grid.size();
    if (n < 2) throw TooFewSamples("grid needs at least 2 nodes");
    const double span_scale = std::max({1.0, std::abs(grid.front()), std::abs(grid.back())});
    const double h = (grid.back() - grid.front()) / double(n - 1);
    if (!(h > 0.0)) throw NonUniformGrid("grid must be strictly increasing");
    const double tol = 1e-12 * span_scale;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(grid[i + 1] > grid[i])) throw NonUniformGrid("grid must be strictly increasing");
        if (std::abs(grid[i] - (grid.front() + double(i) * h)) > tol)
            throw NonUniformGrid("grid spacing is not uniform");
    }
}

std::size_t SampledFunction::valid_count() const {
    std::size_t c = 0;
    for (auto m : mask) c += (m != 0);
    return c;
}

SampledFunction SampledVectorField::component(int axis) const {
    SampledFunction f;
    f.grid = grid;
    f.mask = mask;
    f.values.resize(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        f.values[i] = axis == 0 ? vectors[i].x : (axis == 1 ? vectors[i].y : vectors[i].z);
    return f;
}

SampledFunction make_sampled(std::vector<double> grid, std::vector<double> values,
                             std::vector<std::uint8_t> mask) {
    if (values.size() != grid.size()) throw InvalidValue("values/grid length mismatch");
    if (mask.empty()) mask.assign(grid.size(), 1);
    if (mask.size() != grid.size()) throw InvalidValue("mask/grid length mismatch");
    validate_grid(grid);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (mask[i] && !std::isfinite(values[i]))
            throw InvalidValue("non-finite value at a valid sample");
    return SampledFunction{std::move(grid), std::move(values), std::move(mask)};
}

SampledVectorField make_sampled_field(std::vector<double> grid, std::vector<Vector3> vectors,
                                      std::vector<std::uint8_t> mask) {
    if (vectors.size() != grid.size()) throw InvalidValue("vectors/grid length mismatch");
    if (mask.empty()) mask.assign(grid.size(), 1);
    if (mask.size() != grid.size()) throw InvalidValue("mask/grid length mismatch");
    validate_grid(grid);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (mask[i] && !vectors[i].finite())
            throw InvalidValue("non-finite vector at a valid sample");
    return SampledVectorField{std::move(grid), std::move(vectors), std::move(mask)};
}

std::pair<std::size_t, std::size_t> longest_valid_run(const std::vector<std::uint8_t>& mask) {
    std::size_t best_first = 1, best_last = 0, best_len = 0;
    std::size_t i = 0;
    const std::size_t n = mask.size();
    while (i < n) {
        if (!mask[i]) { ++i; continue; }
        std::size_t j = i;
        while (j + 1 < n && mask[j + 1]) ++j;
        if (j - i + 1 > best_len) { best_len = j - i + 1; best_first = i; best_last = j; }
        i = j + 1;
    }
    return {best_first, best_last};
}

namespace {

bool stencil_valid(const std::vector<std::uint8_t>& m, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i <= hi; ++i)
        if (!m[i]) return false;
    return true;
}

template <typename T>
std::vector<T> differentiate_values(const std::vector<T>& y, double h, std::size_t n,
                                    const std::vector<std::uint8_t>& mask,
                                    std::vector<std::uint8_t>& out_mask) {
    std::vector<T> d(n);
    out_mask.assign(n, 0);
    // one-sided four-point stencils at the two samples nearest each end
    if (stencil_valid(mask, 0, 3)) {
        d[0] = (y[0] * -11.0 + y[1] * 18.0 + y[2] * -9.0 + y[3] * 2.0) / (6.0 * h);
        d[1] = (y[0] * -2.0 + y[1] * -3.0 + y[2] * 6.0 + y[3] * -1.0) / (6.0 * h);
        out_mask[0] = out_mask[1] = 1;
    }
    if (stencil_valid(mask, n - 4, n - 1)) {
        d[n - 2] = (y[n - 4] * 1.0 + y[n - 3] * -6.0 + y[n - 2] * 3.0 + y[n - 1] * 2.0) / (6.0 * h);
        d[n - 1] = (y[n - 4] * -2.0 + y[n - 3] * 9.0 + y[n - 2] * -18.0 + y[n - 1] * 11.0) / (6.0 * h);
        out_mask[n - 2] = out_mask[n - 1] = 1;
    }
    for (std::size_t i = 2; i + 2 < n; ++i) {
        if (!stencil_valid(mask, i - 2, i + 2)) continue;
        d[i] = (y[i - 2] - y[i + 2] + (y[i + 1] - y[i - 1]) * 8.0) / (12.0 * h);
        out_mask[i] = 1;
    }
    return d;
}

} // namespace

SampledFunction derivative(const SampledFunction& f) {
    if (f.size() < 5) throw TooFewSamples("derivative needs at least 5 samples");
    validate_grid(f.grid);
    SampledFunction out;
    out.grid = f.grid;
    out.values = differentiate_values(f.values, f.spacing(), f.size(), f.mask, out.mask);
    return out;
}

SampledVectorField derivative(const SampledVectorField& f) {
    if (f.size() < 5) throw TooFewSamples("derivative needs at least 5 samples");
    validate_grid(f.grid);
    SampledVectorField out;
    out.grid = f.grid;
    out.vectors = differentiate_values(f.vectors, f.spacing(), f.size(), f.mask, out.mask);
    return out;
}

namespace {

// Linear interpolation of f between grid nodes; caller checked validity.
double value_at(const SampledFunction& f, double q) {
    const double h = f.spacing();
    double u = (q - f.grid.front()) / h;
    auto i = std::size_t(std::clamp(std::floor(u), 0.0, double(f.size() - 2)));
    const double w = u - double(i);
    return f.values[i] * (1.0 - w) + f.values[i + 1] * w;
}

} // namespace

double integrate(const SampledFunction& f, double from, double to) {
    if (f.size() < 2) throw TooFewSamples("integrate needs at least 2 samples");
    validate_grid(f.grid);
    if (from > to) return -integrate(f, to, from);

    const double s0 = f.grid.front(), s1 = f.grid.back();
    const double span_tol = 1e-12 * std::max({1.0, std::abs(s0), std::abs(s1)});
    if (from < s0 - span_tol || to > s1 + span_tol)
        throw RangeOutOfGrid("integration range outside grid span");
    from = std::clamp(from, s0, s1);
    to = std::clamp(to, s0, s1);
    if (to - from <= span_tol) return 0.0;

    const double h = f.spacing();
    const double node_snap = 1e-9 * h;
    // indices of the innermost nodes covered by [from, to]
    auto ia = std::size_t(std::ceil((from - s0) / h - 1e-9));
    auto ib = std::size_t(std::floor((to - s0) / h + 1e-9));
    ia = std::min(ia, f.size() - 1);
    ib = std::min(ib, f.size() - 1);

    // every covered sample must be valid
    const auto lo = std::size_t(std::floor((from - s0) / h + 1e-9));
    const auto hi = std::size_t(std::min(std::ceil((to - s0) / h - 1e-9), double(f.size() - 1)));
    for (std::size_t i = lo; i <= hi; ++i)
        if (!f.mask[i]) throw MaskedRegion("integration crosses invalid samples");

    if (ib < ia) {
        // both endpoints inside one panel
        return 0.5 * (to - from) * (value_at(f, from) + value_at(f, to));
    }

    double total = 0.0;
    // partial head [from, grid[ia]]
    const double head = f.grid[ia] - from;
    if (head > node_snap) total += 0.5 * head * (value_at(f, from) + f.values[ia]);
    // partial tail [grid[ib], to]
    const double tail = to - f.grid[ib];
    if (tail > node_snap) total += 0.5 * tail * (f.values[ib] + value_at(f, to));

    std::size_t panels = ib - ia;
    if (panels % 2 == 1) {
        // composite Simpson wants an even panel count; close the final
        // panel with a trapezoid instead
        total += 0.5 * h * (f.values[ib - 1] + f.values[ib]);
        --panels;
    }
    double simpson = 0.0;
    for (std::size_t p = 0; p + 2 <= panels; p += 2)
        simpson += f.values[ia + p] + 4.0 * f.values[ia + p + 1] + f.values[ia + p + 2];
    total += simpson * h / 3.0;
    return total;
}

SampledFunction cumulative_integral(const SampledFunction& f) {
    const std::size_t n = f.size();
    if (n < 4) throw TooFewSamples("cumulative integral needs at least 4 samples");
    validate_grid(f.grid);

    std::size_t first = 0;
    while (first < n && !f.mask[first]) ++first;
    if (first == n) throw MaskedRegion("no valid samples to integrate");
    std::size_t last = first;
    while (last + 1 < n && f.mask[last + 1]) ++last;
    if (last - first + 1 < 4) throw TooFewSamples("valid run too short to integrate");

    const double h = f.spacing();
    const double* y = f.values.data();
    SampledFunction g;
    g.grid = f.grid;
    g.values.assign(n, 0.0);
    g.mask.assign(n, 0);
    g.mask[first] = 1;

    auto panel = [&](std::size_t i) {
        // integral over [grid[i], grid[i+1]] from the cubic through the four
        // nearest valid nodes (fourth order)
        double v;
        if (i == first)
            v = h * (9.0 * y[i] + 19.0 * y[i + 1] - 5.0 * y[i + 2] + y[i + 3]) / 24.0;
        else if (i + 1 == last)
            v = h * (9.0 * y[i + 1] + 19.0 * y[i] - 5.0 * y[i - 1] + y[i - 2]) / 24.0;
        else
            v = h * (-y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2]) / 24.0;
        // keep the running integral monotone for positive integrands even if
        // the cubic undershoots on rough data
        if (v <= 0.0 && y[i] > 0.0 && y[i + 1] > 0.0) v = 0.5 * h * (y[i] + y[i + 1]);
        return v;
    };

    double acc = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        acc += panel(i);
        g.values[i + 1] = acc;
        g.mask[i + 1] = 1;
    }
    return g;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 4) throw TooFewSamples("cubic spline needs at least 4 knots");
    if (y_.size() != n) throw InvalidValue("spline knot/value length mismatch");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i])) throw NonUniformGrid("spline knots must strictly increase");

    // Solve for second derivatives with not-a-knot end conditions: the third
    // derivative is continuous across the first and last interior knots, so
    // M0 and M_{n-1} are eliminated and a tridiagonal system in M1..M_{n-2}
    // remains.
    std::vector<double> hs(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) hs[i] = x_[i + 1] - x_[i];

    const std::size_t m = n - 2;  // unknowns M1..M_{n-2}
    std::vector<double> a(m, 0.0), b(m, 0.0), c(m, 0.0), r(m, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const std::size_t k = i - 1;
        a[k] = hs[i - 1];
        b[k] = 2.0 * (hs[i - 1] + hs[i]);
        c[k] = hs[i];
        r[k] = 6.0 * ((y_[i + 1] - y_[i]) / hs[i] - (y_[i] - y_[i - 1]) / hs[i - 1]);
    }
    // not-a-knot at the left: M0 = M1 - h0*(M2 - M1)/h1
    b[0] += a[0] * (1.0 + hs[0] / hs[1]);
    c[0] -= a[0] * hs[0] / hs[1];
    a[0] = 0.0;
    // not-a-knot at the right: M_{n-1} = M_{n-2} + h_{n-2}*(M_{n-2} - M_{n-3})/h_{n-3}
    b[m - 1] += c[m - 1] * (1.0 + hs[n - 2] / hs[n - 3]);
    a[m - 1] -= c[m - 1] * hs[n - 2] / hs[n - 3];
    c[m - 1] = 0.0;

    // Thomas algorithm
    for (std::size_t k = 1; k < m; ++k) {
        const double w = a[k] / b[k - 1];
        b[k] -= w * c[k - 1];
        r[k] -= w * r[k - 1];
    }
    std::vector<double> M(n, 0.0);
    M[n - 2] = r[m - 1] / b[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) M[k + 1] = (r[k] - c[k] * M[k + 2]) / b[k];
    M[0] = M[1] - hs[0] * (M[2] - M[1]) / hs[1];
    M[n - 1] = M[n - 2] + hs[n - 2] * (M[n - 2] - M[n - 3]) / hs[n - 3];
    m_ = std::move(M);
}

double CubicSpline::eval(double q) const {
    const std::size_t n = x_.size();
    auto it = std::upper_bound(x_.begin(), x_.end(), q);
    std::size_t i = it == x_.begin() ? 0 : std::size_t(it - x_.begin()) - 1;
    i = std::min(i, n - 2);
    const double h = x_[i + 1] - x_[i];
    const double u = (q - x_[i]) / h;
    const double v = 1.0 - u;
    return v * y_[i] + u * y_[i + 1] +
           h * h / 6.0 * (m_[i] * (v * v * v - v) + m_[i + 1] * (u * u * u - u));
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2) throw TooFewSamples("monotone cubic needs at least 2 knots");
    if (y_.size() != n) throw InvalidValue("knot/value length mismatch");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i])) throw NonUniformGrid("knots must strictly increase");

    d_.assign(n, 0.0);
    if (n == 2) {
        d_[0] = d_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
        return;
    }
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        del[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    // Fritsch-Carlson interior slopes
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0) d = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0)) d = 3.0 * d0;
        return d;
    };
    d_[0] = end_slope(h[0], h[1], del[0], del[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

double MonotoneCubic::eval(double q) const {
    const std::size_t n = x_.size();
    auto it = std::upper_bound(x_.begin(), x_.end(), q);
    std::size_t i = it == x_.begin() ? 0 : std::size_t(it - x_.begin()) - 1;
    i = std::min(i, n - 2);
    const double h = x_[i + 1] - x_[i];
    const double u = (q - x_[i]) / h;
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

} // namespace slant
