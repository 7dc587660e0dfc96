#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace prophet::num {

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (abscissae for the positive half; node 7 is the interval center).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& kronrod, double& gauss) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = fc * kWgk[7];
    double rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        rk += kWgk[j] * fsum;
        if (j % 2 == 1) rg += kWg[j / 2] * fsum;
    }
    kronrod = rk * h;
    gauss = rg * h;
}

template <class F>
inline double adapt(const F& f, double a, double b, double tol, int depth) {
    double k, g;
    gk15(f, a, b, k, g);
    if (std::abs(k - g) <= tol || depth >= 52) return k;
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1) + adapt(f, c, b, 0.5 * tol, depth + 1);
}

} // namespace detail

// Adaptive Gauss-Kronrod on [a, b] to absolute tolerance.
template <class F>
inline double integrate(const F& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    return detail::adapt(f, a, b, abs_tol, 0);
}

// Same, but the interval is first split at the given interior knots.
template <class F>
inline double integrate(const F& f, double a, double b, std::span<const double> knots,
                        double abs_tol) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double x : knots)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    const double tol = abs_tol / static_cast<double>(pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], tol);
    return total;
}

// Adaptive integration to a relative tolerance: a first pass estimates the
// magnitude, a second pass refines against it.
template <class F>
inline double integrate_rel(const F& f, double a, double b, double rel_tol) {
    const double coarse = integrate(f, a, b, 1e-6);
    const double scale = std::max(std::abs(coarse), 1e-30);
    return integrate(f, a, b, rel_tol * scale);
}

struct RootResult {
    double x;
    double residual;
    int iterations;
};

// Bracketed root finding, bisection with secant acceleration. Converges when
// the residual is below res_tol or the bracket is tighter than x_tol.
template <class F>
inline RootResult find_root(const F& f, double lo, double hi, double res_tol = 1e-13,
                            double x_tol = 0.0) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if ((flo > 0) == (fhi > 0))
        throw std::invalid_argument("find_root: root not bracketed");
    double x = lo, fx = flo;
    for (int it = 1; it <= 200; ++it) {
        const double secant = hi - fhi * (hi - lo) / (fhi - flo);
        const double mid = 0.5 * (lo + hi);
        x = (secant > lo && secant < hi) ? secant : mid;
        fx = f(x);
        if (std::abs(fx) <= res_tol || hi - lo <= x_tol)
            return {x, fx, it};
        if ((fx > 0) == (flo > 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return {x, fx, 200};
}

struct MinResult {
    double x;
    double value;
};

// Golden-section minimization on [lo, hi] to |x interval| < x_tol.
template <class F>
inline MinResult golden_min(const F& f, double lo, double hi, double x_tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

// Coarse scan followed by golden-section refinement of the best bracket.
// Robust against the flat objectives seen near control-problem optima.
template <class F>
inline MinResult grid_golden_min(const F& f, double lo, double hi, int grid_points,
                                 double x_tol) {
    double best_x = lo, best_v = std::numeric_limits<double>::infinity();
    std::vector<double> xs(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + (hi - lo) * i / (grid_points - 1);
        xs[i] = x;
        const double v = f(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    const double step = (hi - lo) / (grid_points - 1);
    const double a = std::max(lo, best_x - step);
    const double b = std::min(hi, best_x + step);
    MinResult r = golden_min(f, a, b, x_tol);
    if (best_v < r.value) return {best_x, best_v};
    return r;
}

} // namespace prophet::num
