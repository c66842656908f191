#pragma once

// Numerical integration: adaptive Gauss-Kronrod 7/15 in 1D, a product rule
// over the punctured sphere with pole truncation + Richardson extrapolation,
// and the complete elliptic integral of the second kind by AGM.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spherevol/geometry.hpp"

namespace spherevol {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_depth = 40;
    // Truncation distance from +-pi/2; the sphere rule integrates on
    // [-pi/2+m, pi/2-m] for m, m/2, m/4 and extrapolates m -> 0.
    double pole_margin = 1e-6;
};

class NonconvergenceError : public std::runtime_error {
public:
    NonconvergenceError(const char* what, QuadratureResult best)
        : std::runtime_error(what), best_estimate(best) {}
    QuadratureResult best_estimate;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK dqk15).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GKEstimate {
    double value;
    double err;
};

template <class F>
GKEstimate gk15(F& f, double a, double b, long& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fc = f(mid);
    double g7 = kG7Weights[3] * fc;
    double k15 = kK15Weights[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGK15Nodes[i];
        const double pair = f(mid + dx) + f(mid - dx);
        k15 += kK15Weights[i] * pair;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * pair;
    }
    evals += 15;
    return {k15 * half, std::abs(k15 - g7) * half};
}

} // namespace detail

/// Adaptive 1D quadrature of a continuous f over [a, b]. Throws
/// NonconvergenceError (carrying the best estimate) if the tolerance cannot
/// be met within max_depth bisections.
template <class F>
QuadratureResult integrate_1d(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
    if (!(a < b)) throw std::invalid_argument("integrate_1d: requires a < b");
    long evals = 0;
    auto whole = detail::gk15(f, a, b, evals);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole.value));
    const double total_len = b - a;

    struct Segment {
        double a, b;
        detail::GKEstimate est;
        int depth;
    };
    std::vector<Segment> stack{{a, b, whole, 0}};
    double value = 0.0, err = 0.0;
    bool converged = true;
    while (!stack.empty()) {
        Segment s = stack.back();
        stack.pop_back();
        const double local_tol = tol * (s.b - s.a) / total_len;
        if (s.est.err <= std::max(local_tol, cfg.abs_tol * (s.b - s.a) / total_len)) {
            value += s.est.value;
            err += s.est.err;
            continue;
        }
        if (s.depth >= cfg.max_depth) {
            value += s.est.value;
            err += s.est.err;
            converged = false;
            continue;
        }
        const double mid = 0.5 * (s.a + s.b);
        stack.push_back({s.a, mid, detail::gk15(f, s.a, mid, evals), s.depth + 1});
        stack.push_back({mid, s.b, detail::gk15(f, mid, s.b, evals), s.depth + 1});
    }
    QuadratureResult result{value, err, evals};
    if (!converged)
        throw NonconvergenceError("integrate_1d: tolerance not met within max_depth", result);
    return result;
}

namespace detail {

// Periodic trapezoid sum of h(beta) over [0, 2pi) with n points.
template <class H>
double trapezoid_periodic(H& h, int n, long& evals) {
    double sum = 0.0;
    const double step = kTwoPi / n;
    for (int j = 0; j < n; ++j) sum += h(j * step);
    evals += n;
    return sum * step;
}

// Smallest point count (power-of-two multiple of 16) at which doubling the
// periodic trapezoid rule stops changing the result beyond tol.
template <class H>
int resolve_periodic_n(H& h, double tol, long& evals) {
    int n = 16;
    double prev = trapezoid_periodic(h, n, evals);
    while (n < (1 << 16)) {
        double next = trapezoid_periodic(h, 2 * n, evals);
        n *= 2;
        if (std::abs(next - prev) <= std::max(tol, 1e-15 * std::abs(next))) break;
        prev = next;
    }
    return n;
}

} // namespace detail

/// Integral of g over the punctured sphere against the area measure:
/// integral of g(alpha, beta) cos(alpha) dbeta dalpha. Requires g * cos(alpha)
/// to have finite limits at the poles; the truncated integrals at margins
/// m, m/2, m/4 are Richardson-extrapolated to m -> 0.
template <class G>
QuadratureResult integrate_sphere(G&& g, const QuadratureConfig& cfg = {}) {
    long evals = 0;

    // Fix one beta resolution for the whole run so the latitude profile seen
    // by the outer adaptive rule is smooth. Scan a spread of latitudes and
    // take twice the worst requirement.
    int n_beta = 16;
    const double scan_lats[] = {-1.4, -1.05, -0.7, -0.35, 0.0, 0.35, 0.7, 1.05, 1.4};
    for (double a : scan_lats) {
        auto h = [&](double beta) { return g(SphericalPoint(a, beta)); };
        int n = detail::resolve_periodic_n(h, 0.05 * cfg.rel_tol, evals);
        n_beta = std::max(n_beta, n);
    }
    n_beta *= 2;

    auto profile = [&](double alpha) {
        auto h = [&](double beta) { return g(SphericalPoint(alpha, beta)); };
        return std::cos(alpha) * detail::trapezoid_periodic(h, n_beta, evals);
    };

    QuadratureConfig inner = cfg;
    inner.rel_tol = cfg.rel_tol / 3.0;
    const double m = cfg.pole_margin;
    QuadratureResult base = integrate_1d(profile, -kHalfPi + m, kHalfPi - m, inner);
    double quad_err = base.abs_error_estimate;

    // Widening the truncated interval from margin m to m/2 and m/4 only adds
    // four short edge strips; the bulk integral is shared across levels.
    double I[3];
    I[0] = base.value;
    for (int level = 1; level < 3; ++level) {
        const double outer_m = m * std::pow(0.5, level);
        const double inner_m = m * std::pow(0.5, level - 1);
        QuadratureResult lo = integrate_1d(profile, -kHalfPi + outer_m, -kHalfPi + inner_m, inner);
        QuadratureResult hi = integrate_1d(profile, kHalfPi - inner_m, kHalfPi - outer_m, inner);
        I[level] = I[level - 1] + lo.value + hi.value;
        quad_err += lo.abs_error_estimate + hi.abs_error_estimate;
    }

    // Truncation error is c1*m + c2*m^2 + ...; eliminate both leading terms.
    const double i1 = 2.0 * I[1] - I[0];
    const double i2 = 2.0 * I[2] - I[1];
    const double value = (4.0 * i2 - i1) / 3.0;
    const double extrap_err = std::abs(value - i2);
    return {value, quad_err + extrap_err, evals};
}

/// Complete elliptic integral of the second kind,
/// E(m) = integral_0^{pi/2} sqrt(1 - m sin^2 t) dt, by the AGM iteration.
inline double elliptic_E(double m) {
    if (m < 0.0 || m > 1.0) throw DomainError("elliptic_E: m must lie in [0, 1]");
    if (m == 0.0) return kHalfPi;
    if (m == 1.0) return 1.0;
    double a = 1.0, b = std::sqrt(1.0 - m);
    double sum = 0.5 * m; // 2^{-1} c_0^2 with c_0 = sqrt(m)
    double pow2 = 0.5;
    for (int i = 0; i < 40 && a - b > std::numeric_limits<double>::epsilon() * a; ++i) {
        const double c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    const double K = kHalfPi / a;
    return K * (1.0 - sum);
}

/// Perimeter of the ellipse x^2/k^2 + y^2/(k-2)^2 = 1 (semi-axes k and
/// |k-2|): L = 4 k E(1 - (k-2)^2/k^2) = 4 integral_0^{pi/2}
/// sqrt((k-2)^2 + 4(k-1) sin^2 t) dt.
inline double ellipse_length(int k) {
    if (k < 1) throw DomainError("ellipse_length: k must be >= 1");
    const double kk = static_cast<double>(k);
    const double m = 4.0 * (kk - 1.0) / (kk * kk);
    return 4.0 * kk * elliptic_E(m);
}

} // namespace spherevol
