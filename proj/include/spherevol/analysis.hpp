#pragma once

// Headline computations: volume of a field, Poincare indexes at the
// punctures, the Stokes identity along parallels, and the lower-bound
// report vol(v) >= pi L(eps_k).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spherevol/curvature.hpp"
#include "spherevol/fields.hpp"
#include "spherevol/geometry.hpp"
#include "spherevol/quadrature.hpp"

namespace spherevol {

class IndexUndeterminedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Pole { North, South };

struct PoleIndex {
    int index;
    double winding;  // raw delta-theta / 2pi along the measuring parallel
    double residual; // distance of winding to the nearest integer
};

struct IndexReport {
    int index_north;
    int index_south;
    double winding;
    double residual;
};

struct StokesResult {
    double lhs;
    double rhs;
    double abs_diff;
};

struct BoundReport {
    QuadratureResult volume;
    IndexReport indexes;
    int k;            // max of the two indexes
    double bound;     // pi L(eps_k)
    double margin;    // volume - bound
    bool satisfied;
    bool k_in_theorem_range; // the theorem as stated covers k > 2
};

struct SweepRow {
    int k;
    double volume;
    double volume_error;
    double bound;
    double rel_gap;
};

inline QuadratureResult volume(const UnitField& field, const QuadratureConfig& cfg = {}) {
    auto g = [&](const SphericalPoint& p) { return volume_integrand(field, p); };
    if (const GridField* grid = field.underlying_grid()) {
        // Grid fields are only evaluable on their sampled latitude band; no
        // pole limits are involved, so plain truncated integration applies.
        long evals = 0;
        const int n_beta = 2 * std::max(64, grid->n_beta());
        auto profile = [&](double alpha) {
            auto h = [&](double beta) { return g(SphericalPoint(alpha, beta)); };
            return std::cos(alpha) * detail::trapezoid_periodic(h, n_beta, evals);
        };
        QuadratureResult r = integrate_1d(profile, grid->alpha_min(), grid->alpha_max(), cfg);
        r.evaluations = evals;
        return r;
    }
    return integrate_sphere(g, cfg);
}

namespace detail {

// Winding of theta along the parallel at the given latitude, in turns.
inline double winding_along_parallel(const UnitField& field, double latitude, int n_beta) {
    double total = 0.0;
    double prev = field.evaluate({latitude, 0.0}).theta;
    const double step = kTwoPi / n_beta;
    for (int j = 1; j <= n_beta; ++j) {
        const double beta = (j == n_beta) ? 0.0 : j * step;
        const double th = field.evaluate({latitude, beta}).theta;
        total += std::remainder(th - prev, kTwoPi);
        prev = th;
    }
    return total / kTwoPi;
}

// Measuring parallels for the two poles: clear of any bump support and
// inside the field's usable latitude band.
inline std::pair<double, double> measuring_latitudes(const UnitField& field) {
    auto [lat_lo, lat_hi] = field.latitude_range();
    double north = std::min(1.2, lat_hi);
    double south = std::max(-1.2, lat_lo);
    if (auto support = field.support_alpha_bounds()) {
        if (support->second >= north) north = 0.5 * (support->second + kHalfPi);
        if (support->first <= south) south = 0.5 * (support->first - kHalfPi);
    }
    return {north, south};
}

} // namespace detail

/// Poincare index of the field at a pole, measured along the parallel at
/// measuring_latitude. The frame {e1, e2} itself rotates once around each
/// pole, hence index = 1 + W at N and 1 - W at S, where W is the winding of
/// theta. Retries at doubled resolution before giving up.
inline PoleIndex poincare_index(const UnitField& field, Pole pole, double measuring_latitude,
                                int n_beta = 512) {
    if (!(std::abs(measuring_latitude) < kHalfPi))
        throw DomainError("poincare_index: measuring latitude out of range");
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double w = detail::winding_along_parallel(field, measuring_latitude, n_beta << attempt);
        const double rounded = std::round(w);
        const double residual = std::abs(w - rounded);
        if (residual <= 0.05) {
            const int wi = static_cast<int>(rounded);
            const int index = (pole == Pole::North) ? 1 + wi : 1 - wi;
            return {index, w, residual};
        }
    }
    throw IndexUndeterminedError("poincare_index: winding does not settle near an integer");
}

/// Indexes at both poles, measured on parallels clear of any perturbation.
/// For grid fields, every row must carry the same near-integer winding
/// (singularities live at the poles only); otherwise the data does not
/// describe a supported field and the index is undetermined.
inline IndexReport index_report(const UnitField& field, int n_beta = 512) {
    if (const GridField* grid = field.underlying_grid()) {
        const double w0 = std::round(grid->row_winding(0));
        for (int i = 0; i < grid->n_alpha(); ++i)
            if (std::abs(grid->row_winding(i) - w0) > 0.05)
                throw IndexUndeterminedError(
                    "index_report: grid row windings are inconsistent");
    }
    auto [lat_n, lat_s] = detail::measuring_latitudes(field);
    const PoleIndex n = poincare_index(field, Pole::North, lat_n, n_beta);
    const PoleIndex s = poincare_index(field, Pole::South, lat_s, n_beta);
    return {n.index, s.index, n.winding, std::max(n.residual, s.residual)};
}

/// Integral of the connection form pullback along the parallel at alpha
/// against its arc length (cos(alpha) dbeta), versus 2pi (k - 1 + sin(alpha)).
inline StokesResult stokes_check(const UnitField& field, double alpha, int n_beta = 512) {
    if (!(std::abs(alpha) < kHalfPi))
        throw DomainError("stokes_check: latitude out of range");
    const int k = index_report(field, n_beta).index_north;
    const double ca = std::cos(alpha);
    double sum = 0.0;
    const double step = kTwoPi / n_beta;
    for (int j = 0; j < n_beta; ++j)
        sum += connection_form_pullback(field, {alpha, j * step}) * ca;
    const double lhs = sum * step;
    const double rhs = kTwoPi * (k - 1 + std::sin(alpha));
    return {lhs, rhs, std::abs(lhs - rhs)};
}

inline BoundReport bound_report(const UnitField& field, const QuadratureConfig& cfg = {},
                                double bound_tolerance = 1e-6) {
    const IndexReport idx = index_report(field);
    const int k = std::max(idx.index_north, idx.index_south);
    if (k < 1)
        throw DomainError("bound_report: max index below 1 is outside the supported families");
    const QuadratureResult vol = volume(field, cfg);
    const double bound = kPi * ellipse_length(k);
    const double margin = vol.value - bound;
    return {vol,
            idx,
            k,
            bound,
            margin,
            margin >= -(vol.abs_error_estimate + bound_tolerance),
            k > 2};
}

/// One row per k: volume of the minimizing field v_k against pi L(eps_k).
inline std::vector<SweepRow> sweep(int k_min, int k_max, const QuadratureConfig& cfg = {}) {
    if (k_min < 1 || k_min > k_max)
        throw DomainError("sweep: requires 1 <= k_min <= k_max");
    std::vector<SweepRow> rows;
    rows.reserve(k_max - k_min + 1);
    for (int k = k_min; k <= k_max; ++k) {
        const QuadratureResult vol = volume(UnitField::spin(k), cfg);
        const double bound = kPi * ellipse_length(k);
        rows.push_back({k, vol.value, vol.abs_error_estimate, bound,
                        std::abs(vol.value - bound) / bound});
    }
    return rows;
}

} // namespace spherevol
