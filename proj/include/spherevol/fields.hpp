#pragma once

// Unit vector fields on the punctured sphere, represented by the angle
// theta they make with the frame {e1, e2}:
//
//   v = (cos theta) e1 + (sin theta) e2
//
// A field is evaluated as (theta, theta1, theta2) where theta1 = dtheta(e1)
// and theta2 = dtheta(e2). Because e1, e2 are unit vectors (not coordinate
// vectors), theta1 = (1/cos alpha) dtheta/dbeta and theta2 = dtheta/dalpha.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spherevol/geometry.hpp"

namespace spherevol {

struct FieldSample {
    double theta;
    double theta1;
    double theta2;
};

/// Smooth compactly supported bump: amplitude * exp(1 - 1/(1 - (r/width)^2))
/// inside the geodesic disk of radius width around center, zero outside.
struct BumpSpec {
    double amplitude;
    SphericalPoint center;
    double width; // radians, > 0
};

namespace detail {

// Bump value and its chart derivatives d/dalpha, d/dbeta at p.
struct BumpEval {
    double value = 0.0;
    double d_alpha = 0.0;
    double d_beta = 0.0;
};

inline BumpEval eval_bump(const BumpSpec& b, const SphericalPoint& p) {
    const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
    const double cc = std::cos(b.center.alpha), sc = std::sin(b.center.alpha);
    const double db = p.beta - b.center.beta;
    double cosr = sa * sc + ca * cc * std::cos(db);
    cosr = std::clamp(cosr, -1.0, 1.0);
    const double r = std::acos(cosr);

    BumpEval out;
    const double u = r / b.width;
    const double om = 1.0 - u * u;
    // exp underflows long before om reaches 0; cutting here avoids 0*inf.
    if (u >= 1.0 || om < 1.5e-3) return out;

    const double f = std::exp(1.0 - 1.0 / om);
    out.value = f;

    const double sinr = std::sqrt(std::max(1.0 - cosr * cosr, 0.0));
    if (sinr < 1e-12) return out; // at the center: df/dr -> 0 faster than 1/sin r
    const double df_dr = f * (-2.0 * u / (om * om)) / b.width;
    const double dcos_da = ca * sc - sa * cc * std::cos(db);
    const double dcos_db = -ca * cc * std::sin(db);
    out.d_alpha = df_dr * (-dcos_da / sinr);
    out.d_beta = df_dr * (-dcos_db / sinr);
    return out;
}

} // namespace detail

/// theta sampled on a uniform cell-centered latitude grid (strictly inside
/// the open latitude interval) times a uniform periodic longitude grid.
/// theta is lifted to a continuous branch row by row; the accumulated
/// increment around each full beta loop is kept as the row winding.
/// Derivatives come from second-order finite differences at the nodes
/// (periodic in beta, one-sided at the first/last latitude rows) and are
/// interpolated bilinearly between nodes, as is theta itself.
class GridField {
public:
    GridField(int n_alpha, int n_beta, std::vector<double> theta_values)
        : na_(n_alpha), nb_(n_beta), theta_(std::move(theta_values)) {
        if (na_ < 8 || nb_ < 8)
            throw DomainError("GridField: grid must be at least 8x8");
        if (theta_.size() != static_cast<size_t>(na_) * nb_)
            throw DomainError("GridField: theta array size mismatch");
        h_alpha_ = kPi / na_;
        h_beta_ = kTwoPi / nb_;
        unwrap();
        differentiate();
    }

    int n_alpha() const { return na_; }
    int n_beta() const { return nb_; }
    double alpha_at(int i) const { return -kHalfPi + (i + 0.5) * h_alpha_; }
    double beta_at(int j) const { return j * h_beta_; }
    double alpha_min() const { return alpha_at(0); }
    double alpha_max() const { return alpha_at(na_ - 1); }
    double theta_node(int i, int j) const { return theta_[idx(i, j)]; }

    /// Total theta increment over one full beta loop at row i, in turns.
    double row_winding(int i) const { return winding_[i]; }

    FieldSample evaluate(const SphericalPoint& p) const {
        if (p.alpha < alpha_min() - 1e-14 || p.alpha > alpha_max() + 1e-14)
            throw DomainError("GridField: latitude outside the sampled range");
        double ta = (p.alpha - alpha_at(0)) / h_alpha_;
        int i0 = std::clamp(static_cast<int>(std::floor(ta)), 0, na_ - 2);
        double fa = std::clamp(ta - i0, 0.0, 1.0);

        double tb = p.beta / h_beta_;
        int j0 = static_cast<int>(std::floor(tb)) % nb_;
        double fb = tb - std::floor(tb);

        auto bilerp = [&](auto&& node) {
            double v00 = node(i0, j0), v01 = node(i0, j0 + 1);
            double v10 = node(i0 + 1, j0), v11 = node(i0 + 1, j0 + 1);
            return (1 - fa) * ((1 - fb) * v00 + fb * v01) + fa * ((1 - fb) * v10 + fb * v11);
        };
        return {bilerp([&](int i, int j) { return theta_wrapped(i, j); }),
                bilerp([&](int i, int j) { return theta1_[idx(i, j % nb_)]; }),
                bilerp([&](int i, int j) { return theta2_[idx(i, j % nb_)]; })};
    }

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * nb_ + j; }

    // theta at column j, continuing past the seam by one full winding.
    double theta_wrapped(int i, int j) const {
        if (j < nb_) return theta_[idx(i, j)];
        return theta_[idx(i, j - nb_)] + winding_[i] * kTwoPi;
    }

    void unwrap() {
        winding_.resize(na_);
        for (int i = 0; i < na_; ++i) {
            double first = theta_[idx(i, 0)];
            for (int j = 1; j < nb_; ++j) {
                double step = std::remainder(theta_[idx(i, j)] - theta_[idx(i, j - 1)], kTwoPi);
                theta_[idx(i, j)] = theta_[idx(i, j - 1)] + step;
            }
            double close = std::remainder(first - theta_[idx(i, nb_ - 1)], kTwoPi);
            winding_[i] = (theta_[idx(i, nb_ - 1)] + close - first) / kTwoPi;
            if (i > 0) {
                // keep adjacent rows on the same branch
                double shift = kTwoPi * std::round((theta_[idx(i - 1, 0)] - first) / kTwoPi);
                if (shift != 0.0)
                    for (int j = 0; j < nb_; ++j) theta_[idx(i, j)] += shift;
            }
        }
    }

    void differentiate() {
        theta1_.resize(theta_.size());
        theta2_.resize(theta_.size());
        for (int i = 0; i < na_; ++i) {
            double sec = 1.0 / std::cos(alpha_at(i));
            for (int j = 0; j < nb_; ++j) {
                double tp = (j + 1 < nb_) ? theta_[idx(i, j + 1)]
                                          : theta_[idx(i, 0)] + winding_[i] * kTwoPi;
                double tm = (j > 0) ? theta_[idx(i, j - 1)]
                                    : theta_[idx(i, nb_ - 1)] - winding_[i] * kTwoPi;
                theta1_[idx(i, j)] = sec * (tp - tm) / (2.0 * h_beta_);

                double d;
                if (i == 0)
                    d = (-3.0 * theta_[idx(0, j)] + 4.0 * theta_[idx(1, j)] - theta_[idx(2, j)]) / (2.0 * h_alpha_);
                else if (i == na_ - 1)
                    d = (3.0 * theta_[idx(i, j)] - 4.0 * theta_[idx(i - 1, j)] + theta_[idx(i - 2, j)]) / (2.0 * h_alpha_);
                else
                    d = (theta_[idx(i + 1, j)] - theta_[idx(i - 1, j)]) / (2.0 * h_alpha_);
                theta2_[idx(i, j)] = d;
            }
        }
    }

    int na_, nb_;
    double h_alpha_, h_beta_;
    std::vector<double> theta_, theta1_, theta2_;
    std::vector<double> winding_;
};

/// Immutable unit vector field. All evaluation is pure.
class UnitField {
public:
    /// theta = (k-1) beta: index k at N, 2-k at S, the minimizer of its
    /// index class. Defined for every integer k >= 1 (k = 2 included).
    static UnitField spin(int k) {
        if (k < 1) throw DomainError("spin: k must be >= 1");
        return UnitField(Spin{k});
    }

    /// v = e2 everywhere (theta = pi/2); same field as spin(1).
    static UnitField north_south() { return UnitField(NorthSouth{}); }

    static UnitField grid(GridField g) { return UnitField(std::move(g)); }

    /// theta_new = theta_base + amplitude * bump. The bump support must stay
    /// away from both poles, so the indexes at N and S are unchanged.
    static UnitField perturbed(UnitField base, BumpSpec bump) {
        if (bump.width <= 0.0)
            throw DomainError("perturbed: bump width must be positive");
        if (std::abs(bump.center.alpha) + bump.width >= kHalfPi - 1e-6)
            throw DomainError("perturbed: bump support touches a pole");
        return UnitField(Perturbed{std::make_shared<UnitField>(std::move(base)), bump});
    }

    FieldSample evaluate(const SphericalPoint& p) const {
        return std::visit(
            [&](const auto& f) -> FieldSample {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, Spin>) {
                    double km1 = f.k - 1;
                    return {km1 * p.beta, km1 / std::cos(p.alpha), 0.0};
                } else if constexpr (std::is_same_v<T, NorthSouth>) {
                    return {kHalfPi, 0.0, 0.0};
                } else if constexpr (std::is_same_v<T, GridField>) {
                    return f.evaluate(p);
                } else {
                    FieldSample s = f.base->evaluate(p);
                    auto b = detail::eval_bump(f.bump, p);
                    double a = f.bump.amplitude;
                    return {s.theta + a * b.value,
                            s.theta1 + a * b.d_beta / std::cos(p.alpha),
                            s.theta2 + a * b.d_alpha};
                }
            },
            kind_);
    }

    /// (cos theta, sin theta): components of v against {e1, e2}.
    std::pair<double, double> vector_components(const SphericalPoint& p) const {
        double th = evaluate(p).theta;
        return {std::cos(th), std::sin(th)};
    }

    /// Latitude band touched by perturbation bumps, if any (union over
    /// nested perturbations). Index measurements pick parallels outside it.
    std::optional<std::pair<double, double>> support_alpha_bounds() const {
        if (const auto* pert = std::get_if<Perturbed>(&kind_)) {
            double lo = pert->bump.center.alpha - pert->bump.width;
            double hi = pert->bump.center.alpha + pert->bump.width;
            if (auto inner = pert->base->support_alpha_bounds()) {
                lo = std::min(lo, inner->first);
                hi = std::max(hi, inner->second);
            }
            return std::make_pair(lo, hi);
        }
        return std::nullopt;
    }

    /// Usable latitude interval (restricted for grid fields).
    std::pair<double, double> latitude_range() const {
        if (const auto* g = std::get_if<GridField>(&kind_))
            return {g->alpha_min(), g->alpha_max()};
        if (const auto* pert = std::get_if<Perturbed>(&kind_))
            return pert->base->latitude_range();
        return {-kHalfPi, kHalfPi};
    }

    bool is_grid() const { return std::holds_alternative<GridField>(kind_); }
    const GridField* as_grid() const { return std::get_if<GridField>(&kind_); }

    /// Grid underneath any stack of perturbations, if there is one.
    const GridField* underlying_grid() const {
        if (const auto* pert = std::get_if<Perturbed>(&kind_))
            return pert->base->underlying_grid();
        return as_grid();
    }

    std::string describe() const {
        return std::visit(
            [](const auto& f) -> std::string {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, Spin>)
                    return "spin(k=" + std::to_string(f.k) + ")";
                else if constexpr (std::is_same_v<T, NorthSouth>)
                    return "north_south";
                else if constexpr (std::is_same_v<T, GridField>)
                    return "grid(" + std::to_string(f.n_alpha()) + "x" + std::to_string(f.n_beta()) + ")";
                else
                    return "perturbed(" + f.base->describe() + ")";
            },
            kind_);
    }

private:
    struct Spin {
        int k;
    };
    struct NorthSouth {};
    struct Perturbed {
        std::shared_ptr<const UnitField> base;
        BumpSpec bump;
    };

    using Kind = std::variant<Spin, NorthSouth, GridField, Perturbed>;
    explicit UnitField(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

/// Sample an analytic field's theta on an n_alpha x n_beta grid.
inline GridField make_grid(const UnitField& field, int n_alpha, int n_beta) {
    if (n_alpha < 8 || n_beta < 8)
        throw DomainError("make_grid: grid must be at least 8x8");
    std::vector<double> theta(static_cast<size_t>(n_alpha) * n_beta);
    const double h_alpha = kPi / n_alpha, h_beta = kTwoPi / n_beta;
    for (int i = 0; i < n_alpha; ++i) {
        double a = -kHalfPi + (i + 0.5) * h_alpha;
        for (int j = 0; j < n_beta; ++j)
            theta[static_cast<size_t>(i) * n_beta + j] = field.evaluate({a, j * h_beta}).theta;
    }
    return GridField(n_alpha, n_beta, std::move(theta));
}

inline UnitField perturb(UnitField base, BumpSpec bump) {
    return UnitField::perturbed(std::move(base), std::move(bump));
}

/// Random bump with support well inside the chart; used by the perturbation
/// test families and by the CLI's seeded descriptors.
inline BumpSpec random_bump(std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(0.0, 0.5);
    std::uniform_real_distribution<double> lat(-0.9, 0.9);
    std::uniform_real_distribution<double> lon(0.0, kTwoPi);
    std::uniform_real_distribution<double> wid(0.2, 0.5);
    double a = amp(rng);
    if (a == 0.0) a = 0.25;
    return {a, SphericalPoint(lat(rng), lon(rng)), wid(rng)};
}

} // namespace spherevol
