// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "spherevol/analysis.hpp"
#include "spherevol/curvature.hpp"
#include "spherevol/fields.hpp"
#include "spherevol/quadrature.hpp"

using namespace spherevol;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Equality family: |vol(spin(k)) - pi L(eps_k)| / (pi L(eps_k)) <= 1e-6
//    for k in {1, 3, 4, 5, 10}, within 10 s.
void criterion_equality_family() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int k : {1, 3, 4, 5, 10}) {
        auto vol = volume(UnitField::spin(k));
        const double bound = kPi * ellipse_length(k);
        worst = std::max(worst, std::abs(vol.value - bound) / bound);
    }
    const double dt = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "max rel gap %.3e, %.2f s", worst, dt);
    report(1, "equality family vol(v_k) = pi L(eps_k)", worst <= 1e-6 && dt < 10.0, detail);
}

// 2. Known values: vol(north_south) = 2 pi^2 within 1e-7 relative; the k = 4
//    bound equals 16 pi E(0.75) and matches direct quadrature to 1e-9 relative.
void criterion_known_values() {
    auto ns = volume(UnitField::north_south());
    const double ns_target = 2.0 * kPi * kPi;
    const double ns_gap = std::abs(ns.value - ns_target) / ns_target;

    const double agm = kPi * ellipse_length(4);
    const double sixteen_pi_E = 16.0 * kPi * elliptic_E(0.75);
    auto quad = integrate_1d(
        [](double t) { return std::sqrt(4.0 + 12.0 * std::pow(std::sin(t), 2)); }, 0.0, kHalfPi);
    const double direct = 4.0 * kPi * quad.value;
    const double cross_gap =
        std::max(std::abs(agm - sixteen_pi_E), std::abs(agm - direct)) / agm;

    char detail[128];
    std::snprintf(detail, sizeof detail, "north_south rel %.3e, k=4 cross-oracle rel %.3e", ns_gap,
                  cross_gap);
    report(2, "known values 2 pi^2 and 16 pi E(0.75)", ns_gap <= 1e-7 && cross_gap <= 1e-9,
           detail);
}

// 3. Proposition identity on 1e4 random samples: expanded vs closed to 1e-12
//    absolute; 1 + gamma^2 + delta^2 vs reduced form to 1e-10 relative.
void criterion_proposition_identity() {
    std::mt19937 rng(193);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    std::uniform_real_distribution<double> deriv(-5.0, 5.0);
    std::uniform_real_distribution<double> lat(-1.5, 1.5);
    double worst_pair = 0.0, worst_identity = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double th = ang(rng), t1 = deriv(rng), t2 = deriv(rng), a = lat(rng);
        auto c = curvatures_closed(th, t1, t2, a);
        auto e = curvatures_expanded(th, t1, t2, a);
        worst_pair = std::max({worst_pair, std::abs(c.gamma - e.gamma), std::abs(c.delta - e.delta)});
        const double t = std::tan(a) + t1;
        const double reduced = 1.0 + t * t + t2 * t2;
        const double raw = 1.0 + c.gamma * c.gamma + c.delta * c.delta;
        worst_identity = std::max(worst_identity, std::abs(raw - reduced) / reduced);
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "max term diff %.3e, max identity rel %.3e", worst_pair,
                  worst_identity);
    report(3, "proposition identity (expanded vs closed)",
           worst_pair <= 1e-12 && worst_identity <= 1e-10, detail);
}

// 4. Stokes identity: k in {1,3,4,7}, 5 latitudes, 1e-9 absolute.
void criterion_stokes() {
    double worst = 0.0;
    for (int k : {1, 3, 4, 7})
        for (double a : {-1.2, -0.5, 0.0, 0.5, 1.2})
            worst = std::max(worst, stokes_check(UnitField::spin(k), a).abs_diff);
    char detail[64];
    std::snprintf(detail, sizeof detail, "max |lhs - rhs| %.3e", worst);
    report(4, "Stokes identity 2 pi (k - 1 + sin a)", worst <= 1e-9, detail);
}

// 5. Index correctness: spin(k) gives (k, 2-k) for k = 1..12; indexes sum to
//    2 for every supported kind including 50 random perturbed fields.
void criterion_indexes() {
    bool ok = true;
    for (int k = 1; k <= 12 && ok; ++k) {
        auto r = index_report(UnitField::spin(k));
        ok = r.index_north == k && r.index_south == 2 - k;
    }
    ok = ok && index_report(UnitField::north_south()).index_north == 1;
    {
        auto g = index_report(UnitField::grid(make_grid(UnitField::spin(5), 64, 64)));
        ok = ok && g.index_north + g.index_south == 2;
    }
    std::mt19937 rng(555);
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const int k = 3 + static_cast<int>(rng() % 3);
        auto r = index_report(perturb(UnitField::spin(k), random_bump(rng)));
        ok = r.index_north + r.index_south == 2 && r.index_north == k;
    }
    report(5, "Poincare indexes (k, 2-k) and index sum 2", ok);
}

// 6. Theorem inequality on 50 random perturbed spin(k) fields, k in {3,4,5}:
//    all satisfied; amplitude >= 0.05 implies margin > 10x the error estimate.
//    Runtime <= 2 min.
void criterion_inequality() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(777);
    bool ok = true;
    int strict = 0;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const int k = 3 + static_cast<int>(rng() % 3);
        BumpSpec bump = random_bump(rng);
        auto r = bound_report(perturb(UnitField::spin(k), bump));
        ok = r.satisfied;
        if (bump.amplitude >= 0.05) {
            ok = ok && r.margin > 10.0 * r.volume.abs_error_estimate;
            ++strict;
        }
    }
    const double dt = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d strict-margin cases, %.1f s", strict, dt);
    report(6, "theorem inequality on random perturbed fields", ok && dt <= 120.0, detail);
}

// 7. Quadrature sanity: sphere area 4 pi to 1e-8 relative; E(0) = pi/2 and
//    E(1) = 1 to 1e-14.
void criterion_quadrature_sanity() {
    auto area = integrate_sphere([](const SphericalPoint&) { return 1.0; });
    const double area_gap = std::abs(area.value - 4.0 * kPi) / (4.0 * kPi);
    const double e0_gap = std::abs(elliptic_E(0.0) - kHalfPi);
    const double e1_gap = std::abs(elliptic_E(1.0) - 1.0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "area rel %.3e, E(0) err %.3e, E(1) err %.3e", area_gap,
                  e0_gap, e1_gap);
    report(7, "quadrature sanity (4 pi, E endpoints)",
           area_gap <= 1e-8 && e0_gap <= 1e-14 && e1_gap <= 1e-14, detail);
}

// 8. Grid convergence: finite-difference derivatives of make_grid(spin(3))
//    converge at O(h^2): error ratio in [3.5, 4.5] under two halvings.
void criterion_grid_convergence() {
    std::vector<double> errs;
    for (int n : {64, 128, 256}) {
        auto g = UnitField::grid(make_grid(UnitField::spin(3), n, 64));
        double e = 0.0;
        for (double beta : {0.4, 1.7, 4.1}) {
            auto s = g.evaluate({0.0, beta});
            e = std::max({e, std::abs(s.theta1 - 2.0), std::abs(s.theta2)});
        }
        errs.push_back(e);
    }
    const double r1 = errs[0] / errs[1];
    const double r2 = errs[1] / errs[2];
    char detail[64];
    std::snprintf(detail, sizeof detail, "ratios %.3f, %.3f", r1, r2);
    report(8, "grid derivative O(h^2) convergence",
           r1 >= 3.5 && r1 <= 4.5 && r2 >= 3.5 && r2 <= 4.5, detail);
}

} // namespace

int main() {
    criterion_equality_family();
    criterion_known_values();
    criterion_proposition_identity();
    criterion_stokes();
    criterion_indexes();
    criterion_inequality();
    criterion_quadrature_sanity();
    criterion_grid_convergence();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
