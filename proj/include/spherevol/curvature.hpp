#pragma once

// Geodesic curvatures of the frame {v_perp, v} and the volume integrand.
//
// Two routes to the same pair are kept on purpose: curvatures_closed uses
// the reduced expressions
//   gamma = cos(theta) (tan(alpha) + theta1) + sin(theta) theta2
//   delta = sin(theta) (tan(alpha) + theta1) - cos(theta) theta2
// and curvatures_expanded sums the eight raw connection terms they collapse
// from. Each is an executable oracle for the other.

#include <cmath>

#include "spherevol/fields.hpp"
#include "spherevol/geometry.hpp"

namespace spherevol {

struct CurvaturePair {
    double gamma; // g(nabla_v v, v_perp)
    double delta; // g(nabla_{v_perp} v_perp, v)
};

inline CurvaturePair curvatures_closed(double theta, double theta1, double theta2, double alpha) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double t = std::tan(alpha) + theta1;
    return {c * t + s * theta2, s * t - c * theta2};
}

inline CurvaturePair curvatures_expanded(double theta, double theta1, double theta2, double alpha) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double ta = std::tan(alpha);
    const double c2 = c * c, c3 = c2 * c, s2 = s * s, s3 = s2 * s;

    const double A = s2 * c * theta1 + c3 * ta;
    const double B = s3 * theta2;
    const double C = c3 * theta1 + s2 * c * ta;
    const double D = s * c2 * theta2;

    const double Ap = s * c2 * theta1 + s3 * ta;
    const double Bp = -c3 * theta2;
    const double Cp = s3 * theta1 + s * c2 * ta;
    const double Dp = -s2 * c * theta2;

    return {A + B + C + D, Ap + Bp + Cp + Dp};
}

/// sqrt(1 + (tan(alpha) + theta1)^2 + theta2^2); equals sqrt(1 + gamma^2 + delta^2).
/// The quadrature path always uses this reduced form.
inline double volume_integrand(const UnitField& field, const SphericalPoint& p) {
    const FieldSample s = field.evaluate(p);
    const double t = std::tan(p.alpha) + s.theta1;
    return std::sqrt(1.0 + t * t + s.theta2 * s.theta2);
}

/// Pullback of the connection form omega_12 of {v_perp, v} on e1 along the
/// parallel through p: i*(omega_12)(e1) = delta sin(theta) + gamma cos(theta)
/// = tan(alpha) + theta1.
inline double connection_form_pullback(const UnitField& field, const SphericalPoint& p) {
    return std::tan(p.alpha) + field.evaluate(p).theta1;
}

} // namespace spherevol
