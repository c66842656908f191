#pragma once

// Latitude/longitude chart on the unit 2-sphere with both poles removed.
//
// Frame convention used throughout the library:
//   e1 = unit tangent to parallels, in the direction of increasing longitude
//   e2 = unit tangent to meridians, pointing north (increasing latitude)
// With this choice the meridians are geodesics (nabla_{e2} e2 = 0) and the
// parallels have geodesic curvature tan(alpha):
//   g(nabla_{e1} e1, e2) = tan(alpha).

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spherevol {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Latitudes closer than this to +-pi/2 are rejected rather than clamped,
// keeping tan(alpha) finite. Callers that need the pole limits go through
// the truncation margin of the quadrature module instead.
inline constexpr double kPoleRejectMargin = 1e-12;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Point on the punctured sphere, |alpha| < pi/2 strictly, beta in [0, 2pi).
struct SphericalPoint {
    double alpha; // latitude
    double beta;  // longitude

    SphericalPoint(double alpha_, double beta_) : alpha(alpha_) {
        if (!(std::abs(alpha_) < kHalfPi - kPoleRejectMargin))
            throw DomainError("SphericalPoint: latitude too close to a pole");
        beta = std::fmod(beta_, kTwoPi);
        if (beta < 0.0) beta += kTwoPi;
        if (beta >= kTwoPi) beta = 0.0; // fmod rounding at the seam
    }
};

/// Tag type documenting the {e1, e2} frame contract stated at the top of
/// this header. Carries no data; exists so code can name the convention.
struct FrameConvention {};

/// Jacobian of the (alpha, beta) chart against the area measure of S^2.
inline double area_element(const SphericalPoint& p) {
    return std::cos(p.alpha);
}

/// g(nabla_{e1} e1, e2) = tan(alpha); parallels fail to be geodesics by
/// exactly this amount.
inline double connection_coefficient(const SphericalPoint& p) {
    return std::tan(p.alpha);
}

} // namespace spherevol
