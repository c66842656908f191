#pragma once

// Glyph plots: orthographic view of one hemisphere with unit-length arrows
// at a regular grid of sample points. Arrows encode orientation only; the
// winding of the glyph pattern around the center shows the pole index.

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "spherevol/fields.hpp"
#include "spherevol/geometry.hpp"

namespace spherevol {

enum class Hemisphere { North, South };

/// In-view direction of the field at p: the 3D vector
/// v = cos(theta) e1 + sin(theta) e2 orthographically projected onto the
/// view plane, orientation-preserving as seen from outside the sphere.
inline std::array<double, 2> glyph_direction(const UnitField& field, Hemisphere hemi,
                                             const SphericalPoint& p) {
    const double th = field.evaluate(p).theta;
    const double sb = std::sin(p.beta), cb = std::cos(p.beta);
    const double sa = std::sin(p.alpha), ca = std::cos(p.alpha);
    // e1 = (-sb, cb, 0); e2 = (-sa cb, -sa sb, ca)
    const double vx = std::cos(th) * (-sb) + std::sin(th) * (-sa * cb);
    const double vy = std::cos(th) * cb + std::sin(th) * (-sa * sb);
    if (hemi == Hemisphere::North) return {vx, vy};
    return {vx, -vy}; // seen from below, one axis flips
}

/// In-view position of p (same projection as glyph_direction), radius 1.
inline std::array<double, 2> glyph_position(Hemisphere hemi, const SphericalPoint& p) {
    const double x = std::cos(p.alpha) * std::cos(p.beta);
    const double y = std::cos(p.alpha) * std::sin(p.beta);
    if (hemi == Hemisphere::North) return {x, y};
    return {x, -y};
}

/// Writes a standalone SVG. rings latitude circles between the rim and the
/// pole; glyph count per ring scales with the circumference. Output is a
/// pure function of the inputs.
inline void write_glyph_plot(std::ostream& out, const UnitField& field, Hemisphere hemi,
                             int rings = 12, int glyphs_at_rim = 48) {
    const int size = 800;
    const double cx = size / 2.0, cy = size / 2.0, R = 370.0;
    char buf[256];

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
        << "<defs><marker id=\"tip\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker></defs>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"none\" stroke=\"#888\"/>\n",
                  cx, cy, R);
    out << buf;

    const double sign = (hemi == Hemisphere::North) ? 1.0 : -1.0;
    const double glyph_len = 0.8 * R / (rings + 1);
    for (int i = 1; i <= rings; ++i) {
        const double alpha = sign * (static_cast<double>(i) / (rings + 1)) * (kHalfPi - 0.02);
        const int n = std::max(8, static_cast<int>(std::lround(glyphs_at_rim * std::cos(alpha))));
        for (int j = 0; j < n; ++j) {
            const SphericalPoint p(alpha, j * kTwoPi / n);
            const auto pos = glyph_position(hemi, p);
            auto dir = glyph_direction(field, hemi, p);
            const double norm = std::hypot(dir[0], dir[1]);
            if (norm < 1e-9) continue;
            dir[0] /= norm;
            dir[1] /= norm;
            // SVG y axis points down
            const double x0 = cx + R * pos[0] - 0.5 * glyph_len * dir[0];
            const double y0 = cy - R * pos[1] + 0.5 * glyph_len * dir[1];
            const double x1 = cx + R * pos[0] + 0.5 * glyph_len * dir[0];
            const double y1 = cy - R * pos[1] - 0.5 * glyph_len * dir[1];
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                          "stroke=\"black\" stroke-width=\"1.2\" marker-end=\"url(#tip)\"/>\n",
                          x0, y0, x1, y1);
            out << buf;
        }
    }
    out << "</svg>\n";
}

} // namespace spherevol
