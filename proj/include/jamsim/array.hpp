#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "jamsim/error.hpp"
#include "jamsim/linalg.hpp"

namespace jamsim {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Arrival direction in degrees.
///
/// Convention used throughout: azimuth is measured from the +y axis toward
/// +x, elevation from the xy-plane toward +z, so the propagation unit vector
/// is u = (cos el * sin az, cos el * cos az, sin el).
///
/// Estimators scan the front hemisphere az in [-90, 90]; ground truth may
/// fall behind the array (|az| > 90), which a planar z=0 array cannot
/// represent in the scan range, so the full azimuth circle is accepted here.
struct Direction {
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;

    bool in_scan_range() const {
        return azimuth_deg >= -90.0 && azimuth_deg <= 90.0 &&
               elevation_deg >= -90.0 && elevation_deg <= 90.0;
    }
};

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

inline void validate_direction(const Direction& d) {
    if (!std::isfinite(d.azimuth_deg) || !std::isfinite(d.elevation_deg) ||
        d.azimuth_deg < -180.0 || d.azimuth_deg > 180.0 ||
        d.elevation_deg < -90.0 || d.elevation_deg > 90.0)
        throw ValidationError("direction out of range: azimuth in [-180, 180], elevation in [-90, 90]");
}

inline Vec3 direction_unit_vector(const Direction& d) {
    const double az = d.azimuth_deg * kDegToRad;
    const double el = d.elevation_deg * kDegToRad;
    return {std::cos(el) * std::sin(az), std::cos(el) * std::cos(az), std::sin(el)};
}

/// Inverse of direction_unit_vector. `v` need not be normalized.
inline Direction direction_from_vector(const Vec3& v) {
    const double n = norm(v);
    if (n <= 0.0)
        throw ValidationError("direction_from_vector: zero-length vector (source coincides with array center)");
    const double uz = v.z / n;
    Direction d;
    d.elevation_deg = std::asin(std::clamp(uz, -1.0, 1.0)) * kRadToDeg;
    d.azimuth_deg = (v.x == 0.0 && v.y == 0.0) ? 0.0 : std::atan2(v.x, v.y) * kRadToDeg;
    return d;
}

/// Great-circle angle between two directions, degrees.
inline double angular_distance_deg(const Direction& a, const Direction& b) {
    const double c = std::clamp(dot(direction_unit_vector(a), direction_unit_vector(b)), -1.0, 1.0);
    return std::acos(c) * kRadToDeg;
}

struct ArrayGeometry {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double spacing_m = 0.0;
    double wavelength_m = 0.0;
    std::vector<Vec3> element_positions;

    std::size_t element_count() const { return rows * cols; }
};

/// Builds a uniform rectangular array on the z=0 plane, centered at the
/// origin: element (r, c) sits at ((c - (N-1)/2)*d, (r - (M-1)/2)*d, 0).
inline ArrayGeometry make_ura(std::size_t rows, std::size_t cols,
                              double spacing_m, double wavelength_m) {
    if (rows < 1 || cols < 1)
        throw ValidationError("make_ura: rows and cols must be >= 1");
    if (!(spacing_m > 0.0))
        throw ValidationError("make_ura: spacing must be positive");
    if (!(wavelength_m > 0.0))
        throw ValidationError("make_ura: wavelength must be positive");
    ArrayGeometry g;
    g.rows = rows;
    g.cols = cols;
    g.spacing_m = spacing_m;
    g.wavelength_m = wavelength_m;
    g.element_positions.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            g.element_positions.push_back(
                {(static_cast<double>(c) - (static_cast<double>(cols) - 1.0) / 2.0) * spacing_m,
                 (static_cast<double>(r) - (static_cast<double>(rows) - 1.0) / 2.0) * spacing_m,
                 0.0});
    return g;
}

/// Plane-wave steering vector: entry i = exp(+j 2pi/lambda * p_i . u(az, el)).
/// Every entry has unit magnitude by construction.
inline std::vector<cplx> steering_vector(const ArrayGeometry& geom, const Direction& dir) {
    validate_direction(dir);
    const Vec3 u = direction_unit_vector(dir);
    const double k = 2.0 * std::numbers::pi / geom.wavelength_m;
    std::vector<cplx> a;
    a.reserve(geom.element_positions.size());
    for (const Vec3& p : geom.element_positions) {
        const double phase = k * dot(p, u);
        a.emplace_back(std::cos(phase), std::sin(phase));
    }
    return a;
}

} // namespace jamsim
