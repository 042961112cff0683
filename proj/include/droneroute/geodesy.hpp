#pragma once

// Home-relative equirectangular projection.
//
//   z = pi * R * (lat - lat_home) / 180
//   x = pi * R * cosfactor(lat_home) * (lon - lon_home) / 180
//
// PaperFaithful evaluates cosfactor as cos(lat_home * 180 / pi), i.e. the
// degree value is scaled the wrong way before being passed to cos(); this is
// what reproduces the published field-test tables. Corrected uses
// cos(lat_home * pi / 180) and the WGS84 equatorial radius.

#include <optional>
#include <string_view>

#include "droneroute/mission.hpp"

namespace droneroute {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPaperEarthRadiusM = 6378000.0;
inline constexpr double kWgs84EquatorialRadiusM = 6378137.0;

enum class GeodesyMode { PaperFaithful, Corrected };

std::string_view mode_name(GeodesyMode mode);
// Accepts "paper", "paper-faithful", "corrected".
GeodesyMode parse_mode(std::string_view text);

struct GeoPoint {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;

    bool operator==(const GeoPoint&) const = default;
};

struct HomePoint {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;

    bool operator==(const HomePoint&) const = default;
    GeoPoint position() const { return {latitude_deg, longitude_deg}; }
};

struct LocalCoord {
    double x_m = 0.0;
    double z_m = 0.0;

    bool operator==(const LocalCoord&) const = default;
};

double default_radius(GeodesyMode mode) noexcept;
double cosine_factor(double home_latitude_deg, GeodesyMode mode) noexcept;

// Precomputed projection around one home point. Cheap to copy.
class LocalFrame {
public:
    LocalFrame(HomePoint home, GeodesyMode mode);
    LocalFrame(HomePoint home, GeodesyMode mode, double earth_radius_m);

    LocalCoord to_local(GeoPoint p) const;
    // Throws Error{Domain} when the cosine factor is zero.
    GeoPoint from_local(LocalCoord c) const;
    // p shifted by a local-frame displacement; offset(p, {0,0}) == p exactly.
    GeoPoint offset(GeoPoint p, LocalCoord delta) const;

    // No finiteness checks; used by the batch kernels.
    LocalCoord to_local_unchecked(GeoPoint p) const noexcept {
        return {(p.longitude_deg - home_.longitude_deg) * m_per_deg_lon_,
                (p.latitude_deg - home_.latitude_deg) * m_per_deg_lat_};
    }
    GeoPoint from_local_unchecked(LocalCoord c) const noexcept {
        return {home_.latitude_deg + c.z_m / m_per_deg_lat_, home_.longitude_deg + c.x_m / m_per_deg_lon_};
    }

    const HomePoint& home() const noexcept { return home_; }
    GeodesyMode mode() const noexcept { return mode_; }
    double earth_radius() const noexcept { return radius_; }
    double meters_per_degree_lat() const noexcept { return m_per_deg_lat_; }
    double meters_per_degree_lon() const noexcept { return m_per_deg_lon_; }

private:
    HomePoint home_;
    GeodesyMode mode_;
    double radius_;
    double m_per_deg_lat_;
    double m_per_deg_lon_;
};

LocalCoord to_local(HomePoint home, GeoPoint p, GeodesyMode mode);
GeoPoint from_local(HomePoint home, LocalCoord c, GeodesyMode mode);

// 3D distance between two waypoints in the home frame (x, altitude, z).
double leg_length_3d(const PathPoint& a, const PathPoint& b, HomePoint home, GeodesyMode mode);

inline GeoPoint position_of(const PathPoint& p) { return {p.latitude_deg, p.longitude_deg}; }

}  // namespace droneroute
