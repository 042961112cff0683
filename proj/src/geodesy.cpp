#include "droneroute/geodesy.hpp"

#include <cmath>
#include <string>

#include "droneroute/error.hpp"

namespace droneroute {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw Error(ErrorCode::Domain, std::string("non-finite ") + what);
}

}  // namespace

std::string_view mode_name(GeodesyMode mode) {
    return mode == GeodesyMode::PaperFaithful ? "paper" : "corrected";
}

GeodesyMode parse_mode(std::string_view text) {
    if (text == "paper" || text == "paper-faithful" || text == "PaperFaithful") return GeodesyMode::PaperFaithful;
    if (text == "corrected" || text == "Corrected") return GeodesyMode::Corrected;
    throw Error(ErrorCode::Domain, "unknown geodesy mode '" + std::string(text) + "'");
}

double default_radius(GeodesyMode mode) noexcept {
    return mode == GeodesyMode::PaperFaithful ? kPaperEarthRadiusM : kWgs84EquatorialRadiusM;
}

double cosine_factor(double home_latitude_deg, GeodesyMode mode) noexcept {
    if (mode == GeodesyMode::PaperFaithful) return std::cos(home_latitude_deg * 180.0 / kPi);
    return std::cos(home_latitude_deg * kPi / 180.0);
}

LocalFrame::LocalFrame(HomePoint home, GeodesyMode mode) : LocalFrame(home, mode, default_radius(mode)) {}

LocalFrame::LocalFrame(HomePoint home, GeodesyMode mode, double earth_radius_m)
    : home_(home), mode_(mode), radius_(earth_radius_m) {
    require_finite(home.latitude_deg, "home latitude");
    require_finite(home.longitude_deg, "home longitude");
    if (!std::isfinite(earth_radius_m) || earth_radius_m <= 0.0) {
        throw Error(ErrorCode::Domain, "earth radius must be positive");
    }
    m_per_deg_lat_ = kPi * radius_ / 180.0;
    m_per_deg_lon_ = m_per_deg_lat_ * cosine_factor(home.latitude_deg, mode);
}

LocalCoord LocalFrame::to_local(GeoPoint p) const {
    require_finite(p.latitude_deg, "latitude");
    require_finite(p.longitude_deg, "longitude");
    return to_local_unchecked(p);
}

GeoPoint LocalFrame::from_local(LocalCoord c) const {
    return offset(home_.position(), c);
}

GeoPoint LocalFrame::offset(GeoPoint p, LocalCoord delta) const {
    require_finite(delta.x_m, "local x");
    require_finite(delta.z_m, "local z");
    if (m_per_deg_lon_ == 0.0) throw Error(ErrorCode::Domain, "degenerate home: cosine factor is zero");
    return {p.latitude_deg + delta.z_m / m_per_deg_lat_, p.longitude_deg + delta.x_m / m_per_deg_lon_};
}

LocalCoord to_local(HomePoint home, GeoPoint p, GeodesyMode mode) { return LocalFrame(home, mode).to_local(p); }

GeoPoint from_local(HomePoint home, LocalCoord c, GeodesyMode mode) { return LocalFrame(home, mode).from_local(c); }

double leg_length_3d(const PathPoint& a, const PathPoint& b, HomePoint home, GeodesyMode mode) {
    LocalFrame frame(home, mode);
    auto la = frame.to_local(position_of(a));
    auto lb = frame.to_local(position_of(b));
    double dx = lb.x_m - la.x_m;
    double dy = b.altitude_m - a.altitude_m;
    double dz = lb.z_m - la.z_m;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace droneroute
