#include "droneroute/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "droneroute/error.hpp"

namespace droneroute::kernels {

namespace {

void check_sizes(std::size_t in, std::size_t out) {
    if (in != out) throw Error(ErrorCode::Domain, "kernel output span size mismatch");
}

void check_projectable(const LocalFrame& frame) {
    if (frame.meters_per_degree_lon() == 0.0) {
        throw Error(ErrorCode::Domain, "degenerate home: cosine factor is zero");
    }
}

[[noreturn]] void throw_non_finite() { throw Error(ErrorCode::Domain, "non-finite coordinate in batch"); }

}  // namespace

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void project_serial(const LocalFrame& frame, std::span<const GeoPoint> in, std::span<LocalCoord> out) {
    check_sizes(in.size(), out.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (!std::isfinite(in[i].latitude_deg) || !std::isfinite(in[i].longitude_deg)) throw_non_finite();
        out[i] = frame.to_local_unchecked(in[i]);
    }
}

void project_parallel(const LocalFrame& frame, std::span<const GeoPoint> in, std::span<LocalCoord> out) {
    check_sizes(in.size(), out.size());
    const auto n = static_cast<std::int64_t>(in.size());
    int bad = 0;
#pragma omp parallel for schedule(static) reduction(| : bad) if (in.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        const GeoPoint p = in[i];
        bad |= !(std::isfinite(p.latitude_deg) && std::isfinite(p.longitude_deg));
        out[i] = frame.to_local_unchecked(p);
    }
    if (bad) throw_non_finite();
}

void unproject_serial(const LocalFrame& frame, std::span<const LocalCoord> in, std::span<GeoPoint> out) {
    check_sizes(in.size(), out.size());
    check_projectable(frame);
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (!std::isfinite(in[i].x_m) || !std::isfinite(in[i].z_m)) throw_non_finite();
        out[i] = frame.from_local_unchecked(in[i]);
    }
}

void unproject_parallel(const LocalFrame& frame, std::span<const LocalCoord> in, std::span<GeoPoint> out) {
    check_sizes(in.size(), out.size());
    check_projectable(frame);
    const auto n = static_cast<std::int64_t>(in.size());
    int bad = 0;
#pragma omp parallel for schedule(static) reduction(| : bad) if (in.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        const LocalCoord c = in[i];
        bad |= !(std::isfinite(c.x_m) && std::isfinite(c.z_m));
        out[i] = frame.from_local_unchecked(c);
    }
    if (bad) throw_non_finite();
}

void axis_errors_serial(std::span<const LocalCoord> a, std::span<const LocalCoord> b,
                        std::span<double> out_x, std::span<double> out_z) {
    check_sizes(a.size(), b.size());
    check_sizes(a.size(), out_x.size());
    check_sizes(a.size(), out_z.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out_x[i] = std::fabs(a[i].x_m - b[i].x_m);
        out_z[i] = std::fabs(a[i].z_m - b[i].z_m);
    }
}

void axis_errors_parallel(std::span<const LocalCoord> a, std::span<const LocalCoord> b,
                          std::span<double> out_x, std::span<double> out_z) {
    check_sizes(a.size(), b.size());
    check_sizes(a.size(), out_x.size());
    check_sizes(a.size(), out_z.size());
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        out_x[i] = std::fabs(a[i].x_m - b[i].x_m);
        out_z[i] = std::fabs(a[i].z_m - b[i].z_m);
    }
}

}  // namespace droneroute::kernels
