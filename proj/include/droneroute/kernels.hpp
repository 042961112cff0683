#pragma once

// Batch projection kernels. Each OpenMP kernel has a serial twin kept as the
// reference for tests and benchmarks; both produce bit-identical output since
// every element is computed independently.

#include <span>

#include "droneroute/geodesy.hpp"

namespace droneroute::kernels {

void project_serial(const LocalFrame& frame, std::span<const GeoPoint> in, std::span<LocalCoord> out);
void project_parallel(const LocalFrame& frame, std::span<const GeoPoint> in, std::span<LocalCoord> out);

void unproject_serial(const LocalFrame& frame, std::span<const LocalCoord> in, std::span<GeoPoint> out);
void unproject_parallel(const LocalFrame& frame, std::span<const LocalCoord> in, std::span<GeoPoint> out);

// Per-index absolute axis differences |a - b|; out_x/out_z sized like a.
void axis_errors_serial(std::span<const LocalCoord> a, std::span<const LocalCoord> b,
                        std::span<double> out_x, std::span<double> out_z);
void axis_errors_parallel(std::span<const LocalCoord> a, std::span<const LocalCoord> b,
                          std::span<double> out_x, std::span<double> out_z);

// Below this many elements the parallel kernels run inline.
inline constexpr std::size_t kParallelThreshold = 2048;

int max_threads() noexcept;

}  // namespace droneroute::kernels
