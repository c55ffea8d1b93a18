#pragma once

#include <filesystem>
#include <span>

#include "cdsa/config.hpp"
#include "cdsa/trace.hpp"

namespace cdsa {

// One row per recorded iteration, header k,U1,V1,U2,V2,mse_x,mse_theta.
// Doubles are printed with 17 significant digits, so equal traces produce
// byte-identical files.
void write_csv(const RunTrace& trace, const std::filesystem::path& path);

// Key = value sidecar with the trace metadata and the fully resolved
// configuration (defaults included).
void write_meta(const RunTrace& trace, const ExperimentConfig& cfg,
                const std::filesystem::path& path);

// Static log-log line plot of one metric against k, one polyline per trace,
// legend labelled by (topology, n).
void write_svg(std::span<const RunTrace> traces, Metric metric, const std::filesystem::path& path);

// Same plot for several metrics of a single trace, legend labelled by metric.
void write_svg(const RunTrace& trace, std::span<const Metric> metrics,
               const std::filesystem::path& path);

}  // namespace cdsa
