#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cdsa/topology.hpp"

namespace cdsa {

struct ProblemSpec {
    enum class Kind { ridge, logistic };
    Kind kind = Kind::ridge;
    double learn_noise_std = 0.0;   // ridge
    int samples_per_agent = 200;    // logistic
    std::uint64_t data_seed = 2024; // logistic
};

struct TopologySpec {
    TopologyKind kind = TopologyKind::complete;
    int n = 2;
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<int, int>> edges;  // custom only
};

struct PolicySpec {
    enum class Kind { explicit_schedule, harmonic };
    Kind kind = Kind::explicit_schedule;
    double a = 20.0;
    double b = 20.0;
    double beta = 3.0;  // harmonic; K comes from the problem's analytic constants
};

struct RecordSpec {
    long dense_until = 100;  // record every iteration up to here
    int log_points = 100;    // then this many log-spaced checkpoints
};

struct MetricsSpec {
    double slope_k_lo = 0.0;      // 0 = auto: max(500, 0.1 k_max)
    double slope_k_hi = 0.0;      // 0 = auto: k_max
    long crossover_burn_in = 10;
};

struct OutputSpec {
    std::string dir;  // empty = resolved by the CLI (flag, then $CDSA_OUT_DIR, then "out")
    std::string csv = "trace.csv";
    std::string svg;  // empty = no svg
};

struct ExperimentConfig {
    ProblemSpec problem;
    TopologySpec topology;
    PolicySpec policy;
    long k_max = 1000;
    long paths = 1;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    RecordSpec record;
    MetricsSpec metrics;
    OutputSpec output;
    std::vector<TopologySpec> sweep_axis;  // optional [sweep] axis
};

// Parses the sectioned key = value config format. Unknown sections or keys
// and malformed values are errors that name the offender.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin);

// "path:5", "mesh2d:5x5", "complete:25" -> TopologySpec.
TopologySpec parse_axis_point(std::string_view token);

std::string to_string(ProblemSpec::Kind kind);
std::string to_string(PolicySpec::Kind kind);
std::string describe_topology(const TopologySpec& spec);

}  // namespace cdsa
