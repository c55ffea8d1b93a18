#include "cdsa/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cdsa {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_key(const std::string& origin, const std::string& section,
                          const std::string& key, const std::string& why) {
    throw std::invalid_argument(origin + ": key '" + key + "' in section [" + section + "]: " + why);
}

double parse_double(const std::string& origin, const std::string& section, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        bad_key(origin, section, key, "expected a number, got '" + value + "'");
    }
}

long parse_long(const std::string& origin, const std::string& section, const std::string& key,
                const std::string& value) {
    try {
        std::size_t used = 0;
        long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        bad_key(origin, section, key, "expected an integer, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& origin, const std::string& section,
                        const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        bad_key(origin, section, key, "expected a nonnegative integer, got '" + value + "'");
    }
}

std::vector<std::pair<int, int>> parse_edges(const std::string& origin, const std::string& section,
                                             const std::string& key, const std::string& value) {
    std::vector<std::pair<int, int>> edges;
    std::stringstream ss(value);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        auto dash = token.find('-');
        if (dash == std::string::npos)
            bad_key(origin, section, key, "edge '" + token + "' is not of the form i-j");
        try {
            int i = std::stoi(token.substr(0, dash));
            int j = std::stoi(token.substr(dash + 1));
            edges.emplace_back(i, j);
        } catch (const std::exception&) {
            bad_key(origin, section, key, "edge '" + token + "' is not of the form i-j");
        }
    }
    return edges;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (!token.empty()) items.push_back(token);
    }
    return items;
}

}  // namespace

TopologySpec parse_axis_point(std::string_view token) {
    auto colon = token.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("axis point '" + std::string(token) +
                                    "' is not of the form kind:n or mesh2d:RxC");
    TopologySpec spec;
    spec.kind = topology_kind_from_string(token.substr(0, colon));
    std::string size(token.substr(colon + 1));
    if (spec.kind == TopologyKind::mesh2d) {
        auto x = size.find('x');
        if (x == std::string::npos)
            throw std::invalid_argument("mesh2d axis point needs RxC, got '" + std::string(token) + "'");
        spec.rows = std::stoi(size.substr(0, x));
        spec.cols = std::stoi(size.substr(x + 1));
        spec.n = spec.rows * spec.cols;
    } else if (spec.kind == TopologyKind::custom) {
        throw std::invalid_argument("custom topologies cannot appear in an axis");
    } else {
        spec.n = std::stoi(size);
    }
    return spec;
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    bool n_set = false;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(origin + ": malformed section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "problem" && section != "topology" && section != "policy" &&
                section != "run" && section != "metrics" && section != "output" && section != "sweep")
                throw std::invalid_argument(origin + ": unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ": expected key = value at line " +
                                        std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw std::invalid_argument(origin + ": key '" + key + "' appears before any section");

        if (section == "problem") {
            if (key == "kind") {
                if (value == "ridge") cfg.problem.kind = ProblemSpec::Kind::ridge;
                else if (value == "logistic") cfg.problem.kind = ProblemSpec::Kind::logistic;
                else bad_key(origin, section, key, "expected ridge or logistic, got '" + value + "'");
            } else if (key == "learn_noise_std") {
                cfg.problem.learn_noise_std = parse_double(origin, section, key, value);
            } else if (key == "samples_per_agent") {
                cfg.problem.samples_per_agent = static_cast<int>(parse_long(origin, section, key, value));
            } else if (key == "data_seed") {
                cfg.problem.data_seed = parse_u64(origin, section, key, value);
            } else {
                bad_key(origin, section, key, "unknown key");
            }
        } else if (section == "topology") {
            if (key == "kind") cfg.topology.kind = topology_kind_from_string(value);
            else if (key == "n") { cfg.topology.n = static_cast<int>(parse_long(origin, section, key, value)); n_set = true; }
            else if (key == "rows") cfg.topology.rows = static_cast<int>(parse_long(origin, section, key, value));
            else if (key == "cols") cfg.topology.cols = static_cast<int>(parse_long(origin, section, key, value));
            else if (key == "edges") cfg.topology.edges = parse_edges(origin, section, key, value);
            else bad_key(origin, section, key, "unknown key");
        } else if (section == "policy") {
            if (key == "kind") {
                if (value == "explicit") cfg.policy.kind = PolicySpec::Kind::explicit_schedule;
                else if (value == "harmonic") cfg.policy.kind = PolicySpec::Kind::harmonic;
                else bad_key(origin, section, key, "expected explicit or harmonic, got '" + value + "'");
            } else if (key == "a") {
                cfg.policy.a = parse_double(origin, section, key, value);
            } else if (key == "b") {
                cfg.policy.b = parse_double(origin, section, key, value);
            } else if (key == "beta") {
                cfg.policy.beta = parse_double(origin, section, key, value);
            } else {
                bad_key(origin, section, key, "unknown key");
            }
        } else if (section == "run") {
            if (key == "kmax") cfg.k_max = parse_long(origin, section, key, value);
            else if (key == "paths") cfg.paths = parse_long(origin, section, key, value);
            else if (key == "master_seed") cfg.master_seed = parse_u64(origin, section, key, value);
            else if (key == "threads") cfg.threads = static_cast<int>(parse_long(origin, section, key, value));
            else if (key == "record_dense_until") cfg.record.dense_until = parse_long(origin, section, key, value);
            else if (key == "record_log_points") cfg.record.log_points = static_cast<int>(parse_long(origin, section, key, value));
            else bad_key(origin, section, key, "unknown key");
        } else if (section == "metrics") {
            if (key == "slope_k_lo") cfg.metrics.slope_k_lo = parse_double(origin, section, key, value);
            else if (key == "slope_k_hi") cfg.metrics.slope_k_hi = parse_double(origin, section, key, value);
            else if (key == "crossover_burn_in") cfg.metrics.crossover_burn_in = parse_long(origin, section, key, value);
            else bad_key(origin, section, key, "unknown key");
        } else if (section == "output") {
            if (key == "dir") cfg.output.dir = value;
            else if (key == "csv") cfg.output.csv = value;
            else if (key == "svg") cfg.output.svg = value;
            else bad_key(origin, section, key, "unknown key");
        } else if (section == "sweep") {
            if (key == "axis") {
                for (const auto& token : split_list(value))
                    cfg.sweep_axis.push_back(parse_axis_point(token));
            } else {
                bad_key(origin, section, key, "unknown key");
            }
        }
    }

    if (cfg.k_max < 1) throw std::invalid_argument(origin + ": key 'kmax' in section [run]: must be >= 1");
    if (cfg.paths < 1) throw std::invalid_argument(origin + ": key 'paths' in section [run]: must be >= 1");
    if (cfg.topology.kind == TopologyKind::mesh2d) {
        if (cfg.topology.rows < 1 || cfg.topology.cols < 1)
            throw std::invalid_argument(origin + ": key 'rows' in section [topology]: mesh2d requires rows and cols");
        if (n_set && cfg.topology.n != cfg.topology.rows * cfg.topology.cols)
            throw std::invalid_argument(origin + ": key 'n' in section [topology]: rows*cols != n");
        cfg.topology.n = cfg.topology.rows * cfg.topology.cols;
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.filename().string());
}

std::string to_string(ProblemSpec::Kind kind) {
    return kind == ProblemSpec::Kind::ridge ? "ridge" : "logistic";
}

std::string to_string(PolicySpec::Kind kind) {
    return kind == PolicySpec::Kind::explicit_schedule ? "explicit" : "harmonic";
}

std::string describe_topology(const TopologySpec& spec) {
    std::ostringstream os;
    os << to_string(spec.kind);
    if (spec.kind == TopologyKind::mesh2d) os << " " << spec.rows << "x" << spec.cols;
    else os << " n=" << spec.n;
    return os.str();
}

}  // namespace cdsa
