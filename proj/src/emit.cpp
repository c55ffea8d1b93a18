#include "cdsa/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cdsa {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_csv(const RunTrace& trace, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "k,U1,V1,U2,V2,mse_x,mse_theta\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << trace.recorded_k[i] << ',' << fmt(trace.u1[i]) << ',' << fmt(trace.v1[i]) << ','
            << fmt(trace.u2[i]) << ',' << fmt(trace.v2[i]) << ',' << fmt(trace.mse_x[i]) << ','
            << fmt(trace.mse_theta[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_meta(const RunTrace& trace, const ExperimentConfig& cfg,
                const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "topology = " << trace.meta.topology << '\n';
    out << "n = " << trace.meta.n << '\n';
    out << "rho_w = " << fmt(trace.meta.rho_w) << '\n';
    out << "spectral_gap = " << fmt(1.0 - trace.meta.rho_w) << '\n';
    out << "paths = " << trace.meta.paths << '\n';
    out << "master_seed = " << trace.meta.seed << '\n';
    out << "policy = " << trace.meta.policy << '\n';
    out << "kmax = " << trace.meta.k_max << '\n';
    out << "recorded_points = " << trace.size() << '\n';
    out << "max_x_deviation = " << fmt(trace.meta.max_x_dev) << '\n';
    out << "max_theta_deviation = " << fmt(trace.meta.max_theta_dev) << '\n';
    out << "problem.kind = " << to_string(cfg.problem.kind) << '\n';
    out << "problem.learn_noise_std = " << fmt(cfg.problem.learn_noise_std) << '\n';
    out << "problem.samples_per_agent = " << cfg.problem.samples_per_agent << '\n';
    out << "problem.data_seed = " << cfg.problem.data_seed << '\n';
    out << "policy.kind = " << to_string(cfg.policy.kind) << '\n';
    out << "policy.a = " << fmt(cfg.policy.a) << '\n';
    out << "policy.b = " << fmt(cfg.policy.b) << '\n';
    out << "policy.beta = " << fmt(cfg.policy.beta) << '\n';
    out << "record.dense_until = " << cfg.record.dense_until << '\n';
    out << "record.log_points = " << cfg.record.log_points << '\n';
    out << "metrics.slope_k_lo = " << fmt(cfg.metrics.slope_k_lo) << '\n';
    out << "metrics.slope_k_hi = " << fmt(cfg.metrics.slope_k_hi) << '\n';
    out << "metrics.crossover_burn_in = " << cfg.metrics.crossover_burn_in << '\n';
    out << "threads = " << cfg.threads << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

namespace {

// One log-log polyline with its legend label.
struct Series {
    std::vector<std::pair<double, double>> pts;  // (log10 k, log10 value)
    std::string label;
};

Series collect_series(const RunTrace& t, Metric metric, std::string label) {
    Series s;
    s.label = std::move(label);
    auto values = metric_values(t, metric);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(values[i] > 0.0)) continue;  // log scale: skip non-positive values
        s.pts.emplace_back(std::log10(static_cast<double>(t.recorded_k[i])), std::log10(values[i]));
    }
    return s;
}

void plot_series(const std::vector<Series>& series, const std::string& y_label,
                 const std::filesystem::path& path) {
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const auto& s : series) {
        for (const auto& [lx, ly] : s.pts) {
            min_x = std::min(min_x, lx), max_x = std::max(max_x, lx);
            min_y = std::min(min_y, ly), max_y = std::max(max_y, ly);
        }
    }
    if (min_x > max_x) throw std::invalid_argument("write_svg: no positive data to plot");
    if (max_x - min_x < 1e-9) max_x = min_x + 1.0;
    if (max_y - min_y < 1e-9) max_y = min_y + 1.0;

    const double width = 720, height = 480, ml = 70, mr = 160, mt = 20, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const auto sx = [&](double lx) { return ml + pw * (lx - min_x) / (max_x - min_x); };
    const auto sy = [&](double ly) { return mt + ph * (max_y - ly) / (max_y - min_y); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Decade grid and tick labels.
    for (long e = static_cast<long>(std::floor(min_x)); e <= static_cast<long>(std::ceil(max_x)); ++e) {
        if (e < min_x - 1e-9 || e > max_x + 1e-9) continue;
        double px = sx(static_cast<double>(e));
        out << "<line x1=\"" << fmt2(px) << "\" y1=\"" << fmt2(mt) << "\" x2=\"" << fmt2(px)
            << "\" y2=\"" << fmt2(mt + ph) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << fmt2(px) << "\" y=\"" << fmt2(mt + ph + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (long e = static_cast<long>(std::floor(min_y)); e <= static_cast<long>(std::ceil(max_y)); ++e) {
        if (e < min_y - 1e-9 || e > max_y + 1e-9) continue;
        double py = sy(static_cast<double>(e));
        out << "<line x1=\"" << fmt2(ml) << "\" y1=\"" << fmt2(py) << "\" x2=\"" << fmt2(ml + pw)
            << "\" y2=\"" << fmt2(py) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << fmt2(ml - 6) << "\" y=\"" << fmt2(py + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    out << "<rect x=\"" << fmt2(ml) << "\" y=\"" << fmt2(mt) << "\" width=\"" << fmt2(pw)
        << "\" height=\"" << fmt2(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt2(ml + pw / 2) << "\" y=\"" << fmt2(height - 10)
        << "\" font-size=\"13\" text-anchor=\"middle\">k</text>\n";
    out << "<text x=\"16\" y=\"" << fmt2(mt + ph / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt2(mt + ph / 2) << ")\">" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % (sizeof(palette) / sizeof(palette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [lx, ly] : series[s].pts) out << fmt2(sx(lx)) << ',' << fmt2(sy(ly)) << ' ';
        out << "\"/>\n";
        double ly0 = mt + 16 + 18 * static_cast<double>(s);
        out << "<line x1=\"" << fmt2(ml + pw + 10) << "\" y1=\"" << fmt2(ly0 - 4) << "\" x2=\""
            << fmt2(ml + pw + 34) << "\" y2=\"" << fmt2(ly0 - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << fmt2(ml + pw + 40) << "\" y=\"" << fmt2(ly0)
            << "\" font-size=\"12\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void write_svg(std::span<const RunTrace> traces, Metric metric, const std::filesystem::path& path) {
    if (traces.empty()) throw std::invalid_argument("write_svg requires at least one trace");
    std::vector<Series> series;
    for (const auto& t : traces) {
        std::string label = t.meta.topology.empty() ? ("n=" + std::to_string(t.meta.n)) : t.meta.topology;
        series.push_back(collect_series(t, metric, std::move(label)));
    }
    plot_series(series, to_string(metric), path);
}

void write_svg(const RunTrace& trace, std::span<const Metric> metrics,
               const std::filesystem::path& path) {
    if (metrics.empty()) throw std::invalid_argument("write_svg requires at least one metric");
    std::vector<Series> series;
    for (Metric m : metrics) series.push_back(collect_series(trace, m, to_string(m)));
    plot_series(series, "error", path);
}

}  // namespace cdsa
