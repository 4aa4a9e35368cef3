#include "nkland/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nkland/errors.hpp"

namespace nkland {

namespace {

using nlohmann::json;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const auto next = text.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

template <typename T>
T parse_number(std::string_view token) {
    T v{};
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), last, v);
    if (ec != std::errc{} || ptr != last) throw ParameterError("malformed number '" + std::string(token) + "'");
    return v;
}

json summary_to_json(const KSummary& s) {
    return {{"k", s.k},
            {"mean_fitness", s.mean_endpoint_fitness},
            {"stddev", s.stddev},
            {"stderr", s.standard_error},
            {"mean_moves", s.mean_walk_moves},
            {"simulations", s.simulations}};
}

json run_to_json(const RunDescription& r) {
    return {{"seed", r.seed},
            {"n", r.n},
            {"weights", r.weights},
            {"pattern", r.pattern},
            {"landscape_mode", r.landscape_mode},
            {"strategy", r.strategy},
            {"runs", r.runs},
            {"sims_per_run", r.sims_per_run},
            {"jump_width", r.jump_width},
            {"max_evaluations", r.max_evaluations},
            {"version", r.version}};
}

}  // namespace

RunDescription RunDescription::from_config(const ExperimentConfig& config) {
    RunDescription r;
    r.seed = config.master_seed;
    r.n = config.n;
    r.weights = config.weights.label();
    r.pattern = std::string(to_string(config.pattern));
    r.landscape_mode = std::string(to_string(config.landscape_mode));
    r.strategy = std::string(to_string(config.strategy));
    r.runs = config.runs;
    r.sims_per_run = config.sims_per_run;
    r.jump_width = config.strategy == StrategyKind::long_jump ? config.jump_width : 0;
    r.max_evaluations = config.search_strategy().max_evaluations;
    return r;
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ParameterError("unknown output format '" + std::string(text) + "'");
}

std::string format_results(const ResultSet& results, OutputFormat format) {
    if (results.summaries.empty()) throw ContractError("no summaries to write");
    const auto& r = results.run;
    if (format == OutputFormat::json) {
        json rows = json::array();
        for (const auto& s : results.summaries) rows.push_back(summary_to_json(s));
        json doc{{"config", run_to_json(r)}, {"results", std::move(rows)}};
        return doc.dump(2) + "\n";
    }
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& s : results.summaries) {
        out += std::to_string(s.k) + ',' + g17(s.mean_endpoint_fitness) + ',' + g17(s.stddev) + ',' +
               g17(s.standard_error) + ',' + g17(s.mean_walk_moves) + ',' + std::to_string(s.simulations) + ',' +
               std::to_string(r.seed) + ',' + std::to_string(r.n) + ',' + r.weights + ',' + r.pattern + ',' +
               r.landscape_mode + ',' + r.strategy + '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_results(const ResultSet& results, OutputFormat format, const std::filesystem::path& path) {
    write_text(path, format_results(results, format));
}

ResultSet parse_results_json(std::string_view text) {
    ResultSet out;
    try {
        const auto doc = json::parse(text);
        const auto& c = doc.at("config");
        auto& r = out.run;
        r.seed = c.at("seed").get<std::uint64_t>();
        r.n = c.at("n").get<std::size_t>();
        r.weights = c.at("weights").get<std::string>();
        r.pattern = c.at("pattern").get<std::string>();
        r.landscape_mode = c.at("landscape_mode").get<std::string>();
        r.strategy = c.at("strategy").get<std::string>();
        r.runs = c.at("runs").get<std::size_t>();
        r.sims_per_run = c.at("sims_per_run").get<std::size_t>();
        r.jump_width = c.at("jump_width").get<std::size_t>();
        r.max_evaluations = c.at("max_evaluations").get<std::uint64_t>();
        r.version = c.at("version").get<std::string>();
        for (const auto& row : doc.at("results")) {
            out.summaries.push_back({row.at("k").get<std::size_t>(), row.at("mean_fitness").get<double>(),
                                     row.at("stddev").get<double>(), row.at("stderr").get<double>(),
                                     row.at("mean_moves").get<double>(), row.at("simulations").get<std::uint64_t>()});
        }
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed results JSON: ") + e.what());
    }
    return out;
}

ResultSet parse_results_csv(std::string_view text) {
    auto lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty() || lines.front() != kCsvHeader) throw ParameterError("results CSV header mismatch");
    ResultSet out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        if (f.size() != 12) throw ParameterError("results CSV row " + std::to_string(i) + " has wrong field count");
        out.summaries.push_back({parse_number<std::size_t>(f[0]), parse_number<double>(f[1]),
                                 parse_number<double>(f[2]), parse_number<double>(f[3]),
                                 parse_number<double>(f[4]), parse_number<std::uint64_t>(f[5])});
        auto& r = out.run;
        r.seed = parse_number<std::uint64_t>(f[6]);
        r.n = parse_number<std::size_t>(f[7]);
        r.weights = std::string(f[8]);
        r.pattern = std::string(f[9]);
        r.landscape_mode = std::string(f[10]);
        r.strategy = std::string(f[11]);
    }
    return out;
}

std::string render_plot_svg(std::span<const KSummary> summaries) {
    if (summaries.empty()) throw ContractError("plot needs at least one summary");
    constexpr double width = 640, height = 420;
    constexpr double left = 70, right = 20, top = 40, bottom = 60;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

    double k_min = static_cast<double>(summaries.front().k), k_max = k_min;
    double y_min = summaries.front().mean_endpoint_fitness, y_max = y_min;
    std::size_t peak = 0;
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const auto& s = summaries[i];
        k_min = std::min(k_min, static_cast<double>(s.k));
        k_max = std::max(k_max, static_cast<double>(s.k));
        y_min = std::min(y_min, s.mean_endpoint_fitness - s.standard_error);
        y_max = std::max(y_max, s.mean_endpoint_fitness + s.standard_error);
        if (s.mean_endpoint_fitness > summaries[peak].mean_endpoint_fitness) peak = i;
    }
    const double y_pad = std::max((y_max - y_min) * 0.1, 0.005);
    y_min -= y_pad;
    y_max += y_pad;
    if (k_max == k_min) {
        k_min -= 1;
        k_max += 1;
    }
    auto px = [&](double k) { return left + (k - k_min) / (k_max - k_min) * plot_w; };
    auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << "Mean endpoint fitness by K</text>\n";

    // axes
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\"/>\n</g>\n";
    for (const auto& s : summaries) {
        const double x = px(static_cast<double>(s.k));
        svg << "<line x1=\"" << x << "\" y1=\"" << top + plot_h << "\" x2=\"" << x << "\" y2=\"" << top + plot_h + 5
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">" << s.k
            << "</text>\n";
    }
    constexpr int y_ticks = 5;
    for (int t = 0; t <= y_ticks; ++t) {
        const double v = y_min + (y_max - y_min) * t / y_ticks;
        const double y = py(v);
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fixed(v, 3)
            << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">K</text>\n"
        << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << top + plot_h / 2 << ")\">mean fitness</text>\n";

    if (summaries.size() > 1) {
        std::vector<const KSummary*> by_k;
        for (const auto& s : summaries) by_k.push_back(&s);
        std::sort(by_k.begin(), by_k.end(), [](auto* a, auto* b) { return a->k < b->k; });
        svg << "<polyline class=\"series\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < by_k.size(); ++i) {
            if (i > 0) svg << ' ';
            svg << fixed(px(static_cast<double>(by_k[i]->k)), 2) << ',' << fixed(py(by_k[i]->mean_endpoint_fitness), 2);
        }
        svg << "\"/>\n";
    }
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const auto& s = summaries[i];
        const double x = px(static_cast<double>(s.k));
        const double lo = py(s.mean_endpoint_fitness - s.standard_error);
        const double hi = py(s.mean_endpoint_fitness + s.standard_error);
        svg << "<g class=\"errorbar\" stroke=\"black\">"
            << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << fixed(lo, 2) << "\" x2=\"" << fixed(x, 2) << "\" y2=\""
            << fixed(hi, 2) << "\"/>"
            << "<line x1=\"" << fixed(x - 4, 2) << "\" y1=\"" << fixed(lo, 2) << "\" x2=\"" << fixed(x + 4, 2)
            << "\" y2=\"" << fixed(lo, 2) << "\"/>"
            << "<line x1=\"" << fixed(x - 4, 2) << "\" y1=\"" << fixed(hi, 2) << "\" x2=\"" << fixed(x + 4, 2)
            << "\" y2=\"" << fixed(hi, 2) << "\"/></g>\n";
        svg << "<circle class=\"marker" << (i == peak ? " peak" : "") << "\" data-k=\"" << s.k << "\" data-mean=\""
            << g17(s.mean_endpoint_fitness) << "\" cx=\"" << fixed(x, 2) << "\" cy=\""
            << fixed(py(s.mean_endpoint_fitness), 2) << "\" r=\"4\" fill=\"" << (i == peak ? "crimson" : "steelblue")
            << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_plot_sidecar(std::span<const KSummary> summaries) {
    std::string out;
    for (const auto& s : summaries) {
        out += std::to_string(s.k) + '\t' + g17(s.mean_endpoint_fitness) + '\t' + g17(s.standard_error) + '\n';
    }
    return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& plot_path) {
    auto p = plot_path;
    p.replace_extension(".tsv");
    return p;
}

void emit_plot(std::span<const KSummary> summaries, const std::filesystem::path& path) {
    const auto svg = render_plot_svg(summaries);
    write_text(path, svg);
    write_text(sidecar_path(path), render_plot_sidecar(summaries));
}

std::string format_records(std::span<const SimulationRecord> records) {
    std::string out = "k,run,sim,start,endpoint,fitness,moves,evaluations\n";
    for (const auto& r : records) {
        out += std::to_string(r.k) + ',' + std::to_string(r.run) + ',' + std::to_string(r.sim) + ',' +
               r.start.to_string() + ',' + r.endpoint.to_string() + ',' + g17(r.fitness) + ',' +
               std::to_string(r.moves) + ',' + std::to_string(r.evaluations) + '\n';
    }
    return out;
}

std::string trace_to_json(const WalkTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps) steps.push_back({{"genotype", s.genotype.to_string()}, {"fitness", s.fitness}});
    json doc{{"steps", std::move(steps)},
             {"moves", trace.moves()},
             {"terminated_at_local_optimum", trace.terminated_at_local_optimum},
             {"evaluations_used", trace.evaluations_used}};
    return doc.dump(2) + "\n";
}

}  // namespace nkland
