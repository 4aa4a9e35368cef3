#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nkland/experiment.hpp"
#include "nkland/oracle.hpp"
#include "nkland/search.hpp"

namespace nkland {

inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr std::string_view kCsvHeader =
    "k,mean_fitness,stddev,stderr,mean_moves,simulations,seed,n,weights,pattern,landscape_mode,strategy";

/// Configuration echoed next to every summary.
struct RunDescription {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::string weights;
    std::string pattern;
    std::string landscape_mode;
    std::string strategy;
    std::size_t runs = 0;
    std::size_t sims_per_run = 0;
    std::size_t jump_width = 0;
    std::uint64_t max_evaluations = 0;
    std::string version{kToolVersion};

    static RunDescription from_config(const ExperimentConfig& config);
    friend bool operator==(const RunDescription&, const RunDescription&) = default;
};

enum class OutputFormat { csv, json };
OutputFormat parse_format(std::string_view text);

struct ResultSet {
    RunDescription run;
    std::vector<KSummary> summaries;
};

/// CSV: kCsvHeader plus one row per summary, floats with 17 significant
/// digits. JSON: {"config": {...}, "results": [{...}, ...]}.
std::string format_results(const ResultSet& results, OutputFormat format);

/// Throws ContractError for empty summaries and IoError when the file cannot be written.
void write_results(const ResultSet& results, OutputFormat format, const std::filesystem::path& path);

/// Inverses of format_results. CSV carries only the columns in kCsvHeader,
/// so runs, sims_per_run, jump_width, max_evaluations and version stay default.
ResultSet parse_results_json(std::string_view text);
ResultSet parse_results_csv(std::string_view text);

/// Line chart of mean endpoint fitness over K with +/-1 stderr bars. The
/// fittest marker carries class "marker peak".
std::string render_plot_svg(std::span<const KSummary> summaries);
/// "k\tmean\tstderr" per summary, no header.
std::string render_plot_sidecar(std::span<const KSummary> summaries);
/// The plot path with its extension replaced by ".tsv".
std::filesystem::path sidecar_path(const std::filesystem::path& plot_path);
/// Writes the SVG and its sidecar.
void emit_plot(std::span<const KSummary> summaries, const std::filesystem::path& path);

/// Per-simulation audit CSV: k,run,sim,start,endpoint,fitness,moves,evaluations.
std::string format_records(std::span<const SimulationRecord> records);

std::string trace_to_json(const WalkTrace& trace);

void write_text(const std::filesystem::path& path, std::string_view contents);

}  // namespace nkland
