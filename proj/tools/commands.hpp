#pragma once

// File-to-file pipelines behind the `convgraph` subcommands.
//
// Data goes to files under RunConfig::out_dir; diagnostics (parse errors,
// skipped threads, warnings) go to the `diag` stream only.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "convgraph/error.hpp"
#include "convgraph/expression_stats.hpp"
#include "convgraph/macro_metrics.hpp"
#include "convgraph/motif_census.hpp"
#include "convgraph/thread_model.hpp"

namespace convgraph::cli {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitConfig = 2 };

/// Unreadable input, unwritable output, or an input file with the wrong schema.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid flag values or option combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir = ".";
  FilterPolicy filter;
  BinSpec bins;
  CensusMode census_mode = CensusMode::Fast;
  BranchingMode branching_mode = BranchingMode::Internal;
  std::size_t jobs = 1;
  double rarity_threshold = kDefaultRarityThreshold;
};

/// Threads read from every input, filtered, plus how many lines failed.
struct LoadedCorpus {
  std::vector<ThreadRecord> threads;
  std::size_t parse_errors = 0;
  std::size_t filtered_out = 0;
};

LoadedCorpus load_corpus(const RunConfig& config, std::ostream& diag);

inline constexpr std::string_view kMacroFile = "macro_metrics.csv";
inline constexpr std::string_view kCensusFile = "census.csv";
inline constexpr std::string_view kCompareFile = "compare.csv";
inline constexpr std::string_view kCompareSummaryFile = "compare_summary.csv";
inline constexpr std::string_view kTimingFile = "timing.csv";
inline constexpr std::string_view kDegreesFile = "degrees.csv";
inline constexpr std::string_view kDegreeHistFile = "degree_hist.csv";

/// ECDF files written by cmd_macro, one per metric.
std::vector<std::string> ecdf_file_names();

/// One census.csv record.
struct CensusRow {
  std::string thread_id;
  std::string source;
  MotifCensus census;
  std::string bin;  // label of the containing bin, empty when unbinned
};

std::vector<std::string> census_header();

/// Reads a census.csv. Throws IoError naming the first offending column when
/// the header does not match census_header(), or the line of a bad record.
std::vector<CensusRow> read_census_csv(const std::filesystem::path& path);

void cmd_macro(const RunConfig& config, std::ostream& diag);
void cmd_census(const RunConfig& config, std::ostream& diag);
void cmd_compare(const std::filesystem::path& focus_census,
                 const std::filesystem::path& baseline_census, const RunConfig& config,
                 std::ostream& diag);
/// Throws ConfigError for an unknown or edge-free class.
void cmd_timing(const RunConfig& config, std::string_view class_name, std::ostream& diag);
void cmd_degrees(const RunConfig& config, std::ostream& diag);
void cmd_classes(std::ostream& out);

/// Parses argv, runs the subcommand, and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& diag);

}  // namespace convgraph::cli
