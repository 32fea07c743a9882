#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsdist::cli {

/// Everything a command line can set. Each subcommand reads only its own
/// fields; defaults are the documented ones.
struct RunConfig {
  std::string command;

  std::string primary;
  std::vector<std::string> secondaries;
  std::string input;
  std::vector<std::string> distance_files;
  std::string scores;
  std::string pred_dir;
  std::string gt_dir;
  std::string raw_table;
  std::string row_label;

  std::string out;
  std::string out_primary;
  std::string out_secondary;
  std::string out_components;
  std::string matrix_out;
  std::string per_image_out;
  std::string format;  // "json", "csv" or empty (pick from --out extension)

  std::size_t components = 25;
  std::vector<std::size_t> sweep_components = {5, 10, 15, 20, 25};
  std::size_t parts = 2;
  std::vector<std::size_t> report_parts = {2, 3};
  bool allow_any_parts = false;
  bool unscaled = false;
  std::size_t count = 1;
  std::vector<double> band = {0.6, 1.0};
  std::uint64_t seed = 0;
  std::size_t grid = 99;
  std::optional<std::size_t> window;
  std::size_t top_k = 5;
  std::size_t images_k = 0;
  bool include_matrix = false;
  bool summary = false;
  bool per_image_best = false;
  std::string dataset_id;

  // synth
  std::string kind = "gaussian";
  std::size_t rows = 0;
  std::size_t dims = 0;
  double shift = 0.0;
  std::size_t rank = 1;
  double noise = 0.0;

  unsigned threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Thread count from DSDIST_THREADS, else the hardware concurrency.
unsigned default_threads();

/// Parses and executes one command. Reports go to their --out paths (written
/// atomically, all at the end) or to `out` when no path is given. Failures
/// print "error: <ErrorName>: <detail>" on `err`; exit status 2 for usage
/// errors, 1 for data errors, 0 on success.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace dsdist::cli
