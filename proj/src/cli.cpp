#include "dsdist/cli.hpp"

#include "dsdist/analysis.hpp"
#include "dsdist/distance.hpp"
#include "dsdist/embedding_io.hpp"
#include "dsdist/error.hpp"
#include "dsdist/file_util.hpp"
#include "dsdist/format.hpp"
#include "dsdist/performance.hpp"
#include "dsdist/projection.hpp"
#include "dsdist/report_io.hpp"
#include "dsdist/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

namespace dsdist::cli {

namespace {

namespace fs = std::filesystem;

// Collects every output of a command so nothing is written until all of
// them have been computed.
class Sink {
 public:
  explicit Sink(std::ostream& console) : console_(console) {}

  void emit(const std::string& path, std::string contents) {
    if (path.empty()) {
      stdout_ += contents;
    } else {
      batch_.add(path, std::move(contents));
    }
  }

  void commit() {
    batch_.commit();
    console_ << stdout_;
  }

 private:
  std::ostream& console_;
  OutputBatch batch_;
  std::string stdout_;
};

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::UsageError, message); }

bool wants_csv(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format == "csv";
  return fs::path(cfg.out).extension() == ".csv";
}

std::vector<double> thresholds_for(const RunConfig& cfg) { return default_thresholds(cfg.grid); }

std::vector<FeatureMatrix> load_secondaries(const RunConfig& cfg) {
  std::vector<FeatureMatrix> out;
  out.reserve(cfg.secondaries.size());
  for (const auto& path : cfg.secondaries) out.push_back(load_matrix(path));
  return out;
}

// Per-image scores keyed by id, reordered to match `ids`.
std::vector<double> align_scores(const std::string& path, std::span<const std::string> ids) {
  auto [score_ids, values] = parse_scores_csv(read_file(path));
  std::map<std::string, double> by_id;
  for (std::size_t i = 0; i < score_ids.size(); ++i) by_id.emplace(score_ids[i], values[i]);
  std::vector<double> aligned;
  aligned.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error(ErrorCode::MissingPair, "no score for image '" + id + "'");
    aligned.push_back(it->second);
  }
  return aligned;
}

void check_parts(std::size_t parts, bool allow_any) {
  if (!allow_any && parts != 2 && parts != 3) {
    usage("--parts must be 2 or 3 (got " + std::to_string(parts) +
          "); pass --allow-any-parts to override");
  }
}

FeatureMatrix with_dataset_id(const FeatureMatrix& m, const std::string& id) {
  return FeatureMatrix(id, m.image_ids(), m.values());
}

void cmd_convert(const RunConfig& cfg, Sink& sink) {
  if (cfg.out.empty()) usage("convert needs --out");
  auto m = load_matrix(cfg.input);
  if (!cfg.dataset_id.empty()) m = with_dataset_id(m, cfg.dataset_id);
  sink.emit(cfg.out, fs::path(cfg.out).extension() == ".csv" ? format_csv(m) : encode_fvec(m));
}

void cmd_synth(const RunConfig& cfg, Sink& sink) {
  if (cfg.out.empty()) usage("synth needs --out");
  SynthSpec spec;
  spec.rows = cfg.rows;
  spec.dims = cfg.dims;
  spec.kind = parse_synth_kind(cfg.kind);
  spec.shift = cfg.shift;
  spec.rank = cfg.rank;
  spec.noise = cfg.noise;
  spec.seed = cfg.seed;
  if (!cfg.dataset_id.empty()) spec.dataset_id = cfg.dataset_id;
  auto m = generate(spec);
  sink.emit(cfg.out, fs::path(cfg.out).extension() == ".csv" ? format_csv(m) : encode_fvec(m));
}

void cmd_project(const RunConfig& cfg, Sink& sink) {
  auto primary = load_matrix(cfg.primary);
  auto secondary = load_matrix(cfg.secondaries.front());
  auto proj = project_pair(primary, secondary, cfg.components);

  Json doc;
  doc["primary_id"] = primary.dataset_id();
  doc["secondary_id"] = secondary.dataset_id();
  doc["n"] = primary.rows();
  doc["m"] = secondary.rows();
  doc["features"] = primary.cols();
  doc.update(to_json(proj));
  sink.emit(cfg.out, dump_json(doc));

  if (!cfg.out_primary.empty()) {
    FeatureMatrix pl(primary.dataset_id(), primary.image_ids(), proj.projected_primary);
    sink.emit(cfg.out_primary, encode_fvec(pl));
  }
  if (!cfg.out_secondary.empty()) {
    FeatureMatrix sl(secondary.dataset_id(), secondary.image_ids(), proj.projected_secondary);
    sink.emit(cfg.out_secondary, encode_fvec(sl));
  }
  if (!cfg.out_components.empty()) {
    FeatureMatrix comps(primary.dataset_id() + "+" + secondary.dataset_id() + ":components",
                        FeatureMatrix::synthetic_ids(primary.cols(), "dim"), proj.components);
    sink.emit(cfg.out_components, encode_fvec(comps));
  }
}

void cmd_distance(const RunConfig& cfg, Sink& sink) {
  auto primary = load_matrix(cfg.primary);
  auto secondary = load_matrix(cfg.secondaries.front());
  auto report = compute_distance(primary, secondary, cfg.components, cfg.threads);
  if (wants_csv(cfg)) {
    sink.emit(cfg.out, distance_csv(report));
  } else {
    auto doc = to_json(report, cfg.include_matrix);
    if (cfg.summary) doc["summary"] = to_json(distribution_summary(report.image_distances));
    sink.emit(cfg.out, dump_json(doc));
  }
  if (!cfg.matrix_out.empty()) sink.emit(cfg.matrix_out, matrix_csv(report));
}

void cmd_table(const RunConfig& cfg, Sink& sink) {
  std::vector<std::string> rows, columns;
  std::vector<std::vector<double>> raw;

  if (!cfg.raw_table.empty()) {
    auto text = read_file(cfg.raw_table);
    auto header = csv_header(text);
    auto m = parse_csv(text, true, "table");
    columns.assign(header.begin() + (header.front() == "id" ? 1 : 0), header.end());
    if (columns.size() != m.cols()) {
      throw Error(ErrorCode::ParseFailure, "raw table header does not match its columns");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      rows.push_back(m.image_ids()[i]);
      const auto r = static_cast<Eigen::Index>(i);
      raw.emplace_back(m.values().row(r).begin(), m.values().row(r).end());
    }
  }

  if (!cfg.primary.empty()) {
    if (cfg.secondaries.empty()) usage("table --primary needs --secondary");
    auto primary = load_matrix(cfg.primary);
    std::vector<std::string> labels;
    std::vector<double> row;
    for (const auto& s : load_secondaries(cfg)) {
      labels.push_back(s.dataset_id());
      row.push_back(compute_distance(primary, s, cfg.components, cfg.threads).dataset_distance);
    }
    if (columns.empty()) {
      columns = labels;
    } else if (columns != labels) {
      throw Error(ErrorCode::LengthMismatch, "computed columns differ from the raw table's");
    }
    rows.push_back(cfg.row_label.empty() ? primary.dataset_id() : cfg.row_label);
    raw.push_back(std::move(row));
  }
  if (rows.empty()) usage("table needs --raw or --primary/--secondary");

  Matrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = raw[i][j];
    }
  }
  auto table = make_distance_table(std::move(rows), std::move(columns), std::move(values));
  sink.emit(cfg.out, wants_csv(cfg) ? table_csv(table) : dump_json(to_json(table)));
}

void cmd_sweep(const RunConfig& cfg, Sink& sink) {
  auto primary = load_matrix(cfg.primary);
  auto secondary = load_matrix(cfg.secondaries.front());
  auto sweep = pc_sweep(primary, secondary, cfg.sweep_components, cfg.threads);
  if (wants_csv(cfg)) {
    sink.emit(cfg.out, sweep_csv(sweep));
    return;
  }
  Json doc;
  doc["primary_id"] = primary.dataset_id();
  doc["secondary_id"] = secondary.dataset_id();
  doc["sweep"] = to_json(sweep)["sweep"];
  sink.emit(cfg.out, dump_json(doc));
}

struct SortedReport {
  std::vector<std::string> ids;
  std::vector<double> distances;
};

SortedReport sorted_view(const DistanceReport& report) {
  SortedReport out;
  for (auto i : sort_by_distance(report.image_distances)) {
    out.ids.push_back(report.image_ids[i]);
    out.distances.push_back(report.image_distances[i]);
  }
  return out;
}

void cmd_splits(const RunConfig& cfg, Sink& sink) {
  check_parts(cfg.parts, cfg.allow_any_parts);
  if (!cfg.scores.empty() && !cfg.pred_dir.empty()) usage("use either --scores or --pred-dir");
  auto report = read_distance_report(cfg.distance_files.front());
  auto sorted = sorted_view(report);

  std::optional<std::vector<double>> scores;
  if (!cfg.scores.empty()) scores = align_scores(cfg.scores, sorted.ids);

  SplitOptions opts{cfg.parts, !cfg.unscaled, cfg.allow_any_parts};
  auto split = split_stats(sorted.distances,
                           scores ? std::optional<std::span<const double>>(*scores) : std::nullopt,
                           opts);
  if (!cfg.pred_dir.empty()) {
    auto set = load_image_set(cfg.pred_dir, cfg.gt_dir);
    attach_part_ods(split, sorted.ids, set, thresholds_for(cfg), cfg.threads);
  }
  if (wants_csv(cfg)) {
    sink.emit(cfg.out, split_csv(split));
    return;
  }
  Json doc;
  doc["secondary_id"] = report.secondary_id;
  doc.update(to_json(split));
  sink.emit(cfg.out, dump_json(doc));
}

void cmd_ods(const RunConfig& cfg, Sink& sink) {
  auto set = load_image_set(cfg.pred_dir, cfg.gt_dir);
  auto grid = thresholds_for(cfg);
  auto result = ods(set.predictions, set.masks, grid, cfg.threads);
  Json doc;
  doc["images"] = set.image_ids.size();
  doc["ods"] = to_json(result);
  sink.emit(cfg.out, dump_json(doc));
  if (!cfg.per_image_out.empty()) {
    auto scores = cfg.per_image_best
                      ? per_image_best_fscores(set.predictions, set.masks, grid, cfg.threads)
                      : per_image_fscores(set.predictions, set.masks, result.best_threshold,
                                          cfg.threads);
    sink.emit(cfg.per_image_out, scores_csv(set.image_ids, scores));
  }
}

void cmd_curves(const RunConfig& cfg, Sink& sink) {
  auto report = read_distance_report(cfg.distance_files.front());
  auto scores = align_scores(cfg.scores, report.image_ids);
  auto curve = smoothed_curve(report.image_ids, report.image_distances, scores, cfg.window);
  if (wants_csv(cfg)) {
    sink.emit(cfg.out, curve_csv(curve));
    return;
  }
  Json doc;
  doc["secondary_id"] = report.secondary_id;
  doc["window"] = cfg.window.value_or(std::max<std::size_t>(1, curve.size() / 10));
  doc["points"] = to_json(curve);
  sink.emit(cfg.out, dump_json(doc));
}

void cmd_select(const RunConfig& cfg, Sink& sink) {
  if (cfg.band.size() != 2) usage("--band takes two values");
  auto report = read_distance_report(cfg.distance_files.front());
  auto scaled = min_max_scale(report.image_distances);
  auto picked = select_for_adaptation(scaled, cfg.count, cfg.band[0], cfg.band[1], cfg.seed);
  std::size_t in_band = 0;
  for (double v : scaled.values) in_band += (v >= cfg.band[0] && v <= cfg.band[1]) ? 1 : 0;

  if (wants_csv(cfg)) {
    std::string csv = "index,image_id,scaled_distance\n";
    for (auto i : picked) {
      csv += std::to_string(i) + "," + csv_field(report.image_ids[i]) + "," +
             format_double(scaled.values[i]) + "\n";
    }
    sink.emit(cfg.out, std::move(csv));
    return;
  }
  Json doc;
  doc["secondary_id"] = report.secondary_id;
  doc["count"] = cfg.count;
  doc["band"] = cfg.band;
  doc["seed"] = cfg.seed;
  doc["candidates"] = in_band;
  Json selected = Json::array();
  for (auto i : picked) {
    Json entry;
    entry["index"] = i;
    entry["image_id"] = report.image_ids[i];
    entry["scaled_distance"] = scaled.values[i];
    selected.push_back(std::move(entry));
  }
  doc["selected"] = std::move(selected);
  sink.emit(cfg.out, dump_json(doc));
}

void cmd_rank(const RunConfig& cfg, Sink& sink) {
  std::vector<DistanceReport> reports;
  for (const auto& path : cfg.distance_files) reports.push_back(read_distance_report(path));
  auto ranking = rank_datasets(reports);
  if (wants_csv(cfg)) {
    sink.emit(cfg.out, ranking_csv(ranking));
    return;
  }
  auto doc = to_json(ranking, cfg.top_k);
  if (cfg.images_k > 0) {
    Json images = Json::array();
    for (const auto& r : reports) {
      Json entry;
      entry["secondary_id"] = r.secondary_id;
      entry.update(to_json(extreme_images(r, cfg.images_k)));
      images.push_back(std::move(entry));
    }
    doc["images"] = std::move(images);
  }
  sink.emit(cfg.out, dump_json(doc));
}

void cmd_report(const RunConfig& cfg, Sink& sink) {
  for (auto k : cfg.report_parts) check_parts(k, cfg.allow_any_parts);
  auto primary = load_matrix(cfg.primary);
  auto secondaries = load_secondaries(cfg);
  auto set = load_image_set(cfg.pred_dir, cfg.gt_dir);
  auto grid = thresholds_for(cfg);

  Json doc;
  doc["primary_id"] = primary.dataset_id();
  doc["n"] = primary.rows();
  doc["components"] = cfg.components;
  doc["thresholds"] = grid.size();

  Json datasets = Json::array();
  std::vector<DistanceReport> reports;
  for (const auto& secondary : secondaries) {
    auto report = compute_distance(primary, secondary, cfg.components, cfg.threads);
    auto images = select_images(set, report.image_ids);
    auto result = ods(images.predictions, images.masks, grid, cfg.threads);
    auto scores = per_image_fscores(images.predictions, images.masks, result.best_threshold,
                                    cfg.threads);
    auto scaled = min_max_scale(report.image_distances);

    Json entry;
    entry["secondary_id"] = report.secondary_id;
    entry["m"] = report.image_ids.size();
    entry["o_dist"] = report.dataset_distance;
    entry["ods"] = to_json(result);
    entry["summary"] = to_json(distribution_summary(report.image_distances));

    Json rows = Json::array();
    for (std::size_t j = 0; j < report.image_ids.size(); ++j) {
      Json row;
      row["image_id"] = report.image_ids[j];
      row["i_dist"] = report.image_distances[j];
      row["scaled_distance"] = scaled.values[j];
      row["f_score"] = scores[j];
      rows.push_back(std::move(row));
    }
    entry["images"] = std::move(rows);

    auto sorted = sorted_view(report);
    Json splits = Json::array();
    for (auto k : cfg.report_parts) {
      auto split = split_stats(sorted.distances, std::nullopt,
                               SplitOptions{k, !cfg.unscaled, cfg.allow_any_parts});
      attach_part_ods(split, sorted.ids, set, grid, cfg.threads);
      splits.push_back(to_json(split));
    }
    entry["splits"] = std::move(splits);
    entry["curve"] = to_json(smoothed_curve(report.image_ids, report.image_distances, scores,
                                            cfg.window));
    datasets.push_back(std::move(entry));
    reports.push_back(std::move(report));
  }
  doc["datasets"] = std::move(datasets);
  doc["ranking"] = to_json(rank_datasets(reports), cfg.top_k);
  sink.emit(cfg.out, dump_json(doc));
}

void add_pair_inputs(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--primary,-p", cfg.primary, "Primary feature matrix (FVEC1 or CSV)")->required();
  sub->add_option("--secondary,-s", cfg.secondaries, "Secondary feature matrix")
      ->required()
      ->expected(1);
}

void add_components(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--components,-z", cfg.components, "Principal components")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_out(CLI::App* sub, RunConfig& cfg, bool with_format) {
  sub->add_option("--out,-o", cfg.out, "Output path (stdout when omitted)");
  if (with_format) {
    sub->add_option("--format", cfg.format, "json or csv (default: from --out extension)")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--grid", cfg.grid, "Threshold grid size: t = k/(grid+1), k = 1..grid")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("DSDIST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = default_threads();

  CLI::App app{"Dataset distance engine: PCA-projected image/dataset distances, ODS scoring, "
               "split analysis and adaptation selection",
               "dsdist"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads,-j", cfg.threads, "Worker threads (default: $DSDIST_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  auto* convert = app.add_subcommand("convert", "Convert between CSV and FVEC1");
  convert->add_option("--in,-i", cfg.input, "Input matrix")->required();
  convert->add_option("--out,-o", cfg.out, "Output (.csv or FVEC1)")->required();
  convert->add_option("--dataset-id", cfg.dataset_id, "Override the dataset id");

  auto* project = app.add_subcommand("project", "Joint PCA of a primary/secondary pair");
  add_pair_inputs(project, cfg);
  add_components(project, cfg);
  add_out(project, cfg, false);
  project->add_option("--out-primary", cfg.out_primary, "Projected primary rows (FVEC1)");
  project->add_option("--out-secondary", cfg.out_secondary, "Projected secondary rows (FVEC1)");
  project->add_option("--out-components", cfg.out_components, "Component matrix (FVEC1)");

  auto* distance = app.add_subcommand("distance", "Image and dataset distances of S from P");
  add_pair_inputs(distance, cfg);
  add_components(distance, cfg);
  add_out(distance, cfg, true);
  distance->add_option("--matrix-out", cfg.matrix_out, "Pairwise distance matrix (CSV)");
  distance->add_flag("--include-matrix", cfg.include_matrix, "Embed the pairwise matrix in JSON");
  distance->add_flag("--summary", cfg.summary, "Add a distribution summary of image distances");

  auto* table = app.add_subcommand("table", "Row-normalized dataset distance table");
  table->add_option("--raw", cfg.raw_table, "CSV of raw distances: id,<dataset>,...");
  table->add_option("--primary,-p", cfg.primary, "Compute one row against this primary");
  table->add_option("--secondary,-s", cfg.secondaries, "Secondary datasets for the computed row")
      ->needs(table->get_option("--primary"));
  table->add_option("--label", cfg.row_label, "Label of the computed row");
  add_components(table, cfg);
  add_out(table, cfg, true);

  auto* sweep = app.add_subcommand("sweep", "Dataset distance across component counts");
  add_pair_inputs(sweep, cfg);
  sweep->add_option("--z", cfg.sweep_components, "Component counts")->capture_default_str();
  add_out(sweep, cfg, true);

  auto* splits = app.add_subcommand("splits", "Split statistics over distance-sorted images");
  splits->add_option("--distances,-d", cfg.distance_files, "Distance report (JSON)")
      ->required()
      ->expected(1);
  splits->add_option("--parts,-k", cfg.parts, "Number of parts (2 or 3)")->capture_default_str();
  splits->add_flag("--allow-any-parts", cfg.allow_any_parts, "Permit part counts other than 2 or 3");
  splits->add_flag("--unscaled", cfg.unscaled, "Use raw instead of min-max scaled distances");
  splits->add_option("--scores", cfg.scores, "Per-image F-scores (CSV id,f_score)");
  auto* split_pred = splits->add_option("--pred-dir", cfg.pred_dir, "Prediction PGM directory");
  auto* split_gt = splits->add_option("--gt-dir", cfg.gt_dir, "Mask PGM directory");
  split_pred->needs(split_gt);
  split_gt->needs(split_pred);
  add_grid(splits, cfg);
  add_out(splits, cfg, true);

  auto* ods_cmd = app.add_subcommand("ods", "Overall dataset score of predictions vs masks");
  ods_cmd->add_option("--pred-dir", cfg.pred_dir, "Prediction PGM directory")->required();
  ods_cmd->add_option("--gt-dir", cfg.gt_dir, "Mask PGM directory")->required();
  ods_cmd->add_option("--per-image-out", cfg.per_image_out, "Per-image F-scores (CSV)");
  ods_cmd->add_flag("--per-image-best", cfg.per_image_best,
                    "Score each image at its own best threshold");
  add_grid(ods_cmd, cfg);
  add_out(ods_cmd, cfg, false);

  auto* curves = app.add_subcommand("curves", "Smoothed F-score vs scaled distance");
  curves->add_option("--distances,-d", cfg.distance_files, "Distance report (JSON)")
      ->required()
      ->expected(1);
  curves->add_option("--scores", cfg.scores, "Per-image F-scores (CSV id,f_score)")->required();
  curves->add_option("--window,-w", cfg.window, "Moving-average window (default m/10)");
  add_out(curves, cfg, true);

  auto* select = app.add_subcommand("select", "Pick adaptation images inside a distance band");
  select->add_option("--distances,-d", cfg.distance_files, "Distance report (JSON)")
      ->required()
      ->expected(1);
  select->add_option("--count,-q", cfg.count, "Images to select")->capture_default_str();
  select->add_option("--band", cfg.band, "Scaled-distance band: low high")
      ->expected(2)
      ->capture_default_str();
  select->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  add_out(select, cfg, true);

  auto* rank = app.add_subcommand("rank", "Order secondary datasets by distance");
  rank->add_option("--distances,-d", cfg.distance_files, "Distance reports (JSON)")->required();
  rank->add_option("--k", cfg.top_k, "Size of the closest/farthest slices")->capture_default_str();
  rank->add_option("--images", cfg.images_k, "Also list the k closest/farthest images per report");
  add_out(rank, cfg, true);

  auto* synth = app.add_subcommand("synth", "Write a seeded synthetic feature matrix");
  synth->add_option("--kind", cfg.kind, "gaussian, low-rank or two-cluster")
      ->capture_default_str()
      ->check(CLI::IsMember({"gaussian", "gaussian-shifted", "low-rank", "two-cluster"}));
  synth->add_option("--rows,-n", cfg.rows, "Row count")->required();
  synth->add_option("--dims,-q", cfg.dims, "Feature dimension")->required();
  synth->add_option("--shift", cfg.shift, "Per-coordinate shift")->capture_default_str();
  synth->add_option("--rank", cfg.rank, "Rank (low-rank only)")->capture_default_str();
  synth->add_option("--noise", cfg.noise, "Noise scale (low-rank only)")->capture_default_str();
  synth->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  synth->add_option("--dataset-id", cfg.dataset_id, "Dataset id (default synth)");
  synth->add_option("--out,-o", cfg.out, "Output (.csv or FVEC1)")->required();

  auto* report = app.add_subcommand("report", "Full pipeline bundle keyed by image id");
  report->add_option("--primary,-p", cfg.primary, "Primary feature matrix")->required();
  report->add_option("--secondary,-s", cfg.secondaries, "Secondary feature matrices")->required();
  report->add_option("--pred-dir", cfg.pred_dir, "Prediction PGM directory")->required();
  report->add_option("--gt-dir", cfg.gt_dir, "Mask PGM directory")->required();
  report->add_option("--parts", cfg.report_parts, "Split part counts")->capture_default_str();
  report->add_flag("--allow-any-parts", cfg.allow_any_parts, "Permit part counts other than 2 or 3");
  report->add_flag("--unscaled", cfg.unscaled, "Split statistics on raw distances");
  report->add_option("--window,-w", cfg.window, "Moving-average window (default m/10)");
  report->add_option("--k", cfg.top_k, "Size of the closest/farthest slices")->capture_default_str();
  add_components(report, cfg);
  add_grid(report, cfg);
  add_out(report, cfg, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.window && *cfg.window == 0) {
    err << "error: ZeroWindow: window must be at least 1\n";
    return kExitUsage;
  }

  try {
    Sink sink(out);
    const std::string& c = cfg.command;
    if (c == "convert") cmd_convert(cfg, sink);
    else if (c == "project") cmd_project(cfg, sink);
    else if (c == "distance") cmd_distance(cfg, sink);
    else if (c == "table") cmd_table(cfg, sink);
    else if (c == "sweep") cmd_sweep(cfg, sink);
    else if (c == "splits") cmd_splits(cfg, sink);
    else if (c == "ods") cmd_ods(cfg, sink);
    else if (c == "curves") cmd_curves(cfg, sink);
    else if (c == "select") cmd_select(cfg, sink);
    else if (c == "rank") cmd_rank(cfg, sink);
    else if (c == "synth") cmd_synth(cfg, sink);
    else if (c == "report") cmd_report(cfg, sink);
    sink.commit();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::UsageError ? kExitUsage : kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace dsdist::cli
