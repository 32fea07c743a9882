#include "dsdist/analysis.hpp"
#include "dsdist/cli.hpp"
#include "dsdist/distance.hpp"
#include "dsdist/embedding_io.hpp"
#include "dsdist/error.hpp"
#include "dsdist/performance.hpp"
#include "dsdist/projection.hpp"
#include "dsdist/synth.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace dsdist;

namespace {

PyObject* g_error_type = nullptr;

PixelGrid grid_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::DimensionMismatch, "pixel grid must be a 2-D array");
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  return PixelGrid(w, h, std::vector<double>(a.data(), a.data() + w * h));
}

py::array_t<double> grid_to_array(const PixelGrid& g) {
  py::array_t<double> out({g.height(), g.width()});
  std::copy(g.values().begin(), g.values().end(), out.mutable_data());
  return out;
}

std::vector<PixelGrid> grids(const py::sequence& items) {
  std::vector<PixelGrid> out;
  out.reserve(py::len(items));
  for (const auto& item : items) {
    if (py::isinstance<PixelGrid>(item)) {
      out.push_back(item.cast<PixelGrid>());
    } else {
      out.push_back(grid_from_array(item.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>()));
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dataset-to-dataset distances between image feature embeddings.";

  static py::exception<Error> error_type(m, "DsdistError", PyExc_ValueError);
  g_error_type = error_type.ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(g_error_type)(e.what());
      exc.attr("code") = std::string(e.name());
      PyErr_SetObject(g_error_type, exc.ptr());
    }
  });

  py::class_<FeatureMatrix>(m, "FeatureMatrix")
      .def(py::init<std::string, std::vector<std::string>, Matrix>(), py::arg("dataset_id"),
           py::arg("image_ids"), py::arg("values"))
      .def_property_readonly("dataset_id", &FeatureMatrix::dataset_id)
      .def_property_readonly("image_ids", &FeatureMatrix::image_ids)
      .def_property_readonly("values", [](const FeatureMatrix& f) { return Matrix(f.values()); })
      .def_property_readonly("shape", [](const FeatureMatrix& f) { return py::make_tuple(f.rows(), f.cols()); })
      .def("__eq__", [](const FeatureMatrix& a, const FeatureMatrix& b) { return a == b; })
      .def("__repr__", [](const FeatureMatrix& f) {
        std::ostringstream s;
        s << "FeatureMatrix('" << f.dataset_id() << "', " << f.rows() << "x" << f.cols() << ")";
        return s.str();
      });

  m.def("read_fvec", &read_fvec, py::arg("path"));
  m.def("write_fvec", &write_fvec, py::arg("matrix"), py::arg("path"));
  m.def("encode_fvec", [](const FeatureMatrix& f) { return py::bytes(encode_fvec(f)); }, py::arg("matrix"));
  m.def("decode_fvec", [](const py::bytes& b) { return decode_fvec(std::string_view(b)); }, py::arg("data"));
  m.def("read_csv", &read_csv, py::arg("path"), py::arg("has_header") = true);
  m.def("format_csv", &format_csv, py::arg("matrix"));
  m.def("load_matrix", &load_matrix, py::arg("path"), "FVEC1 or CSV, chosen by file extension.");

  py::class_<ProjectionResult>(m, "ProjectionResult")
      .def_readonly("mean", &ProjectionResult::mean)
      .def_readonly("components", &ProjectionResult::components)
      .def_readonly("explained_variance", &ProjectionResult::explained_variance)
      .def_readonly("projected_primary", &ProjectionResult::projected_primary)
      .def_readonly("projected_secondary", &ProjectionResult::projected_secondary);

  m.def("project_pair", &project_pair, py::arg("primary"), py::arg("secondary"),
        py::arg("components") = kDefaultComponents);

  py::class_<DistanceReport>(m, "DistanceReport")
      .def_readonly("primary_id", &DistanceReport::primary_id)
      .def_readonly("secondary_id", &DistanceReport::secondary_id)
      .def_readonly("image_ids", &DistanceReport::image_ids)
      .def_readonly("primary_rows", &DistanceReport::primary_rows)
      .def_readonly("components", &DistanceReport::components)
      .def_readonly("matrix", &DistanceReport::matrix)
      .def_readonly("image_distances", &DistanceReport::image_distances)
      .def_readonly("dataset_distance", &DistanceReport::dataset_distance);

  m.def("compute_distance", &compute_distance, py::arg("primary"), py::arg("secondary"),
        py::arg("components") = py::none(), py::arg("threads") = 1u,
        py::call_guard<py::gil_scoped_release>());
  m.def("pairwise", &pairwise, py::arg("secondary"), py::arg("primary"), py::arg("threads") = 1u);

  py::class_<NormalizedRows>(m, "NormalizedRows")
      .def_readonly("values", &NormalizedRows::values)
      .def_readonly("zero_rows", &NormalizedRows::zero_rows);
  m.def("normalize_rows", &normalize_rows, py::arg("raw"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("components", &SweepRow::components)
      .def_readonly("dataset_distance", &SweepRow::dataset_distance)
      .def_readonly("delta", &SweepRow::delta);
  m.def("pc_sweep",
        [](const FeatureMatrix& p, const FeatureMatrix& s, std::vector<std::size_t> z, unsigned threads) {
          return pc_sweep(p, s, z, threads);
        },
        py::arg("primary"), py::arg("secondary"), py::arg("components"), py::arg("threads") = 1u);

  py::class_<ScaledSeries>(m, "ScaledSeries")
      .def_readonly("values", &ScaledSeries::values)
      .def_readonly("degenerate", &ScaledSeries::degenerate)
      .def_readonly("source_min", &ScaledSeries::source_min)
      .def_readonly("source_max", &ScaledSeries::source_max);
  m.def("min_max_scale", [](std::vector<double> v) { return min_max_scale(v); }, py::arg("values"));
  m.def("sort_by_distance", [](std::vector<double> v) { return sort_by_distance(v); }, py::arg("distances"));

  py::class_<SplitPart>(m, "SplitPart")
      .def_readonly("begin", &SplitPart::begin)
      .def_readonly("end", &SplitPart::end)
      .def_readonly("mean_distance", &SplitPart::mean_distance)
      .def_readonly("std_distance", &SplitPart::std_distance)
      .def_readonly("f_score", &SplitPart::f_score);
  py::class_<SplitReport>(m, "SplitReport")
      .def_readonly("parts", &SplitReport::parts)
      .def_readonly("scaled", &SplitReport::scaled);
  m.def(
      "split_stats",
      [](std::vector<double> sorted, std::optional<std::vector<double>> scores, std::size_t parts, bool scale,
         bool allow_any_parts) {
        SplitOptions opts{parts, scale, allow_any_parts};
        std::optional<std::span<const double>> view;
        if (scores) view = std::span<const double>(*scores);
        return split_stats(sorted, view, opts);
      },
      py::arg("sorted_distances"), py::arg("scores") = py::none(), py::arg("parts") = 2, py::arg("scale") = true,
      py::arg("allow_any_parts") = false);

  m.def("moving_average",
        [](std::vector<double> v, std::optional<std::size_t> w) { return moving_average(v, w); },
        py::arg("values"), py::arg("window") = py::none());
  m.def(
      "select_for_adaptation",
      [](std::vector<double> distances, std::size_t count, double low, double high, std::uint64_t seed) {
        return select_for_adaptation(min_max_scale(distances), count, low, high, seed);
      },
      py::arg("distances"), py::arg("count"), py::arg("low") = kDefaultBandLow, py::arg("high") = kDefaultBandHigh,
      py::arg("seed") = 0, "Min-max scales the distances, then draws indices from the band.");

  py::class_<DistributionSummary>(m, "DistributionSummary")
      .def_readonly("min", &DistributionSummary::min)
      .def_readonly("q1", &DistributionSummary::q1)
      .def_readonly("median", &DistributionSummary::median)
      .def_readonly("q3", &DistributionSummary::q3)
      .def_readonly("max", &DistributionSummary::max)
      .def_readonly("mean", &DistributionSummary::mean)
      .def_readonly("std", &DistributionSummary::std);
  m.def("distribution_summary", [](std::vector<double> v) { return distribution_summary(v); },
        py::arg("values"));

  py::class_<PixelGrid>(m, "PixelGrid")
      .def(py::init(&grid_from_array), py::arg("values"))
      .def_property_readonly("width", &PixelGrid::width)
      .def_property_readonly("height", &PixelGrid::height)
      .def("to_array", &grid_to_array);
  m.def("read_pgm", &read_pgm, py::arg("path"));
  m.def("parse_pgm", [](const py::bytes& b) { return parse_pgm(std::string_view(b)); }, py::arg("data"));
  m.def("encode_pgm", [](const PixelGrid& g) { return py::bytes(encode_pgm(g)); }, py::arg("grid"));
  m.def("default_thresholds", &default_thresholds, py::arg("steps") = 99);

  py::class_<OdsResult>(m, "OdsResult")
      .def_readonly("best_threshold", &OdsResult::best_threshold)
      .def_readonly("precision", &OdsResult::precision)
      .def_readonly("recall", &OdsResult::recall)
      .def_readonly("f_score", &OdsResult::f_score)
      .def_readonly("tp", &OdsResult::tp)
      .def_readonly("fp", &OdsResult::fp)
      .def_readonly("fn", &OdsResult::fn);
  m.def(
      "ods",
      [](const py::sequence& preds, const py::sequence& masks, std::optional<std::vector<double>> thresholds,
         unsigned threads) {
        auto p = grids(preds);
        auto g = grids(masks);
        auto t = thresholds ? *thresholds : default_thresholds();
        py::gil_scoped_release release;
        return ods(p, g, t, threads);
      },
      py::arg("predictions"), py::arg("masks"), py::arg("thresholds") = py::none(), py::arg("threads") = 1u,
      "Predictions and masks are PixelGrid objects or 2-D arrays with values in [0, 1].");
  m.def(
      "per_image_fscores",
      [](const py::sequence& preds, const py::sequence& masks, double threshold) {
        return per_image_fscores(grids(preds), grids(masks), threshold);
      },
      py::arg("predictions"), py::arg("masks"), py::arg("threshold"));

  m.def(
      "generate",
      [](std::size_t rows, std::size_t dims, const std::string& kind, double shift,
         std::vector<double> shift_vector, std::size_t rank, double noise, std::uint64_t seed,
         std::string dataset_id) {
        SynthSpec spec;
        spec.rows = rows;
        spec.dims = dims;
        spec.kind = parse_synth_kind(kind);
        spec.shift = shift;
        spec.shift_vector = std::move(shift_vector);
        spec.rank = rank;
        spec.noise = noise;
        spec.seed = seed;
        spec.dataset_id = std::move(dataset_id);
        return generate(spec);
      },
      py::arg("rows"), py::arg("dims"), py::arg("kind") = "gaussian", py::arg("shift") = 0.0,
      py::arg("shift_vector") = std::vector<double>{}, py::arg("rank") = 1, py::arg("noise") = 0.0,
      py::arg("seed") = 0, py::arg("dataset_id") = "synth");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line in-process; returns (exit_code, stdout, stderr).");
}
