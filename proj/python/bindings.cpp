#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>

#include "apsof/fcm.hpp"
#include "apsof/imaging.hpp"
#include "apsof/metrics.hpp"
#include "apsof/pipeline.hpp"
#include "apsof/swarm.hpp"

namespace py = pybind11;

namespace {

using Floats = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Bytes = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

std::vector<double> flat(const Floats& a) { return {a.data(), a.data() + a.size()}; }

// (N, d) float array, or (N,) treated as d = 1.
apsof::PixelDataset pixels_from(const Floats& a) {
  if (a.ndim() == 1) return apsof::PixelDataset::from_scalars(flat(a));
  if (a.ndim() != 2) throw py::value_error("pixels must have shape (N, d) or (N,)");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return apsof::PixelDataset(flat(a), static_cast<std::size_t>(a.shape(1)), n, 1);
}

apsof::CenterSet centers_from(const Floats& a) {
  if (a.ndim() == 1) return apsof::CenterSet::from_scalars(flat(a));
  if (a.ndim() != 2) throw py::value_error("centers must have shape (C, d) or (C,)");
  return apsof::CenterSet(flat(a), static_cast<std::size_t>(a.shape(1)));
}

Floats to_array(std::span<const double> values, std::size_t rows, std::size_t cols) {
  Floats out({rows, cols});
  std::memcpy(out.mutable_data(), values.data(), values.size() * sizeof(double));
  return out;
}

Floats centers_to_array(const apsof::CenterSet& c) { return to_array(c.values(), c.size(), c.dim()); }

apsof::RawImage image_from(const Bytes& a) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw py::value_error("image must have shape (H, W, 3)");
  return apsof::RawImage{static_cast<std::size_t>(a.shape(1)), static_cast<std::size_t>(a.shape(0)),
                         std::vector<std::uint8_t>(a.data(), a.data() + a.size())};
}

Bytes image_to_array(const apsof::RawImage& img) {
  Bytes out({img.height, img.width, std::size_t{3}});
  std::memcpy(out.mutable_data(), img.rgb8.data(), img.rgb8.size());
  return out;
}

py::dict result_to_dict(const apsof::SegmentationResult& r, const apsof::PixelDataset& data,
                        double fuzzifier) {
  py::dict d;
  d["algorithm"] = r.algorithm;
  d["centers"] = centers_to_array(r.centers);
  py::array_t<std::uint32_t> labels({data.height(), data.width()});
  std::memcpy(labels.mutable_data(), r.labels.labels().data(), r.labels.size() * sizeof(std::uint32_t));
  d["labels"] = labels;
  d["final_jm"] = r.final_jm;
  d["evaluated_jm"] = apsof::evaluate_jm(data, r.centers, fuzzifier);
  d["iterations"] = r.iterations;
  d["wall_time_ms"] = std::chrono::duration<double, std::milli>(r.wall_time).count();
  d["seed"] = r.seed;
  if (r.swarm) {
    d["swarm_gbest_fitness"] = r.swarm->history.gbest_fitness;
    d["swarm_variance"] = r.swarm->history.variance;
  }
  if (r.fcm) d["jm_trajectory"] = r.fcm->jm_trajectory;
  if (data.dim() == 3) d["quantized"] = image_to_array(apsof::reconstruct_quantized(data, r.labels, r.centers));
  return d;
}

}  // namespace

PYBIND11_MODULE(_apsof, m) {
  m.doc() = "Swarm-seeded fuzzy c-means color segmentation";

  py::register_exception<apsof::Error>(m, "ApsofError", PyExc_ValueError);

  py::enum_<apsof::SwarmMode>(m, "SwarmMode")
      .value("classic", apsof::SwarmMode::classic)
      .value("adaptive", apsof::SwarmMode::adaptive);

  py::class_<apsof::ClusterConfig>(m, "ClusterConfig")
      .def(py::init<>())
      .def_readwrite("cluster_count", &apsof::ClusterConfig::cluster_count)
      .def_readwrite("fuzzifier", &apsof::ClusterConfig::fuzzifier)
      .def_readwrite("fcm_max_iters", &apsof::ClusterConfig::fcm_max_iters)
      .def_readwrite("fcm_rel_tol", &apsof::ClusterConfig::fcm_rel_tol)
      .def_readwrite("seed", &apsof::ClusterConfig::seed)
      .def_readwrite("threads", &apsof::ClusterConfig::threads);

  py::class_<apsof::SwarmConfig>(m, "SwarmConfig")
      .def(py::init<>())
      .def_readwrite("swarm_size", &apsof::SwarmConfig::swarm_size)
      .def_readwrite("n_max", &apsof::SwarmConfig::n_max)
      .def_readwrite("w_max", &apsof::SwarmConfig::w_max)
      .def_readwrite("w_min", &apsof::SwarmConfig::w_min)
      .def_readwrite("c1_init", &apsof::SwarmConfig::c1_init)
      .def_readwrite("c1_final", &apsof::SwarmConfig::c1_final)
      .def_readwrite("c2_init", &apsof::SwarmConfig::c2_init)
      .def_readwrite("c2_final", &apsof::SwarmConfig::c2_final)
      .def_readwrite("constant_w", &apsof::SwarmConfig::constant_w)
      .def_readwrite("constant_c", &apsof::SwarmConfig::constant_c)
      .def_readwrite("variance_tol", &apsof::SwarmConfig::variance_tol)
      .def_readwrite("v_max_fraction", &apsof::SwarmConfig::v_max_fraction)
      .def_readwrite("mode", &apsof::SwarmConfig::mode);

  m.def("load_ppm",
        [](const py::bytes& data) {
          const std::string s = data;
          const auto img = apsof::load_ppm(
              {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
          return image_to_array(img);
        },
        "Decode P6 bytes into an (H, W, 3) uint8 array", py::arg("data"));
  m.def("dump_ppm",
        [](const Bytes& image) {
          const auto bytes = apsof::write_ppm(image_from(image));
          return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        "Encode an (H, W, 3) uint8 array as P6 bytes", py::arg("image"));

  m.def("assign_nearest",
        [](const Floats& pixels, const Floats& centers) {
          const auto labels = apsof::assign_nearest(pixels_from(pixels), centers_from(centers));
          return std::vector<std::uint32_t>(labels.labels().begin(), labels.labels().end());
        },
        py::arg("pixels"), py::arg("centers"));

  m.def("compute_memberships",
        [](const Floats& pixels, const Floats& centers, double m) {
          const auto u = apsof::compute_memberships(pixels_from(pixels), centers_from(centers), m);
          return to_array(u.values(), u.rows(), u.cols());
        },
        py::arg("pixels"), py::arg("centers"), py::arg("m") = 2.0);
  m.def("update_centers",
        [](const Floats& pixels, const Floats& u, double m) {
          if (u.ndim() != 2) throw py::value_error("memberships must have shape (N, C)");
          const apsof::MembershipMatrix mm(flat(u), static_cast<std::size_t>(u.shape(0)),
                                           static_cast<std::size_t>(u.shape(1)));
          return centers_to_array(apsof::update_centers(pixels_from(pixels), mm, m));
        },
        py::arg("pixels"), py::arg("memberships"), py::arg("m") = 2.0);
  m.def("evaluate_jm",
        [](const Floats& pixels, const Floats& centers, double m) {
          return apsof::evaluate_jm(pixels_from(pixels), centers_from(centers), m);
        },
        py::arg("pixels"), py::arg("centers"), py::arg("m") = 2.0);
  m.def("run_fcm",
        [](const Floats& pixels, const Floats& initial, const apsof::ClusterConfig& config) {
          const auto r = apsof::run_fcm(pixels_from(pixels), centers_from(initial), config);
          py::dict d;
          d["centers"] = centers_to_array(r.centers);
          d["labels"] = std::vector<std::uint32_t>(r.labels.labels().begin(), r.labels.labels().end());
          d["jm_trajectory"] = r.jm_trajectory;
          d["iterations"] = r.iterations;
          d["converged"] = r.converged;
          return d;
        },
        py::arg("pixels"), py::arg("initial_centers"), py::arg("config"));

  m.def("particle_fitness",
        [](const Floats& pixels, const Floats& centers) {
          return apsof::particle_fitness(pixels_from(pixels), centers_from(centers).values());
        },
        py::arg("pixels"), py::arg("centers"));
  m.def("adaptive_inertia",
        [](double f, double f_avg, double f_min, const apsof::SwarmConfig& c) {
          return apsof::adaptive_inertia(f, apsof::SwarmStats{f_avg, f_min, 0.0}, c);
        },
        py::arg("fitness"), py::arg("f_avg"), py::arg("f_min"), py::arg("config") = apsof::SwarmConfig{});
  m.def("adaptive_learning_factors", &apsof::adaptive_learning_factors, py::arg("iteration"),
        py::arg("config") = apsof::SwarmConfig{});
  m.def("swarm_stats",
        [](const std::vector<double>& f) {
          const auto s = apsof::swarm_stats(f);
          return py::make_tuple(s.f_avg, s.f_min, s.variance);
        },
        "Returns (f_avg, f_min, variance)", py::arg("fitnesses"));
  m.def("normalized_jm_pair", &apsof::normalized_jm_pair, py::arg("jm_a"), py::arg("jm_b"));

  m.def("segment",
        [](const Bytes& image, const std::string& algorithm, const apsof::ClusterConfig& config,
           const apsof::SwarmConfig& swarm, std::optional<std::size_t> max_side) {
          const auto data = apsof::to_dataset(image_from(image), max_side);
          py::gil_scoped_release release;
          auto r = apsof::run_algorithm(algorithm, data, config, swarm);
          py::gil_scoped_acquire acquire;
          return result_to_dict(r, data, config.fuzzifier);
        },
        "Segment an (H, W, 3) uint8 image with kmeans | fcm | psofcm | apsof",
        py::arg("image"), py::arg("algorithm") = "apsof", py::arg("config") = apsof::ClusterConfig{},
        py::arg("swarm") = apsof::SwarmConfig{}, py::arg("max_side") = py::none());

  m.def("compare",
        [](const Bytes& image, const apsof::ClusterConfig& config, const apsof::SwarmConfig& swarm,
           const std::string& name) {
          const auto data = apsof::to_dataset(image_from(image));
          std::vector<apsof::SegmentationResult> results;
          for (auto a : apsof::kAllAlgorithms) results.push_back(apsof::run_algorithm(a, data, config, swarm));
          const std::vector<std::pair<std::string, std::string>> pairs{{"fcm", "apsof"}};
          const auto report = apsof::build_report(name, data, results, pairs, config.fuzzifier, config.threads);
          return apsof::to_json(report).dump();
        },
        "Run all four algorithms and return the JSON comparison report",
        py::arg("image"), py::arg("config") = apsof::ClusterConfig{},
        py::arg("swarm") = apsof::SwarmConfig{}, py::arg("name") = "image");
}
