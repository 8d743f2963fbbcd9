#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vhetpos/experiment.hpp"

namespace py = pybind11;
using namespace vhetpos;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Urban VHetNet positioning simulator: pseudorange synthesis, weighted "
              "least-squares SPP, DOP, RAIM fault detection/exclusion.";

    py::class_<GeodeticCoord>(m, "GeodeticCoord")
        .def(py::init<double, double, double>(), py::arg("lat_deg"), py::arg("lon_deg"),
             py::arg("height_m"))
        .def_readwrite("lat_deg", &GeodeticCoord::lat_deg)
        .def_readwrite("lon_deg", &GeodeticCoord::lon_deg)
        .def_readwrite("height_m", &GeodeticCoord::height_m);

    py::class_<EcefCoord>(m, "EcefCoord")
        .def(py::init<double, double, double>(), py::arg("x_m"), py::arg("y_m"), py::arg("z_m"))
        .def_readwrite("x_m", &EcefCoord::x_m)
        .def_readwrite("y_m", &EcefCoord::y_m)
        .def_readwrite("z_m", &EcefCoord::z_m);

    py::enum_<SourceKind>(m, "SourceKind")
        .value("GPS", SourceKind::Gps)
        .value("HAPS", SourceKind::Haps)
        .value("GNB", SourceKind::Gnb);

    py::enum_<Region>(m, "Region")
        .value("SUBURBAN", Region::Suburban)
        .value("URBAN", Region::Urban);

    m.def("lla_to_ecef", &lla_to_ecef, py::arg("geodetic"));
    m.def("ecef_to_lla", &ecef_to_lla, py::arg("ecef"));
    m.def("ned_rotation", &ned_rotation, py::arg("origin"));
    m.def(
        "elevation_azimuth",
        [](const EcefCoord& rx, const GeodeticCoord& rx_lla, const EcefCoord& src) {
            const ElAzRange r = elevation_azimuth(rx, rx_lla, src);
            return py::make_tuple(r.el_deg, r.az_deg, r.range_m);
        },
        py::arg("receiver"), py::arg("receiver_lla"), py::arg("source"));

    m.def("gnb_los_probability", &gnb_los_probability, py::arg("d2d_m"));
    m.def(
        "haps_los_probability",
        [](double el_deg, Region region) {
            return haps_los_probability(el_deg, region, LosModelConfig{});
        },
        py::arg("el_deg"), py::arg("region"));

    m.def(
        "parse_yuma",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_yuma(in);
        },
        py::arg("text"));

    py::class_<AlmanacRecord>(m, "AlmanacRecord")
        .def_readonly("prn", &AlmanacRecord::prn)
        .def_readonly("health", &AlmanacRecord::health)
        .def_readonly("eccentricity", &AlmanacRecord::eccentricity)
        .def_readonly("toa_s", &AlmanacRecord::toa_s)
        .def_readonly("sqrt_a_m05", &AlmanacRecord::sqrt_a_m05)
        .def_readonly("week", &AlmanacRecord::week);

    m.def(
        "propagate_almanac",
        [](const AlmanacRecord& rec, int week, double seconds) {
            return propagate_almanac(rec, GpsTime{week, seconds});
        },
        py::arg("record"), py::arg("week"), py::arg("seconds"));

    py::class_<PseudorangeMeasurement>(m, "PseudorangeMeasurement")
        .def(py::init([](SourceKind kind, int id, double pr_m, double sigma_m,
                         const EcefCoord& source_pos) {
                 PseudorangeMeasurement p;
                 p.kind = kind;
                 p.id = id;
                 p.pr_m = pr_m;
                 p.sigma_m = sigma_m;
                 p.source_pos = source_pos;
                 return p;
             }),
             py::arg("kind"), py::arg("id"), py::arg("pr_m"), py::arg("sigma_m"),
             py::arg("source_pos"))
        .def_readwrite("pr_m", &PseudorangeMeasurement::pr_m)
        .def_readwrite("sigma_m", &PseudorangeMeasurement::sigma_m);

    py::class_<PositionFix>(m, "PositionFix")
        .def_readonly("position", &PositionFix::position)
        .def_readonly("clock_m", &PositionFix::clock_m)
        .def_readonly("iterations", &PositionFix::iterations)
        .def_readonly("converged", &PositionFix::converged)
        .def_readonly("residuals_m", &PositionFix::residuals_m);

    py::class_<DopValues>(m, "DopValues")
        .def_readonly("hdop", &DopValues::hdop)
        .def_readonly("vdop", &DopValues::vdop)
        .def_readonly("pdop", &DopValues::pdop)
        .def_readonly("tdop", &DopValues::tdop);

    m.def(
        "spp_solve",
        [](const std::vector<PseudorangeMeasurement>& meas, const EcefCoord& init,
           double init_clock_m) { return spp_solve(meas, init, init_clock_m); },
        py::arg("measurements"), py::arg("init") = EcefCoord{}, py::arg("init_clock_m") = 0.0);
    m.def("compute_dop", &compute_dop, py::arg("fix"), py::arg("receiver_lla"));

    py::class_<RaimOutcome>(m, "RaimOutcome")
        .def_readonly("passed", &RaimOutcome::passed)
        .def_readonly("global_statistic", &RaimOutcome::global_statistic)
        .def_readonly("global_threshold", &RaimOutcome::global_threshold)
        .def_property_readonly("excluded_ids", [](const RaimOutcome& o) {
            py::list out;
            for (const auto& id : o.excluded_ids) out.append(py::make_tuple(id.kind, id.id));
            return out;
        });

    m.def(
        "fde_solve",
        [](const std::vector<PseudorangeMeasurement>& meas, const EcefCoord& init,
           double init_clock_m) { return fde_solve(meas, init, init_clock_m, RaimConfig{}); },
        py::arg("measurements"), py::arg("init") = EcefCoord{}, py::arg("init_clock_m") = 0.0);

    m.def("chi2_quantile", &chi2_quantile, py::arg("p"), py::arg("dof"));
    m.def("normal_quantile", &normal_quantile, py::arg("p"));
    m.def("percentile", &percentile, py::arg("values"), py::arg("p"));
    m.def("cdf", &cdf, py::arg("values"));

    m.def(
        "run_scenario_file",
        [](const std::string& path, const std::string& out_dir) {
            ScenarioConfig cfg = load_scenario(path);
            ComparisonReport report;
            report.entries.push_back({cfg.systems, cfg.systems.label(), run_scenario(cfg)});
            emit_outputs(report, cfg, out_dir);
            const auto& s = report.entries.front().result.stats;
            py::dict out;
            out["fix_availability"] = s.fix_availability;
            out["epochs_total"] = s.epochs_total;
            out["gnb_availability_mean"] = s.availability[2].mean;
            return out;
        },
        py::arg("scenario_path"), py::arg("out_dir"));
}
