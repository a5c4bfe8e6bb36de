// Python bindings for the C++ core: states and entanglement measures, the
// mode-dependent lossy channel, hologram detection projectors, dip-scan
// experiment simulation, and the JSON config/report pipeline.

#include <utility>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "oam/channel.hpp"
#include "oam/config.hpp"
#include "oam/experiment.hpp"
#include "oam/hologram.hpp"
#include "oam/pipeline.hpp"
#include "oam/states.hpp"
#include "oam/version.hpp"

namespace py = pybind11;
using namespace oam;

PYBIND11_MODULE(_oamsim, m) {
    m.doc() = "Simulator for plasmon-assisted transmission of orbital-angular-momentum "
              "entangled photon pairs";
    m.attr("__version__") = kVersion;

    // Exception hierarchy: translation tries the most recently registered
    // first, so the generic base goes first.
    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", error);
    auto domain = py::register_exception<DomainError>(m, "DomainError", error);
    py::register_exception<ZeroNormError>(m, "ZeroNormError", domain);
    py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError", domain);
    py::register_exception<DegenerateCurveError>(m, "DegenerateCurveError", domain);
    py::register_exception<UnreachableTargetError>(m, "UnreachableTargetError", domain);
    py::register_exception<BoundaryMinimumError>(m, "BoundaryMinimumError", domain);

    py::class_<ModeSpectrum>(m, "ModeSpectrum",
                             "Symmetric orbital-angular-momentum basis l = -l_max..+l_max")
        .def(py::init<int>(), py::arg("l_max"))
        .def_property_readonly("l_max", &ModeSpectrum::l_max)
        .def("__len__", &ModeSpectrum::size)
        .def("contains", &ModeSpectrum::contains, py::arg("l"))
        .def("index_of", &ModeSpectrum::index_of, py::arg("l"))
        .def("l_at", &ModeSpectrum::l_at, py::arg("index"))
        .def(py::self == py::self)
        .def("__repr__", [](const ModeSpectrum& s) {
            return "ModeSpectrum(l_max=" + std::to_string(s.l_max()) + ")";
        });

    py::enum_<ReferenceState>(m, "ReferenceState")
        .value("Source", ReferenceState::Source)
        .value("Transmitted", ReferenceState::Transmitted);

    py::enum_<Photon>(m, "Photon")
        .value("Signal", Photon::Signal)
        .value("Idler", Photon::Idler);

    py::class_<BipartitePureState>(m, "BipartitePureState",
                                   "Two-photon pure state; amplitudes[i, j] multiplies "
                                   "|l_at(i)> (signal) x |l_at(j)> (idler)")
        .def(py::init<ModeSpectrum, Eigen::MatrixXcd>(), py::arg("spectrum"),
             py::arg("amplitudes"))
        .def_property_readonly("spectrum", &BipartitePureState::spectrum)
        .def_property_readonly(
            "amplitudes",
            [](const BipartitePureState& s) -> Eigen::MatrixXcd { return s.amplitudes(); })
        .def("amplitude", &BipartitePureState::amplitude, py::arg("l_signal"),
             py::arg("l_idler"))
        .def("norm", &BipartitePureState::norm);

    py::class_<DensityOperator>(m, "DensityOperator")
        .def(py::init<ModeSpectrum, Eigen::MatrixXcd>(), py::arg("spectrum"),
             py::arg("matrix"))
        .def_static("from_pure", &DensityOperator::from_pure, py::arg("state"))
        .def_property_readonly(
            "matrix",
            [](const DensityOperator& r) -> Eigen::MatrixXcd { return r.matrix(); })
        .def_property_readonly("dim", &DensityOperator::dim)
        .def("trace", &DensityOperator::trace)
        .def("normalized", &DensityOperator::normalized)
        .def("fidelity_with", &DensityOperator::fidelity_with, py::arg("state"));

    py::class_<EntanglementReport>(m, "EntanglementReport")
        .def_readonly("schmidt_coeffs", &EntanglementReport::schmidt_coeffs)
        .def_readonly("entropy_nats", &EntanglementReport::entropy_nats)
        .def_readonly("fidelity_max_ent", &EntanglementReport::fidelity_max_ent);

    m.def("make_reference_state", &make_reference_state, py::arg("which"),
          py::arg("l_max") = 1,
          "The anti-diagonal qutrit state of the reference experiment, before "
          "(Source) or after (Transmitted) the perforated metal plate");
    m.def("max_entangled_state", &max_entangled_state, py::arg("spectrum"));
    m.def("normalize", &normalize, py::arg("state"));
    m.def("schmidt_decompose", &schmidt_decompose, py::arg("state"));
    m.def("mix_with_white_noise", &mix_with_white_noise, py::arg("state"),
          py::arg("epsilon"));

    py::class_<LossChannel>(m, "LossChannel",
                            "Mode-dependent pure-loss channel acting on one photon")
        .def(py::init([](const ModeSpectrum& spectrum, const Eigen::VectorXd& eta,
                         Photon acts_on) {
                 return LossChannel{spectrum, eta, acts_on};
             }),
             py::arg("spectrum"), py::arg("eta"), py::arg("acts_on") = Photon::Idler)
        .def_readonly("spectrum", &LossChannel::spectrum)
        .def_readonly("eta", &LossChannel::eta)
        .def_readonly("acts_on", &LossChannel::acts_on)
        .def("eta_at", &LossChannel::eta_at, py::arg("l"));

    py::class_<FilterDesign>(m, "FilterDesign")
        .def_readonly("spectrum", &FilterDesign::spectrum)
        .def_readonly("eta", &FilterDesign::eta)
        .def_property_readonly("yield_", [](const FilterDesign& f) { return f.yield; })
        .def("eta_at", &FilterDesign::eta_at, py::arg("l"))
        .def("as_channel", &FilterDesign::as_channel, py::arg("acts_on") = Photon::Idler);

    m.def(
        "apply_channel",
        [](const BipartitePureState& state, const LossChannel& channel) {
            ChannelResult r = apply_channel(state, channel);
            return std::make_pair(std::move(r.state), r.success_prob);
        },
        py::arg("state"), py::arg("channel"),
        "Post-selected transmission of a pure state: returns (state, success_prob)");
    m.def(
        "apply_channel_mixed",
        [](const DensityOperator& rho, const LossChannel& channel) {
            MixedChannelResult r = apply_channel_mixed(rho, channel);
            return std::make_pair(std::move(r.rho), r.success_prob);
        },
        py::arg("rho"), py::arg("channel"),
        "Post-selected transmission of a mixed state: returns (rho, success_prob)");
    m.def("design_concentration_filter", &design_concentration_filter, py::arg("state"),
          py::arg("eta_cap"),
          "Mode-dependent attenuation that turns an anti-diagonal state into a "
          "maximally entangled one");
    m.def("bethe_baseline", &bethe_baseline, py::arg("hole_diameter_nm"),
          py::arg("period_nm"), py::arg("wavelength_nm"),
          "Classical transmission estimate: single-hole Bethe factor times areal "
          "fill factor");

    py::class_<DetectionProjector>(m, "DetectionProjector")
        .def(py::init<ModeSpectrum, Eigen::VectorXcd, std::string>(), py::arg("spectrum"),
             py::arg("amplitudes"), py::arg("label"))
        .def_property_readonly("spectrum", &DetectionProjector::spectrum)
        .def_property_readonly(
            "amplitudes",
            [](const DetectionProjector& p) -> Eigen::VectorXcd { return p.amplitudes(); })
        .def_property_readonly("label", &DetectionProjector::label)
        .def("amplitude", &DetectionProjector::amplitude, py::arg("l"));

    m.def(
        "displaced_projector",
        [](const ModeSpectrum& spectrum, int fork_charge, int diffraction_order,
           double displacement, double fiber_waist_ratio) {
            return displaced_projector(spectrum,
                                       {.fork_charge = fork_charge,
                                        .diffraction_order = diffraction_order,
                                        .displacement = displacement},
                                       fiber_waist_ratio);
        },
        py::arg("spectrum"), py::arg("fork_charge"), py::arg("diffraction_order") = 1,
        py::arg("displacement") = 0.0, py::arg("fiber_waist_ratio") = 1.0,
        "Detection state of a displaced fork hologram followed by a single-mode fiber");
    m.def("mode_projector", &mode_projector, py::arg("spectrum"), py::arg("l"));
    m.def("projector_from_coefficients", &projector_from_coefficients, py::arg("spectrum"),
          py::arg("a"), py::arg("b"), py::arg("l"),
          "Superposition detector (a|0> + b|l>)/sqrt(a^2+b^2)");

    py::class_<CoincidenceMatrix>(m, "CoincidenceMatrix")
        .def_readonly("spectrum", &CoincidenceMatrix::spectrum)
        .def_readonly("values", &CoincidenceMatrix::values)
        .def("at", &CoincidenceMatrix::at, py::arg("l_signal"), py::arg("l_idler"));

    py::class_<ScanCurve>(m, "ScanCurve")
        .def(py::init<>())
        .def_readwrite("displacements", &ScanCurve::displacements)
        .def_readwrite("expected", &ScanCurve::expected)
        .def_readwrite("sampled", &ScanCurve::sampled)
        .def_readwrite("signal_label", &ScanCurve::signal_label);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("pair_rate", &RunConfig::pair_rate)
        .def_readwrite("integration_time", &RunConfig::integration_time)
        .def_readwrite("rng_seed", &RunConfig::rng_seed)
        .def_readwrite("epsilon_noise", &RunConfig::epsilon_noise);

    py::class_<ScanSetup>(m, "ScanSetup")
        .def(py::init<BipartitePureState, DetectionProjector, int, Eigen::VectorXd>(),
             py::arg("state"), py::arg("signal"), py::arg("idler_fork"),
             py::arg("displacements"))
        .def_readwrite("state", &ScanSetup::state)
        .def_readwrite("signal", &ScanSetup::signal)
        .def_readwrite("idler_fork", &ScanSetup::idler_fork)
        .def_readwrite("displacements", &ScanSetup::displacements);

    m.def("coincidence_prob",
          py::overload_cast<const BipartitePureState&, const DetectionProjector&,
                            const DetectionProjector&>(&coincidence_prob),
          py::arg("state"), py::arg("signal"), py::arg("idler"));
    m.def("coincidence_prob",
          py::overload_cast<const DensityOperator&, const DetectionProjector&,
                            const DetectionProjector&>(&coincidence_prob),
          py::arg("rho"), py::arg("signal"), py::arg("idler"));
    m.def("mode_matrix", py::overload_cast<const BipartitePureState&>(&mode_matrix),
          py::arg("state"));
    m.def("mode_matrix", py::overload_cast<const DensityOperator&>(&mode_matrix),
          py::arg("rho"));
    m.def("uniform_grid", &uniform_grid, py::arg("d_min"), py::arg("d_max"),
          py::arg("n_points"));
    m.def("scan_expected",
          py::overload_cast<const BipartitePureState&, const DetectionProjector&, int,
                            const Eigen::VectorXd&>(&scan_expected),
          py::arg("state"), py::arg("signal"), py::arg("idler_fork"),
          py::arg("displacements"));
    m.def("scan_expected",
          py::overload_cast<const DensityOperator&, const DetectionProjector&, int,
                            const Eigen::VectorXd&>(&scan_expected),
          py::arg("rho"), py::arg("signal"), py::arg("idler_fork"),
          py::arg("displacements"));
    m.def("scan_dip",
          py::overload_cast<const BipartitePureState&, const DetectionProjector&, int,
                            double, double, int>(&scan_dip),
          py::arg("state"), py::arg("signal"), py::arg("idler_fork"), py::arg("d_min"),
          py::arg("d_max"), py::arg("n_points"));
    m.def("scan_dip",
          py::overload_cast<const DensityOperator&, const DetectionProjector&, int, double,
                            double, int>(&scan_dip),
          py::arg("rho"), py::arg("signal"), py::arg("idler_fork"), py::arg("d_min"),
          py::arg("d_max"), py::arg("n_points"));
    m.def("sample_counts", &sample_counts, py::arg("curve"), py::arg("config"));
    m.def("visibility", &visibility, py::arg("curve"));
    m.def("find_dip", &find_dip, py::arg("curve"));
    m.def("locate_dip", &locate_dip, py::arg("state"), py::arg("signal"),
          py::arg("idler_fork"), py::arg("d_lo"), py::arg("d_hi"));
    m.def("calibrate_noise", &calibrate_noise, py::arg("target_v"), py::arg("setup"));

    // Config / pipeline: JSON-text interface mirroring the command-line tool.
    m.def(
        "reproduce_json",
        [](const std::string& config_text) {
            return bundle_to_json(reproduce(parse_config(config_text)));
        },
        py::arg("config_json") = std::string("{}"),
        "Full reproduction of the reference experiment; returns the result "
        "bundle as a JSON string");
    m.def(
        "write_reproduction",
        [](const std::string& config_text, const std::filesystem::path& out_dir) {
            write_bundle(reproduce(parse_config(config_text)), out_dir);
        },
        py::arg("config_json"), py::arg("out_dir"),
        "Full reproduction written as bundle.json plus mode-matrix and scan CSVs");
    m.def(
        "config_hash",
        [](const std::string& config_text) { return config_hash(parse_config(config_text)); },
        py::arg("config_json"),
        "Stable 64-bit hash of the canonical serialized config");
    m.def(
        "canonical_config",
        [](const std::string& config_text) { return config_to_json(parse_config(config_text)); },
        py::arg("config_json") = std::string("{}"),
        "Parse, validate, and re-serialize a config document");
}
