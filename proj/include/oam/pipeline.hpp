#pragma once

#include <filesystem>
#include <string>

#include "oam/channel.hpp"
#include "oam/config.hpp"
#include "oam/experiment.hpp"
#include "oam/states.hpp"

namespace oam {

/// Published visibilities that the noise calibration reproduces: the source
/// scan reached 97.7 +- 0.1 % and the plate-transmitted scan 97.6 +- 0.5 %.
inline constexpr double kSourceVisibilityTarget = 0.977;
inline constexpr double kTransmittedVisibilityTarget = 0.976;

/// Geometry of the reference perforated gold film (cylindrical holes on a
/// square lattice) and its transmission figures at the experiment's
/// wavelength: the measured plate transmission, and the classical estimate
/// quoted with it, whose normalization convention was not published.
inline constexpr double kHoleDiameterNm = 200.0;
inline constexpr double kHolePeriodNm = 600.0;
inline constexpr double kWavelengthNm = 702.0;
inline constexpr double kObservedTransmission = 0.032;
inline constexpr double kReportedClassicalEstimate = 0.0055;

/// Derived results of one dip scan: the scan itself (with calibrated noise
/// and simulated counts), the calibration, and the dip location.
struct ScanReport {
    ScanCurve curve;
    double visibility_ideal = 0.0; ///< noiseless visibility on the same grid
    double epsilon = 0.0;          ///< calibrated white-noise weight
    double visibility = 0.0;       ///< visibility of the calibrated expectation
    double dip = 0.0;              ///< continuous-minimum displacement
};

/// Everything the full reproduction computes, ready for serialization.
struct ResultBundle {
    Config config;
    BipartitePureState source;
    BipartitePureState transmitted;
    double channel_success_prob = 0.0;
    EntanglementReport source_report;
    EntanglementReport transmitted_report;
    CoincidenceMatrix matrix_source;
    CoincidenceMatrix matrix_transmitted;
    ScanReport scan_source;
    ScanReport scan_transmitted;
    double dip_shift = 0.0; ///< source dip minus transmitted dip
    double filter_cap = 0.0;
    FilterDesign filter;
    double filter_success_prob = 0.0;
    EntanglementReport concentrated_report;
    double bethe = 0.0; ///< classical estimate for the reference geometry
};

/// Runs the full reproduction on one config: source state, idler-loss
/// channel, both mode matrices, both noise-calibrated dip scans (source scan
/// calibrated to 97.7 % visibility, transmitted to 97.6 %), the dip shift,
/// the concentration-filter design (capped at the best configured
/// transmission), and the classical transmission baseline.
ResultBundle reproduce(const Config& config);

/// Scientific notation with 16 significant digits (round-trip exact).
std::string format_real(double x);

/// The bundle as a JSON document; all reals carry 16 significant digits.
std::string bundle_to_json(const ResultBundle& bundle);

/// JSON report of a designed concentration filter: the cap, the per-mode
/// transmissions, the yield, and the entanglement of the filtered state.
std::string filter_to_json(const FilterDesign& filter, double cap, double success_prob,
                           const EntanglementReport& concentrated);

/// CSV with header "l_signal,l_idler,probability".
std::string mode_matrix_csv(const CoincidenceMatrix& matrix);

/// CSV with header "displacement,expected_prob,expected_rate,sampled_counts";
/// expected_rate = expected_prob * pair_rate (counts per second). The counts
/// column is left blank if the curve has not been sampled.
std::string scan_csv(const ScanCurve& curve, const RunConfig& run);

/// Writes content byte-for-byte (LF line endings on every platform).
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Writes bundle.json, mode_matrix_{source,transmitted}.csv and
/// scan_{source,transmitted}.csv into out_dir (created if missing).
void write_bundle(const ResultBundle& bundle, const std::filesystem::path& out_dir);

} // namespace oam
