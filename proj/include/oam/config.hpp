#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "oam/channel.hpp"
#include "oam/errors.hpp"
#include "oam/experiment.hpp"

namespace oam {

/// Displacement grid of a hologram scan.
struct ScanRange {
    double d_min = -2.0;
    double d_max = 2.0;
    int n_points = 201;

    friend bool operator==(const ScanRange&, const ScanRange&) = default;
};

/// Fixed signal-side analyzer: a fork hologram of the given charge displaced
/// from the beam axis, first diffraction order.
struct SignalProjectorConfig {
    int fork = 1;
    double displacement = 0.5;

    friend bool operator==(const SignalProjectorConfig&, const SignalProjectorConfig&) = default;
};

/// Validated run parameters for every command. Defaults describe the
/// reference experiment: a three-mode spectrum, the measured per-mode plate
/// transmissions for l = (-1, 0, +1), and a 201-point scan over +-2 beam
/// waists.
struct Config {
    int l_max = 1;
    /// Idler-path intensity transmissions indexed l = -l_max .. +l_max.
    Eigen::VectorXd eta = (Eigen::VectorXd(3) << 0.0151, 0.0325, 0.0182).finished();
    /// White-noise weight mixed into scan states, in [0, 1].
    double epsilon_noise = 0.0;
    ScanRange scan;
    RunConfig run;
    SignalProjectorConfig signal_projector;

    ModeSpectrum spectrum() const { return ModeSpectrum(l_max); }

    /// The configured transmissions as an idler-side lossy channel.
    LossChannel channel() const { return {spectrum(), eta, Photon::Idler}; }

    friend bool operator==(const Config& a, const Config& b) {
        return a.l_max == b.l_max && a.eta == b.eta &&
               a.epsilon_noise == b.epsilon_noise && a.scan == b.scan &&
               a.run.pair_rate == b.run.pair_rate &&
               a.run.integration_time == b.run.integration_time &&
               a.run.rng_seed == b.run.rng_seed &&
               a.run.epsilon_noise == b.run.epsilon_noise &&
               a.signal_projector == b.signal_projector;
    }
};

/// Parses and validates a JSON config document. Unknown keys, wrong types,
/// and out-of-domain values all raise ConfigError; keys may be omitted to
/// accept their defaults.
Config parse_config(const std::string& json_text);

/// Reads and parses a config file; the error message names the path.
Config load_config(const std::filesystem::path& path);

/// Serializes to the JSON document format accepted by parse_config
/// (round-trips to an equal Config).
std::string config_to_json(const Config& config);

/// Applies `key=value` overrides (dotted path, JSON-typed value), e.g.
/// "scan.n_points=501" or "eta=[1.0,1.0,1.0]". All assignments are staged
/// first and the result is validated once, so overrides that are only valid
/// together (say, l_max with a matching eta) may be combined. Throws
/// ConfigError for malformed input, unknown keys, or an invalid result.
Config apply_overrides(const Config& config, const std::vector<std::string>& assignments);

/// Single-assignment form of apply_overrides, validated immediately.
void apply_override(Config& config, const std::string& assignment);

/// 64-bit FNV-1a hash of the canonical serialized config; stable across
/// runs, used to stamp result bundles with their provenance.
std::uint64_t config_hash(const Config& config);

} // namespace oam
