// Command-line front end: reproduces the reference OAM-entanglement
// experiment, runs individual hologram scans, designs concentration filters,
// and emits coincidence mode matrices, all as CSV/JSON files.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 domain error
// (physically invalid request), 1 unexpected failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oam/pipeline.hpp"
#include "oam/version.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

oam::Config effective_config(const GlobalArgs& args) {
    oam::Config cfg;
    if (!args.config_path.empty()) {
        cfg = oam::load_config(args.config_path);
    }
    cfg = oam::apply_overrides(cfg, args.overrides);
    if (args.seed_given) {
        cfg.run.rng_seed = args.seed;
    }
    return cfg;
}

void cmd_reproduce(const GlobalArgs& args) {
    const oam::Config cfg = effective_config(args);
    const oam::ResultBundle rb = oam::reproduce(cfg);
    oam::write_bundle(rb, args.out_dir);

    const auto& s = rb.scan_source;
    const auto& t = rb.scan_transmitted;
    std::cout << "channel success probability : " << oam::format_real(rb.channel_success_prob)
              << "\n"
              << "source scan      : v_ideal=" << s.visibility_ideal << "  eps=" << s.epsilon
              << "  v=" << s.visibility << "  dip=" << s.dip << "w\n"
              << "transmitted scan : v_ideal=" << t.visibility_ideal << "  eps=" << t.epsilon
              << "  v=" << t.visibility << "  dip=" << t.dip << "w\n"
              << "dip shift        : " << rb.dip_shift << "w\n"
              << "filter yield     : " << rb.filter.yield
              << "  concentrated entropy: " << rb.concentrated_report.entropy_nats << " nats\n"
              << "classical baseline transmission: " << rb.bethe << "\n"
              << "wrote " << (std::filesystem::path(args.out_dir) / "bundle.json").string()
              << " and per-figure CSV files\n";
}

void cmd_scan(const GlobalArgs& args) {
    const oam::Config cfg = effective_config(args);
    const oam::BipartitePureState state =
        oam::make_reference_state(oam::ReferenceState::Source, cfg.l_max);
    const oam::DetectionProjector signal = oam::displaced_projector(
        cfg.spectrum(), {.fork_charge = cfg.signal_projector.fork,
                         .diffraction_order = 1,
                         .displacement = cfg.signal_projector.displacement});
    const int idler_fork = -cfg.signal_projector.fork;
    const Eigen::VectorXd grid =
        oam::uniform_grid(cfg.scan.d_min, cfg.scan.d_max, cfg.scan.n_points);

    oam::ScanCurve curve =
        cfg.epsilon_noise > 0.0
            ? oam::scan_expected(oam::mix_with_white_noise(state, cfg.epsilon_noise),
                                 signal, idler_fork, grid)
            : oam::scan_expected(state, signal, idler_fork, grid);
    curve = oam::sample_counts(curve, cfg.run);

    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path path = std::filesystem::path(args.out_dir) / "scan.csv";
    oam::write_text_file(path, oam::scan_csv(curve, cfg.run));
    std::cout << "visibility: " << oam::visibility(curve) << "\nwrote " << path.string()
              << "\n";
}

void cmd_design_filter(const GlobalArgs& args, double cap) {
    if (!(cap > 0.0 && cap <= 1.0)) {
        throw oam::ConfigError("--cap must be in (0,1]");
    }
    const oam::Config cfg = effective_config(args);
    const oam::BipartitePureState state =
        oam::make_reference_state(oam::ReferenceState::Source, cfg.l_max);
    const oam::FilterDesign filter = oam::design_concentration_filter(state, cap);
    const oam::ChannelResult concentrated = oam::apply_channel(state, filter.as_channel());
    const oam::EntanglementReport report = oam::schmidt_decompose(concentrated.state);

    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path path = std::filesystem::path(args.out_dir) / "filter.json";
    oam::write_text_file(path,
                         oam::filter_to_json(filter, cap, concentrated.success_prob, report));
    std::cout << "yield: " << filter.yield
              << "  concentrated entropy: " << report.entropy_nats << " nats\nwrote "
              << path.string() << "\n";
}

void cmd_mode_matrix(const GlobalArgs& args) {
    const oam::Config cfg = effective_config(args);
    const oam::BipartitePureState source =
        oam::make_reference_state(oam::ReferenceState::Source, cfg.l_max);
    const oam::BipartitePureState transmitted =
        oam::apply_channel(source, cfg.channel()).state;

    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);
    oam::write_text_file(dir / "mode_matrix_source.csv",
                         oam::mode_matrix_csv(oam::mode_matrix(source)));
    oam::write_text_file(dir / "mode_matrix_transmitted.csv",
                         oam::mode_matrix_csv(oam::mode_matrix(transmitted)));
    std::cout << "wrote " << (dir / "mode_matrix_source.csv").string() << " and "
              << (dir / "mode_matrix_transmitted.csv").string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for plasmon-assisted transmission of "
                 "OAM-entangled photon pairs"};
    app.set_version_flag("--version", oam::kVersion);
    app.fallthrough();
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path, "Path to a JSON config file");
    auto* seed_opt = app.add_option("--seed", args.seed, "Override run.rng_seed");
    app.add_option("--out", args.out_dir, "Output directory")->capture_default_str();
    app.add_option("--set", args.overrides,
                   "Override one config key, e.g. --set scan.n_points=501 (repeatable)");

    auto* reproduce = app.add_subcommand(
        "reproduce-paper", "Full reproduction: states, mode matrices, calibrated dip "
                           "scans, filter design, classical baseline");
    auto* scan = app.add_subcommand(
        "scan", "Scan the idler hologram displacement against the fixed signal analyzer");
    auto* design = app.add_subcommand(
        "design-filter", "Design the entanglement-concentration filter for the source state");
    double cap = 1.0;
    design->add_option("--cap", cap, "Largest allowed filter transmission")
        ->capture_default_str();
    auto* matrix = app.add_subcommand(
        "mode-matrix", "Coincidence probabilities for all 9 mode-detector pairings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are configuration errors
    }
    args.seed_given = seed_opt->count() > 0;

    try {
        if (reproduce->parsed()) {
            cmd_reproduce(args);
        } else if (scan->parsed()) {
            cmd_scan(args);
        } else if (design->parsed()) {
            cmd_design_filter(args, cap);
        } else if (matrix->parsed()) {
            cmd_mode_matrix(args);
        }
        return 0;
    } catch (const oam::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const oam::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
