#include "oam/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace oam {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw ConfigError("config: " + message);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        fail(where + ": expected a JSON object");
    }
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(where + ": unknown key '" + item.key() + "'");
        }
    }
}

double get_real(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        fail(std::string(key) + ": expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(std::string(key) + ": must be finite");
    }
    return x;
}

std::int64_t get_int(const json& obj, const char* key, std::int64_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        fail(std::string(key) + ": expected an integer");
    }
    return v.get<std::int64_t>();
}

Config from_json(const json& doc) {
    check_keys(doc, "top level",
               {"l_max", "eta", "epsilon_noise", "scan", "run", "signal_projector"});
    Config cfg;

    cfg.l_max = static_cast<int>(get_int(doc, "l_max", cfg.l_max));
    if (cfg.l_max < 1) {
        fail("l_max: must be at least 1");
    }

    if (doc.contains("eta")) {
        const json& eta = doc.at("eta");
        if (!eta.is_array()) {
            fail("eta: expected an array of per-mode transmissions");
        }
        cfg.eta.resize(static_cast<Eigen::Index>(eta.size()));
        for (std::size_t i = 0; i < eta.size(); ++i) {
            if (!eta[i].is_number()) {
                fail("eta: expected numeric entries");
            }
            cfg.eta(static_cast<Eigen::Index>(i)) = eta[i].get<double>();
        }
    }
    if (cfg.eta.size() != 2 * cfg.l_max + 1) {
        fail("eta: need exactly 2*l_max+1 entries (one per mode, l = -l_max..+l_max)");
    }
    for (Eigen::Index i = 0; i < cfg.eta.size(); ++i) {
        if (!(cfg.eta(i) > 0.0 && cfg.eta(i) <= 1.0)) {
            fail("eta: transmissions must be in (0,1]");
        }
    }

    cfg.epsilon_noise = get_real(doc, "epsilon_noise", cfg.epsilon_noise);
    if (!(cfg.epsilon_noise >= 0.0 && cfg.epsilon_noise <= 1.0)) {
        fail("epsilon_noise: must be in [0,1]");
    }

    if (doc.contains("scan")) {
        const json& scan = doc.at("scan");
        check_keys(scan, "scan", {"d_min", "d_max", "n_points"});
        cfg.scan.d_min = get_real(scan, "d_min", cfg.scan.d_min);
        cfg.scan.d_max = get_real(scan, "d_max", cfg.scan.d_max);
        cfg.scan.n_points = static_cast<int>(get_int(scan, "n_points", cfg.scan.n_points));
    }
    if (!(cfg.scan.d_min < cfg.scan.d_max)) {
        fail("scan: d_min must be below d_max");
    }
    if (cfg.scan.n_points < 3) {
        fail("scan: n_points must be at least 3");
    }

    if (doc.contains("run")) {
        const json& run = doc.at("run");
        check_keys(run, "run", {"pair_rate", "integration_time", "rng_seed"});
        cfg.run.pair_rate = get_real(run, "pair_rate", cfg.run.pair_rate);
        cfg.run.integration_time = get_real(run, "integration_time", cfg.run.integration_time);
        if (run.contains("rng_seed")) {
            const json& seed = run.at("rng_seed");
            if (!seed.is_number_integer() ||
                (seed.is_number_integer() && !seed.is_number_unsigned() &&
                 seed.get<std::int64_t>() < 0)) {
                fail("run.rng_seed: expected a nonnegative integer");
            }
            cfg.run.rng_seed = seed.get<std::uint64_t>();
        }
    }
    if (!(cfg.run.pair_rate > 0.0)) {
        fail("run.pair_rate: must be positive");
    }
    if (!(cfg.run.integration_time > 0.0)) {
        fail("run.integration_time: must be positive");
    }
    cfg.run.epsilon_noise = cfg.epsilon_noise;

    if (doc.contains("signal_projector")) {
        const json& sig = doc.at("signal_projector");
        check_keys(sig, "signal_projector", {"fork", "displacement"});
        cfg.signal_projector.fork =
            static_cast<int>(get_int(sig, "fork", cfg.signal_projector.fork));
        cfg.signal_projector.displacement =
            get_real(sig, "displacement", cfg.signal_projector.displacement);
    }
    if (cfg.signal_projector.fork != 1 && cfg.signal_projector.fork != -1) {
        fail("signal_projector.fork: must be +1 or -1");
    }

    return cfg;
}

} // namespace

Config parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return from_json(doc);
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (in '" + path.string() + "')");
    }
}

std::string config_to_json(const Config& config) {
    json doc;
    doc["l_max"] = config.l_max;
    doc["eta"] = std::vector<double>(config.eta.data(), config.eta.data() + config.eta.size());
    doc["epsilon_noise"] = config.epsilon_noise;
    doc["scan"] = {{"d_min", config.scan.d_min},
                   {"d_max", config.scan.d_max},
                   {"n_points", config.scan.n_points}};
    doc["run"] = {{"pair_rate", config.run.pair_rate},
                  {"integration_time", config.run.integration_time},
                  {"rng_seed", config.run.rng_seed}};
    doc["signal_projector"] = {{"fork", config.signal_projector.fork},
                               {"displacement", config.signal_projector.displacement}};
    return doc.dump(2) + "\n";
}

Config apply_overrides(const Config& config, const std::vector<std::string>& assignments) {
    json doc = json::parse(config_to_json(config));
    for (const std::string& assignment : assignments) {
        const std::size_t eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0) {
            fail("override '" + assignment + "' is not of the form key=value");
        }
        const std::string key = assignment.substr(0, eq);
        const std::string value_text = assignment.substr(eq + 1);

        const json value = json::parse(value_text, nullptr, /*allow_exceptions=*/false);
        if (value.is_discarded()) {
            fail("override value '" + value_text + "' is not valid JSON");
        }

        std::string pointer = "/" + key;
        for (auto& c : pointer) {
            if (c == '.') {
                c = '/';
            }
        }
        try {
            doc[json::json_pointer(pointer)] = value;
        } catch (const json::exception& e) {
            fail("cannot apply override '" + assignment + "': " + e.what());
        }
    }
    return from_json(doc);
}

void apply_override(Config& config, const std::string& assignment) {
    config = apply_overrides(config, {assignment});
}

std::uint64_t config_hash(const Config& config) {
    const std::string canonical = config_to_json(config);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace oam
