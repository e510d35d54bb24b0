#include "hapsris/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#define TOML_EXCEPTIONS 1
#include "tomlplusplus/toml.hpp"

#include "hapsris/errors.hpp"

namespace hapsris {

namespace {

const std::map<std::string, std::vector<std::string>>& schema() {
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"", {"user_count", "rate_target_bps", "seed"}},
        {"region", {"center_x", "center_y", "radius_m"}},
        {"cs", {"x", "y", "z"}},
        {"haps", {"x", "y", "z"}},
        {"radio",
         {"carrier_hz", "wave_speed_mps", "total_bandwidth_hz", "total_subcarriers",
          "noise_psd_dbm_per_hz", "cs_power_dbm", "uav_power_dbm", "cs_antenna_gain_db",
          "user_antenna_gain_db", "uav_antenna_gain_db"}},
        {"atg", {"alpha", "eta_los", "eta_nlos", "psi", "beta"}},
        {"ris", {"element_count", "mu"}},
        {"uav", {"altitude_m", "initial_count_policy", "initial_count"}},
        {"leader", {"delta_m", "max_iters"}},
        {"follower", {"kmeans_restarts", "kmeans_max_iters", "delta_prime"}},
    };
    return keys;
}

bool known(const std::vector<std::string>& keys, std::string_view k) {
    for (const auto& key : keys) {
        if (key == k) return true;
    }
    return false;
}

void reject_unknown_keys(const toml::table& root) {
    const auto& keys = schema();
    for (const auto& [k, node] : root) {
        const std::string key(k.str());
        if (known(keys.at(""), key)) continue;
        auto section = keys.find(key);
        if (section == keys.end() || key.empty()) {
            throw ConfigError(key, "unknown key");
        }
        const auto* table = node.as_table();
        if (!table) throw ConfigError(key, "expected a [" + key + "] table");
        for (const auto& [sk, snode] : *table) {
            if (!known(section->second, sk.str())) {
                throw ConfigError(key + "." + std::string(sk.str()), "unknown key");
            }
        }
    }
}

std::string field_name(std::string_view section, std::string_view key) {
    return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
}

const toml::node* lookup(const toml::table& root, std::string_view section, std::string_view key) {
    const toml::table* t = &root;
    if (!section.empty()) {
        t = root[section].as_table();
        if (!t) return nullptr;
    }
    return t->get(key);
}

void read(const toml::table& root, std::string_view section, std::string_view key, double& out) {
    const auto* node = lookup(root, section, key);
    if (!node) return;
    if (auto v = node->value_exact<double>()) {
        out = *v;
    } else if (auto i = node->value_exact<std::int64_t>()) {
        out = static_cast<double>(*i);
    } else {
        throw ConfigError(field_name(section, key), "expected a number");
    }
}

std::int64_t read_integer(const toml::node& node, std::string_view section, std::string_view key) {
    if (auto i = node.value_exact<std::int64_t>()) return *i;
    if (auto d = node.value_exact<double>()) {
        if (std::isfinite(*d) && *d == std::floor(*d) && std::abs(*d) < 9.0e15) {
            return static_cast<std::int64_t>(*d);
        }
    }
    throw ConfigError(field_name(section, key), "expected an integer");
}

void read(const toml::table& root, std::string_view section, std::string_view key,
          std::size_t& out) {
    const auto* node = lookup(root, section, key);
    if (!node) return;
    const auto v = read_integer(*node, section, key);
    if (v < 0) throw ConfigError(field_name(section, key), "must be >= 0");
    out = static_cast<std::size_t>(v);
}

void read(const toml::table& root, std::string_view section, std::string_view key, int& out) {
    const auto* node = lookup(root, section, key);
    if (!node) return;
    const auto v = read_integer(*node, section, key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(field_name(section, key), "out of range");
    }
    out = static_cast<int>(v);
}

void read_seed(const toml::table& root, std::uint64_t& out) {
    const auto* node = root.get("seed");
    if (!node) return;
    if (auto i = node->value_exact<std::int64_t>()) {
        if (*i < 0) throw ConfigError("seed", "must be >= 0");
        out = static_cast<std::uint64_t>(*i);
        return;
    }
    // Seeds above INT64_MAX do not fit a TOML integer and are written as strings.
    if (auto s = node->value_exact<std::string>()) {
        std::uint64_t v = 0;
        const auto* end = s->data() + s->size();
        auto [ptr, ec] = std::from_chars(s->data(), end, v);
        if (ec == std::errc{} && ptr == end && !s->empty()) {
            out = v;
            return;
        }
    }
    throw ConfigError("seed", "expected an unsigned 64-bit integer");
}

void read_policy(const toml::table& root, InitialUavPolicy& out) {
    const auto* node = lookup(root, "uav", "initial_count_policy");
    if (!node) return;
    const auto s = node->value_exact<std::string>();
    if (s && *s == "auto") {
        out = InitialUavPolicy::users_capped_by_band;
    } else if (s && *s == "fixed") {
        out = InitialUavPolicy::fixed;
    } else {
        throw ConfigError("uav.initial_count_policy", "expected \"auto\" or \"fixed\"");
    }
}

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(field, what);
}

bool finite(double v) { return std::isfinite(v); }

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

}  // namespace

std::size_t Scenario::leader_iterations() const {
    if (leader.max_iters > 0) return leader.max_iters;
    return static_cast<std::size_t>(std::ceil(region.radius_m / leader.delta_m));
}

void validate(const Scenario& s) {
    require(finite(s.region.center.x) && finite(s.region.center.y), "region.center_x",
            "center must be finite");
    require(finite(s.region.radius_m) && s.region.radius_m > 0.0, "region.radius_m",
            "must be > 0");
    require(s.user_count >= 1, "user_count", "must be >= 1");
    require(is_finite(s.cs_position), "cs", "position must be finite");
    require(is_finite(s.haps_position), "haps", "position must be finite");
    require(!(s.cs_position == s.haps_position), "haps", "must differ from the CS position");

    const auto& r = s.radio;
    require(finite(r.carrier_hz) && r.carrier_hz > 0.0, "radio.carrier_hz", "must be > 0");
    require(finite(r.wave_speed_mps) && r.wave_speed_mps > 0.0, "radio.wave_speed_mps",
            "must be > 0");
    require(finite(r.total_bandwidth_hz) && r.total_bandwidth_hz > 0.0,
            "radio.total_bandwidth_hz", "must be > 0");
    require(r.total_subcarriers >= 2 && r.total_subcarriers % 2 == 0, "radio.total_subcarriers",
            "must be a positive even count");
    require(finite(r.noise_psd_dbm_per_hz), "radio.noise_psd_dbm_per_hz", "must be finite");
    require(finite(r.cs_power_dbm), "radio.cs_power_dbm", "must be finite");
    require(finite(r.uav_power_dbm), "radio.uav_power_dbm", "must be finite");
    require(finite(r.cs_antenna_gain_db), "radio.cs_antenna_gain_db", "must be finite");
    require(finite(r.user_antenna_gain_db), "radio.user_antenna_gain_db", "must be finite");
    require(finite(r.uav_antenna_gain_db), "radio.uav_antenna_gain_db", "must be finite");

    const auto& a = s.atg;
    require(finite(a.alpha) && a.alpha > 0.0, "atg.alpha", "must be > 0");
    require(finite(a.eta_los) && a.eta_los >= 1.0, "atg.eta_los", "must be >= 1");
    require(finite(a.eta_nlos) && a.eta_nlos >= a.eta_los, "atg.eta_nlos",
            "must be >= atg.eta_los");
    require(finite(a.psi) && a.psi >= 0.0, "atg.psi", "must be >= 0");
    require(finite(a.beta) && a.beta >= 0.0, "atg.beta", "must be >= 0");

    require(finite(s.ris.mu) && s.ris.mu >= 0.0 && s.ris.mu <= 1.0, "ris.mu",
            "must lie in [0, 1]");
    require(finite(s.rate_target_bps) && s.rate_target_bps > 0.0, "rate_target_bps",
            "must be > 0");

    require(finite(s.uav.altitude_m) && s.uav.altitude_m >= 1.0, "uav.altitude_m",
            "must be >= 1");
    require(s.uav.initial_count_policy != InitialUavPolicy::fixed || s.uav.initial_count >= 1,
            "uav.initial_count", "must be >= 1 with the fixed policy");

    require(finite(s.leader.delta_m) && s.leader.delta_m > 0.0, "leader.delta_m",
            "must be > 0");
    require(s.follower.kmeans_restarts >= 1, "follower.kmeans_restarts", "must be >= 1");
    require(s.follower.kmeans_max_iters >= 1, "follower.kmeans_max_iters", "must be >= 1");
    require(s.follower.delta_prime >= 1, "follower.delta_prime", "must be >= 1");
}

Scenario parse_scenario(std::string_view text, std::string_view source_name) {
    toml::table root;
    try {
        root = toml::parse(text, source_name);
    } catch (const toml::parse_error& e) {
        throw ConfigError(e.source().begin.line, e.source().begin.column,
                          std::string(e.description()));
    }
    reject_unknown_keys(root);

    Scenario s;
    read(root, "", "user_count", s.user_count);
    read(root, "", "rate_target_bps", s.rate_target_bps);
    read_seed(root, s.seed);

    read(root, "region", "center_x", s.region.center.x);
    read(root, "region", "center_y", s.region.center.y);
    read(root, "region", "radius_m", s.region.radius_m);

    read(root, "cs", "x", s.cs_position.x);
    read(root, "cs", "y", s.cs_position.y);
    read(root, "cs", "z", s.cs_position.z);
    read(root, "haps", "x", s.haps_position.x);
    read(root, "haps", "y", s.haps_position.y);
    read(root, "haps", "z", s.haps_position.z);

    auto& r = s.radio;
    read(root, "radio", "carrier_hz", r.carrier_hz);
    read(root, "radio", "wave_speed_mps", r.wave_speed_mps);
    read(root, "radio", "total_bandwidth_hz", r.total_bandwidth_hz);
    read(root, "radio", "total_subcarriers", r.total_subcarriers);
    read(root, "radio", "noise_psd_dbm_per_hz", r.noise_psd_dbm_per_hz);
    read(root, "radio", "cs_power_dbm", r.cs_power_dbm);
    read(root, "radio", "uav_power_dbm", r.uav_power_dbm);
    read(root, "radio", "cs_antenna_gain_db", r.cs_antenna_gain_db);
    read(root, "radio", "user_antenna_gain_db", r.user_antenna_gain_db);
    read(root, "radio", "uav_antenna_gain_db", r.uav_antenna_gain_db);

    read(root, "atg", "alpha", s.atg.alpha);
    read(root, "atg", "eta_los", s.atg.eta_los);
    read(root, "atg", "eta_nlos", s.atg.eta_nlos);
    read(root, "atg", "psi", s.atg.psi);
    read(root, "atg", "beta", s.atg.beta);

    read(root, "ris", "element_count", s.ris.element_count);
    read(root, "ris", "mu", s.ris.mu);

    read(root, "uav", "altitude_m", s.uav.altitude_m);
    read_policy(root, s.uav.initial_count_policy);
    read(root, "uav", "initial_count", s.uav.initial_count);

    read(root, "leader", "delta_m", s.leader.delta_m);
    read(root, "leader", "max_iters", s.leader.max_iters);

    read(root, "follower", "kmeans_restarts", s.follower.kmeans_restarts);
    read(root, "follower", "kmeans_max_iters", s.follower.kmeans_max_iters);
    read(root, "follower", "delta_prime", s.follower.delta_prime);

    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

std::string dump_scenario(const Scenario& s) {
    std::ostringstream out;
    auto num = [&](std::string_view key, double v) {
        out << key << " = " << format_number(v) << '\n';
    };
    auto integer = [&](std::string_view key, auto v) { out << key << " = " << v << '\n'; };

    integer("user_count", s.user_count);
    num("rate_target_bps", s.rate_target_bps);
    if (s.seed <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        integer("seed", s.seed);
    } else {
        out << "seed = \"" << s.seed << "\"\n";
    }

    out << "\n[region]\n";
    num("center_x", s.region.center.x);
    num("center_y", s.region.center.y);
    num("radius_m", s.region.radius_m);

    out << "\n[cs]\n";
    num("x", s.cs_position.x);
    num("y", s.cs_position.y);
    num("z", s.cs_position.z);

    out << "\n[haps]\n";
    num("x", s.haps_position.x);
    num("y", s.haps_position.y);
    num("z", s.haps_position.z);

    const auto& r = s.radio;
    out << "\n[radio]\n";
    num("carrier_hz", r.carrier_hz);
    num("wave_speed_mps", r.wave_speed_mps);
    num("total_bandwidth_hz", r.total_bandwidth_hz);
    integer("total_subcarriers", r.total_subcarriers);
    num("noise_psd_dbm_per_hz", r.noise_psd_dbm_per_hz);
    num("cs_power_dbm", r.cs_power_dbm);
    num("uav_power_dbm", r.uav_power_dbm);
    num("cs_antenna_gain_db", r.cs_antenna_gain_db);
    num("user_antenna_gain_db", r.user_antenna_gain_db);
    num("uav_antenna_gain_db", r.uav_antenna_gain_db);

    out << "\n[atg]\n";
    num("alpha", s.atg.alpha);
    num("eta_los", s.atg.eta_los);
    num("eta_nlos", s.atg.eta_nlos);
    num("psi", s.atg.psi);
    num("beta", s.atg.beta);

    out << "\n[ris]\n";
    integer("element_count", s.ris.element_count);
    num("mu", s.ris.mu);

    out << "\n[uav]\n";
    num("altitude_m", s.uav.altitude_m);
    out << "initial_count_policy = \""
        << (s.uav.initial_count_policy == InitialUavPolicy::fixed ? "fixed" : "auto") << "\"\n";
    integer("initial_count", s.uav.initial_count);

    out << "\n[leader]\n";
    num("delta_m", s.leader.delta_m);
    integer("max_iters", s.leader.max_iters);

    out << "\n[follower]\n";
    integer("kmeans_restarts", s.follower.kmeans_restarts);
    integer("kmeans_max_iters", s.follower.kmeans_max_iters);
    integer("delta_prime", s.follower.delta_prime);
    return out.str();
}

}  // namespace hapsris
