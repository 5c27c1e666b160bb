/*
 * manetsim: scenario file parser and writer.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/config_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace manet {

namespace {

std::string trim(const std::string& s)
{
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

struct KeyValue
{
    std::string key;
    std::string value;
    int line;
};

class Assigner
{
  public:
    Assigner(std::vector<std::string>& errors)
        : m_errors(errors)
    {
    }

    void error(const KeyValue& kv, const std::string& what)
    {
        m_errors.push_back("line " + std::to_string(kv.line) + ": " + kv.key + ": " + what);
    }

    bool parse_double(const KeyValue& kv, double& out)
    {
        try {
            size_t pos = 0;
            double v = std::stod(kv.value, &pos);
            if (pos != kv.value.size()) {
                error(kv, "trailing characters in number '" + kv.value + "'");
                return false;
            }
            out = v;
            return true;
        } catch (const std::exception&) {
            error(kv, "expected a number, got '" + kv.value + "'");
            return false;
        }
    }

    bool parse_u64(const KeyValue& kv, std::uint64_t& out)
    {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
        if (ec != std::errc() || p != kv.value.data() + kv.value.size()) {
            error(kv, "expected a non-negative integer, got '" + kv.value + "'");
            return false;
        }
        out = v;
        return true;
    }

    bool parse_u32(const KeyValue& kv, std::uint32_t& out)
    {
        std::uint64_t v = 0;
        if (!parse_u64(kv, v))
            return false;
        if (v > 0xffffffffULL) {
            error(kv, "value too large");
            return false;
        }
        out = static_cast<std::uint32_t>(v);
        return true;
    }

    bool parse_bool(const KeyValue& kv, bool& out)
    {
        if (kv.value == "true" || kv.value == "1") {
            out = true;
            return true;
        }
        if (kv.value == "false" || kv.value == "0") {
            out = false;
            return true;
        }
        error(kv, "expected true/false, got '" + kv.value + "'");
        return false;
    }

  private:
    std::vector<std::string>& m_errors;
};

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ConfigParseResult parse_config(const std::string& text)
{
    ConfigParseResult result;
    ScenarioConfig& cfg = result.config;
    Assigner as(result.errors);

    // Track which derived fields were given explicitly.
    bool have_e_max = false;
    bool have_d_max = false;
    bool have_l_max = false;
    bool have_capacity = false;

    std::map<std::uint32_t, FlowSpec> flows;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            result.errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        KeyValue kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
        if (kv.key.empty()) {
            result.errors.push_back("line " + std::to_string(line_no) + ": empty key");
            continue;
        }

        if (kv.key.rfind("flow.", 0) == 0) {
            size_t dot = kv.key.find('.', 5);
            if (dot == std::string::npos) {
                as.error(kv, "expected flow.<index>.<field>");
                continue;
            }
            std::uint32_t idx = 0;
            {
                const std::string idx_str = kv.key.substr(5, dot - 5);
                KeyValue idx_kv{kv.key, idx_str, line_no};
                if (!as.parse_u32(idx_kv, idx))
                    continue;
            }
            FlowSpec& f = flows[idx];
            f.flow_id = idx;
            const std::string field = kv.key.substr(dot + 1);
            if (field == "src" || field == "dst") {
                NodeId id = kNoNode;
                if (kv.value != "auto") {
                    std::uint32_t v = 0;
                    if (!as.parse_u32(kv, v))
                        continue;
                    id = v;
                }
                (field == "src" ? f.src : f.dst) = id;
            } else if (field == "packet_size") {
                as.parse_u32(kv, f.packet_size);
            } else if (field == "interval") {
                as.parse_double(kv, f.interval);
            } else if (field == "start") {
                as.parse_double(kv, f.start);
            } else if (field == "stop") {
                as.parse_double(kv, f.stop);
            } else {
                as.error(kv, "unknown flow field");
            }
            continue;
        }

        if (kv.key == "area_width")
            as.parse_double(kv, cfg.area_width);
        else if (kv.key == "area_height")
            as.parse_double(kv, cfg.area_height);
        else if (kv.key == "node_count")
            as.parse_u32(kv, cfg.node_count);
        else if (kv.key == "radio_range")
            as.parse_double(kv, cfg.radio_range);
        else if (kv.key == "bandwidth")
            as.parse_double(kv, cfg.bandwidth);
        else if (kv.key == "initial_energy")
            as.parse_double(kv, cfg.initial_energy);
        else if (kv.key == "tx_power")
            as.parse_double(kv, cfg.tx_power);
        else if (kv.key == "rx_power")
            as.parse_double(kv, cfg.rx_power);
        else if (kv.key == "idle_power")
            as.parse_double(kv, cfg.idle_power);
        else if (kv.key == "mobility") {
            if (kv.value == "static")
                cfg.mobility = MobilityModel::Static;
            else if (kv.value == "random_waypoint")
                cfg.mobility = MobilityModel::RandomWaypoint;
            else
                as.error(kv, "expected static or random_waypoint");
        } else if (kv.key == "v_min")
            as.parse_double(kv, cfg.v_min);
        else if (kv.key == "v_max")
            as.parse_double(kv, cfg.v_max);
        else if (kv.key == "pause")
            as.parse_double(kv, cfg.pause);
        else if (kv.key == "protocol") {
            if (kv.value == "standard")
                cfg.protocol = Protocol::Standard;
            else if (kv.value == "multimetric")
                cfg.protocol = Protocol::MultiMetric;
            else
                as.error(kv, "expected standard or multimetric");
        } else if (kv.key == "hello_interval")
            as.parse_double(kv, cfg.hello_interval);
        else if (kv.key == "tc_interval")
            as.parse_double(kv, cfg.tc_interval);
        else if (kv.key == "tuple_hold_time")
            as.parse_double(kv, cfg.tuple_hold_time);
        else if (kv.key == "sim_duration")
            as.parse_double(kv, cfg.sim_duration);
        else if (kv.key == "run_to_depletion")
            as.parse_bool(kv, cfg.run_to_depletion);
        else if (kv.key == "seed")
            as.parse_u64(kv, cfg.seed);
        else if (kv.key == "mac_queue_capacity")
            have_capacity = as.parse_u32(kv, cfg.mac_queue_capacity);
        else if (kv.key == "ttl")
            as.parse_u32(kv, cfg.ttl);
        else if (kv.key == "sample_period")
            as.parse_double(kv, cfg.sample_period);
        else if (kv.key == "placement_gate")
            as.parse_bool(kv, cfg.placement_gate);
        else if (kv.key == "alpha1")
            as.parse_double(kv, cfg.weight_params.alpha1);
        else if (kv.key == "alpha2")
            as.parse_double(kv, cfg.weight_params.alpha2);
        else if (kv.key == "alpha3")
            as.parse_double(kv, cfg.weight_params.alpha3);
        else if (kv.key == "l_max")
            have_l_max = as.parse_u32(kv, cfg.weight_params.l_max);
        else if (kv.key == "e_max")
            have_e_max = as.parse_double(kv, cfg.weight_params.e_max);
        else if (kv.key == "d_max")
            have_d_max = as.parse_u32(kv, cfg.weight_params.d_max);
        else
            as.error(kv, "unknown key");
    }

    for (auto& [idx, f] : flows)
        cfg.flows.push_back(f);

    if (!have_e_max)
        cfg.weight_params.e_max = cfg.initial_energy;
    if (!have_d_max)
        cfg.weight_params.d_max = cfg.node_count >= 1 ? cfg.node_count - 1 : 0;
    if (!have_l_max && have_capacity)
        cfg.weight_params.l_max = cfg.mac_queue_capacity;
    if (!have_capacity && have_l_max)
        cfg.mac_queue_capacity = cfg.weight_params.l_max;

    return result;
}

ConfigParseResult load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        ConfigParseResult r;
        r.errors.push_back("cannot open config file: " + path);
        return r;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string write_config(const ScenarioConfig& cfg)
{
    std::ostringstream out;
    out << "area_width = " << fmt_double(cfg.area_width) << "\n";
    out << "area_height = " << fmt_double(cfg.area_height) << "\n";
    out << "node_count = " << cfg.node_count << "\n";
    out << "radio_range = " << fmt_double(cfg.radio_range) << "\n";
    out << "bandwidth = " << fmt_double(cfg.bandwidth) << "\n";
    out << "initial_energy = " << fmt_double(cfg.initial_energy) << "\n";
    out << "tx_power = " << fmt_double(cfg.tx_power) << "\n";
    out << "rx_power = " << fmt_double(cfg.rx_power) << "\n";
    out << "idle_power = " << fmt_double(cfg.idle_power) << "\n";
    out << "mobility = " << to_string(cfg.mobility) << "\n";
    out << "v_min = " << fmt_double(cfg.v_min) << "\n";
    out << "v_max = " << fmt_double(cfg.v_max) << "\n";
    out << "pause = " << fmt_double(cfg.pause) << "\n";
    out << "protocol = " << to_string(cfg.protocol) << "\n";
    out << "hello_interval = " << fmt_double(cfg.hello_interval) << "\n";
    out << "tc_interval = " << fmt_double(cfg.tc_interval) << "\n";
    out << "tuple_hold_time = " << fmt_double(cfg.tuple_hold_time) << "\n";
    out << "sim_duration = " << fmt_double(cfg.sim_duration) << "\n";
    out << "run_to_depletion = " << (cfg.run_to_depletion ? "true" : "false") << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "mac_queue_capacity = " << cfg.mac_queue_capacity << "\n";
    out << "ttl = " << cfg.ttl << "\n";
    out << "sample_period = " << fmt_double(cfg.sample_period) << "\n";
    out << "placement_gate = " << (cfg.placement_gate ? "true" : "false") << "\n";
    out << "alpha1 = " << fmt_double(cfg.weight_params.alpha1) << "\n";
    out << "alpha2 = " << fmt_double(cfg.weight_params.alpha2) << "\n";
    out << "alpha3 = " << fmt_double(cfg.weight_params.alpha3) << "\n";
    out << "l_max = " << cfg.weight_params.l_max << "\n";
    out << "e_max = " << fmt_double(cfg.weight_params.e_max) << "\n";
    out << "d_max = " << cfg.weight_params.d_max << "\n";
    for (const FlowSpec& f : cfg.flows) {
        const std::string p = "flow." + std::to_string(f.flow_id) + ".";
        out << p << "src = " << (f.src == kNoNode ? std::string("auto") : std::to_string(f.src))
            << "\n";
        out << p << "dst = " << (f.dst == kNoNode ? std::string("auto") : std::to_string(f.dst))
            << "\n";
        out << p << "packet_size = " << f.packet_size << "\n";
        out << p << "interval = " << fmt_double(f.interval) << "\n";
        out << p << "start = " << fmt_double(f.start) << "\n";
        out << p << "stop = " << fmt_double(f.stop) << "\n";
    }
    return out.str();
}

} // namespace manet
