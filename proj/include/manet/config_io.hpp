/*
 * manetsim: the flat key = value scenario file format.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_CONFIG_IO_HPP
#define MANET_CONFIG_IO_HPP

#include "manet/config.hpp"

#include <string>
#include <vector>

namespace manet {

/// Result of parsing a scenario file. The config is meaningful only when
/// `errors` is empty; parse errors carry the input line number.
struct ConfigParseResult
{
    ScenarioConfig config;
    std::vector<std::string> errors;

    bool ok() const { return errors.empty(); }
};

/// Parses the flat `key = value` grammar. Lines starting with '#' and blank
/// lines are ignored. Flows use indexed keys (`flow.0.src = 4`); endpoint
/// values may be `auto` to request seeded endpoint draws at run start.
/// Unknown keys are errors. Omitted weight normalizers are derived from the
/// scenario (e_max from initial_energy, d_max from node_count - 1, and
/// l_max/mac_queue_capacity mirror each other).
ConfigParseResult parse_config(const std::string& text);

/// Reads and parses a scenario file; I/O failures are reported in `errors`.
ConfigParseResult load_config_file(const std::string& path);

/// Canonical serialization; parse_config(write_config(c)) reproduces `c`.
std::string write_config(const ScenarioConfig& cfg);

} // namespace manet

#endif // MANET_CONFIG_IO_HPP
