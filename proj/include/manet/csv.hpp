/*
 * manetsim: CSV emission with fixed per-column formatting so identical
 * inputs reproduce identical bytes.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_CSV_HPP
#define MANET_CSV_HPP

#include <optional>
#include <string>

namespace manet {

/// Fixed-precision decimal rendering (printf %.*f).
std::string csv_num(double v, int decimals);

/// Empty cell when the value is absent.
std::string csv_opt(std::optional<double> v, int decimals);

/// Writes `content` to `path`, creating parent directories. Returns false
/// on I/O failure.
bool write_file(const std::string& path, const std::string& content);

} // namespace manet

#endif // MANET_CSV_HPP
