/*
 * manetsim: self-contained SVG line and grouped-bar charts. Plots are a
 * convenience; the CSVs next to them are the contract.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_SVG_HPP
#define MANET_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace manet {

struct SvgSeries
{
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series);

struct SvgBarGroup
{
    std::string label;            ///< x-axis category
    std::vector<double> values;   ///< one bar per series
};

std::string svg_grouped_bars(const std::string& title, const std::string& y_label,
                             const std::vector<std::string>& series_labels,
                             const std::vector<SvgBarGroup>& groups);

} // namespace manet

#endif // MANET_SVG_HPP
