/*
 * manetsim: SVG chart rendering.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace manet {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 24.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 64.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fixed(double v, int decimals)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

void open_svg(std::ostringstream& out, const std::string& title)
{
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
        << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' '
        << num(kHeight) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";
}

void axes(std::ostringstream& out, const std::string& x_label, const std::string& y_label)
{
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom) << "\" x2=\""
        << num(kWidth - kRight) << "\" y2=\"" << num(kHeight - kBottom)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(kHeight - kBottom) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << num((kTop + kHeight - kBottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << num((kTop + kHeight - kBottom) / 2) << ")\">" << y_label << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<std::string>& labels)
{
    double x = kLeft + 12.0;
    const double y = kTop - 8.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const char* color = kPalette[i % 6];
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 10) << "\" width=\"12\" "
            << "height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << num(x + 16) << "\" y=\"" << num(y) << "\" "
            << "font-family=\"sans-serif\" font-size=\"12\">" << labels[i] << "</text>\n";
        x += 24.0 + 8.0 * static_cast<double>(labels[i].size());
    }
}

} // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series)
{
    double x_min = 0.0, x_max = 1.0, y_max = 1.0;
    bool first = true;
    for (const SvgSeries& s : series) {
        for (auto [x, y] : s.points) {
            if (first) {
                x_min = x_max = x;
                y_max = y;
                first = false;
            }
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max == x_min)
        x_max = x_min + 1.0;
    if (y_max <= 0.0)
        y_max = 1.0;
    y_max *= 1.05;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return kHeight - kBottom - y / y_max * plot_h; };

    std::ostringstream out;
    open_svg(out, title);
    axes(out, x_label, y_label);

    for (int tick = 0; tick <= 5; ++tick) {
        const double ty = y_max / 1.05 * tick / 5.0;
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(ty) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fixed(ty, 2) << "</text>\n";
        const double tx = x_min + (x_max - x_min) * tick / 5.0;
        out << "<text x=\"" << num(sx(tx)) << "\" y=\"" << num(kHeight - kBottom + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fixed(tx, 0) << "</text>\n";
    }

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < series.size(); ++i) {
        labels.push_back(series[i].label);
        if (series[i].points.empty())
            continue;
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 6]
            << "\" stroke-width=\"2\" points=\"";
        for (auto [x, y] : series[i].points)
            out << fixed(sx(x), 2) << ',' << fixed(sy(y), 2) << ' ';
        out << "\"/>\n";
    }
    legend(out, labels);
    out << "</svg>\n";
    return out.str();
}

std::string svg_grouped_bars(const std::string& title, const std::string& y_label,
                             const std::vector<std::string>& series_labels,
                             const std::vector<SvgBarGroup>& groups)
{
    double y_max = 1.0;
    for (const SvgBarGroup& g : groups)
        for (double v : g.values)
            y_max = std::max(y_max, v);
    y_max *= 1.1;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double group_w = plot_w / std::max<std::size_t>(groups.size(), 1);
    const std::size_t bars = std::max<std::size_t>(series_labels.size(), 1);
    const double bar_w = group_w * 0.8 / static_cast<double>(bars);

    std::ostringstream out;
    open_svg(out, title);
    axes(out, "", y_label);

    for (int tick = 0; tick <= 5; ++tick) {
        const double ty = y_max / 1.1 * tick / 5.0;
        const double y = kHeight - kBottom - ty / y_max * plot_h;
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fixed(ty, 1) << "</text>\n";
    }

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const SvgBarGroup& g = groups[gi];
        const double gx = kLeft + group_w * static_cast<double>(gi) + group_w * 0.1;
        for (std::size_t bi = 0; bi < g.values.size(); ++bi) {
            const double h = g.values[bi] / y_max * plot_h;
            out << "<rect x=\"" << fixed(gx + bar_w * static_cast<double>(bi), 2) << "\" y=\""
                << fixed(kHeight - kBottom - h, 2) << "\" width=\"" << fixed(bar_w * 0.92, 2)
                << "\" height=\"" << fixed(h, 2) << "\" fill=\"" << kPalette[bi % 6]
                << "\"/>\n";
        }
        out << "<text x=\"" << fixed(gx + group_w * 0.4, 2) << "\" y=\""
            << num(kHeight - kBottom + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << g.label << "</text>\n";
    }
    legend(out, series_labels);
    out << "</svg>\n";
    return out.str();
}

} // namespace manet
