/*
 * manetsim: CSV helpers.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace manet {

std::string csv_num(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string csv_opt(std::optional<double> v, int decimals)
{
    return v ? csv_num(*v, decimals) : std::string();
}

bool write_file(const std::string& path, const std::string& content)
{
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec)
            return false;
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        return false;
    out << content;
    return static_cast<bool>(out);
}

} // namespace manet
