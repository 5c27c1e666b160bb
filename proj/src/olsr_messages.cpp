/*
 * manetsim: TC wire codec.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/olsr_messages.hpp"

#include <cmath>

namespace manet {

namespace {

constexpr double kWeightScale = 4294967295.0; // 2^32 - 1

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t off)
{
    return static_cast<std::uint16_t>((b[off] << 8) | b[off + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off)
{
    return (static_cast<std::uint32_t>(b[off]) << 24) |
           (static_cast<std::uint32_t>(b[off + 1]) << 16) |
           (static_cast<std::uint32_t>(b[off + 2]) << 8) |
           static_cast<std::uint32_t>(b[off + 3]);
}

} // namespace

std::uint32_t encode_weight(double w)
{
    if (w <= 0.0)
        return 0;
    if (w >= 1.0)
        return 0xffffffffu;
    // Round half down: exact .5 products stay below the next code point.
    const double scaled = w * kWeightScale;
    double enc = std::ceil(scaled - 0.5);
    if (enc < 0.0)
        enc = 0.0;
    if (enc > kWeightScale)
        enc = kWeightScale;
    return static_cast<std::uint32_t>(enc);
}

double decode_weight(std::uint32_t enc)
{
    return static_cast<double>(enc) / kWeightScale;
}

std::vector<std::uint8_t> serialize_tc(const TcMessage& msg)
{
    std::vector<std::uint8_t> out;
    out.reserve(14 + 4 * msg.advertised.size());
    put_u16(out, msg.ansn);
    put_u16(out, 0); // reserved
    put_u32(out, encode_weight(msg.weight));
    put_u32(out, msg.originator);
    put_u16(out, static_cast<std::uint16_t>(msg.advertised.size()));
    for (NodeId id : msg.advertised)
        put_u32(out, id);
    return out;
}

std::optional<TcMessage> deserialize_tc(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 14)
        return std::nullopt;
    if (get_u16(bytes, 2) != 0) // reserved bits must be zero
        return std::nullopt;
    const std::uint16_t count = get_u16(bytes, 12);
    if (bytes.size() != 14 + 4 * static_cast<std::size_t>(count))
        return std::nullopt;

    TcMessage msg;
    msg.ansn = get_u16(bytes, 0);
    msg.weight = decode_weight(get_u32(bytes, 4));
    msg.originator = get_u32(bytes, 8);
    msg.advertised.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        msg.advertised.push_back(get_u32(bytes, 14 + 4 * i));
    return msg;
}

std::size_t tc_wire_size(std::size_t advertised_count, Protocol protocol)
{
    // Baseline TCs carry no weight field and no reserved word for it:
    // u16 ansn | u16 reserved | u32 originator | u16 count | ids.
    const std::size_t base = protocol == Protocol::MultiMetric ? 14 : 10;
    return base + 4 * advertised_count;
}

std::size_t hello_wire_size(std::size_t entry_count)
{
    return 6 + 5 * entry_count;
}

} // namespace manet
