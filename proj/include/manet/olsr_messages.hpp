/*
 * manetsim: OLSR control messages and the TC wire format.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_OLSR_MESSAGES_HPP
#define MANET_OLSR_MESSAGES_HPP

#include "manet/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace manet {

enum class LinkStatus : std::uint8_t
{
    Heard = 0,     ///< we receive them, symmetry unconfirmed
    Symmetric = 1, ///< bidirectional link confirmed
    Mpr = 2        ///< symmetric and selected as our multipoint relay
};

/// 1-hop broadcast advertising every neighbor we currently hear.
struct HelloMessage
{
    NodeId originator = kNoNode;
    std::vector<std::pair<NodeId, LinkStatus>> heard_neighbors;
};

/// Flooded advertisement of the originator's MPR-selector set, extended
/// with the originator's node weight.
struct TcMessage
{
    NodeId originator = kNoNode;
    std::uint16_t ansn = 0;   ///< advertised-neighbor sequence number
    NodeWeight weight = 0.0;  ///< originator's weight, in [0,1]
    std::vector<NodeId> advertised; ///< the MPR selectors
};

/// Weight quantization on the wire: w_encoded = round(w * (2^32 - 1)) with
/// halves rounded down, so 0.5 encodes as 0x7FFFFFFF. Error <= 2^-32.
std::uint32_t encode_weight(double w);
double decode_weight(std::uint32_t enc);

/// Big-endian layout: u16 ansn | u16 reserved(0) | u32 weight | u32 originator
/// | u16 count | count * u32 advertised ids. Size = 14 + 4n bytes.
std::vector<std::uint8_t> serialize_tc(const TcMessage& msg);

/// Inverse of serialize_tc. Rejects truncated or oversized input and
/// nonzero reserved bits.
std::optional<TcMessage> deserialize_tc(std::span<const std::uint8_t> bytes);

/// Frame payload sizes used for airtime. The baseline TC omits the weight
/// and originator-id extension words; HELLOs use the in-simulator encoding
/// 6 + 5n bytes (originator + count + per-entry id and status).
std::size_t tc_wire_size(std::size_t advertised_count, Protocol protocol);
std::size_t hello_wire_size(std::size_t entry_count);

} // namespace manet

#endif // MANET_OLSR_MESSAGES_HPP
