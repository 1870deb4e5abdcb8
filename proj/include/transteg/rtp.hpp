#pragma once

#include <cstdint>
#include <vector>

#include "transteg/bytes.hpp"

namespace transteg {

inline constexpr std::size_t kRtpFixedHeaderSize = 12;

/// One RTP packet per RFC 3550. Header extension and padding bytes are kept
/// verbatim so that serialize(parse(b)) == b.
struct RtpPacket {
  std::uint8_t version = 2;
  bool padding_flag = false;
  bool extension_flag = false;
  std::uint8_t csrc_count = 0;
  bool marker = false;
  std::uint8_t payload_type = 0;
  std::uint16_t sequence_number = 0;
  std::uint32_t timestamp = 0;
  std::uint32_t ssrc = 0;
  std::vector<std::uint32_t> csrc_list;
  /// Extension header including its 4-byte profile/length word; empty unless
  /// extension_flag is set.
  Bytes extension;
  Bytes payload;
  /// Trailing padding including the count octet; empty unless padding_flag.
  Bytes padding;

  std::size_t header_size() const { return kRtpFixedHeaderSize + 4 * std::size_t{csrc_count}; }
  std::size_t wire_size() const {
    return header_size() + extension.size() + payload.size() + padding.size();
  }

  friend bool operator==(const RtpPacket&, const RtpPacket&) = default;
};

RtpPacket parse_rtp(ByteView bytes);
Bytes serialize_rtp(const RtpPacket& pkt);

/// True when the header portion (fixed header, CSRCs, extension) of two
/// packets is bit-identical.
bool same_rtp_header(const RtpPacket& a, const RtpPacket& b);

}  // namespace transteg
