#pragma once

#include <array>
#include <cstdint>

#include "transteg/bytes.hpp"

namespace transteg {

using Ipv4Address = std::array<std::uint8_t, 4>;
using MacAddress = std::array<std::uint8_t, 6>;

inline constexpr std::uint8_t kIpProtoUdp = 17;
inline constexpr std::uint16_t kEtherTypeIpv4 = 0x0800;
inline constexpr std::size_t kEthernetHeaderSize = 14;
inline constexpr std::size_t kUdpHeaderSize = 8;

/// IPv4 + UDP headers around one datagram payload. Fields the engine never
/// touches are carried opaquely so a frame can be rebuilt bit-exactly.
struct Ipv4UdpEnvelope {
  std::uint8_t tos = 0;
  std::uint16_t total_length = 0;
  std::uint16_t identification = 0;
  std::uint16_t flags_fragment = 0x4000;
  std::uint8_t ttl = 64;
  std::uint8_t protocol = kIpProtoUdp;
  std::uint16_t ip_header_checksum = 0;
  Ipv4Address src_addr{};
  Ipv4Address dst_addr{};
  Bytes ip_options;

  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint16_t udp_length = 0;
  /// 0 means the sender disabled the checksum.
  std::uint16_t udp_checksum = 0;

  std::size_t ip_header_size() const { return 20 + ip_options.size(); }

  friend bool operator==(const Ipv4UdpEnvelope&, const Ipv4UdpEnvelope&) = default;
};

/// RFC 768 checksum over pseudo-header, UDP header (checksum zeroed) and
/// payload. A computed 0x0000 is returned as 0xFFFF.
std::uint16_t udp_checksum(const Ipv4UdpEnvelope& env, ByteView payload);

/// One's-complement sum over pseudo-header, UDP header (with the stored
/// checksum) and payload. 0xFFFF for a datagram that verifies.
std::uint16_t udp_verify_sum(const Ipv4UdpEnvelope& env, ByteView payload);

std::uint16_t ipv4_header_checksum(const Ipv4UdpEnvelope& env);

/// Recompute the UDP checksum after an in-place payload rewrite. A disabled
/// checksum (0) stays disabled; the IP header is left untouched.
Ipv4UdpEnvelope adjust_checksums(const Ipv4UdpEnvelope& env, ByteView new_payload);

/// Envelope for a fresh datagram with both checksums filled in.
Ipv4UdpEnvelope make_udp_envelope(const Ipv4Address& src, std::uint16_t src_port,
                                  const Ipv4Address& dst, std::uint16_t dst_port,
                                  ByteView payload, std::uint16_t identification = 0);

Bytes serialize_ipv4_udp(const Ipv4UdpEnvelope& env, ByteView payload);

struct EthernetFrame {
  MacAddress dst{};
  MacAddress src{};
  Ipv4UdpEnvelope envelope;
  Bytes udp_payload;
};

/// Decode Ethernet II / IPv4 / UDP. Throws Error(NotIpv4Udp) for anything
/// else and Error(Truncated) when lengths do not fit the buffer.
EthernetFrame decode_ethernet_udp(ByteView frame);
Bytes encode_ethernet_udp(const MacAddress& dst, const MacAddress& src,
                          const Ipv4UdpEnvelope& env, ByteView payload);

}  // namespace transteg
