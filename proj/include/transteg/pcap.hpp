#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "transteg/bytes.hpp"
#include "transteg/inet.hpp"
#include "transteg/rtp.hpp"

namespace transteg {

inline constexpr std::uint32_t kPcapMagic = 0xA1B2C3D4;
inline constexpr std::uint32_t kPcapMagicSwapped = 0xD4C3B2A1;
inline constexpr std::uint32_t kLinkTypeEthernet = 1;
inline constexpr std::size_t kPcapGlobalHeaderSize = 24;
inline constexpr std::size_t kPcapRecordHeaderSize = 16;

struct PcapRecord {
  std::uint32_t ts_sec = 0;
  std::uint32_t ts_usec = 0;
  std::uint32_t original_length = 0;
  Bytes captured_bytes;

  friend bool operator==(const PcapRecord&, const PcapRecord&) = default;
};

struct PcapFile {
  bool swapped = false;
  std::uint32_t link_type = kLinkTypeEthernet;
  std::uint32_t snaplen = 65535;
  std::vector<PcapRecord> records;
};

PcapFile parse_pcap(ByteView data);
PcapFile load_pcap(const std::filesystem::path& path);

/// Always written in native little-endian classic format.
Bytes serialize_pcap(const PcapFile& file);
void save_pcap(const std::filesystem::path& path, const PcapFile& file);

struct RtpCapture {
  PcapRecord record;
  Ipv4UdpEnvelope envelope;
  RtpPacket rtp;
  /// Record index within the source file.
  std::size_t index = 0;
};

struct RtpScan {
  std::vector<RtpCapture> packets;
  std::size_t skipped = 0;
};

/// Ethernet II -> IPv4 -> UDP -> RTP(v2) records; anything else is counted in
/// `skipped`.
RtpScan scan_rtp(const PcapFile& file);
RtpScan read_pcap(const std::filesystem::path& path);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView data);

}  // namespace transteg
