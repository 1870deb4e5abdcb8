#include "transteg/pcap.hpp"

#include <fstream>
#include <iterator>

#include "transteg/error.hpp"

namespace transteg {
namespace {

std::uint32_t load_le32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

void append_le16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_le32(Bytes& out, std::uint32_t v) {
  append_le16(out, static_cast<std::uint16_t>(v));
  append_le16(out, static_cast<std::uint16_t>(v >> 16));
}

}  // namespace

PcapFile parse_pcap(ByteView data) {
  if (data.size() < 4) throw Error(Errc::BadMagic, "file shorter than magic number");
  PcapFile file;
  const std::uint32_t magic = load_le32(data.data());
  if (magic == kPcapMagic) {
    file.swapped = false;
  } else if (magic == kPcapMagicSwapped) {
    file.swapped = true;
  } else {
    throw Error(Errc::BadMagic, "not a classic pcap file");
  }
  auto u32 = [&](std::size_t off) {
    const std::uint32_t v = load_le32(&data[off]);
    return file.swapped ? __builtin_bswap32(v) : v;
  };
  if (data.size() < kPcapGlobalHeaderSize) throw Error(Errc::Truncated, "global header");
  file.snaplen = u32(16);
  file.link_type = u32(20);

  std::size_t pos = kPcapGlobalHeaderSize;
  while (pos < data.size()) {
    if (data.size() - pos < kPcapRecordHeaderSize) throw Error(Errc::Truncated, "record header");
    PcapRecord rec;
    rec.ts_sec = u32(pos);
    rec.ts_usec = u32(pos + 4);
    const std::uint32_t incl = u32(pos + 8);
    rec.original_length = u32(pos + 12);
    pos += kPcapRecordHeaderSize;
    if (data.size() - pos < incl) throw Error(Errc::Truncated, "record body");
    if (incl > rec.original_length) throw Error(Errc::Truncated, "captured length > original");
    rec.captured_bytes.assign(data.begin() + pos, data.begin() + pos + incl);
    pos += incl;
    file.records.push_back(std::move(rec));
  }
  return file;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

PcapFile load_pcap(const std::filesystem::path& path) { return parse_pcap(read_file(path)); }

Bytes serialize_pcap(const PcapFile& file) {
  Bytes out;
  append_le32(out, kPcapMagic);
  append_le16(out, 2);
  append_le16(out, 4);
  append_le32(out, 0);
  append_le32(out, 0);
  append_le32(out, file.snaplen);
  append_le32(out, file.link_type);
  for (const auto& rec : file.records) {
    append_le32(out, rec.ts_sec);
    append_le32(out, rec.ts_usec);
    append_le32(out, static_cast<std::uint32_t>(rec.captured_bytes.size()));
    append_le32(out, rec.original_length);
    out.insert(out.end(), rec.captured_bytes.begin(), rec.captured_bytes.end());
  }
  return out;
}

void save_pcap(const std::filesystem::path& path, const PcapFile& file) {
  write_file(path, serialize_pcap(file));
}

RtpScan scan_rtp(const PcapFile& file) {
  RtpScan scan;
  if (file.link_type != kLinkTypeEthernet) {
    scan.skipped = file.records.size();
    return scan;
  }
  for (std::size_t i = 0; i < file.records.size(); ++i) {
    const auto& rec = file.records[i];
    try {
      EthernetFrame frame = decode_ethernet_udp(rec.captured_bytes);
      RtpPacket rtp = parse_rtp(frame.udp_payload);
      scan.packets.push_back({rec, std::move(frame.envelope), std::move(rtp), i});
    } catch (const Error&) {
      ++scan.skipped;
    }
  }
  return scan;
}

RtpScan read_pcap(const std::filesystem::path& path) { return scan_rtp(load_pcap(path)); }

}  // namespace transteg
