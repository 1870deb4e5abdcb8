#include "transteg/rtp.hpp"

#include <string>

#include "transteg/error.hpp"

namespace transteg {

RtpPacket parse_rtp(ByteView bytes) {
  if (bytes.size() < kRtpFixedHeaderSize) {
    throw Error(Errc::TooShort, std::to_string(bytes.size()) + " bytes, need 12");
  }
  RtpPacket pkt;
  pkt.version = bytes[0] >> 6;
  if (pkt.version != 2) throw Error(Errc::BadVersion, "version " + std::to_string(pkt.version));
  pkt.padding_flag = (bytes[0] & 0x20) != 0;
  pkt.extension_flag = (bytes[0] & 0x10) != 0;
  pkt.csrc_count = bytes[0] & 0x0F;
  pkt.marker = (bytes[1] & 0x80) != 0;
  pkt.payload_type = bytes[1] & 0x7F;
  pkt.sequence_number = load_be16(&bytes[2]);
  pkt.timestamp = load_be32(&bytes[4]);
  pkt.ssrc = load_be32(&bytes[8]);

  std::size_t pos = pkt.header_size();
  if (bytes.size() < pos) {
    throw Error(Errc::TooShort, "CSRC list needs " + std::to_string(pos) + " bytes");
  }
  pkt.csrc_list.reserve(pkt.csrc_count);
  for (std::size_t off = kRtpFixedHeaderSize; off < pos; off += 4) {
    pkt.csrc_list.push_back(load_be32(&bytes[off]));
  }

  if (pkt.extension_flag) {
    if (bytes.size() < pos + 4) throw Error(Errc::TooShort, "truncated extension header");
    const std::size_t ext_len = 4 + 4 * std::size_t{load_be16(&bytes[pos + 2])};
    if (bytes.size() < pos + ext_len) throw Error(Errc::TooShort, "truncated extension body");
    pkt.extension.assign(bytes.begin() + pos, bytes.begin() + pos + ext_len);
    pos += ext_len;
  }

  std::size_t end = bytes.size();
  if (pkt.padding_flag) {
    const std::size_t pad = bytes.back();
    if (pad == 0 || pad > end - pos) {
      throw Error(Errc::BadPadding, "padding count " + std::to_string(pad));
    }
    end -= pad;
    pkt.padding.assign(bytes.begin() + end, bytes.end());
  }
  pkt.payload.assign(bytes.begin() + pos, bytes.begin() + end);
  return pkt;
}

Bytes serialize_rtp(const RtpPacket& pkt) {
  if (pkt.version > 3) throw Error(Errc::FieldOverflow, "version");
  if (pkt.payload_type > 127) throw Error(Errc::FieldOverflow, "payload_type > 127");
  if (pkt.csrc_count > 15 || pkt.csrc_list.size() != pkt.csrc_count) {
    throw Error(Errc::FieldOverflow, "csrc_count does not match csrc_list");
  }
  if (pkt.extension_flag != !pkt.extension.empty()) {
    throw Error(Errc::FieldOverflow, "extension flag does not match extension bytes");
  }
  if (pkt.extension_flag &&
      (pkt.extension.size() < 4 ||
       pkt.extension.size() != 4 + 4 * std::size_t{load_be16(&pkt.extension[2])})) {
    throw Error(Errc::FieldOverflow, "extension length word inconsistent");
  }
  if (pkt.padding_flag != !pkt.padding.empty() ||
      (pkt.padding_flag && pkt.padding.back() != pkt.padding.size())) {
    throw Error(Errc::FieldOverflow, "padding flag does not match padding bytes");
  }

  Bytes out;
  out.reserve(pkt.wire_size());
  out.push_back(static_cast<std::uint8_t>((pkt.version << 6) | (pkt.padding_flag ? 0x20 : 0) |
                                          (pkt.extension_flag ? 0x10 : 0) | pkt.csrc_count));
  out.push_back(static_cast<std::uint8_t>((pkt.marker ? 0x80 : 0) | pkt.payload_type));
  append_be16(out, pkt.sequence_number);
  append_be32(out, pkt.timestamp);
  append_be32(out, pkt.ssrc);
  for (auto csrc : pkt.csrc_list) append_be32(out, csrc);
  out.insert(out.end(), pkt.extension.begin(), pkt.extension.end());
  out.insert(out.end(), pkt.payload.begin(), pkt.payload.end());
  out.insert(out.end(), pkt.padding.begin(), pkt.padding.end());
  return out;
}

bool same_rtp_header(const RtpPacket& a, const RtpPacket& b) {
  return a.version == b.version && a.padding_flag == b.padding_flag &&
         a.extension_flag == b.extension_flag && a.csrc_count == b.csrc_count &&
         a.marker == b.marker && a.payload_type == b.payload_type &&
         a.sequence_number == b.sequence_number && a.timestamp == b.timestamp &&
         a.ssrc == b.ssrc && a.csrc_list == b.csrc_list && a.extension == b.extension;
}

}  // namespace transteg
