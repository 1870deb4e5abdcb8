#include "transteg/inet.hpp"

#include <string>

#include "transteg/checksum.hpp"
#include "transteg/error.hpp"

namespace transteg {
namespace {

void add_pseudo_and_udp_header(OnesComplementSum& sum, const Ipv4UdpEnvelope& env,
                               std::uint16_t checksum_field) {
  sum.add(env.src_addr);
  sum.add(env.dst_addr);
  sum.add16(env.protocol);
  sum.add16(env.udp_length);
  sum.add16(env.src_port);
  sum.add16(env.dst_port);
  sum.add16(env.udp_length);
  sum.add16(checksum_field);
}

Bytes ip_header_bytes(const Ipv4UdpEnvelope& env, std::uint16_t checksum_field) {
  Bytes h;
  h.reserve(env.ip_header_size());
  h.push_back(static_cast<std::uint8_t>(0x40 | (env.ip_header_size() / 4)));
  h.push_back(env.tos);
  append_be16(h, env.total_length);
  append_be16(h, env.identification);
  append_be16(h, env.flags_fragment);
  h.push_back(env.ttl);
  h.push_back(env.protocol);
  append_be16(h, checksum_field);
  h.insert(h.end(), env.src_addr.begin(), env.src_addr.end());
  h.insert(h.end(), env.dst_addr.begin(), env.dst_addr.end());
  h.insert(h.end(), env.ip_options.begin(), env.ip_options.end());
  return h;
}

}  // namespace

std::uint16_t udp_checksum(const Ipv4UdpEnvelope& env, ByteView payload) {
  OnesComplementSum sum;
  add_pseudo_and_udp_header(sum, env, 0);
  sum.add(payload);
  const std::uint16_t c = sum.checksum();
  return c == 0 ? 0xFFFF : c;
}

std::uint16_t udp_verify_sum(const Ipv4UdpEnvelope& env, ByteView payload) {
  OnesComplementSum sum;
  add_pseudo_and_udp_header(sum, env, env.udp_checksum);
  sum.add(payload);
  return sum.folded();
}

std::uint16_t ipv4_header_checksum(const Ipv4UdpEnvelope& env) {
  return internet_checksum(ip_header_bytes(env, 0));
}

Ipv4UdpEnvelope adjust_checksums(const Ipv4UdpEnvelope& env, ByteView new_payload) {
  if (new_payload.size() + kUdpHeaderSize != env.udp_length) {
    throw Error(Errc::LengthChanged, "payload " + std::to_string(new_payload.size()) +
                                         " bytes, envelope expects " +
                                         std::to_string(env.udp_length - kUdpHeaderSize));
  }
  Ipv4UdpEnvelope out = env;
  if (env.udp_checksum != 0) out.udp_checksum = udp_checksum(env, new_payload);
  return out;
}

Ipv4UdpEnvelope make_udp_envelope(const Ipv4Address& src, std::uint16_t src_port,
                                  const Ipv4Address& dst, std::uint16_t dst_port,
                                  ByteView payload, std::uint16_t identification) {
  if (payload.size() > 65535 - 20 - kUdpHeaderSize) {
    throw Error(Errc::FieldOverflow, "UDP payload too large");
  }
  Ipv4UdpEnvelope env;
  env.src_addr = src;
  env.dst_addr = dst;
  env.src_port = src_port;
  env.dst_port = dst_port;
  env.identification = identification;
  env.udp_length = static_cast<std::uint16_t>(kUdpHeaderSize + payload.size());
  env.total_length = static_cast<std::uint16_t>(env.ip_header_size() + env.udp_length);
  env.ip_header_checksum = ipv4_header_checksum(env);
  env.udp_checksum = udp_checksum(env, payload);
  return env;
}

Bytes serialize_ipv4_udp(const Ipv4UdpEnvelope& env, ByteView payload) {
  Bytes out = ip_header_bytes(env, env.ip_header_checksum);
  append_be16(out, env.src_port);
  append_be16(out, env.dst_port);
  append_be16(out, env.udp_length);
  append_be16(out, env.udp_checksum);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

EthernetFrame decode_ethernet_udp(ByteView frame) {
  if (frame.size() < kEthernetHeaderSize) throw Error(Errc::Truncated, "short Ethernet frame");
  if (load_be16(&frame[12]) != kEtherTypeIpv4) throw Error(Errc::NotIpv4Udp, "ethertype");
  EthernetFrame out;
  std::copy_n(frame.begin(), 6, out.dst.begin());
  std::copy_n(frame.begin() + 6, 6, out.src.begin());

  const ByteView ip = frame.subspan(kEthernetHeaderSize);
  if (ip.size() < 20) throw Error(Errc::Truncated, "short IPv4 header");
  if ((ip[0] >> 4) != 4) throw Error(Errc::NotIpv4Udp, "IP version");
  const std::size_t ihl = std::size_t{ip[0] & 0x0Fu} * 4;
  if (ihl < 20 || ip.size() < ihl) throw Error(Errc::Truncated, "IPv4 header length");

  Ipv4UdpEnvelope& env = out.envelope;
  env.tos = ip[1];
  env.total_length = load_be16(&ip[2]);
  env.identification = load_be16(&ip[4]);
  env.flags_fragment = load_be16(&ip[6]);
  env.ttl = ip[8];
  env.protocol = ip[9];
  env.ip_header_checksum = load_be16(&ip[10]);
  std::copy_n(ip.begin() + 12, 4, env.src_addr.begin());
  std::copy_n(ip.begin() + 16, 4, env.dst_addr.begin());
  env.ip_options.assign(ip.begin() + 20, ip.begin() + static_cast<std::ptrdiff_t>(ihl));
  if (env.protocol != kIpProtoUdp) throw Error(Errc::NotIpv4Udp, "protocol");
  if ((env.flags_fragment & 0x3FFF) != 0) throw Error(Errc::NotIpv4Udp, "fragmented datagram");
  if (env.total_length < ihl + kUdpHeaderSize || env.total_length > ip.size()) {
    throw Error(Errc::Truncated, "IPv4 total length");
  }

  const ByteView udp = ip.subspan(ihl, env.total_length - ihl);
  env.src_port = load_be16(&udp[0]);
  env.dst_port = load_be16(&udp[2]);
  env.udp_length = load_be16(&udp[4]);
  env.udp_checksum = load_be16(&udp[6]);
  if (env.udp_length < kUdpHeaderSize || env.udp_length > udp.size()) {
    throw Error(Errc::Truncated, "UDP length");
  }
  out.udp_payload.assign(udp.begin() + kUdpHeaderSize, udp.begin() + env.udp_length);
  return out;
}

Bytes encode_ethernet_udp(const MacAddress& dst, const MacAddress& src,
                          const Ipv4UdpEnvelope& env, ByteView payload) {
  Bytes out;
  out.reserve(kEthernetHeaderSize + env.ip_header_size() + kUdpHeaderSize + payload.size());
  out.insert(out.end(), dst.begin(), dst.end());
  out.insert(out.end(), src.begin(), src.end());
  append_be16(out, kEtherTypeIpv4);
  const Bytes ip = serialize_ipv4_udp(env, payload);
  out.insert(out.end(), ip.begin(), ip.end());
  return out;
}

}  // namespace transteg
