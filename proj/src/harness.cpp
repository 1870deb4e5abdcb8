#include "transteg/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>

#include "transteg/error.hpp"
#include "transteg/planner.hpp"
#include "transteg/wav.hpp"

namespace transteg {
namespace {

constexpr std::uint32_t kCallSsrc = 0x7E57C0DE;
constexpr std::uint16_t kBaseSeq = 1000;
constexpr std::uint32_t kBaseTimestamp = 160000;

EncodedFrame overt_payload_frame(const RtpPacket& pkt, const CodecDescriptor& overt) {
  return EncodedFrame{overt.id, pkt.payload, static_cast<std::size_t>(overt.bits_per_frame)};
}

RtpPacket rtp_header(const CodecDescriptor& overt, std::uint32_t ssrc, std::uint16_t seq,
                     std::uint32_t ts) {
  RtpPacket pkt;
  pkt.payload_type = overt.rtp_payload_type;
  pkt.sequence_number = seq;
  pkt.timestamp = ts;
  pkt.ssrc = ssrc;
  return pkt;
}

// Serialize onto an Ethernet frame and decode it again, as the far node
// would see it.
NetworkPacket over_the_wire(const Ipv4UdpEnvelope& env, const RtpPacket& rtp) {
  const Bytes frame = encode_ethernet_udp(kCalleeMac, kCallerMac, env, serialize_rtp(rtp));
  EthernetFrame decoded = decode_ethernet_udp(frame);
  return {std::move(decoded.envelope), parse_rtp(decoded.udp_payload)};
}

std::size_t default_steg_length(const CodecPair& pair, std::size_t packets) {
  if (lookup(pair.covert).variable_rate) {
    return packets * static_cast<std::size_t>(lookup(pair.overt).frame_bytes() - 1);
  }
  return packets * per_packet_capacity(pair);
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
    case Scenario::S4: return "S4";
  }
  return "?";
}

Scenario parse_scenario(std::string_view text) {
  if (text.size() == 2 && (text[0] == 'S' || text[0] == 's')) {
    switch (text[1]) {
      case '1': return Scenario::S1;
      case '2': return Scenario::S2;
      case '3': return Scenario::S3;
      case '4': return Scenario::S4;
      default: break;
    }
  }
  throw Error(Errc::FieldOverflow, "scenario must be S1..S4, got '" + std::string(text) + "'");
}

bool sender_at_endpoint(Scenario s) { return s == Scenario::S1 || s == Scenario::S2; }
bool receiver_at_endpoint(Scenario s) { return s == Scenario::S1 || s == Scenario::S3; }

int transcode_count(Scenario s) {
  return 1 + (sender_at_endpoint(s) ? 0 : 1) + (receiver_at_endpoint(s) ? 0 : 1);
}

std::vector<RtpPacket> packetize(std::span<const EncodedFrame> frames, const CodecDescriptor& overt,
                                 std::uint32_t ssrc, std::uint16_t base_seq,
                                 std::uint32_t base_ts) {
  std::vector<RtpPacket> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    RtpPacket pkt = rtp_header(overt, ssrc, static_cast<std::uint16_t>(base_seq + i),
                               static_cast<std::uint32_t>(base_ts + i * kFrameSamples));
    pkt.payload = frames[i].bytes;
    out.push_back(std::move(pkt));
  }
  return out;
}

std::vector<RtpPacket> packetize_pcm(std::span<const std::int16_t> pcm, const CodecDescriptor& overt,
                                     std::uint32_t ssrc, std::uint16_t base_seq,
                                     std::uint32_t base_ts, int sample_rate) {
  if (sample_rate != kSampleRate) {
    throw Error(Errc::BadSampleRate, std::to_string(sample_rate) + " Hz, need 8000");
  }
  Codec codec(overt.id);
  std::vector<EncodedFrame> frames;
  for (const auto& f : to_frames(pcm)) frames.push_back(codec.encode(f));
  return packetize(frames, overt, ssrc, base_seq, base_ts);
}

std::vector<std::int16_t> load_call_audio(const ScenarioConfig& cfg) {
  if (cfg.wav_path) return load_wav(*cfg.wav_path);
  return speech_shaped_noise(synth_activity(cfg.duration_s, cfg.activity_ratio, cfg.audio_seed),
                             cfg.audio_seed);
}

std::vector<std::int16_t> baseline_double_transcode(std::span<const std::int16_t> pcm,
                                                    CodecId overt) {
  Codec first(overt), second(overt);
  std::vector<PcmFrame> out;
  for (const auto& f : to_frames(pcm)) out.push_back(second.decode(second.encode(first.decode(first.encode(f)))));
  return from_frames(out);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const CodecPair pair = cfg.pair;
  if (!feasible(pair.overt, pair.covert)) {
    throw Error(Errc::Infeasible, std::string(lookup(pair.covert).token) + " cannot hide under " +
                                      std::string(lookup(pair.overt).token));
  }
  const CodecDescriptor& overt = lookup(pair.overt);
  const CodecDescriptor& covert = lookup(pair.covert);

  ScenarioResult result;
  const std::vector<PcmFrame> frames = to_frames(load_call_audio(cfg));
  result.input_pcm = from_frames(frames);

  Bytes steg;
  if (cfg.steg_path) {
    steg = read_file(*cfg.steg_path);
  } else {
    const std::size_t n = cfg.steg_length ? cfg.steg_length : default_steg_length(pair, frames.size());
    steg = random_bytes(cfg.steg_seed, n);
  }

  StegBitstream outbound(steg);
  StegBitstream recovered;
  StreamState sender(Role::Sender, pair);
  StreamState receiver(Role::Receiver, pair);
  Codec caller_overt(overt.id);
  Codec caller_covert(covert.id);
  Codec callee_overt(overt.id);
  Codec reference_overt(overt.id);

  const bool ss_at_caller = sender_at_endpoint(cfg.scenario);
  const bool sr_at_callee = receiver_at_endpoint(cfg.scenario);
  std::vector<PcmFrame> output;
  output.reserve(frames.size());

  for (std::size_t i = 0; i < frames.size(); ++i) {
    RtpPacket pkt = rtp_header(overt, kCallSsrc, static_cast<std::uint16_t>(kBaseSeq + i),
                               static_cast<std::uint32_t>(kBaseTimestamp + i * kFrameSamples));
    const auto ident = static_cast<std::uint16_t>(i);

    // Caller side and SS.
    RtpPacket before;
    RtpPacket wire;
    Ipv4UdpEnvelope env_before;
    Ipv4UdpEnvelope env;
    if (ss_at_caller) {
      pkt.payload.assign(static_cast<std::size_t>(overt.frame_bytes()), 0);
      wire = ss_embed(pkt, caller_covert.encode(frames[i]), sender, outbound);
      env = make_udp_envelope(kCallerAddr, kRtpPort, kCalleeAddr, kRtpPort, serialize_rtp(wire), ident);
      if (cfg.record_trace) {
        before = pkt;
        before.payload = reference_overt.encode(frames[i]).bytes;
        env_before = make_udp_envelope(kCallerAddr, kRtpPort, kCalleeAddr, kRtpPort,
                                       serialize_rtp(before), ident);
      }
    } else {
      pkt.payload = caller_overt.encode(frames[i]).bytes;
      env_before = make_udp_envelope(kCallerAddr, kRtpPort, kCalleeAddr, kRtpPort,
                                     serialize_rtp(pkt), ident);
      before = pkt;
      wire = ss_transform(pkt, sender, outbound);
      env = adjust_checksums(env_before, serialize_rtp(wire));
    }
    if (cfg.record_trace) result.trace.push_back({env_before, before, env, wire});

    // Network hop, then SR and callee.
    NetworkPacket arrived = over_the_wire(env, wire);
    if (udp_verify_sum(arrived.envelope, serialize_rtp(arrived.rtp)) != 0xFFFF) {
      throw Error(Errc::CorruptCovertFrame, "UDP checksum failed at the receiver");
    }
    if (sr_at_callee) {
      output.push_back(sr_extract(arrived.rtp, receiver, recovered).pcm);
    } else {
      SrResult back = sr_transform(arrived.rtp, receiver, recovered);
      const Ipv4UdpEnvelope env_out = adjust_checksums(arrived.envelope, serialize_rtp(back.packet));
      NetworkPacket delivered = over_the_wire(env_out, back.packet);
      output.push_back(callee_overt.decode(overt_payload_frame(delivered.rtp, overt)));
    }
  }
  result.output_pcm = from_frames(output);

  CallMetrics& m = result.metrics;
  m.packets = frames.size();
  m.steg_bytes_embedded = sender.steg_bits_moved / 8;
  m.fallback_frames = sender.fallback_frames;
  const Bytes extracted = recovered.drain();
  const std::size_t n = std::min<std::size_t>(extracted.size(), m.steg_bytes_embedded);
  m.steg_bytes_recovered = n;
  for (std::size_t i = 0; i < n; ++i) m.bit_errors += std::popcount(static_cast<unsigned>(steg[i] ^ extracted[i]));
  m.bit_errors += (m.steg_bytes_embedded - n) * 8;
  const double duration = static_cast<double>(m.packets) / kPacketsPerSecond;
  m.achieved_steg_kbps = duration > 0 ? static_cast<double>(n) * 8.0 / duration / 1000.0 : 0.0;
  m.transcode_count = transcode_count(cfg.scenario);
  m.segmental_snr_db = segmental_snr(result.input_pcm, result.output_pcm);
  m.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

PcapFile make_pcap(std::span<const NetworkPacket> packets) {
  PcapFile file;
  file.records.reserve(packets.size());
  for (std::size_t i = 0; i < packets.size(); ++i) {
    PcapRecord rec;
    rec.ts_sec = static_cast<std::uint32_t>(i / kPacketsPerSecond);
    rec.ts_usec = static_cast<std::uint32_t>((i % kPacketsPerSecond) * kFrameMs * 1000);
    rec.captured_bytes = encode_ethernet_udp(kCalleeMac, kCallerMac, packets[i].envelope,
                                             serialize_rtp(packets[i].rtp));
    rec.original_length = static_cast<std::uint32_t>(rec.captured_bytes.size());
    file.records.push_back(std::move(rec));
  }
  return file;
}

void export_pcap(std::span<const NetworkPacket> packets, const std::filesystem::path& path) {
  save_pcap(path, make_pcap(packets));
}

std::string metrics_csv_header() {
  return "scenario,overt,covert,packets,steg_bytes_embedded,steg_bytes_recovered,bit_errors,"
         "achieved_steg_kbps,transcode_count,segmental_snr_db\n";
}

std::string metrics_csv_row(const ScenarioConfig& cfg, const CallMetrics& m) {
  char snr[32] = "";
  if (m.segmental_snr_db) std::snprintf(snr, sizeof snr, "%.2f", *m.segmental_snr_db);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%s,%s,%llu,%llu,%llu,%llu,%.3f,%d,%s\n",
                std::string(to_string(cfg.scenario)).c_str(),
                std::string(lookup(cfg.pair.overt).token).c_str(),
                std::string(lookup(cfg.pair.covert).token).c_str(),
                static_cast<unsigned long long>(m.packets),
                static_cast<unsigned long long>(m.steg_bytes_embedded),
                static_cast<unsigned long long>(m.steg_bytes_recovered),
                static_cast<unsigned long long>(m.bit_errors), m.achieved_steg_kbps,
                m.transcode_count, snr);
  return buf;
}

}  // namespace transteg
