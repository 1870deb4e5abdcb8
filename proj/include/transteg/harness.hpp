#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "transteg/audio.hpp"
#include "transteg/engine.hpp"
#include "transteg/inet.hpp"
#include "transteg/pcap.hpp"
#include "transteg/rtp.hpp"

namespace transteg {

/// Placement of the hidden-data sender and receiver along the call path.
///   S1: both at the endpoints.
///   S2: sender at the caller, receiver in the network.
///   S3: sender in the network, receiver at the callee.
///   S4: both in the network (triple transcoding).
enum class Scenario { S1, S2, S3, S4 };

std::string_view to_string(Scenario s);
/// Accepts "S1".."S4" (any case); throws Error(FieldOverflow) otherwise.
Scenario parse_scenario(std::string_view text);

bool sender_at_endpoint(Scenario s);
bool receiver_at_endpoint(Scenario s);
/// Lossy encode passes applied to the voice: 3 for S4, 2 for S2/S3, 1 for S1.
int transcode_count(Scenario s);

struct ScenarioConfig {
  Scenario scenario = Scenario::S4;
  CodecPair pair{CodecId::G711, CodecId::G726_32};
  /// WAV input; synthetic speech-shaped noise when empty.
  std::optional<std::filesystem::path> wav_path;
  std::uint64_t audio_seed = 1;
  /// Steganogram from a file, else `steg_length` PRNG bytes from `steg_seed`.
  std::optional<std::filesystem::path> steg_path;
  std::uint64_t steg_seed = 1;
  /// 0 means "exactly fill the channel" (upper bound for variable rate).
  std::size_t steg_length = 0;
  double duration_s = 60.0;
  double activity_ratio = kDefaultActivityRatio;
  /// Keep every network packet before/after TranSteg for inspection.
  bool record_trace = false;
};

struct CallMetrics {
  std::uint64_t packets = 0;
  std::uint64_t steg_bytes_embedded = 0;
  std::uint64_t steg_bytes_recovered = 0;
  std::uint64_t bit_errors = 0;
  double achieved_steg_kbps = 0.0;
  int transcode_count = 0;
  std::optional<double> segmental_snr_db;
  double elapsed_s = 0.0;
  std::uint64_t fallback_frames = 0;
};

/// One packet as it would have crossed the network without TranSteg and as
/// it actually did.
struct TracedPacket {
  Ipv4UdpEnvelope envelope_before;
  RtpPacket rtp_before;
  Ipv4UdpEnvelope envelope_after;
  RtpPacket rtp_after;
};

struct ScenarioResult {
  CallMetrics metrics;
  std::vector<std::int16_t> input_pcm;
  std::vector<std::int16_t> output_pcm;
  std::vector<TracedPacket> trace;
};

/// One RTP packet per frame: sequence +1, timestamp +160, PT from the codec.
std::vector<RtpPacket> packetize(std::span<const EncodedFrame> frames, const CodecDescriptor& overt,
                                 std::uint32_t ssrc, std::uint16_t base_seq, std::uint32_t base_ts);

/// Encode PCM with the overt codec and packetize. Throws
/// Error(BadSampleRate) when `sample_rate` is not 8000.
std::vector<RtpPacket> packetize_pcm(std::span<const std::int16_t> pcm, const CodecDescriptor& overt,
                                     std::uint32_t ssrc, std::uint16_t base_seq,
                                     std::uint32_t base_ts, int sample_rate = kSampleRate);

std::vector<std::int16_t> load_call_audio(const ScenarioConfig& cfg);
/// Same PCM through overt encode/decode twice (no hidden channel).
std::vector<std::int16_t> baseline_double_transcode(std::span<const std::int16_t> pcm, CodecId overt);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Fixed endpoints used for generated traffic.
inline constexpr Ipv4Address kCallerAddr{10, 0, 0, 1};
inline constexpr Ipv4Address kCalleeAddr{10, 0, 0, 2};
inline constexpr std::uint16_t kRtpPort = 5004;
inline constexpr MacAddress kCallerMac{0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
inline constexpr MacAddress kCalleeMac{0x02, 0x00, 0x00, 0x00, 0x00, 0x02};

struct NetworkPacket {
  Ipv4UdpEnvelope envelope;
  RtpPacket rtp;
};

/// Classic pcap, Ethernet II with fixed MACs, one record per packet spaced
/// 20 ms apart. Envelopes are written as given.
PcapFile make_pcap(std::span<const NetworkPacket> packets);
void export_pcap(std::span<const NetworkPacket> packets, const std::filesystem::path& path);

std::string metrics_csv_header();
std::string metrics_csv_row(const ScenarioConfig& cfg, const CallMetrics& m);

}  // namespace transteg
