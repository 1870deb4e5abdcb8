#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace transteg {

enum class CodecId {
  G711,
  G711_0,
  G726_32,
  SPEEX7,
  ILBC,
  GSM0610,
  AMR122,
  SPEEX4,
  G729,
  G7231,
  SPEEX2,
};

enum class CodecFamily { Waveform, Celp, RpeLtp, Lossless };

inline constexpr int kFrameMs = 20;
inline constexpr int kSampleRate = 8000;
inline constexpr std::size_t kFrameSamples = 160;
inline constexpr int kPacketsPerSecond = 1000 / kFrameMs;

struct CodecDescriptor {
  CodecId id;
  std::string_view token;         ///< lower-case CLI / CSV name
  std::string_view display_name;
  int nominal_bitrate_bps;        ///< 0 for variable-rate
  int frame_ms;
  int bits_per_frame;             ///< 0 for variable-rate
  CodecFamily family;
  bool variable_rate;
  std::uint8_t rtp_payload_type;

  /// Byte-aligned size of one frame; 0 for variable-rate codecs.
  int frame_bytes() const { return (bits_per_frame + 7) / 8; }
  double nominal_kbps() const { return nominal_bitrate_bps / 1000.0; }
};

inline constexpr std::size_t kCodecCount = 11;

std::span<const CodecDescriptor> registry();
const CodecDescriptor& lookup(CodecId id);
/// Throws Error(UnknownCodec).
const CodecDescriptor& lookup(std::string_view token);
const CodecDescriptor* find_by_payload_type(std::uint8_t pt);

/// The six overt codecs evaluated as carriers, in table column order.
std::span<const CodecId> overt_codecs();

std::string_view to_string(CodecFamily family);

}  // namespace transteg
