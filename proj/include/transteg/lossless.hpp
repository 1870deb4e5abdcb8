#pragma once

#include <cstdint>

#include "transteg/frames.hpp"

namespace transteg {

/// Stateless, variable-rate lossless compression of one 20 ms A-law frame.
///
/// This is a stand-in for G.711.0 with the same external properties
/// (stateless, lossless, bitrate depends on the signal) but not its
/// bitstream. Layout: one header byte followed by either Rice-coded
/// second-order prediction residuals (header = Rice parameter 0..15) or, when
/// that would not beat the raw frame, the 160 raw A-law bytes (header 0xFF).
inline constexpr std::uint8_t kLosslessEscape = 0xFF;
inline constexpr std::size_t kLosslessMaxBytes = kFrameSamples + 1;

EncodedFrame lossless_encode(ByteView alaw_frame);
/// Throws Error(CorruptFrame) on a bad header, a short bitstream, trailing
/// garbage or residuals that do not map back to A-law levels.
Bytes lossless_decode(const EncodedFrame& frame);

}  // namespace transteg
