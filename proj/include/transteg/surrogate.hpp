#pragma once

#include "transteg/frames.hpp"

namespace transteg {

/// Fixed-budget transform coder standing in for the CELP / RPE-LTP codecs.
/// It reproduces frame geometry (exactly `bits_per_frame` bits) and gives a
/// plausible reconstruction; it makes no claim about perceptual quality.
///
/// Bitstream: 8-bit gain code (1/8-octave steps, 0 = silent frame), then as
/// many 13-bit slots as fit: 8-bit DCT-II coefficient index (0xFF = empty),
/// sign bit, 4-bit magnitude level (3 dB steps below the gain). Remaining
/// bits are zero.
EncodedFrame surrogate_encode(const PcmFrame& frame, const CodecDescriptor& desc);
PcmFrame surrogate_decode(const EncodedFrame& frame, const CodecDescriptor& desc);

/// Same coder with an explicit budget; throws Error(BudgetTooSmall) below 16.
EncodedFrame surrogate_encode_bits(const PcmFrame& frame, CodecId id, std::size_t budget_bits);
PcmFrame surrogate_decode_bits(const EncodedFrame& frame, std::size_t budget_bits);

}  // namespace transteg
