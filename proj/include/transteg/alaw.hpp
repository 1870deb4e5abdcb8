#pragma once

#include <cstdint>

#include "transteg/frames.hpp"

namespace transteg {

/// ITU-T G.711 A-law, one sample. Even bits of the code are inverted (0x55).
std::uint8_t alaw_compress(std::int16_t sample);
std::int16_t alaw_expand(std::uint8_t code);

EncodedFrame alaw_encode(const PcmFrame& frame);
/// Throws Error(WrongLength) unless the frame carries 160 bytes.
PcmFrame alaw_decode(const EncodedFrame& frame);

}  // namespace transteg
