#pragma once

#include <array>
#include <cstdint>

#include "transteg/frames.hpp"

namespace transteg {

/// Adaptive quantizer / predictor state of a 32 kbit/s G.726 coder. One
/// instance per direction per stream; the reset values are the ones the
/// recommendation prescribes.
struct G726State {
  std::int32_t yl = 34816;  ///< locked (steady-state) scale factor
  std::int16_t yu = 544;    ///< unlocked (non-steady) scale factor
  std::int16_t dms = 0;     ///< short-term energy estimate
  std::int16_t dml = 0;     ///< long-term energy estimate
  std::int16_t ap = 0;      ///< speed control
  std::array<std::int16_t, 2> a{};   ///< pole coefficients
  std::array<std::int16_t, 6> b{};   ///< zero coefficients
  std::array<std::int16_t, 2> pk{};  ///< signs of previous dqsez
  std::array<std::int16_t, 6> dq{32, 32, 32, 32, 32, 32};  ///< previous dq, float format
  std::array<std::int16_t, 2> sr{32, 32};                  ///< previous sr, float format
  std::int8_t td = 0;       ///< tone detect

  friend bool operator==(const G726State&, const G726State&) = default;
};

/// Single-sample coder. Input and output are 16-bit linear PCM; the coder
/// core runs on 14-bit samples.
std::uint8_t g726_32_encode_sample(std::int16_t sample, G726State& state);
std::int16_t g726_32_decode_sample(std::uint8_t code, G726State& state);

/// 160 samples in, 80 bytes out; first code word in the low nibble.
EncodedFrame g726_32_encode(const PcmFrame& frame, G726State& state);
/// Throws Error(WrongLength) unless the frame carries 80 bytes.
PcmFrame g726_32_decode(const EncodedFrame& frame, G726State& state);

}  // namespace transteg
