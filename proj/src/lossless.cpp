#include "transteg/lossless.hpp"

#include <array>
#include <limits>
#include <string>

#include "transteg/alaw.hpp"
#include "transteg/error.hpp"

namespace transteg {
namespace {

constexpr unsigned kMaxRice = 15;
// |residual| <= 4 * 4032, so the zigzag value never exceeds this.
constexpr std::uint32_t kMaxZigzag = 2 * 4 * 4032;

std::uint32_t zigzag(int e) {
  return e >= 0 ? static_cast<std::uint32_t>(e) << 1 : (static_cast<std::uint32_t>(-e) << 1) - 1;
}

int unzigzag(std::uint32_t u) {
  return (u & 1) ? -static_cast<int>((u + 1) >> 1) : static_cast<int>(u >> 1);
}

// Second-order fixed prediction; history before the frame start is zero.
int predict(const std::array<int, kFrameSamples>& v, std::size_t n) {
  if (n == 0) return 0;
  if (n == 1) return v[0];
  return 2 * v[n - 1] - v[n - 2];
}

}  // namespace

EncodedFrame lossless_encode(ByteView alaw_frame) {
  if (alaw_frame.size() != kFrameSamples) {
    throw Error(Errc::WrongLength,
                "lossless input of " + std::to_string(alaw_frame.size()) + " bytes, need 160");
  }
  // Every A-law reconstruction level is a multiple of 8.
  std::array<int, kFrameSamples> v{};
  for (std::size_t i = 0; i < kFrameSamples; ++i) v[i] = alaw_expand(alaw_frame[i]) / 8;

  std::array<std::uint32_t, kFrameSamples> u{};
  for (std::size_t i = 0; i < kFrameSamples; ++i) u[i] = zigzag(v[i] - predict(v, i));

  unsigned best_k = 0;
  std::uint64_t best_bits = std::numeric_limits<std::uint64_t>::max();
  for (unsigned k = 0; k <= kMaxRice; ++k) {
    std::uint64_t bits = 0;
    for (auto x : u) bits += (x >> k) + 1 + k;
    if (bits < best_bits) {
      best_bits = bits;
      best_k = k;
    }
  }

  EncodedFrame out{CodecId::G711_0, {}, 0};
  if (1 + (best_bits + 7) / 8 >= kLosslessMaxBytes) {
    out.bytes.reserve(kLosslessMaxBytes);
    out.bytes.push_back(kLosslessEscape);
    out.bytes.insert(out.bytes.end(), alaw_frame.begin(), alaw_frame.end());
  } else {
    BitWriter w;
    w.put(best_k, 8);
    for (auto x : u) {
      for (std::uint32_t q = x >> best_k; q > 0; --q) w.put_bit(1);
      w.put_bit(0);
      w.put(x & ((1u << best_k) - 1), best_k);
    }
    out.bytes = w.take();
  }
  out.bit_length = out.bytes.size() * 8;
  return out;
}

Bytes lossless_decode(const EncodedFrame& frame) {
  const Bytes& in = frame.bytes;
  if (in.empty() || frame.bit_length != in.size() * 8) {
    throw Error(Errc::CorruptFrame, "empty or unaligned lossless frame");
  }
  if (in[0] == kLosslessEscape) {
    if (in.size() != kLosslessMaxBytes) {
      throw Error(Errc::CorruptFrame, "escape frame of " + std::to_string(in.size()) + " bytes");
    }
    return Bytes(in.begin() + 1, in.end());
  }
  const unsigned k = in[0];
  if (k > kMaxRice) throw Error(Errc::CorruptFrame, "header byte " + std::to_string(k));

  BitReader r(ByteView(in).subspan(1), (in.size() - 1) * 8);
  std::array<int, kFrameSamples> v{};
  for (std::size_t i = 0; i < kFrameSamples; ++i) {
    std::uint32_t q = 0;
    while (r.get_bit() == 1) {
      if (++q > (kMaxZigzag >> k) || r.exhausted()) {
        throw Error(Errc::CorruptFrame, "runaway unary code");
      }
    }
    const std::uint32_t x = (q << k) | r.get(k);
    if (r.exhausted()) throw Error(Errc::CorruptFrame, "bitstream ended early");
    v[i] = predict(v, i) + unzigzag(x);
  }
  if (r.remaining() >= 8) throw Error(Errc::CorruptFrame, "trailing bytes after residuals");

  Bytes out(kFrameSamples);
  for (std::size_t i = 0; i < kFrameSamples; ++i) {
    const int linear = v[i] * 8;
    if (linear < -32768 || linear > 32767) throw Error(Errc::CorruptFrame, "sample out of range");
    const std::uint8_t code = alaw_compress(static_cast<std::int16_t>(linear));
    if (alaw_expand(code) != linear) throw Error(Errc::CorruptFrame, "not an A-law level");
    out[i] = code;
  }
  return out;
}

}  // namespace transteg
