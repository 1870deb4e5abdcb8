#include "transteg/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "transteg/error.hpp"

namespace transteg {
namespace {

constexpr unsigned kGainBits = 8;
constexpr unsigned kIndexBits = 8;
constexpr unsigned kLevelBits = 4;
constexpr unsigned kSlotBits = kIndexBits + 1 + kLevelBits;
constexpr unsigned kEmptySlot = 0xFF;
constexpr int kLevels = 1 << kLevelBits;
constexpr std::size_t kMinBudget = 16;

// Orthonormal DCT-II basis, basis[k * N + n].
const std::vector<double>& dct_basis() {
  static const std::vector<double> basis = [] {
    constexpr std::size_t n_total = kFrameSamples;
    std::vector<double> b(n_total * n_total);
    for (std::size_t k = 0; k < n_total; ++k) {
      const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n_total);
      for (std::size_t n = 0; n < n_total; ++n) {
        b[k * n_total + n] =
            scale * std::cos(std::numbers::pi * (static_cast<double>(n) + 0.5) *
                             static_cast<double>(k) / n_total);
      }
    }
    return b;
  }();
  return basis;
}

double gain_from_code(unsigned code) { return std::exp2(code / 8.0); }

// Magnitude levels step down 2 dB from the gain.
double level_value(double gain, int level) { return gain * std::exp2(-level / 3.0); }

}  // namespace

EncodedFrame surrogate_encode_bits(const PcmFrame& frame, CodecId id, std::size_t budget_bits) {
  if (budget_bits < kMinBudget) {
    throw Error(Errc::BudgetTooSmall, std::to_string(budget_bits) + " bits");
  }
  const auto& basis = dct_basis();
  std::array<double, kFrameSamples> coef{};
  double peak = 0.0;
  for (std::size_t k = 0; k < kFrameSamples; ++k) {
    const double* row = &basis[k * kFrameSamples];
    double acc = 0.0;
    for (std::size_t n = 0; n < kFrameSamples; ++n) acc += row[n] * frame[n];
    coef[k] = acc;
    peak = std::max(peak, std::abs(acc));
  }

  const std::size_t slots = (budget_bits - kGainBits) / kSlotBits;
  BitWriter w;
  unsigned gain_code = 0;
  if (peak >= 1.0) {
    gain_code = static_cast<unsigned>(std::clamp(std::ceil(8.0 * std::log2(peak)), 1.0, 255.0));
  }
  w.put(gain_code, kGainBits);

  std::array<std::uint8_t, kFrameSamples> order{};
  for (std::size_t k = 0; k < kFrameSamples; ++k) order[k] = static_cast<std::uint8_t>(k);
  std::stable_sort(order.begin(), order.end(), [&](std::uint8_t a, std::uint8_t b) {
    return std::abs(coef[a]) > std::abs(coef[b]);
  });

  const double gain = gain_from_code(gain_code);
  bool stopped = gain_code == 0;
  for (std::size_t s = 0; s < slots; ++s) {
    const std::size_t k = order[std::min(s, kFrameSamples - 1)];
    const double mag = std::abs(coef[k]);
    int best = 0;
    double best_err = std::abs(mag - level_value(gain, 0));
    for (int l = 1; l < kLevels; ++l) {
      const double err = std::abs(mag - level_value(gain, l));
      if (err < best_err) {
        best_err = err;
        best = l;
      }
    }
    // Sending a coefficient must not make the reconstruction worse than
    // leaving it at zero; coefficients are sorted, so stop at the first one.
    if (s >= kFrameSamples || best_err >= mag) stopped = true;
    if (stopped) {
      w.put(kEmptySlot, kIndexBits);
      w.put(0, 1 + kLevelBits);
      continue;
    }
    w.put(static_cast<std::uint32_t>(k), kIndexBits);
    w.put_bit(coef[k] < 0 ? 1 : 0);
    w.put(static_cast<std::uint32_t>(best), kLevelBits);
  }
  while (w.bit_length() < budget_bits) w.put_bit(0);
  return EncodedFrame{id, w.take(), budget_bits};
}

PcmFrame surrogate_decode_bits(const EncodedFrame& frame, std::size_t budget_bits) {
  if (budget_bits < kMinBudget) {
    throw Error(Errc::BudgetTooSmall, std::to_string(budget_bits) + " bits");
  }
  if (frame.bit_length != budget_bits || frame.bytes.size() != (budget_bits + 7) / 8) {
    throw Error(Errc::WrongLength, "surrogate frame of " + std::to_string(frame.bit_length) +
                                       " bits, need " + std::to_string(budget_bits));
  }
  BitReader r(frame.bytes, frame.bit_length);
  const unsigned gain_code = r.get(kGainBits);
  std::array<double, kFrameSamples> coef{};
  if (gain_code != 0) {
    const double gain = gain_from_code(gain_code);
    const std::size_t slots = (budget_bits - kGainBits) / kSlotBits;
    for (std::size_t s = 0; s < slots; ++s) {
      const unsigned idx = r.get(kIndexBits);
      const unsigned sign = r.get_bit();
      const int level = static_cast<int>(r.get(kLevelBits));
      if (idx >= kFrameSamples) continue;
      const double v = level_value(gain, level);
      coef[idx] = sign ? -v : v;
    }
  }

  const auto& basis = dct_basis();
  std::array<double, kFrameSamples> acc{};
  for (std::size_t k = 0; k < kFrameSamples; ++k) {
    if (coef[k] == 0.0) continue;
    const double* row = &basis[k * kFrameSamples];
    for (std::size_t n = 0; n < kFrameSamples; ++n) acc[n] += coef[k] * row[n];
  }
  PcmFrame out;
  for (std::size_t n = 0; n < kFrameSamples; ++n) {
    out[n] = static_cast<std::int16_t>(std::clamp(std::lround(acc[n]), -32768L, 32767L));
  }
  return out;
}

EncodedFrame surrogate_encode(const PcmFrame& frame, const CodecDescriptor& desc) {
  if (desc.family != CodecFamily::Celp && desc.family != CodecFamily::RpeLtp) {
    throw Error(Errc::UnknownCodec, std::string(desc.token) + " is not a surrogate codec");
  }
  return surrogate_encode_bits(frame, desc.id, static_cast<std::size_t>(desc.bits_per_frame));
}

PcmFrame surrogate_decode(const EncodedFrame& frame, const CodecDescriptor& desc) {
  if (desc.family != CodecFamily::Celp && desc.family != CodecFamily::RpeLtp) {
    throw Error(Errc::UnknownCodec, std::string(desc.token) + " is not a surrogate codec");
  }
  return surrogate_decode_bits(frame, static_cast<std::size_t>(desc.bits_per_frame));
}

}  // namespace transteg
