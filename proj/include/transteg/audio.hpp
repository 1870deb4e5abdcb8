#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "transteg/frames.hpp"

namespace transteg {

/// Seeded generator with distributions written out explicitly so streams
/// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double exponential(double mean);
  double normal();
  std::uint8_t byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

Bytes random_bytes(std::uint64_t seed, std::size_t n);

/// Talk-spurt / silence pattern, one flag per 20 ms frame. Segment lengths
/// are exponential, then rescaled so the on-fraction matches the ratio.
/// Throws Error(BadRatio) unless 0 < ratio <= 1.
std::vector<bool> synth_activity(double duration_s, double activity_ratio, std::uint64_t seed);

inline constexpr double kDefaultActivityRatio = 0.465;
inline constexpr double kSpeechLevelDbfs = -26.0;

/// Speech-shaped noise: white Gaussian through a fixed two-pole low-pass,
/// scaled to the active level and gated by `activity` (silence is zero).
std::vector<std::int16_t> speech_shaped_noise(const std::vector<bool>& activity,
                                              std::uint64_t seed,
                                              double level_dbfs = kSpeechLevelDbfs);

std::vector<std::int16_t> sine_wave(double freq_hz, double amplitude, std::size_t samples);

/// Mean per-20 ms SNR in dB; segments of the reference below -60 dBFS are
/// skipped and each segment is clamped to [-10, 60] dB. Empty when every
/// segment is skipped. Throws Error(LengthMismatch).
std::optional<double> segmental_snr(std::span<const std::int16_t> reference,
                                    std::span<const std::int16_t> degraded);

/// Split into 160-sample frames, zero-padding the last one.
std::vector<PcmFrame> to_frames(std::span<const std::int16_t> samples);
std::vector<std::int16_t> from_frames(std::span<const PcmFrame> frames);

}  // namespace transteg
