#include "transteg/audio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "transteg/error.hpp"

namespace transteg {
namespace {

constexpr double kFullScale = 32768.0;
constexpr double kSilenceThresholdDbfs = -60.0;
constexpr double kSnrFloorDb = -10.0;
constexpr double kSnrCeilDb = 60.0;
constexpr double kMeanTalkSpurtFrames = 50.0;

// Two-pole low-pass, y[n] = x[n] + a1 y[n-1] + a2 y[n-2].
constexpr double kPoleA1 = 1.78;
constexpr double kPoleA2 = -0.81;

}  // namespace

double Rng::exponential(double mean) { return -mean * std::log1p(-uniform()); }

double Rng::normal() {
  if (spare_normal_) {
    const double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_normal_ = r * std::sin(2.0 * std::numbers::pi * u2);
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

Bytes random_bytes(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  Bytes out(n);
  for (auto& b : out) b = rng.byte();
  return out;
}

std::vector<bool> synth_activity(double duration_s, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error(Errc::BadRatio, "activity ratio " + std::to_string(ratio));
  }
  const auto frames = static_cast<std::size_t>(std::ceil(duration_s * kPacketsPerSecond - 1e-9));
  std::vector<bool> on(frames, ratio >= 1.0);
  if (ratio >= 1.0 || frames == 0) return on;

  Rng rng(seed);
  const double mean_silence = kMeanTalkSpurtFrames * (1.0 - ratio) / ratio;
  std::vector<double> talk, silence;
  double total = 0.0;
  while (total < static_cast<double>(frames)) {
    talk.push_back(rng.exponential(kMeanTalkSpurtFrames));
    silence.push_back(rng.exponential(mean_silence));
    total += talk.back() + silence.back();
  }
  double talk_sum = 0.0, silence_sum = 0.0;
  for (std::size_t i = 0; i < talk.size(); ++i) {
    talk_sum += talk[i];
    silence_sum += silence[i];
  }
  const double talk_scale = ratio * frames / talk_sum;
  const double silence_scale = (1.0 - ratio) * frames / silence_sum;

  double edge = 0.0;
  for (std::size_t i = 0; i < talk.size(); ++i) {
    const auto begin = static_cast<std::size_t>(std::llround(edge));
    edge += talk[i] * talk_scale;
    const auto end = std::min(frames, static_cast<std::size_t>(std::llround(edge)));
    for (std::size_t f = begin; f < end; ++f) on[f] = true;
    edge += silence[i] * silence_scale;
  }
  return on;
}

std::vector<std::int16_t> speech_shaped_noise(const std::vector<bool>& activity,
                                              std::uint64_t seed, double level_dbfs) {
  const std::size_t n = activity.size() * kFrameSamples;
  std::vector<double> y(n);
  Rng rng(seed);
  double y1 = 0.0, y2 = 0.0, energy = 0.0;
  std::size_t active = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = rng.normal() + kPoleA1 * y1 + kPoleA2 * y2;
    y2 = y1;
    y1 = v;
    if (activity[i / kFrameSamples]) {
      y[i] = v;
      energy += v * v;
      ++active;
    }
  }
  std::vector<std::int16_t> out(n, 0);
  if (active == 0) return out;
  const double target_rms = kFullScale * std::pow(10.0, level_dbfs / 20.0);
  const double gain = target_rms / std::sqrt(energy / static_cast<double>(active));
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::int16_t>(std::clamp(std::lround(y[i] * gain), -32768L, 32767L));
  }
  return out;
}

std::vector<std::int16_t> sine_wave(double freq_hz, double amplitude, std::size_t samples) {
  std::vector<std::int16_t> out(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double v = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * i / kSampleRate);
    out[i] = static_cast<std::int16_t>(std::clamp(std::lround(v), -32768L, 32767L));
  }
  return out;
}

std::optional<double> segmental_snr(std::span<const std::int16_t> reference,
                                    std::span<const std::int16_t> degraded) {
  if (reference.size() != degraded.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(reference.size()) + " vs " +
                                          std::to_string(degraded.size()) + " samples");
  }
  const double threshold = std::pow(10.0, kSilenceThresholdDbfs / 10.0) * kFullScale * kFullScale;
  double sum = 0.0;
  std::size_t segments = 0;
  for (std::size_t start = 0; start < reference.size(); start += kFrameSamples) {
    const std::size_t end = std::min(reference.size(), start + kFrameSamples);
    double sig = 0.0, err = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      const double r = reference[i];
      const double e = r - degraded[i];
      sig += r * r;
      err += e * e;
    }
    if (sig / static_cast<double>(end - start) < threshold) continue;
    const double snr = err == 0.0 ? kSnrCeilDb : 10.0 * std::log10(sig / err);
    sum += std::clamp(snr, kSnrFloorDb, kSnrCeilDb);
    ++segments;
  }
  if (segments == 0) return std::nullopt;
  return sum / static_cast<double>(segments);
}

std::vector<PcmFrame> to_frames(std::span<const std::int16_t> samples) {
  std::vector<PcmFrame> frames((samples.size() + kFrameSamples - 1) / kFrameSamples);
  for (auto& f : frames) f.fill(0);
  for (std::size_t i = 0; i < samples.size(); ++i) frames[i / kFrameSamples][i % kFrameSamples] = samples[i];
  return frames;
}

std::vector<std::int16_t> from_frames(std::span<const PcmFrame> frames) {
  std::vector<std::int16_t> out;
  out.reserve(frames.size() * kFrameSamples);
  for (const auto& f : frames) out.insert(out.end(), f.begin(), f.end());
  return out;
}

}  // namespace transteg
