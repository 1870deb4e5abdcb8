#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "transteg/alaw.hpp"
#include "transteg/audio.hpp"
#include "transteg/codec.hpp"
#include "transteg/codec_registry.hpp"
#include "transteg/error.hpp"
#include "transteg/g726.hpp"
#include "transteg/lossless.hpp"
#include "transteg/surrogate.hpp"

using namespace transteg;

namespace {

PcmFrame frame_of(const std::vector<std::int16_t>& pcm, std::size_t index = 0) {
  PcmFrame f{};
  std::copy_n(pcm.begin() + index * kFrameSamples, kFrameSamples, f.begin());
  return f;
}

std::vector<std::int16_t> round_trip(Codec& c, const std::vector<std::int16_t>& pcm) {
  std::vector<PcmFrame> out;
  for (const auto& f : to_frames(pcm)) out.push_back(c.decode(c.encode(f)));
  return from_frames(out);
}

Bytes alaw_bytes(const PcmFrame& f) { return alaw_encode(f).bytes; }

}  // namespace

TEST(Registry, Bitrates) {
  EXPECT_EQ(lookup(CodecId::G711).nominal_bitrate_bps, 64000);
  EXPECT_EQ(lookup(CodecId::SPEEX2).nominal_bitrate_bps, 5950);
  EXPECT_EQ(lookup(CodecId::AMR122).bits_per_frame, 244);
  EXPECT_EQ(lookup(CodecId::SPEEX7).bits_per_frame, 492);
  EXPECT_EQ(lookup(CodecId::G7231).bits_per_frame, 126);
  EXPECT_EQ(lookup(CodecId::G711).rtp_payload_type, 8);
  EXPECT_EQ(registry().size(), 11u);
  for (const auto& d : registry()) {
    EXPECT_EQ(d.frame_ms, 20);
    if (!d.variable_rate) {
      EXPECT_EQ(d.bits_per_frame * 1000, d.nominal_bitrate_bps * d.frame_ms) << d.token;
    }
    EXPECT_EQ(&lookup(d.token), &d);
    EXPECT_EQ(find_by_payload_type(d.rtp_payload_type), &d);
  }
  EXPECT_EQ(lookup("amr").id, CodecId::AMR122);
  EXPECT_THROW(lookup("opus"), Error);
}

TEST(Alaw, SpecPoints) {
  EXPECT_EQ(alaw_compress(0), 0xD5);
  EXPECT_EQ(alaw_expand(0xD5), 8);
  EXPECT_EQ(oracle::alaw_level(0xD5), 8);
}

TEST(Alaw, ExhaustiveAgainstIntervalTable) {
  for (int x = -32768; x <= 32767; ++x) {
    const auto s = static_cast<std::int16_t>(x);
    const std::uint8_t code = alaw_compress(s);
    ASSERT_EQ(code, oracle::alaw_encode(s)) << x;
    const int err = std::abs(alaw_expand(code) - x);
    ASSERT_LE(err, oracle::alaw_segment_width(x)) << x;
  }
}

TEST(Alaw, CodePointIdempotence) {
  for (int c = 0; c < 256; ++c) {
    const auto code = static_cast<std::uint8_t>(c);
    ASSERT_EQ(alaw_expand(code), oracle::alaw_level(code)) << c;
    ASSERT_EQ(alaw_compress(alaw_expand(code)), code) << c;
  }
}

TEST(Alaw, FrameGeometry) {
  PcmFrame f{};
  const EncodedFrame e = alaw_encode(f);
  EXPECT_EQ(e.bytes.size(), 160u);
  EXPECT_EQ(e.bit_length, 1280u);
  EncodedFrame bad = e;
  bad.bytes.pop_back();
  EXPECT_THROW(alaw_decode(bad), Error);
}

TEST(G726, FrameGeometryAndSineQuality) {
  const auto sine = sine_wave(1000.0, 16384.0, 8000);
  G726State enc, dec;
  std::vector<PcmFrame> out;
  for (const auto& f : to_frames(sine)) {
    const EncodedFrame e = g726_32_encode(f, enc);
    ASSERT_EQ(e.bytes.size(), 80u);
    ASSERT_EQ(e.bit_length, 640u);
    out.push_back(g726_32_decode(e, dec));
  }
  const auto snr = segmental_snr(sine, from_frames(out));
  ASSERT_TRUE(snr);
  EXPECT_GE(*snr, 20.0);
}

TEST(G726, SilenceSettles) {
  G726State enc, dec;
  const PcmFrame zero{};
  for (int n = 0; n < 4; ++n) {
    const PcmFrame out = g726_32_decode(g726_32_encode(zero, enc), dec);
    if (n < 2) continue;
    for (auto s : out) ASSERT_LE(std::abs(s), 16);
  }
}

TEST(G726, Deterministic) {
  const auto pcm = speech_shaped_noise(synth_activity(2.0, 0.8, 3), 3);
  auto run = [&] {
    G726State st;
    Bytes all;
    for (const auto& f : to_frames(pcm)) {
      const Bytes b = g726_32_encode(f, st).bytes;
      all.insert(all.end(), b.begin(), b.end());
    }
    return std::make_pair(all, st);
  };
  const auto a = run();
  const auto b = run();
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
}

TEST(G726, LowNibbleFirst) {
  G726State enc;
  const auto pcm = sine_wave(440.0, 8000.0, 160);
  const EncodedFrame e = g726_32_encode(frame_of(pcm), enc);
  G726State one;
  const std::uint8_t c0 = g726_32_encode_sample(pcm[0], one);
  const std::uint8_t c1 = g726_32_encode_sample(pcm[1], one);
  EXPECT_EQ(e.bytes[0], static_cast<std::uint8_t>(c0 | (c1 << 4)));
}

TEST(G726, WrongLength) {
  G726State dec;
  EXPECT_THROW(g726_32_decode(EncodedFrame{CodecId::G726_32, Bytes(79), 316}, dec), Error);
}

TEST(Lossless, RandomRoundTrips) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  for (int n = 0; n < 10000; ++n) {
    Bytes frame(160);
    if (n % 2 == 0) {
      for (auto& b : frame) b = static_cast<std::uint8_t>(rng());
    } else {
      // Smooth random-walk audio at a random level: exercises the coded path.
      const double scale = std::exp2(static_cast<double>(rng() % 12));
      double x = 0, v = 0;
      PcmFrame pcm{};
      for (auto& s : pcm) {
        v = 0.9 * v + gauss(rng);
        x = 0.95 * x + v;
        s = static_cast<std::int16_t>(std::clamp(x * scale, -32768.0, 32767.0));
      }
      frame = alaw_bytes(pcm);
    }
    const EncodedFrame e = lossless_encode(frame);
    ASSERT_EQ(e.bit_length % 8, 0u);
    ASSERT_GE(e.bit_length, 8u);
    ASSERT_LE(e.bytes.size(), kLosslessMaxBytes);
    ASSERT_EQ(lossless_decode(e), frame) << n;
  }
}

TEST(Lossless, RandomInputEscapes) {
  const Bytes frame = random_bytes(4, 160);
  const EncodedFrame e = lossless_encode(frame);
  EXPECT_EQ(e.bytes.size(), 161u);
  EXPECT_EQ(e.bytes[0], kLosslessEscape);
}

TEST(Lossless, SilenceIsTiny) {
  const EncodedFrame e = lossless_encode(alaw_bytes(PcmFrame{}));
  EXPECT_LE(e.bytes.size(), 24u);
}

TEST(Lossless, CorpusMeanRate) {
  const auto pcm = speech_shaped_noise(synth_activity(60.0, kDefaultActivityRatio, 1), 1);
  std::size_t bytes = 0, frames = 0;
  for (const auto& f : to_frames(pcm)) {
    bytes += lossless_encode(alaw_bytes(f)).bytes.size();
    ++frames;
  }
  const double kbps = bytes * 8.0 * kPacketsPerSecond / frames / 1000.0;
  EXPECT_GE(kbps, 20.0);
  EXPECT_LE(kbps, 45.0);
}

TEST(Lossless, CorruptFrames) {
  EXPECT_THROW(lossless_decode(EncodedFrame{CodecId::G711_0, {}, 0}), Error);
  EXPECT_THROW(lossless_decode(EncodedFrame{CodecId::G711_0, {16}, 8}), Error);
  // Escape header with a short body.
  EXPECT_THROW(lossless_decode(EncodedFrame{CodecId::G711_0, Bytes(100, 0xFF), 800}), Error);
  // Valid frame cut short.
  EncodedFrame e = lossless_encode(alaw_bytes(frame_of(sine_wave(300.0, 3000.0, 160))));
  e.bytes.resize(e.bytes.size() / 2);
  e.bit_length = e.bytes.size() * 8;
  EXPECT_THROW(lossless_decode(e), Error);
}

TEST(Surrogate, FixedBudgets) {
  const auto pcm = speech_shaped_noise(synth_activity(1.0, 1.0, 8), 8);
  for (const auto& d : registry()) {
    if (d.family != CodecFamily::Celp && d.family != CodecFamily::RpeLtp) continue;
    for (const auto& f : to_frames(pcm)) {
      const EncodedFrame e = surrogate_encode(f, d);
      ASSERT_EQ(e.bit_length, static_cast<std::size_t>(d.bits_per_frame)) << d.token;
      ASSERT_EQ(e.bytes.size(), static_cast<std::size_t>(d.frame_bytes())) << d.token;
    }
  }
  EXPECT_THROW(surrogate_encode(PcmFrame{}, lookup(CodecId::G711)), Error);
  EXPECT_THROW(surrogate_encode_bits(PcmFrame{}, CodecId::AMR122, 15), Error);
}

TEST(Surrogate, ZeroFrame) {
  const auto& d = lookup(CodecId::AMR122);
  const PcmFrame out = surrogate_decode(surrogate_encode(PcmFrame{}, d), d);
  for (auto s : out) EXPECT_EQ(s, 0);
}

TEST(Surrogate, SineQuality) {
  const auto sine = sine_wave(1000.0, 16384.0, 8000);
  Codec c(CodecId::SPEEX7);
  const auto snr = segmental_snr(sine, round_trip(c, sine));
  ASSERT_TRUE(snr);
  EXPECT_GE(*snr, 10.0);
}

TEST(Surrogate, MonotoneInBudget) {
  const auto pcm = speech_shaped_noise(synth_activity(4.0, 1.0, 21), 21);
  for (const auto& f : to_frames(pcm)) {
    const std::vector<std::int16_t> ref(f.begin(), f.end());
    auto snr_at = [&](std::size_t bits) {
      const PcmFrame out = surrogate_decode_bits(surrogate_encode_bits(f, CodecId::SPEEX7, bits), bits);
      return oracle::snr_db(ref, std::vector<std::int16_t>(out.begin(), out.end()));
    };
    ASSERT_GE(snr_at(492) + 1e-9, snr_at(119));
  }
}

TEST(Surrogate, Deterministic) {
  const auto pcm = sine_wave(700.0, 9000.0, 160);
  const auto& d = lookup(CodecId::G729);
  EXPECT_EQ(surrogate_encode(frame_of(pcm), d), surrogate_encode(frame_of(pcm), d));
}

TEST(Codec, LosslessCodecMatchesAlaw) {
  const auto pcm = speech_shaped_noise(synth_activity(2.0, 1.0, 5), 5);
  Codec lossless(CodecId::G711_0), alaw(CodecId::G711);
  EXPECT_EQ(round_trip(lossless, pcm), round_trip(alaw, pcm));
}
