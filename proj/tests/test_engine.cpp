#include <gtest/gtest.h>

#include "transteg/alaw.hpp"
#include "transteg/audio.hpp"
#include "transteg/codec.hpp"
#include "transteg/engine.hpp"
#include "transteg/error.hpp"
#include "transteg/lossless.hpp"
#include "transteg/planner.hpp"

using namespace transteg;

namespace {

constexpr CodecPair kG711G726{CodecId::G711, CodecId::G726_32};
constexpr CodecPair kG711Lossless{CodecId::G711, CodecId::G711_0};

template <typename F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::IoError;
}

std::vector<RtpPacket> overt_stream(CodecId overt, std::size_t seconds, std::uint64_t seed) {
  const auto pcm = speech_shaped_noise(synth_activity(double(seconds), 0.6, seed), seed);
  Codec enc(overt);
  std::vector<RtpPacket> out;
  std::uint16_t seq = 65530;
  for (const auto& f : to_frames(pcm)) {
    RtpPacket p;
    p.payload_type = lookup(overt).rtp_payload_type;
    p.sequence_number = seq++;
    p.timestamp = 160u * out.size();
    p.ssrc = 0xCAFE;
    p.payload = enc.encode(f).bytes;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST(Capacity, SpecValues) {
  EXPECT_EQ(per_packet_capacity(kG711G726), 80u);
  EXPECT_EQ(per_packet_capacity({CodecId::G711, CodecId::SPEEX2}), 145u);
  const EncodedFrame seventy{CodecId::G711_0, Bytes(70), 560};
  EXPECT_EQ(per_packet_capacity(kG711Lossless, seventy), 89u);
  EXPECT_EQ(error_of([] { per_packet_capacity({CodecId::SPEEX2, CodecId::AMR122}); }),
            Errc::Infeasible);
}

TEST(Capacity, LayoutInvariant) {
  for (const auto& covert : registry()) {
    for (CodecId overt : overt_codecs()) {
      if (!feasible(overt, covert.id) || covert.variable_rate) continue;
      const PayloadLayout l = make_layout({overt, covert.id}, covert.bits_per_frame);
      EXPECT_EQ(l.covert_len + l.steg_capacity + (l.signaling ? 1 : 0), l.total_len);
      EXPECT_EQ(l.steg_offset, l.covert_len);
    }
  }
}

TEST(Layout, TailPlacement) {
  const EncodedFrame covert{CodecId::G726_32, Bytes(80, 0xAA), 640};
  const Bytes steg(80, 0x55);
  const Bytes packed = pack_layout(covert, steg, 160);
  ASSERT_EQ(packed.size(), 160u);
  EXPECT_TRUE(std::all_of(packed.begin(), packed.begin() + 80, [](auto b) { return b == 0xAA; }));
  EXPECT_TRUE(std::all_of(packed.begin() + 80, packed.end(), [](auto b) { return b == 0x55; }));
  const Unpacked u = unpack_layout(packed, kG711G726);
  EXPECT_EQ(u.covert, covert);
  EXPECT_EQ(u.steg, steg);
}

TEST(Layout, AmrPadding) {
  Bytes amr(31, 0xFF);
  amr[30] = 0xF0;  // 244 bits: the last 4 bits are padding
  const EncodedFrame covert{CodecId::AMR122, amr, 244};
  const Bytes steg{1, 2, 3};
  const Bytes packed = pack_layout(covert, steg, 160);
  EXPECT_EQ(packed[30] & 0x0F, 0);
  EXPECT_EQ(packed[31], 1);
  const PayloadLayout l = make_layout({CodecId::G711, CodecId::AMR122}, 244);
  EXPECT_EQ(l.covert_len, 31u);
  EXPECT_EQ(l.steg_offset, 31u);
  EXPECT_EQ(l.steg_capacity, 129u);
}

TEST(Layout, Overflow) {
  const EncodedFrame big{CodecId::G711_0, Bytes(200), 1600};
  EXPECT_EQ(error_of([&] { pack_layout(big, {}, 160); }), Errc::Overflow);
  const EncodedFrame covert{CodecId::G726_32, Bytes(80), 640};
  EXPECT_EQ(error_of([&] { pack_layout(covert, Bytes(81), 160); }), Errc::Overflow);
}

TEST(Layout, SignalingGuard) {
  Bytes payload(160, 0);
  payload[0] = 160;
  EXPECT_EQ(error_of([&] { unpack_layout(payload, kG711Lossless); }), Errc::CorruptCovertFrame);
  payload[0] = 159;
  EXPECT_NO_THROW(unpack_layout(payload, kG711Lossless));
  EXPECT_EQ(error_of([&] { unpack_layout(Bytes(159), kG711Lossless); }),
            Errc::WrongPayloadLength);
}

TEST(SsTransform, G726Layout) {
  const auto pkts = overt_stream(CodecId::G711, 1, 2);
  StreamState ss(Role::Sender, kG711G726);
  const Bytes hidden = random_bytes(3, 80);
  StegBitstream steg(hidden);
  const RtpPacket out = ss_transform(pkts[0], ss, steg);
  ASSERT_EQ(out.payload.size(), 160u);
  EXPECT_TRUE(same_rtp_header(out, pkts[0]));
  EXPECT_EQ(Bytes(out.payload.begin() + 80, out.payload.end()), hidden);
  // Voice region is the G.726 encoding of the decoded overt frame.
  Codec alaw(CodecId::G711), adpcm(CodecId::G726_32);
  const EncodedFrame expect =
      adpcm.encode(alaw.decode(EncodedFrame{CodecId::G711, pkts[0].payload, 1280}));
  EXPECT_EQ(Bytes(out.payload.begin(), out.payload.begin() + 80), expect.bytes);
  EXPECT_EQ(ss.steg_bits_moved, 640u);
  EXPECT_TRUE(steg.empty());
}

TEST(SsTransform, IdleChannelZeroFill) {
  const auto pkts = overt_stream(CodecId::G711, 1, 2);
  StreamState ss(Role::Sender, kG711G726);
  StegBitstream steg;
  const RtpPacket out = ss_transform(pkts[0], ss, steg);
  EXPECT_TRUE(std::all_of(out.payload.begin() + 80, out.payload.end(), [](auto b) { return b == 0; }));
  EXPECT_EQ(ss.steg_bits_moved, 0u);
}

TEST(SsTransform, Guards) {
  auto pkts = overt_stream(CodecId::G711, 1, 2);
  StreamState ss(Role::Sender, kG711G726);
  StegBitstream steg;
  RtpPacket wrong_pt = pkts[0];
  wrong_pt.payload_type = 0;
  EXPECT_EQ(error_of([&] { ss_transform(wrong_pt, ss, steg); }), Errc::PtMismatch);
  RtpPacket short_payload = pkts[0];
  short_payload.payload.pop_back();
  EXPECT_EQ(error_of([&] { ss_transform(short_payload, ss, steg); }), Errc::WrongPayloadLength);
  EXPECT_EQ(error_of([] { StreamState(Role::Sender, {CodecId::ILBC, CodecId::SPEEX7}); }),
            Errc::Infeasible);
}

TEST(RoundTrip, EveryFeasiblePair) {
  for (const auto& covert : registry()) {
    for (CodecId overt : overt_codecs()) {
      if (!feasible(overt, covert.id)) continue;
      const CodecPair pair{overt, covert.id};
      const auto pkts = overt_stream(overt, 2, 17);
      const Bytes hidden = random_bytes(5, 2500);
      StreamState ss(Role::Sender, pair), sr(Role::Receiver, pair);
      StegBitstream tx(hidden), rx;
      std::size_t capacity = 0;
      for (const auto& p : pkts) {
        const RtpPacket wire = ss_transform(p, ss, tx);
        ASSERT_TRUE(same_rtp_header(wire, p));
        ASSERT_EQ(wire.payload.size(), p.payload.size());
        const SrResult back = sr_transform(wire, sr, rx);
        ASSERT_TRUE(same_rtp_header(back.packet, p));
        ASSERT_EQ(back.packet.payload.size(), p.payload.size());
        capacity += back.extracted.size();
      }
      const Bytes got = rx.drain();
      const std::size_t n = std::min(capacity, hidden.size());
      ASSERT_EQ(Bytes(got.begin(), got.begin() + n), Bytes(hidden.begin(), hidden.begin() + n))
          << lookup(overt).token << '/' << covert.token;
      if (!covert.variable_rate && hidden.size() >= capacity) {
        EXPECT_EQ(ss.steg_bits_moved, capacity * 8);
        EXPECT_EQ(capacity, pkts.size() * per_packet_capacity(pair));
      }
    }
  }
}

TEST(RoundTrip, LosslessPathIsBitExact) {
  const auto pkts = overt_stream(CodecId::G711, 3, 23);
  StreamState ss(Role::Sender, kG711Lossless), sr(Role::Receiver, kG711Lossless);
  StegBitstream tx(random_bytes(1, 10000)), rx;
  for (const auto& p : pkts) {
    const SrResult back = sr_transform(ss_transform(p, ss, tx), sr, rx);
    ASSERT_EQ(back.packet, p);
  }
  EXPECT_EQ(ss.fallback_frames, 0u);
}

TEST(RoundTrip, IncompressibleFrameFallsBack) {
  RtpPacket p;
  p.payload_type = 8;
  p.payload = random_bytes(77, 160);
  StreamState ss(Role::Sender, kG711Lossless), sr(Role::Receiver, kG711Lossless);
  StegBitstream tx(Bytes(10, 1)), rx;
  const RtpPacket wire = ss_transform(p, ss, tx);
  EXPECT_EQ(ss.fallback_frames, 1u);
  EXPECT_EQ(wire.payload[0], 0);
  EXPECT_EQ(tx.size(), 10u);
  const SrResult back = sr_transform(wire, sr, rx);
  EXPECT_TRUE(back.extracted.empty());
  // All but the final A-law byte survive; the last one is repeated.
  Bytes expect = p.payload;
  expect.back() = expect[158];
  EXPECT_EQ(back.packet.payload, expect);
}

TEST(SrTransform, CorruptLosslessFrame) {
  RtpPacket p;
  p.payload_type = 8;
  p.payload.assign(160, 0);
  p.payload[0] = 4;
  p.payload[1] = 0x20;  // bad Rice parameter
  StreamState sr(Role::Receiver, kG711Lossless);
  StegBitstream rx;
  EXPECT_EQ(error_of([&] { sr_transform(p, sr, rx); }), Errc::CorruptCovertFrame);
}

TEST(Determinism, SameInputSameOutput) {
  const auto pkts = overt_stream(CodecId::SPEEX7, 1, 4);
  auto run = [&] {
    StreamState ss(Role::Sender, {CodecId::SPEEX7, CodecId::AMR122});
    StegBitstream tx(random_bytes(9, 500));
    std::vector<RtpPacket> out;
    for (const auto& p : pkts) out.push_back(ss_transform(p, ss, tx));
    return out;
  };
  EXPECT_EQ(run(), run());
}
