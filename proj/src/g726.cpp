// 32 kbit/s ADPCM following the block structure of ITU-T G.726 (the same
// arithmetic as the widely used Sun reference coder, with lookup tables in
// place of the bit-level multiplier).

#include "transteg/g726.hpp"

#include <cstdlib>
#include <string>

#include "transteg/error.hpp"

namespace transteg {
namespace {

constexpr std::int16_t kQuantTable[7] = {-124, 80, 178, 246, 300, 349, 400};

// Code word -> normalized log magnitude of the reconstructed difference.
constexpr std::int16_t kDqlnTable[16] = {-2048, 4,   135, 213, 273, 323, 373, 425,
                                         425,   373, 323, 273, 213, 135, 4,   -2048};

// Code word -> log of the scale factor multiplier.
constexpr std::int16_t kWiTable[16] = {-12,  18,  41,  64,  112, 198, 355, 1122,
                                       1122, 355, 198, 112, 64,  41,  18,  -12};

// Code word -> transition indicator fed to the speed-control averages.
constexpr std::int16_t kFiTable[16] = {0,     0,     0,     0x200, 0x200, 0x200, 0x600, 0xE00,
                                       0xE00, 0x600, 0x200, 0x200, 0x200, 0,     0,     0};

constexpr std::int16_t kPower2[15] = {1,     2,     4,     8,     0x10,   0x20,   0x40,  0x80,
                                      0x100, 0x200, 0x400, 0x800, 0x1000, 0x2000, 0x4000};

// Index of the first table entry greater than val.
int quan(int val, const std::int16_t* table, int size) {
  int i = 0;
  while (i < size && val >= table[i]) ++i;
  return i;
}

// 14-bit coefficient times a value in 4-bit exponent / 6-bit mantissa form.
int fmult(int an, int srn) {
  const int anmag = an > 0 ? an : ((-an) & 0x1FFF);
  const int anexp = quan(anmag, kPower2, 15) - 6;
  const int anmant = anmag == 0 ? 32 : anexp >= 0 ? anmag >> anexp : anmag << -anexp;
  const int wanexp = anexp + ((srn >> 6) & 0xF) - 13;
  const int wanmant = (anmant * (srn & 077) + 0x30) >> 4;
  const int retval = wanexp >= 0 ? ((wanmant << wanexp) & 0x7FFF) : (wanmant >> -wanexp);
  return (an ^ srn) < 0 ? -retval : retval;
}

int predictor_zero(const G726State& s) {
  int sezi = 0;
  for (int i = 0; i < 6; ++i) sezi += fmult(s.b[i] >> 2, s.dq[i]);
  return sezi;
}

int predictor_pole(const G726State& s) {
  return fmult(s.a[1] >> 2, s.sr[1]) + fmult(s.a[0] >> 2, s.sr[0]);
}

int step_size(const G726State& s) {
  if (s.ap >= 256) return s.yu;
  int y = s.yl >> 6;
  const int dif = s.yu - y;
  const int al = s.ap >> 2;
  if (dif > 0) {
    y += (dif * al) >> 6;
  } else if (dif < 0) {
    y += (dif * al + 0x3F) >> 6;
  }
  return y;
}

int quantize(int d, int y) {
  const int dqm = std::abs(d);
  const int exp = quan(dqm >> 1, kPower2, 15);
  const int mant = ((dqm << 7) >> exp) & 0x7F;
  const int dl = (exp << 7) + mant;
  const int dln = dl - (y >> 2);
  const int i = quan(dln, kQuantTable, 7);
  if (d < 0) return 15 - i;
  if (i == 0) return 15;
  return i;
}

int reconstruct(bool sign, int dqln, int y) {
  const int dql = dqln + (y >> 2);
  if (dql < 0) return sign ? -0x8000 : 0;
  const int dex = (dql >> 7) & 15;
  const int dqt = 128 + (dql & 127);
  const int dq = static_cast<std::int16_t>((dqt << 7) >> (14 - dex));
  return sign ? dq - 0x8000 : dq;
}

std::int16_t to_float_format(int mag, bool negative) {
  const int exp = quan(mag, kPower2, 15);
  const int v = (exp << 6) + ((mag << 6) >> exp);
  return static_cast<std::int16_t>(negative ? v - 0x400 : v);
}

void update(int y, int wi, int fi, int dq, int sr, int dqsez, G726State& s) {
  const std::int16_t pk0 = dqsez < 0 ? 1 : 0;
  const int mag = dq & 0x7FFF;

  // Transition detector.
  const int ylint = s.yl >> 15;
  const int ylfrac = (s.yl >> 10) & 0x1F;
  const int thr1 = (32 + ylfrac) << ylint;
  const int thr2 = ylint > 9 ? 31 << 10 : thr1;
  const int dqthr = (thr2 + (thr2 >> 1)) >> 1;
  const bool tr = s.td != 0 && mag > dqthr;

  // Quantizer scale factor adaptation.
  int yu = y + ((wi - y) >> 5);
  if (yu < 544) {
    yu = 544;
  } else if (yu > 5120) {
    yu = 5120;
  }
  s.yu = static_cast<std::int16_t>(yu);
  s.yl += s.yu + ((-s.yl) >> 6);

  int a2p = 0;
  if (tr) {
    s.a.fill(0);
    s.b.fill(0);
  } else {
    const int pks1 = pk0 ^ s.pk[0];

    a2p = s.a[1] - (s.a[1] >> 7);
    if (dqsez != 0) {
      const int fa1 = pks1 ? s.a[0] : -s.a[0];
      if (fa1 < -8191) {
        a2p -= 0x100;
      } else if (fa1 > 8191) {
        a2p += 0xFF;
      } else {
        a2p += fa1 >> 5;
      }
      if (pk0 ^ s.pk[1]) {
        if (a2p <= -12160) {
          a2p = -12288;
        } else if (a2p >= 12416) {
          a2p = 12288;
        } else {
          a2p -= 0x80;
        }
      } else if (a2p <= -12416) {
        a2p = -12288;
      } else if (a2p >= 12160) {
        a2p = 12288;
      } else {
        a2p += 0x80;
      }
    }
    s.a[1] = static_cast<std::int16_t>(a2p);

    int a1 = s.a[0] - (s.a[0] >> 8);
    if (dqsez != 0) a1 += pks1 == 0 ? 192 : -192;
    const int a1ul = 15360 - a2p;
    if (a1 < -a1ul) {
      a1 = -a1ul;
    } else if (a1 > a1ul) {
      a1 = a1ul;
    }
    s.a[0] = static_cast<std::int16_t>(a1);

    for (int i = 0; i < 6; ++i) {
      int bi = s.b[i] - (s.b[i] >> 8);
      if (mag != 0) bi += (static_cast<std::int16_t>(dq) ^ s.dq[i]) >= 0 ? 128 : -128;
      s.b[i] = static_cast<std::int16_t>(bi);
    }
  }

  for (int i = 5; i > 0; --i) s.dq[i] = s.dq[i - 1];
  if (mag == 0) {
    s.dq[0] = static_cast<std::int16_t>(dq >= 0 ? 0x20 : 0xFC20);
  } else {
    s.dq[0] = to_float_format(mag, dq < 0);
  }

  s.sr[1] = s.sr[0];
  if (sr == 0) {
    s.sr[0] = 0x20;
  } else if (sr > 0) {
    s.sr[0] = to_float_format(sr, false);
  } else if (sr > -32768) {
    s.sr[0] = to_float_format(-sr, true);
  } else {
    s.sr[0] = static_cast<std::int16_t>(0xFC20);
  }

  s.pk[1] = s.pk[0];
  s.pk[0] = pk0;

  // Tone detector.
  if (tr) {
    s.td = 0;
  } else if (a2p < -11776) {
    s.td = 1;
  } else {
    s.td = 0;
  }

  // Adaptation speed control.
  s.dms = static_cast<std::int16_t>(s.dms + ((fi - s.dms) >> 5));
  s.dml = static_cast<std::int16_t>(s.dml + (((fi << 2) - s.dml) >> 7));

  if (tr) {
    s.ap = 256;
  } else if (y < 1536 || s.td == 1 || std::abs((s.dms << 2) - s.dml) >= (s.dml >> 3)) {
    s.ap = static_cast<std::int16_t>(s.ap + ((0x200 - s.ap) >> 4));
  } else {
    s.ap = static_cast<std::int16_t>(s.ap + ((-s.ap) >> 4));
  }
}

constexpr std::size_t kG726FrameBytes = kFrameSamples / 2;

}  // namespace

std::uint8_t g726_32_encode_sample(std::int16_t sample, G726State& state) {
  const int sl = sample >> 2;
  const int sezi = static_cast<std::int16_t>(predictor_zero(state));
  const int sez = sezi >> 1;
  const int se = static_cast<std::int16_t>((sezi + predictor_pole(state)) >> 1);
  const int d = static_cast<std::int16_t>(sl - se);

  const int y = step_size(state);
  const int i = quantize(d, y);
  const int dq = static_cast<std::int16_t>(reconstruct(i & 8, kDqlnTable[i], y));
  const int sr = static_cast<std::int16_t>(dq < 0 ? se - (dq & 0x3FFF) : se + dq);
  const int dqsez = static_cast<std::int16_t>(sr + sez - se);

  update(y, kWiTable[i] << 5, kFiTable[i], dq, sr, dqsez, state);
  return static_cast<std::uint8_t>(i);
}

std::int16_t g726_32_decode_sample(std::uint8_t code, G726State& state) {
  const int i = code & 0x0F;
  const int sezi = static_cast<std::int16_t>(predictor_zero(state));
  const int sez = sezi >> 1;
  const int se = static_cast<std::int16_t>((sezi + predictor_pole(state)) >> 1);

  const int y = step_size(state);
  const int dq = static_cast<std::int16_t>(reconstruct(i & 8, kDqlnTable[i], y));
  const int sr = static_cast<std::int16_t>(dq < 0 ? se - (dq & 0x3FFF) : se + dq);
  const int dqsez = static_cast<std::int16_t>(sr - se + sez);

  update(y, kWiTable[i] << 5, kFiTable[i], dq, sr, dqsez, state);

  const int out = sr * 4;
  return static_cast<std::int16_t>(out > 32767 ? 32767 : out < -32768 ? -32768 : out);
}

EncodedFrame g726_32_encode(const PcmFrame& frame, G726State& state) {
  EncodedFrame out{CodecId::G726_32, Bytes(kG726FrameBytes), kG726FrameBytes * 8};
  for (std::size_t i = 0; i < kFrameSamples; i += 2) {
    const std::uint8_t lo = g726_32_encode_sample(frame[i], state);
    const std::uint8_t hi = g726_32_encode_sample(frame[i + 1], state);
    out.bytes[i / 2] = static_cast<std::uint8_t>(lo | (hi << 4));
  }
  return out;
}

PcmFrame g726_32_decode(const EncodedFrame& frame, G726State& state) {
  if (frame.bytes.size() != kG726FrameBytes) {
    throw Error(Errc::WrongLength,
                "G.726 frame of " + std::to_string(frame.bytes.size()) + " bytes, need 80");
  }
  PcmFrame out;
  for (std::size_t i = 0; i < kFrameSamples; i += 2) {
    const std::uint8_t byte = frame.bytes[i / 2];
    out[i] = g726_32_decode_sample(byte & 0x0F, state);
    out[i + 1] = g726_32_decode_sample(byte >> 4, state);
  }
  return out;
}

}  // namespace transteg
