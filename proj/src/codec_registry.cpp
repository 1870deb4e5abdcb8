#include "transteg/codec_registry.hpp"

#include <algorithm>
#include <string>

#include "transteg/error.hpp"

namespace transteg {
namespace {

constexpr CodecDescriptor fixed(CodecId id, std::string_view token, std::string_view name,
                                int bps, CodecFamily family, std::uint8_t pt) {
  return {id, token, name, bps, kFrameMs, bps * kFrameMs / 1000, family, false, pt};
}

constexpr std::array<CodecDescriptor, kCodecCount> kRegistry = {{
    fixed(CodecId::G711, "g711", "G.711 A-law", 64000, CodecFamily::Waveform, 8),
    {CodecId::G711_0, "g711_0", "G.711.0 (lossless stand-in)", 0, kFrameMs, 0,
     CodecFamily::Lossless, true, 96},
    fixed(CodecId::G726_32, "g726", "G.726 32 kbps", 32000, CodecFamily::Waveform, 97),
    fixed(CodecId::SPEEX7, "speex7", "Speex(7)", 24600, CodecFamily::Celp, 98),
    fixed(CodecId::ILBC, "ilbc", "iLBC 20 ms", 15200, CodecFamily::Celp, 99),
    fixed(CodecId::GSM0610, "gsm0610", "GSM 06.10", 13000, CodecFamily::RpeLtp, 100),
    fixed(CodecId::AMR122, "amr122", "AMR 12.2", 12200, CodecFamily::Celp, 101),
    fixed(CodecId::SPEEX4, "speex4", "Speex(4)", 11000, CodecFamily::Celp, 102),
    fixed(CodecId::G729, "g729", "G.729A", 8000, CodecFamily::Celp, 103),
    fixed(CodecId::G7231, "g7231", "G.723.1 6.3 kbps", 6300, CodecFamily::Celp, 104),
    fixed(CodecId::SPEEX2, "speex2", "Speex(2)", 5950, CodecFamily::Celp, 105),
}};

static_assert(kRegistry[3].bits_per_frame == 492);
static_assert(kRegistry[10].bits_per_frame == 119);
static_assert(kRegistry[9].bits_per_frame == 126);

constexpr std::array<CodecId, 6> kOvert = {CodecId::G711,   CodecId::SPEEX7, CodecId::ILBC,
                                           CodecId::SPEEX4, CodecId::G7231,  CodecId::SPEEX2};

}  // namespace

std::span<const CodecDescriptor> registry() { return kRegistry; }

const CodecDescriptor& lookup(CodecId id) { return kRegistry[static_cast<std::size_t>(id)]; }

const CodecDescriptor& lookup(std::string_view token) {
  for (const auto& d : kRegistry) {
    if (d.token == token) return d;
  }
  // A few common aliases.
  if (token == "g726_32") return lookup(CodecId::G726_32);
  if (token == "amr") return lookup(CodecId::AMR122);
  if (token == "gsm") return lookup(CodecId::GSM0610);
  throw Error(Errc::UnknownCodec, "unknown codec '" + std::string(token) + "'");
}

const CodecDescriptor* find_by_payload_type(std::uint8_t pt) {
  auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                         [pt](const CodecDescriptor& d) { return d.rtp_payload_type == pt; });
  return it == kRegistry.end() ? nullptr : &*it;
}

std::span<const CodecId> overt_codecs() { return kOvert; }

std::string_view to_string(CodecFamily family) {
  switch (family) {
    case CodecFamily::Waveform: return "waveform";
    case CodecFamily::Celp: return "celp";
    case CodecFamily::RpeLtp: return "rpe_ltp";
    case CodecFamily::Lossless: return "lossless";
  }
  return "?";
}

}  // namespace transteg
