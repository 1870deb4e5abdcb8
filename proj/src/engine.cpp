#include "transteg/engine.hpp"

#include <algorithm>
#include <string>

#include "transteg/alaw.hpp"
#include "transteg/error.hpp"
#include "transteg/lossless.hpp"
#include "transteg/planner.hpp"

namespace transteg {
namespace {

// Signaling byte value marking a covert frame that did not fit.
constexpr std::uint8_t kFallbackMarker = 0;

void require_feasible(const CodecPair& pair) {
  if (!feasible(pair.overt, pair.covert)) {
    throw Error(Errc::Infeasible, std::string(lookup(pair.covert).token) + " cannot hide under " +
                                      std::string(lookup(pair.overt).token));
  }
}

EncodedFrame overt_frame_from_payload(const RtpPacket& pkt, const CodecDescriptor& overt) {
  return EncodedFrame{overt.id, pkt.payload, static_cast<std::size_t>(overt.bits_per_frame)};
}

void check_packet(const RtpPacket& pkt, const CodecDescriptor& overt) {
  if (pkt.payload_type != overt.rtp_payload_type) {
    throw Error(Errc::PtMismatch, "PT " + std::to_string(pkt.payload_type) + ", expected " +
                                      std::to_string(overt.rtp_payload_type));
  }
  if (pkt.payload.size() != static_cast<std::size_t>(overt.frame_bytes())) {
    throw Error(Errc::WrongPayloadLength,
                std::to_string(pkt.payload.size()) + " bytes, expected " +
                    std::to_string(overt.frame_bytes()));
  }
}

PcmFrame decode_covert(const EncodedFrame& covert, StreamState& state) {
  // Fallback frames arrive as plain A-law.
  if (covert.codec_id == CodecId::G711 && state.covert().id != CodecId::G711) {
    return alaw_decode(covert);
  }
  try {
    return state.covert_codec().decode(covert);
  } catch (const Error& e) {
    if (e.code() == Errc::CorruptFrame || e.code() == Errc::WrongLength) {
      throw Error(Errc::CorruptCovertFrame, e.what());
    }
    throw;
  }
}

}  // namespace

PayloadLayout make_layout(const CodecPair& pair, std::size_t covert_bit_length) {
  require_feasible(pair);
  const CodecDescriptor& overt = lookup(pair.overt);
  const CodecDescriptor& covert = lookup(pair.covert);
  PayloadLayout layout;
  layout.total_len = static_cast<std::size_t>(overt.frame_bytes());
  layout.signaling = covert.variable_rate;
  layout.covert_len = (covert_bit_length + 7) / 8;
  layout.steg_offset = layout.covert_len + (layout.signaling ? 1 : 0);
  if (layout.steg_offset > layout.total_len) {
    throw Error(Errc::Overflow, "covert frame of " + std::to_string(layout.covert_len) +
                                    " bytes does not fit a " + std::to_string(layout.total_len) +
                                    "-byte payload");
  }
  layout.steg_capacity = layout.total_len - layout.steg_offset;
  return layout;
}

std::size_t per_packet_capacity(const CodecPair& pair) {
  const CodecDescriptor& covert = lookup(pair.covert);
  if (covert.variable_rate) {
    require_feasible(pair);
    throw Error(Errc::Infeasible, "variable-rate capacity needs a concrete frame");
  }
  return make_layout(pair, static_cast<std::size_t>(covert.bits_per_frame)).steg_capacity;
}

std::size_t per_packet_capacity(const CodecPair& pair, const EncodedFrame& covert) {
  return make_layout(pair, covert.bit_length).steg_capacity;
}

Bytes StegBitstream::pop(std::size_t n) {
  n = std::min(n, queue_.size());
  Bytes out(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(n));
  queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

Bytes StegBitstream::drain() { return pop(queue_.size()); }

StreamState::StreamState(Role role, CodecPair pair, Placement placement)
    : role_(role), pair_(pair), placement_(placement), overt_(pair.overt), covert_(pair.covert) {
  require_feasible(pair);
}

Bytes pack_layout(const EncodedFrame& covert, ByteView steg, std::size_t total_len) {
  const bool signaling = lookup(covert.codec_id).variable_rate;
  const std::size_t covert_len = covert.byte_length();
  const std::size_t offset = covert_len + (signaling ? 1 : 0);
  if (offset > total_len) {
    throw Error(Errc::Overflow, "covert frame of " + std::to_string(covert_len) +
                                    " bytes exceeds " + std::to_string(total_len) + "-byte payload");
  }
  if (steg.size() > total_len - offset) {
    throw Error(Errc::Overflow, std::to_string(steg.size()) + " steg bytes, capacity " +
                                    std::to_string(total_len - offset));
  }
  Bytes out(total_len, 0);
  auto it = out.begin();
  if (signaling) *it++ = static_cast<std::uint8_t>(covert_len);
  it = std::copy_n(covert.bytes.begin(), std::min(covert_len, covert.bytes.size()), it);
  std::copy(steg.begin(), steg.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
  return out;
}

Unpacked unpack_layout(ByteView payload, const CodecPair& pair) {
  const CodecDescriptor& overt = lookup(pair.overt);
  const CodecDescriptor& covert = lookup(pair.covert);
  const std::size_t total_len = static_cast<std::size_t>(overt.frame_bytes());
  if (payload.size() != total_len) {
    throw Error(Errc::WrongPayloadLength, std::to_string(payload.size()) + " bytes, expected " +
                                              std::to_string(total_len));
  }
  Unpacked out;
  std::size_t offset = 0;
  if (covert.variable_rate) {
    const std::size_t len = payload[0];
    if (len == kFallbackMarker) {
      // Raw A-law minus the final byte, which is repeated.
      Bytes alaw(payload.begin() + 1, payload.end());
      if (overt.id != CodecId::G711 || alaw.size() + 1 != kFrameSamples) {
        throw Error(Errc::CorruptCovertFrame, "fallback frame under non-G.711 carrier");
      }
      alaw.push_back(alaw.back());
      out.covert = EncodedFrame{CodecId::G711, std::move(alaw), kFrameSamples * 8};
      return out;
    }
    if (len > total_len - 1) {
      throw Error(Errc::CorruptCovertFrame, "signaling byte " + std::to_string(len) +
                                                " exceeds " + std::to_string(total_len - 1));
    }
    out.covert = EncodedFrame{covert.id, Bytes(payload.begin() + 1, payload.begin() + 1 + len),
                              len * 8};
    offset = 1 + len;
  } else {
    const std::size_t len = static_cast<std::size_t>(covert.frame_bytes());
    if (len > total_len) throw Error(Errc::CorruptCovertFrame, "covert frame larger than payload");
    out.covert = EncodedFrame{covert.id, Bytes(payload.begin(), payload.begin() + len),
                              static_cast<std::size_t>(covert.bits_per_frame)};
    offset = len;
  }
  out.steg.assign(payload.begin() + static_cast<std::ptrdiff_t>(offset), payload.end());
  return out;
}

RtpPacket ss_transform(const RtpPacket& pkt, StreamState& state, StegBitstream& steg) {
  if (state.role() != Role::Sender) throw Error(Errc::PtMismatch, "stream is not a sender");
  check_packet(pkt, state.overt());
  const PcmFrame pcm = state.overt_codec().decode(overt_frame_from_payload(pkt, state.overt()));
  return ss_embed(pkt, state.covert_codec().encode(pcm), state, steg);
}

RtpPacket ss_embed(const RtpPacket& pkt, const EncodedFrame& covert, StreamState& state,
                   StegBitstream& steg) {
  check_packet(pkt, state.overt());
  RtpPacket out = pkt;
  const std::size_t total_len = pkt.payload.size();
  const std::size_t offset = covert.byte_length() + (state.covert().variable_rate ? 1 : 0);
  if (state.covert().variable_rate && offset > total_len) {
    // Incompressible frame: keep the voice, give up this packet's capacity.
    const Bytes alaw = lossless_decode(covert);
    out.payload.assign(total_len, 0);
    out.payload[0] = kFallbackMarker;
    std::copy_n(alaw.begin(), total_len - 1, out.payload.begin() + 1);
    ++state.fallback_frames;
    ++state.packets;
    return out;
  }
  const PayloadLayout layout = make_layout(state.pair(), covert.bit_length);
  const Bytes hidden = steg.pop(layout.steg_capacity);
  out.payload = pack_layout(covert, hidden, total_len);
  ++state.packets;
  state.steg_bits_moved += hidden.size() * 8;
  return out;
}

SrResult sr_transform(const RtpPacket& pkt, StreamState& state, StegBitstream& sink) {
  SrExtract ex = sr_extract(pkt, state, sink);
  RtpPacket out = pkt;
  out.payload = state.overt_codec().encode(ex.pcm).bytes;
  return {std::move(out), std::move(ex.extracted)};
}

SrExtract sr_extract(const RtpPacket& pkt, StreamState& state, StegBitstream& sink) {
  if (state.role() != Role::Receiver) throw Error(Errc::PtMismatch, "stream is not a receiver");
  check_packet(pkt, state.overt());
  Unpacked parts = unpack_layout(pkt.payload, state.pair());
  SrExtract out{decode_covert(parts.covert, state), std::move(parts.steg)};
  sink.push(out.extracted);
  ++state.packets;
  state.steg_bits_moved += out.extracted.size() * 8;
  return out;
}

}  // namespace transteg
