#include "transteg/codec.hpp"

#include "transteg/alaw.hpp"
#include "transteg/lossless.hpp"
#include "transteg/surrogate.hpp"

namespace transteg {

Codec::Codec(CodecId id) : desc_(&lookup(id)) {}

void Codec::reset() {
  enc_state_ = G726State{};
  dec_state_ = G726State{};
}

EncodedFrame Codec::encode(const PcmFrame& pcm) {
  switch (desc_->id) {
    case CodecId::G711:
      return alaw_encode(pcm);
    case CodecId::G711_0:
      return lossless_encode(alaw_encode(pcm).bytes);
    case CodecId::G726_32:
      return g726_32_encode(pcm, enc_state_);
    default:
      return surrogate_encode(pcm, *desc_);
  }
}

PcmFrame Codec::decode(const EncodedFrame& frame) {
  switch (desc_->id) {
    case CodecId::G711:
      return alaw_decode(frame);
    case CodecId::G711_0:
      return alaw_decode(EncodedFrame{CodecId::G711, lossless_decode(frame), kFrameSamples * 8});
    case CodecId::G726_32:
      return g726_32_decode(frame, dec_state_);
    default:
      return surrogate_decode(frame, *desc_);
  }
}

}  // namespace transteg
