#pragma once

#include "transteg/frames.hpp"
#include "transteg/g726.hpp"

namespace transteg {

/// Per-stream coder for any registry codec, PCM in and PCM out. G.726 keeps
/// separate encoder and decoder state; everything else is stateless. The
/// lossless stand-in encodes PCM as A-law and then compresses it.
class Codec {
 public:
  explicit Codec(CodecId id);

  const CodecDescriptor& descriptor() const { return *desc_; }

  EncodedFrame encode(const PcmFrame& pcm);
  PcmFrame decode(const EncodedFrame& frame);
  void reset();

 private:
  const CodecDescriptor* desc_;
  G726State enc_state_;
  G726State dec_state_;
};

}  // namespace transteg
