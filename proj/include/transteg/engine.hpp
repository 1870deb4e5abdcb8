#pragma once

#include <cstdint>
#include <deque>

#include "transteg/codec.hpp"
#include "transteg/frames.hpp"
#include "transteg/rtp.hpp"

namespace transteg {

struct CodecPair {
  CodecId overt;
  CodecId covert;

  friend bool operator==(const CodecPair&, const CodecPair&) = default;
};

/// Split of one RTP payload: [signaling byte?][covert frame][steganogram].
struct PayloadLayout {
  std::size_t total_len = 0;
  bool signaling = false;
  std::size_t covert_len = 0;
  std::size_t steg_offset = 0;
  std::size_t steg_capacity = 0;

  friend bool operator==(const PayloadLayout&, const PayloadLayout&) = default;
};

/// Where hidden bytes go inside the payload. Only tail placement exists.
enum class Placement { Tail };

enum class Role { Sender, Receiver };

/// Layout for a covert frame of the given bit length. Throws Infeasible for
/// pairs the planner rejects and Overflow if the frame does not fit.
PayloadLayout make_layout(const CodecPair& pair, std::size_t covert_bit_length);

/// Per-packet steganogram capacity in bytes for a fixed-rate covert codec.
std::size_t per_packet_capacity(const CodecPair& pair);
/// Same, for a concrete covert frame (needed for the variable-rate codec).
std::size_t per_packet_capacity(const CodecPair& pair, const EncodedFrame& covert);

/// FIFO of hidden bytes waiting to be embedded (sender) or recovered
/// (receiver).
class StegBitstream {
 public:
  StegBitstream() = default;
  explicit StegBitstream(ByteView initial) { push(initial); }

  void push(ByteView bytes) { queue_.insert(queue_.end(), bytes.begin(), bytes.end()); }
  /// Up to n bytes from the front; fewer if the queue runs dry.
  Bytes pop(std::size_t n);
  Bytes drain();
  std::size_t size() const { return queue_.size(); }
  bool empty() const { return queue_.empty(); }

 private:
  std::deque<std::uint8_t> queue_;
};

/// Everything one SS or SR node keeps for a single RTP flow.
class StreamState {
 public:
  /// Throws Infeasible when the pair cannot carry hidden data.
  StreamState(Role role, CodecPair pair, Placement placement = Placement::Tail);

  Role role() const { return role_; }
  const CodecPair& pair() const { return pair_; }
  Placement placement() const { return placement_; }
  const CodecDescriptor& overt() const { return overt_.descriptor(); }
  const CodecDescriptor& covert() const { return covert_.descriptor(); }

  Codec& overt_codec() { return overt_; }
  Codec& covert_codec() { return covert_; }

  std::uint64_t packets = 0;
  std::uint64_t steg_bits_moved = 0;
  /// Variable-rate covert frames too large for the payload (see ss_embed).
  std::uint64_t fallback_frames = 0;

 private:
  Role role_;
  CodecPair pair_;
  Placement placement_;
  Codec overt_;
  Codec covert_;
};

/// Payload bytes for a covert frame plus steganogram; steg shorter than the
/// capacity is zero-filled. Signaling is implied by the covert codec.
/// Throws Overflow when covert or steg bytes do not fit.
Bytes pack_layout(const EncodedFrame& covert, ByteView steg, std::size_t total_len);

struct Unpacked {
  EncodedFrame covert;
  Bytes steg;
};

/// Inverse of pack_layout. Throws WrongPayloadLength or CorruptCovertFrame.
Unpacked unpack_layout(ByteView payload, const CodecPair& pair);

/// SS: transcode the overt payload to the covert codec and fill the freed
/// space from `steg`. The RTP header is left untouched.
/// Throws PtMismatch / WrongPayloadLength; the caller forwards such packets.
RtpPacket ss_transform(const RtpPacket& pkt, StreamState& state, StegBitstream& steg);

/// SS with the covert frame already produced (sender co-located with the
/// caller). If a variable-rate frame is too large, the signaling byte is 0
/// and the payload carries the first total_len - 1 A-law bytes instead.
RtpPacket ss_embed(const RtpPacket& pkt, const EncodedFrame& covert, StreamState& state,
                   StegBitstream& steg);

struct SrResult {
  RtpPacket packet;
  Bytes extracted;
};

/// SR: pull the steganogram out, decode the covert frame and re-encode it
/// with the overt codec. Extracted bytes are also appended to `sink`.
SrResult sr_transform(const RtpPacket& pkt, StreamState& state, StegBitstream& sink);

struct SrExtract {
  PcmFrame pcm;
  Bytes extracted;
};

/// SR co-located with the callee: extract and decode the covert frame
/// straight to PCM, no overt re-encode.
SrExtract sr_extract(const RtpPacket& pkt, StreamState& state, StegBitstream& sink);

}  // namespace transteg
