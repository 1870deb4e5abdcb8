#include "transteg/wav.hpp"

#include <cstring>
#include <string>

#include "transteg/codec_registry.hpp"
#include "transteg/error.hpp"
#include "transteg/pcap.hpp"

namespace transteg {
namespace {

std::uint16_t le16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }
std::uint32_t le32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}
void put16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put32(Bytes& out, std::uint32_t v) {
  put16(out, static_cast<std::uint16_t>(v));
  put16(out, static_cast<std::uint16_t>(v >> 16));
}

}  // namespace

std::vector<std::int16_t> parse_wav(ByteView data) {
  if (data.size() < 12 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
      std::memcmp(data.data() + 8, "WAVE", 4) != 0) {
    throw Error(Errc::AudioLoadError, "not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const std::uint8_t* chunk = data.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > data.size() - body) throw Error(Errc::AudioLoadError, "truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw Error(Errc::AudioLoadError, "short fmt chunk");
      const std::uint8_t* f = data.data() + body;
      const std::uint16_t format = le16(f);
      const std::uint16_t channels = le16(f + 2);
      const std::uint32_t rate = le32(f + 4);
      const std::uint16_t bits = le16(f + 14);
      if (format != 1 || channels != 1 || bits != 16) {
        throw Error(Errc::AudioLoadError, "need PCM 16-bit mono");
      }
      if (rate != static_cast<std::uint32_t>(kSampleRate)) {
        throw Error(Errc::BadSampleRate, std::to_string(rate) + " Hz, need 8000");
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw Error(Errc::AudioLoadError, "data chunk before fmt chunk");
      std::vector<std::int16_t> samples(size / 2);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = static_cast<std::int16_t>(le16(data.data() + body + 2 * i));
      }
      return samples;
    }
    pos = body + size + (size & 1);
  }
  throw Error(Errc::AudioLoadError, "no data chunk");
}

std::vector<std::int16_t> load_wav(const std::filesystem::path& path) {
  Bytes raw;
  try {
    raw = read_file(path);
  } catch (const Error& e) {
    throw Error(Errc::AudioLoadError, e.what());
  }
  return parse_wav(raw);
}

Bytes serialize_wav(const std::vector<std::int16_t>& samples) {
  const auto data_size = static_cast<std::uint32_t>(samples.size() * 2);
  Bytes out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, kSampleRate);
  put32(out, kSampleRate * 2);
  put16(out, 2);
  put16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, data_size);
  for (auto s : samples) put16(out, static_cast<std::uint16_t>(s));
  return out;
}

void save_wav(const std::filesystem::path& path, const std::vector<std::int16_t>& samples) {
  write_file(path, serialize_wav(samples));
}

}  // namespace transteg
