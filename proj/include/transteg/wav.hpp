#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "transteg/bytes.hpp"

namespace transteg {

/// Canonical RIFF/WAVE, PCM 16-bit mono 8 kHz only. Anything else throws
/// Error(AudioLoadError) (or BadSampleRate for a wrong rate).
std::vector<std::int16_t> parse_wav(ByteView data);
std::vector<std::int16_t> load_wav(const std::filesystem::path& path);

Bytes serialize_wav(const std::vector<std::int16_t>& samples);
void save_wav(const std::filesystem::path& path, const std::vector<std::int16_t>& samples);

}  // namespace transteg
