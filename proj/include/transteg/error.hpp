#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace transteg {

enum class Errc {
  TooShort,
  BadVersion,
  BadPadding,
  FieldOverflow,
  LengthChanged,
  BadMagic,
  Truncated,
  NotIpv4Udp,
  WrongLength,
  CorruptFrame,
  BudgetTooSmall,
  UnknownCodec,
  Infeasible,
  PtMismatch,
  WrongPayloadLength,
  CorruptCovertFrame,
  Overflow,
  MissingCost,
  BadLedger,
  BadRatio,
  BadSampleRate,
  LengthMismatch,
  AudioLoadError,
  IoError,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception type for every recoverable failure in the library. The code is
/// what callers branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace transteg
