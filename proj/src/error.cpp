#include "transteg/error.hpp"

namespace transteg {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::TooShort: return "TooShort";
    case Errc::BadVersion: return "BadVersion";
    case Errc::BadPadding: return "BadPadding";
    case Errc::FieldOverflow: return "FieldOverflow";
    case Errc::LengthChanged: return "LengthChanged";
    case Errc::BadMagic: return "BadMagic";
    case Errc::Truncated: return "Truncated";
    case Errc::NotIpv4Udp: return "NotIpv4Udp";
    case Errc::WrongLength: return "WrongLength";
    case Errc::CorruptFrame: return "CorruptFrame";
    case Errc::BudgetTooSmall: return "BudgetTooSmall";
    case Errc::UnknownCodec: return "UnknownCodec";
    case Errc::Infeasible: return "Infeasible";
    case Errc::PtMismatch: return "PtMismatch";
    case Errc::WrongPayloadLength: return "WrongPayloadLength";
    case Errc::CorruptCovertFrame: return "CorruptCovertFrame";
    case Errc::Overflow: return "Overflow";
    case Errc::MissingCost: return "MissingCost";
    case Errc::BadLedger: return "BadLedger";
    case Errc::BadRatio: return "BadRatio";
    case Errc::BadSampleRate: return "BadSampleRate";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::AudioLoadError: return "AudioLoadError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace transteg
