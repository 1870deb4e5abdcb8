#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transteg/codec_registry.hpp"

namespace transteg {

/// Signaling overhead of a variable-rate covert codec: one byte per 20 ms.
inline constexpr double kSignalingKbps = 8.0 * kPacketsPerSecond / 1000.0;

enum class CostClass { Class0, Class1, Class2, Unacceptable, Unknown };

std::string_view to_string(CostClass c);

struct LedgerCell {
  double cost_mos = 0.0;
  double cost_ci_mos = 0.0;
  double overall_mos = 0.0;
};

struct BaselineQuality {
  double single_transcode_mos = 0.0;
  double double_transcode_mos = 0.0;
};

/// Reference voice-quality measurements (MOS) for codec pairs, read from a
/// text ledger. Read-only once loaded.
struct CostLedger {
  std::map<std::pair<CodecId, CodecId>, LedgerCell> pairs;
  std::map<CodecId, BaselineQuality> baselines;
  /// Reference mean bitrate of the lossless covert codec.
  std::optional<double> lossless_reference_kbps;

  const LedgerCell* find(CodecId overt, CodecId covert) const;
};

/// Parse ledger text. Throws Error(BadLedger) with the offending line.
CostLedger parse_ledger(std::string_view text);
CostLedger load_ledger(const std::filesystem::path& path);
/// Path from $TRANSTEG_LEDGER, else the ledger shipped with the sources.
std::filesystem::path default_ledger_path();

struct PairEntry {
  CodecId overt_id = CodecId::G711;
  CodecId covert_id = CodecId::G711;
  bool feasible = false;
  double steg_bandwidth_kbps = 0.0;
  /// Byte-aligned engine view; for the variable-rate codec this is derived
  /// from the mean rate.
  int per_packet_capacity_bytes = 0;
  std::optional<double> cost_mos;
  std::optional<double> cost_ci_mos;
  std::optional<double> overall_quality_mos;
  CostClass cost_class = CostClass::Unknown;
  bool recommended = false;
};

/// True iff the covert codec needs strictly fewer bits than the overt one.
/// A variable-rate covert codec is only feasible under G.711.
bool feasible(CodecId overt, CodecId covert);
/// Throws Infeasible.
double steg_bandwidth_kbps(CodecId overt, CodecId covert,
                           std::optional<double> measured_lossless_kbps = std::nullopt);

/// Every registry codec as covert against every overt codec, in table order
/// (covert rows outer, overt columns inner). Costs and classes are joined
/// from the ledger when one is given.
std::vector<PairEntry> build_matrix(std::optional<double> measured_lossless_kbps,
                                    const CostLedger* ledger = nullptr);

/// Throws Error(MissingCost) when the entry has no cost.
CostClass classify(const PairEntry& entry);

/// Recommended configurations: acceptable classes only, carriers with poor
/// overall quality excluded, and within each (overt, class) group only
/// entries no other entry beats on both bandwidth and cost.
std::vector<PairEntry> recommend(const std::vector<PairEntry>& matrix);

/// Runs recommend() and sets the `recommended` flag on the matrix in place.
void mark_recommended(std::vector<PairEntry>& matrix);

std::string render_csv(const std::vector<PairEntry>& matrix);
/// Aligned text table: covert codecs down, overt codecs across.
std::string render_table(const std::vector<PairEntry>& matrix);

}  // namespace transteg
