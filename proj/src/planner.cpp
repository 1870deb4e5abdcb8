#include "transteg/planner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "transteg/error.hpp"
#include "transteg/pcap.hpp"

namespace transteg {
namespace {

constexpr double kClass0Below = 0.1;
constexpr double kClass1UpTo = 0.5;
constexpr double kClass2UpTo = 1.0;
constexpr double kMinOverallMos = 3.0;

std::string format_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// Two decimals with trailing zeros stripped: 32 / 39.4 / 58.05.
std::string format_kbps(double v) {
  std::string s = format_number(v, 2);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double parse_real(const std::string& text, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) {
    throw Error(Errc::BadLedger, "line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

CodecId parse_codec(const std::string& token, int line_no) {
  try {
    return lookup(token).id;
  } catch (const Error&) {
    throw Error(Errc::BadLedger,
                "line " + std::to_string(line_no) + ": unknown codec '" + token + "'");
  }
}

bool overt_has_poor_quality(CodecId overt, const std::vector<PairEntry>& matrix) {
  for (const auto& e : matrix) {
    if (e.overt_id == overt && e.overall_quality_mos && *e.overall_quality_mos < kMinOverallMos) {
      return true;
    }
  }
  return false;
}

bool eligible(const PairEntry& e, const std::vector<PairEntry>& matrix) {
  const bool acceptable = e.cost_class == CostClass::Class0 ||
                          e.cost_class == CostClass::Class1 || e.cost_class == CostClass::Class2;
  return e.feasible && acceptable && e.cost_mos && !overt_has_poor_quality(e.overt_id, matrix);
}

bool dominates(const PairEntry& b, const PairEntry& a) {
  if (b.overt_id != a.overt_id || b.cost_class != a.cost_class) return false;
  const bool no_worse = b.steg_bandwidth_kbps >= a.steg_bandwidth_kbps && *b.cost_mos <= *a.cost_mos;
  const bool better = b.steg_bandwidth_kbps > a.steg_bandwidth_kbps || *b.cost_mos < *a.cost_mos;
  return no_worse && better;
}

}  // namespace

std::string_view to_string(CostClass c) {
  switch (c) {
    case CostClass::Class0: return "Class0";
    case CostClass::Class1: return "Class1";
    case CostClass::Class2: return "Class2";
    case CostClass::Unacceptable: return "Unacceptable";
    case CostClass::Unknown: return "Unknown";
  }
  return "?";
}

const LedgerCell* CostLedger::find(CodecId overt, CodecId covert) const {
  auto it = pairs.find({overt, covert});
  return it == pairs.end() ? nullptr : &it->second;
}

CostLedger parse_ledger(std::string_view text) {
  CostLedger ledger;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto eq = tokens[i].find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(Errc::BadLedger,
                    "line " + std::to_string(line_no) + ": expected key=value, got '" + tokens[i] + "'");
      }
      kv[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
    auto need = [&](const char* key) -> const std::string& {
      auto it = kv.find(key);
      if (it == kv.end()) {
        throw Error(Errc::BadLedger, "line " + std::to_string(line_no) + ": missing '" + key + "'");
      }
      return it->second;
    };

    const std::string& kind = tokens[0];
    if (kind == "pair") {
      const CodecId overt = parse_codec(need("overt"), line_no);
      const CodecId covert = parse_codec(need("covert"), line_no);
      LedgerCell cell{parse_real(need("cost"), line_no), parse_real(need("ci"), line_no),
                      parse_real(need("overall"), line_no)};
      if (!ledger.pairs.emplace(std::pair{overt, covert}, cell).second) {
        throw Error(Errc::BadLedger, "line " + std::to_string(line_no) + ": duplicate pair");
      }
    } else if (kind == "baseline") {
      const CodecId codec = parse_codec(need("codec"), line_no);
      ledger.baselines[codec] = {parse_real(need("single"), line_no),
                                 parse_real(need("double"), line_no)};
    } else if (kind == "reference") {
      ledger.lossless_reference_kbps = parse_real(need("lossless_kbps"), line_no);
    } else {
      throw Error(Errc::BadLedger, "line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
    }
  }
  if (ledger.pairs.empty()) throw Error(Errc::BadLedger, "ledger has no pair records");
  return ledger;
}

CostLedger load_ledger(const std::filesystem::path& path) {
  Bytes raw;
  try {
    raw = read_file(path);
  } catch (const Error& e) {
    throw Error(Errc::BadLedger, e.what());
  }
  return parse_ledger(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

std::filesystem::path default_ledger_path() {
  if (const char* env = std::getenv("TRANSTEG_LEDGER"); env && *env) return env;
  return TRANSTEG_DEFAULT_LEDGER;
}

bool feasible(CodecId overt_id, CodecId covert_id) {
  const CodecDescriptor& overt = lookup(overt_id);
  const CodecDescriptor& covert = lookup(covert_id);
  if (overt.variable_rate) return false;
  if (covert.variable_rate) return overt.id == CodecId::G711;
  return covert.nominal_bitrate_bps < overt.nominal_bitrate_bps;
}

double steg_bandwidth_kbps(CodecId overt, CodecId covert, std::optional<double> measured) {
  if (!feasible(overt, covert)) {
    throw Error(Errc::Infeasible, std::string(lookup(covert).token) + " under " +
                                      std::string(lookup(overt).token));
  }
  const CodecDescriptor& o = lookup(overt);
  const CodecDescriptor& c = lookup(covert);
  if (c.variable_rate) {
    if (!measured) throw Error(Errc::Infeasible, "variable-rate covert codec needs a measured rate");
    return o.nominal_kbps() - *measured - kSignalingKbps;
  }
  return (o.nominal_bitrate_bps - c.nominal_bitrate_bps) / 1000.0;
}

std::vector<PairEntry> build_matrix(std::optional<double> measured, const CostLedger* ledger) {
  if (!measured && ledger) measured = ledger->lossless_reference_kbps;
  std::vector<PairEntry> matrix;
  matrix.reserve(kCodecCount * overt_codecs().size());
  for (const auto& covert : registry()) {
    for (CodecId overt : overt_codecs()) {
      PairEntry e;
      e.overt_id = overt;
      e.covert_id = covert.id;
      e.feasible = feasible(overt, covert.id);
      if (e.feasible) {
        if (covert.variable_rate) {
          if (measured) {
            e.steg_bandwidth_kbps = steg_bandwidth_kbps(overt, covert.id, measured);
            e.per_packet_capacity_bytes = static_cast<int>(
                std::floor(e.steg_bandwidth_kbps * 1000.0 / 8.0 / kPacketsPerSecond));
          } else {
            e.steg_bandwidth_kbps = std::nan("");
          }
        } else {
          e.steg_bandwidth_kbps = steg_bandwidth_kbps(overt, covert.id);
          const CodecDescriptor& o = lookup(overt);
          e.per_packet_capacity_bytes = o.frame_bytes() - covert.frame_bytes();
        }
        if (const LedgerCell* cell = ledger ? ledger->find(overt, covert.id) : nullptr) {
          e.cost_mos = cell->cost_mos;
          e.cost_ci_mos = cell->cost_ci_mos;
          e.overall_quality_mos = cell->overall_mos;
          e.cost_class = classify(e);
        }
      }
      matrix.push_back(e);
    }
  }
  return matrix;
}

CostClass classify(const PairEntry& entry) {
  if (!entry.cost_mos) {
    throw Error(Errc::MissingCost, std::string(lookup(entry.overt_id).token) + "/" +
                                       std::string(lookup(entry.covert_id).token));
  }
  const double cost = *entry.cost_mos;
  if (cost > kClass2UpTo) return CostClass::Unacceptable;
  if (entry.overall_quality_mos && *entry.overall_quality_mos < kMinOverallMos) {
    return CostClass::Unacceptable;
  }
  if (cost < kClass0Below) return CostClass::Class0;
  if (cost <= kClass1UpTo) return CostClass::Class1;
  return CostClass::Class2;
}

std::vector<PairEntry> recommend(const std::vector<PairEntry>& matrix) {
  std::vector<PairEntry> out;
  for (const auto& a : matrix) {
    if (!eligible(a, matrix)) continue;
    bool dominated = false;
    for (const auto& b : matrix) {
      if (&a != &b && eligible(b, matrix) && dominates(b, a)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      out.push_back(a);
      out.back().recommended = true;
    }
  }
  return out;
}

void mark_recommended(std::vector<PairEntry>& matrix) {
  const auto rec = recommend(matrix);
  std::set<std::pair<CodecId, CodecId>> keys;
  for (const auto& e : rec) keys.insert({e.overt_id, e.covert_id});
  for (auto& e : matrix) e.recommended = keys.count({e.overt_id, e.covert_id}) > 0;
}

std::string render_csv(const std::vector<PairEntry>& matrix) {
  std::string out =
      "overt,covert,steg_bandwidth_kbps,per_packet_capacity_bytes,cost_mos,cost_ci_mos,"
      "overall_quality_mos,class,recommended\n";
  for (const auto& e : matrix) {
    if (!e.feasible) continue;
    out += lookup(e.overt_id).token;
    out += ',';
    out += lookup(e.covert_id).token;
    out += ',';
    out += std::isnan(e.steg_bandwidth_kbps) ? "" : format_kbps(e.steg_bandwidth_kbps);
    out += ',' + std::to_string(e.per_packet_capacity_bytes) + ',';
    out += e.cost_mos ? format_number(*e.cost_mos, 2) : "";
    out += ',';
    out += e.cost_ci_mos ? format_number(*e.cost_ci_mos, 3) : "";
    out += ',';
    out += e.overall_quality_mos ? format_number(*e.overall_quality_mos, 2) : "";
    out += ',';
    out += to_string(e.cost_class);
    out += e.recommended ? ",yes\n" : ",no\n";
  }
  return out;
}

std::string render_table(const std::vector<PairEntry>& matrix) {
  constexpr int kCell = 14;
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-10s %8s |", "covert", "kbps");
  out += buf;
  for (CodecId overt : overt_codecs()) {
    std::snprintf(buf, sizeof buf, " %*s", kCell, std::string(lookup(overt).token).c_str());
    out += buf;
  }
  out += '\n';
  out += std::string(20, '-') + '+' + std::string((kCell + 1) * overt_codecs().size(), '-') + '\n';

  auto cls_tag = [](CostClass c) -> std::string {
    switch (c) {
      case CostClass::Class0: return "C0";
      case CostClass::Class1: return "C1";
      case CostClass::Class2: return "C2";
      case CostClass::Unacceptable: return "X";
      case CostClass::Unknown: return "";
    }
    return "";
  };

  std::size_t i = 0;
  for (const auto& covert : registry()) {
    const std::string rate =
        covert.variable_rate ? std::string("var") : format_kbps(covert.nominal_kbps());
    std::snprintf(buf, sizeof buf, "%-10s %8s |", std::string(covert.token).c_str(), rate.c_str());
    out += buf;
    for (std::size_t col = 0; col < overt_codecs().size(); ++col, ++i) {
      const PairEntry& e = matrix.at(i);
      std::string cell = "--";
      if (e.feasible) {
        cell = std::isnan(e.steg_bandwidth_kbps) ? "?" : format_kbps(e.steg_bandwidth_kbps);
        if (covert.variable_rate) cell += "*";
        if (const auto tag = cls_tag(e.cost_class); !tag.empty()) cell += " " + tag;
        if (e.recommended) cell += " R";
      }
      std::snprintf(buf, sizeof buf, " %*s", kCell, cell.c_str());
      out += buf;
    }
    out += '\n';
  }
  out += "\n-- infeasible   * measured variable rate   C0/C1/C2 cost class   X unacceptable   "
         "R recommended\n";
  return out;
}

}  // namespace transteg
