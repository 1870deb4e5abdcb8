#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "transteg/codec_registry.hpp"
#include "transteg/engine.hpp"
#include "transteg/error.hpp"
#include "transteg/harness.hpp"
#include "transteg/inet.hpp"
#include "transteg/pcap.hpp"
#include "transteg/planner.hpp"

namespace transteg::cli {
namespace {

// Keeps the steganogram stream independent of the audio stream for one seed.
constexpr std::uint64_t kStegSeedSalt = 0x9E3779B97F4A7C15ULL;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::UnknownCodec:
    case Errc::Infeasible:
    case Errc::BadLedger:
    case Errc::MissingCost:
    case Errc::BadRatio:
    case Errc::FieldOverflow:
    case Errc::BadMagic:
    case Errc::Truncated:
      return kExitUsage;
    case Errc::AudioLoadError:
    case Errc::BadSampleRate:
    case Errc::IoError:
      return kExitIo;
    default:
      return kExitData;
  }
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

CodecPair parse_pair(const std::string& overt, const std::string& covert) {
  CodecPair pair{lookup(overt).id, lookup(covert).id};
  if (!feasible(pair.overt, pair.covert)) {
    throw Error(Errc::Infeasible, "pair " + overt + "/" + covert +
                                      " is infeasible: covert bitrate must be below the overt "
                                      "bitrate (variable-rate covert only under g711)");
  }
  return pair;
}

// --- plan ------------------------------------------------------------------

struct PlanArgs {
  std::string ledger;
  std::optional<double> lossless_kbps;
  std::string format = "table";
};

int cmd_plan(const PlanArgs& a, std::ostream& out) {
  CostLedger ledger;
  try {
    ledger = load_ledger(a.ledger.empty() ? default_ledger_path() : std::filesystem::path(a.ledger));
  } catch (const Error& e) {
    throw Error(Errc::BadLedger, e.what());
  }
  std::vector<PairEntry> matrix = build_matrix(a.lossless_kbps, &ledger);
  mark_recommended(matrix);
  out << (a.format == "csv" ? render_csv(matrix) : render_table(matrix));
  return kExitOk;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string scenario = "S4";
  std::string overt;
  std::string covert;
  std::string wav;
  std::uint64_t seed = 1;
  double duration = 60.0;
  double activity = kDefaultActivityRatio;
  std::size_t steg_length = 0;
  std::string out_csv;
  std::string out_pcap;
  bool sweep = false;
};

void print_metrics(std::ostream& out, const ScenarioConfig& cfg, const CallMetrics& m) {
  out << to_string(cfg.scenario) << ' ' << lookup(cfg.pair.overt).token << '/'
      << lookup(cfg.pair.covert).token << ": " << m.packets << " packets, "
      << m.steg_bytes_recovered << '/' << m.steg_bytes_embedded << " steg bytes, " << m.bit_errors
      << " bit errors, " << fixed3(m.achieved_steg_kbps) << " kbps, " << m.transcode_count
      << " transcodings, segSNR "
      << (m.segmental_snr_db ? fixed3(*m.segmental_snr_db) + " dB" : std::string("n/a"));
  if (m.fallback_frames) out << ", " << m.fallback_frames << " fallback frames";
  out << '\n';
}

std::vector<CallMetrics> run_all(const std::vector<ScenarioConfig>& configs) {
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<CallMetrics> results(configs.size());
  for (std::size_t start = 0; start < configs.size(); start += workers) {
    std::vector<std::future<CallMetrics>> batch;
    const std::size_t end = std::min(configs.size(), start + workers);
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async,
                                 [&cfg = configs[i]] { return run_scenario(cfg).metrics; }));
    }
    for (std::size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
  }
  return results;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  ScenarioConfig base;
  base.scenario = parse_scenario(a.scenario);
  if (!a.wav.empty()) base.wav_path = a.wav;
  base.audio_seed = a.seed;
  base.steg_seed = a.seed ^ kStegSeedSalt;
  base.steg_length = a.steg_length;
  base.duration_s = a.duration;
  base.activity_ratio = a.activity;

  std::vector<ScenarioConfig> configs;
  if (a.sweep) {
    for (const PairEntry& e : build_matrix(std::nullopt)) {
      if (!e.feasible) continue;
      ScenarioConfig cfg = base;
      cfg.pair = {e.overt_id, e.covert_id};
      configs.push_back(cfg);
    }
  } else {
    if (a.overt.empty() || a.covert.empty()) {
      err << "simulate: --overt and --covert are required unless --sweep is given\n";
      return kExitUsage;
    }
    base.pair = parse_pair(a.overt, a.covert);
    base.record_trace = !a.out_pcap.empty();
    configs.push_back(base);
  }

  std::vector<CallMetrics> metrics;
  if (a.sweep) {
    metrics = run_all(configs);
  } else {
    ScenarioResult r = run_scenario(configs.front());
    if (!a.out_pcap.empty()) {
      std::vector<NetworkPacket> packets;
      packets.reserve(r.trace.size());
      for (const auto& t : r.trace) packets.push_back({t.envelope_after, t.rtp_after});
      export_pcap(packets, a.out_pcap);
    }
    metrics.push_back(r.metrics);
  }

  std::string csv = metrics_csv_header();
  bool errors = false;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    print_metrics(out, configs[i], metrics[i]);
    csv += metrics_csv_row(configs[i], metrics[i]);
    errors = errors || metrics[i].bit_errors != 0;
  }
  if (!a.out_csv.empty()) {
    write_file(a.out_csv, ByteView(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
  }
  if (errors) {
    err << "simulate: hidden data arrived with bit errors\n";
    return kExitData;
  }
  return kExitOk;
}

// --- embed / extract -------------------------------------------------------

struct PcapArgs {
  std::string in;
  std::string out;
  std::string overt;
  std::string covert;
  std::string steg;
};

// Captures of the first SSRC seen carrying the overt payload type.
std::vector<const RtpCapture*> select_flow(const RtpScan& scan, const CodecDescriptor& overt) {
  std::vector<const RtpCapture*> flow;
  std::optional<std::uint32_t> ssrc;
  for (const auto& c : scan.packets) {
    if (c.rtp.payload_type != overt.rtp_payload_type) continue;
    if (!ssrc) ssrc = c.rtp.ssrc;
    if (c.rtp.ssrc == *ssrc) flow.push_back(&c);
  }
  if (flow.empty()) {
    throw Error(Errc::Infeasible, "no RTP flow with PT=" + std::to_string(overt.rtp_payload_type));
  }
  return flow;
}

int cmd_embed(const PcapArgs& a, std::ostream& out, std::ostream& err) {
  const CodecPair pair = parse_pair(a.overt, a.covert);
  const Bytes steg = read_file(a.steg);
  PcapFile file = load_pcap(a.in);
  const RtpScan scan = scan_rtp(file);
  const auto flow = select_flow(scan, lookup(pair.overt));

  StreamState state(Role::Sender, pair);
  StegBitstream queue(steg);
  for (const RtpCapture* c : flow) {
    const RtpPacket rewritten = ss_transform(c->rtp, state, queue);
    const Bytes udp_payload = serialize_rtp(rewritten);
    const Ipv4UdpEnvelope env = adjust_checksums(c->envelope, udp_payload);
    // Patch in place so every byte outside the UDP payload and checksum survives.
    Bytes& frame = file.records[c->index].captured_bytes;
    const std::size_t udp_at = kEthernetHeaderSize + env.ip_header_size();
    store_be16(frame.data() + udp_at + 6, env.udp_checksum);
    std::copy(udp_payload.begin(), udp_payload.end(), frame.begin() + udp_at + kUdpHeaderSize);
  }
  save_pcap(a.out, file);

  const std::size_t embedded = steg.size() - queue.size();
  out << "embedded " << embedded << " of " << steg.size() << " bytes into " << flow.size()
      << " packets (SSRC=0x" << std::hex << flow.front()->rtp.ssrc << std::dec << ")\n";
  if (!queue.empty()) {
    err << "embed: capacity exceeded, " << queue.size() << " bytes truncated\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_extract(const PcapArgs& a, std::ostream& out) {
  const CodecPair pair = parse_pair(a.overt, a.covert);
  const RtpScan scan = read_pcap(a.in);
  const auto flow = select_flow(scan, lookup(pair.overt));

  StreamState state(Role::Receiver, pair);
  StegBitstream sink;
  for (const RtpCapture* c : flow) sr_extract(c->rtp, state, sink);
  const Bytes data = sink.drain();
  write_file(a.out, data);
  out << "extracted " << data.size() << " bytes from " << flow.size() << " packets\n";
  return kExitOk;
}

// --- inspect ---------------------------------------------------------------

struct FlowStats {
  std::uint32_t ssrc = 0;
  std::uint8_t pt = 0;
  std::size_t packets = 0;
  std::size_t min_payload = SIZE_MAX;
  std::size_t max_payload = 0;
  std::vector<double> arrivals;
};

std::string infer_codec(const FlowStats& f) {
  const CodecDescriptor* d = find_by_payload_type(f.pt);
  if (!d) return "unknown codec";
  if (d->variable_rate || (f.min_payload == f.max_payload &&
                           f.min_payload == static_cast<std::size_t>(d->frame_bytes()))) {
    return std::string(d->display_name);
  }
  return std::string(d->display_name) + "? (expected " + std::to_string(d->frame_bytes()) + " B)";
}

int cmd_inspect(const std::string& in, std::ostream& out) {
  const RtpScan scan = read_pcap(in);
  std::vector<FlowStats> flows;
  std::map<std::uint32_t, std::size_t> by_ssrc;
  for (const auto& c : scan.packets) {
    auto [it, fresh] = by_ssrc.try_emplace(c.rtp.ssrc, flows.size());
    if (fresh) flows.push_back({c.rtp.ssrc, c.rtp.payload_type});
    FlowStats& f = flows[it->second];
    ++f.packets;
    f.min_payload = std::min(f.min_payload, c.rtp.payload.size());
    f.max_payload = std::max(f.max_payload, c.rtp.payload.size());
    f.arrivals.push_back(c.record.ts_sec + c.record.ts_usec / 1e6);
  }

  out << flows.size() << (flows.size() == 1 ? " flow" : " flows");
  if (scan.skipped) out << " (" << scan.skipped << " non-RTP records skipped)";
  out << '\n';
  for (const auto& f : flows) {
    char ssrc[16];
    std::snprintf(ssrc, sizeof ssrc, "0x%08X", f.ssrc);
    out << "SSRC=" << ssrc << " PT=" << int(f.pt) << ", ";
    if (f.min_payload == f.max_payload) {
      out << f.min_payload << " B payload";
    } else {
      out << f.min_payload << '-' << f.max_payload << " B payload";
    }
    out << ", " << infer_codec(f) << ", " << f.packets << " packets";
    if (f.arrivals.size() > 1) {
      double lo = 1e300, hi = -1e300, sum = 0;
      for (std::size_t i = 1; i < f.arrivals.size(); ++i) {
        const double gap = (f.arrivals[i] - f.arrivals[i - 1]) * 1000.0;
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
        sum += gap;
      }
      out << ", inter-arrival ms mean " << fixed3(sum / (f.arrivals.size() - 1)) << " min "
          << fixed3(lo) << " max " << fixed3(hi);
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"TranSteg toolkit: plan, simulate and apply transcoding steganography"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Print the overt/covert bandwidth and cost matrix");
  plan_cmd->add_option("--ledger", plan.ledger, "Cost ledger file (default: $TRANSTEG_LEDGER or bundled)");
  plan_cmd->add_option("--lossless-kbps", plan.lossless_kbps, "Measured mean rate of the lossless codec");
  plan_cmd->add_option("--format", plan.format)->check(CLI::IsMember({"table", "csv"}));

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a simulated call through a scenario");
  sim_cmd->add_option("--scenario", sim.scenario, "S1..S4");
  sim_cmd->add_option("--overt", sim.overt, "Overt codec token");
  sim_cmd->add_option("--covert", sim.covert, "Covert codec token");
  sim_cmd->add_option("--wav", sim.wav, "8 kHz mono 16-bit WAV input");
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--duration", sim.duration, "Seconds of synthetic audio")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--activity", sim.activity, "Voice activity ratio")->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--steg-length", sim.steg_length, "Steganogram bytes (0 fills the channel)");
  sim_cmd->add_option("--out-csv", sim.out_csv);
  sim_cmd->add_option("--out-pcap", sim.out_pcap);
  sim_cmd->add_flag("--sweep", sim.sweep, "Run every feasible pair");

  PcapArgs emb;
  auto* emb_cmd = app.add_subcommand("embed", "Hide a file in an RTP flow of a pcap");
  emb_cmd->add_option("--in", emb.in)->required();
  emb_cmd->add_option("--out", emb.out)->required();
  emb_cmd->add_option("--overt", emb.overt)->required();
  emb_cmd->add_option("--covert", emb.covert)->required();
  emb_cmd->add_option("--steg", emb.steg)->required();

  PcapArgs ext;
  auto* ext_cmd = app.add_subcommand("extract", "Recover hidden data from an RTP flow of a pcap");
  ext_cmd->add_option("--in", ext.in)->required();
  ext_cmd->add_option("--out", ext.out)->required();
  ext_cmd->add_option("--overt", ext.overt)->required();
  ext_cmd->add_option("--covert", ext.covert)->required();

  std::string inspect_in;
  auto* ins_cmd = app.add_subcommand("inspect", "List RTP flows in a pcap");
  ins_cmd->add_option("--in", inspect_in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (plan_cmd->parsed()) return cmd_plan(plan, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
    if (emb_cmd->parsed()) return cmd_embed(emb, out, err);
    if (ext_cmd->parsed()) return cmd_extract(ext, out);
    if (ins_cmd->parsed()) return cmd_inspect(inspect_in, out);
  } catch (const Error& e) {
    err << name << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace transteg::cli
