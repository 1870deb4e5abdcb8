#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "transteg/audio.hpp"
#include "transteg/harness.hpp"
#include "transteg/pcap.hpp"
#include "transteg/wav.hpp"

using namespace transteg;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "transteg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("transteg_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  const Bytes b = read_file(path);
  return std::string(b.begin(), b.end());
}

// A capture of one G.711 call leg plus optional extra flow and non-RTP noise.
std::string make_capture(const std::string& name, std::size_t packets, bool extras) {
  const auto pcm = speech_shaped_noise(synth_activity(packets / 50.0, 0.7, 12), 12);
  const auto rtp = packetize_pcm(pcm, lookup(CodecId::G711), 0x1111, 100, 0, 8000);
  std::vector<NetworkPacket> net;
  for (std::size_t i = 0; i < rtp.size(); ++i) {
    const Bytes payload = serialize_rtp(rtp[i]);
    net.push_back({make_udp_envelope(kCallerAddr, kRtpPort, kCalleeAddr, kRtpPort, payload,
                                     static_cast<std::uint16_t>(i)),
                   rtp[i]});
    if (extras && i % 10 == 0) {
      RtpPacket other = rtp[i];
      other.ssrc = 0x2222;
      other.payload_type = 103;
      other.payload.resize(20);
      const Bytes p2 = serialize_rtp(other);
      net.push_back({make_udp_envelope(kCalleeAddr, 6000, kCallerAddr, 6000, p2, 1), other});
    }
  }
  PcapFile file = make_pcap(net);
  if (extras) {
    PcapRecord arp;
    arp.captured_bytes.assign(42, 0);
    arp.captured_bytes[12] = 0x08;
    arp.captured_bytes[13] = 0x06;
    arp.original_length = 42;
    file.records.insert(file.records.begin() + 3, arp);
  }
  const std::string path = temp(name);
  save_pcap(path, file);
  return path;
}

}  // namespace

TEST(Cli, PlanCsv) {
  const Outcome r = run_cli({"plan", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 28);
  EXPECT_NE(r.out.find("g711,g729,56,140,0.74,0.066,3.72,Class2,"), std::string::npos) << r.out;
}

TEST(Cli, PlanTableWithMeasuredRate) {
  const Outcome r = run_cli({"plan", "--lossless-kbps", "31.11"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("32.49*"), std::string::npos);
  const Outcome other = run_cli({"plan", "--lossless-kbps", "30"});
  EXPECT_NE(other.out.find("33.6*"), std::string::npos) << other.out;
}

TEST(Cli, PlanBadLedger) {
  const std::string path = temp("bad_ledger.txt");
  write_file(path, Bytes{'x', 'y', '\n'});
  EXPECT_EQ(run_cli({"plan", "--ledger", path}).code, 2);
  EXPECT_EQ(run_cli({"plan", "--ledger", temp("missing_ledger.txt")}).code, 2);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"plan", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"simulate", "--overt", "g711"}).code, 2);
}

TEST(Cli, SimulateSpotValue) {
  const std::string csv = temp("sim.csv");
  const Outcome r = run_cli({"simulate", "--scenario", "S4", "--overt", "g711", "--covert", "g726",
                             "--duration", "60", "--seed", "1", "--out-csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("32.000 kbps"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(" 0 bit errors"), std::string::npos);
  const std::string first = slurp(csv);
  ASSERT_EQ(run_cli({"simulate", "--scenario", "S4", "--overt", "g711", "--covert", "g726",
                     "--duration", "60", "--seed", "1", "--out-csv", csv})
                .code,
            0);
  EXPECT_EQ(slurp(csv), first);
  EXPECT_NE(first.find("S4,g711,g726,3000,240000,240000,0,32.000,3,"), std::string::npos);
}

TEST(Cli, SimulateInfeasible) {
  const Outcome r = run_cli({"simulate", "--overt", "speex2", "--covert", "amr"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("infeasible"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"simulate", "--overt", "g711", "--covert", "opus"}).code, 2);
}

TEST(Cli, SimulateAudioErrors) {
  EXPECT_EQ(run_cli({"simulate", "--overt", "g711", "--covert", "g726", "--wav", temp("none.wav")}).code, 4);
  const std::string wav = temp("bad.wav");
  write_file(wav, Bytes(50, 7));
  EXPECT_EQ(run_cli({"simulate", "--overt", "g711", "--covert", "g726", "--wav", wav}).code, 4);
}

TEST(Cli, SimulateWavAndPcap) {
  const std::string wav = temp("call.wav");
  save_wav(wav, speech_shaped_noise(synth_activity(2.0, 0.5, 3), 3));
  const std::string pcap = temp("sim.pcap");
  const Outcome r = run_cli({"simulate", "--scenario", "S1", "--overt", "speex7", "--covert",
                             "g7231", "--wav", wav, "--out-pcap", pcap});
  ASSERT_EQ(r.code, 0) << r.err;
  const RtpScan scan = read_pcap(pcap);
  EXPECT_EQ(scan.packets.size(), 100u);
  EXPECT_EQ(scan.packets[0].rtp.payload.size(), 62u);
}

TEST(Cli, SweepDeterministicOrder) {
  const std::string a = temp("sweep_a.csv"), b = temp("sweep_b.csv");
  ASSERT_EQ(run_cli({"simulate", "--sweep", "--scenario", "S2", "--duration", "1", "--out-csv", a}).code, 0);
  ASSERT_EQ(run_cli({"simulate", "--sweep", "--scenario", "S2", "--duration", "1", "--out-csv", b}).code, 0);
  const std::string csv = slurp(a);
  EXPECT_EQ(csv, slurp(b));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 28);
  EXPECT_EQ(csv.find("S2,g711,g711_0,"), csv.find('\n') + 1);
}

TEST(Cli, EmbedExtractRoundTrip) {
  const std::string in = make_capture("rt_in.pcap", 200, true);
  const std::string steg = temp("steg.bin"), out = temp("rt_out.pcap"), got = temp("got.bin");
  const Bytes secret = random_bytes(8, 10000);
  write_file(steg, secret);

  const Outcome e = run_cli({"embed", "--in", in, "--out", out, "--overt", "g711", "--covert",
                             "g726", "--steg", steg});
  ASSERT_EQ(e.code, 0) << e.err;
  const Outcome x = run_cli({"extract", "--in", out, "--out", got, "--overt", "g711", "--covert", "g726"});
  ASSERT_EQ(x.code, 0) << x.err;

  const Bytes data = read_file(got);
  ASSERT_EQ(data.size(), 16000u);
  EXPECT_EQ(Bytes(data.begin(), data.begin() + 10000), secret);
  EXPECT_TRUE(std::all_of(data.begin() + 10000, data.end(), [](auto b) { return b == 0; }));

  // Same records, same sizes; only the target flow's payload and UDP checksum moved.
  const PcapFile before = load_pcap(in), after = load_pcap(out);
  ASSERT_EQ(before.records.size(), after.records.size());
  const RtpScan scan_before = scan_rtp(before), scan_after = scan_rtp(after);
  ASSERT_EQ(scan_before.packets.size(), scan_after.packets.size());
  for (std::size_t i = 0; i < before.records.size(); ++i) {
    const auto& a = before.records[i];
    const auto& b = after.records[i];
    ASSERT_EQ(a.captured_bytes.size(), b.captured_bytes.size());
    EXPECT_EQ(a.ts_sec, b.ts_sec);
    EXPECT_EQ(a.ts_usec, b.ts_usec);
  }
  for (std::size_t i = 0; i < scan_before.packets.size(); ++i) {
    const auto& a = scan_before.packets[i];
    const auto& b = scan_after.packets[i];
    EXPECT_TRUE(same_rtp_header(a.rtp, b.rtp));
    const Bytes& fb = after.records[b.index].captured_bytes;
    const Bytes& fa = before.records[a.index].captured_bytes;
    EXPECT_TRUE(std::equal(fa.begin(), fa.begin() + 14 + 20 + 6, fb.begin()));
    EXPECT_EQ(oracle::udp_frame_sum(fb), 0xFFFF);
    if (a.rtp.ssrc != 0x1111) EXPECT_EQ(fa, fb);
  }
}

TEST(Cli, EmbedCapacityExceeded) {
  const std::string in = make_capture("small.pcap", 10, false);
  const std::string steg = temp("big.bin"), out = temp("small_out.pcap");
  write_file(steg, random_bytes(2, 1000));
  const Outcome r = run_cli({"embed", "--in", in, "--out", out, "--overt", "g711", "--covert",
                             "g726", "--steg", steg});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("200 bytes truncated"), std::string::npos) << r.err;
  EXPECT_TRUE(std::filesystem::exists(out));
}

TEST(Cli, EmbedNoFlow) {
  const std::string empty = temp("empty.pcap");
  save_pcap(empty, PcapFile{});
  const std::string steg = temp("s.bin");
  write_file(steg, Bytes(5, 1));
  EXPECT_EQ(run_cli({"embed", "--in", empty, "--out", temp("o.pcap"), "--overt", "g711",
                     "--covert", "g726", "--steg", steg})
                .code,
            2);
  const std::string in = make_capture("noflow.pcap", 5, false);
  EXPECT_EQ(run_cli({"extract", "--in", in, "--out", temp("o.bin"), "--overt", "speex7",
                     "--covert", "g729"})
                .code,
            2);
}

TEST(Cli, Inspect) {
  const Outcome one = run_cli({"inspect", "--in", make_capture("one.pcap", 50, false)});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out.rfind("1 flow\n", 0), 0u) << one.out;
  EXPECT_NE(one.out.find("PT=8, 160 B payload, G.711 A-law, 50 packets"), std::string::npos);
  EXPECT_NE(one.out.find("mean 20.000"), std::string::npos);

  const Outcome mixed = run_cli({"inspect", "--in", make_capture("mixed.pcap", 50, true)});
  ASSERT_EQ(mixed.code, 0);
  EXPECT_EQ(mixed.out.rfind("2 flows (1 non-RTP records skipped)\n", 0), 0u) << mixed.out;
  EXPECT_NE(mixed.out.find("SSRC=0x00002222 PT=103, 20 B payload, G.729A"), std::string::npos);

  const std::string empty = temp("inspect_empty.pcap");
  save_pcap(empty, PcapFile{});
  const Outcome none = run_cli({"inspect", "--in", empty});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(none.out, "0 flows\n");

  const std::string junk = temp("junk.pcap");
  write_file(junk, Bytes(30, 0x42));
  EXPECT_EQ(run_cli({"inspect", "--in", junk}).code, 2);
}
