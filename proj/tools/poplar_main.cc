// Copyright 2026 The Poplar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: servers, clients, the simulator and the DP budget
// calculator.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "poplar/dp.h"
#include "poplar/net/client.h"
#include "poplar/net/protocol.h"
#include "poplar/net/server.h"
#include "poplar/net/simulator.h"
#include "poplar/random.h"
#include "poplar/submission.h"

namespace {

using poplar::BitString;
namespace net = poplar::net;

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return absl::OkStatus();
  }
  std::ofstream out(path);
  out << text << "\n";
  if (!out) return absl::InternalError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status << "\n";
  return 1;
}

// Server flags; each one set on the command line overrides the config file.
struct ServerFlags {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  bool resume = false;

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "flat key = value config file");
    auto opt = [&](const char* flag, const char* key, const char* help) {
      app->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { overrides[key] = v; }, help);
    };
    opt("--role", "role", "0 or 1");
    opt("--listen", "listen", "host:port for uploads (and the peer, for role 1)");
    opt("--peer", "peer", "peer server host:port (role 0 dials it)");
    opt("--bits", "bits", "input length n");
    opt("--tau", "tau", "threshold fraction");
    opt("--threshold", "threshold", "absolute threshold t");
    opt("--dp-epsilon", "dp_epsilon", "per-query Laplace epsilon; enables DP");
    opt("--abort-fraction", "abort_fraction", "abort above this disqualified fraction");
    opt("--expected-clients", "expected_clients", "stop ingest after this many uploads");
    opt("--spool", "spool", "append-only upload spool");
    opt("--out", "output", "JSON report path ('-' for stdout)");
    opt("--timeout-ms", "timeout_ms", "peer and I/O timeout");
    opt("--candidates", "candidates", "histogram candidate file, one hex string per line");
    app->add_flag("--resume", resume, "aggregate the uploads already in the spool");
  }

  absl::StatusOr<net::ServerOptions> Build(std::optional<std::string> forced_mode,
                                           std::string* output) const {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) {
      auto text = ReadFile(config_path);
      if (!text.ok()) return text.status();
      auto parsed = net::ParseKeyValues(*text);
      if (!parsed.ok()) return parsed.status();
      kv = *std::move(parsed);
    }
    for (const auto& [k, v] : overrides) kv[k] = v;
    if (forced_mode) kv["mode"] = *forced_mode;

    auto config = net::RunConfig::FromKeyValues(kv);
    if (!config.ok()) return config.status();
    net::ServerOptions o;
    o.config = *std::move(config);
    if (o.config.mode == net::RunConfig::Mode::kHistogram) {
      if (!kv.count("candidates")) return absl::InvalidArgumentError("histogram needs candidates");
      auto text = ReadFile(kv["candidates"]);
      if (!text.ok()) return text.status();
      auto candidates = net::ParseCandidates(*text, o.config.bits);
      if (!candidates.ok()) return candidates.status();
      o.config.candidates = *std::move(candidates);
    }
    auto number = [&](const char* key, auto* out) -> absl::Status {
      auto it = kv.find(key);
      if (it == kv.end()) return absl::OkStatus();
      if (!absl::SimpleAtoi(it->second, out)) {
        return absl::InvalidArgumentError(absl::StrCat("bad value for ", key));
      }
      return absl::OkStatus();
    };
    if (auto s = number("role", &o.role); !s.ok()) return s;
    if (auto s = number("expected_clients", &o.expected_clients); !s.ok()) return s;
    int64_t timeout_ms = 0;
    if (auto s = number("timeout_ms", &timeout_ms); !s.ok()) return s;
    if (timeout_ms > 0) o.timeout = std::chrono::milliseconds(timeout_ms);
    if (kv.count("listen")) o.listen = kv["listen"];
    if (kv.count("peer")) o.peer = kv["peer"];
    if (kv.count("spool")) o.spool_path = kv["spool"];
    *output = kv.count("output") ? kv["output"] : "-";
    o.resume = resume;
    return o;
  }
};

int RunServerCommand(const ServerFlags& flags, std::optional<std::string> mode) {
  std::string output;
  auto options = flags.Build(mode, &output);
  if (!options.ok()) return Fail(options.status());
  options->on_listening = [&](uint16_t port) {
    std::cerr << "server " << options->role << " listening on port " << port << "\n";
  };
  auto report = net::RunServer(*options);
  if (!report.ok()) return Fail(report.status());
  auto written = WriteOutput(output, report->ToJson());
  return written.ok() ? 0 : Fail(written);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-server private heavy hitters"};
  app.require_subcommand(1);

  ServerFlags server_flags;
  auto* server = app.add_subcommand("server", "run one aggregation server");
  server_flags.Register(server);

  ServerFlags histogram_flags;
  auto* histogram = app.add_subcommand("histogram", "run a server in subset-histogram mode");
  histogram_flags.Register(histogram);

  std::string server0, server1, mode = "heavy", inputs_file;
  std::vector<std::string> inputs;
  int client_bits = 0;
  bool send_finish = false;
  uint64_t client_seed = 0;
  auto* client = app.add_subcommand("client", "encode inputs and upload them to both servers");
  client->add_option("--server0", server0)->required();
  client->add_option("--server1", server1)->required();
  client->add_option("--input", inputs, "hex input string (repeatable)");
  client->add_option("--inputs-file", inputs_file, "file of hex inputs, one per line");
  client->add_option("--bits", client_bits, "input length (default: 4 bits per hex digit)");
  client->add_option("--mode", mode, "heavy or histogram")
      ->check(CLI::IsMember({"heavy", "histogram"}));
  client->add_flag("--finish", send_finish, "tell both servers to stop ingesting afterwards");
  client->add_option("--seed", client_seed, "deterministic encoding seed (testing only)");

  net::SimulationConfig sim;
  std::optional<uint64_t> sim_threshold;
  std::optional<double> sim_epsilon;
  std::string sim_out = "-", sim_csv;
  auto* simulate = app.add_subcommand("simulate", "in-process multi-client simulation");
  simulate->add_option("--clients", sim.clients);
  simulate->add_option("--bits", sim.bits);
  simulate->add_option("--zipf-s", sim.zipf_s);
  simulate->add_option("--support", sim.support);
  simulate->add_option("--tau", sim.tau);
  simulate->add_option("--threshold", sim_threshold);
  simulate->add_option("--dp-epsilon", sim_epsilon);
  simulate->add_option("--dp-delta", sim.dp_delta);
  simulate->add_option("--abort-fraction", sim.abort_fraction);
  simulate->add_option("--malformed", sim.malformed, "clients with corrupted pp");
  simulate->add_option("--seed", sim.seed);
  simulate->add_flag("--timing", sim.timing, "include wall-clock phase timings");
  simulate->add_option("--out", sim_out, "JSON report path ('-' for stdout)");
  simulate->add_option("--csv", sim_csv, "append a CSV row to this file");

  std::vector<double> budget_eps = {0.001};
  int budget_bits = 256;
  double budget_tau = 0.01, budget_delta = 0x1p-40, budget_kappa = 30, budget_slack = 0.05;
  auto* budget = app.add_subcommand("dp-budget", "DP budget table as CSV");
  budget->add_option("--epsilon", budget_eps, "per-query epsilon (repeatable)");
  budget->add_option("--bits", budget_bits);
  budget->add_option("--tau", budget_tau);
  budget->add_option("--delta", budget_delta, "composition delta'");
  budget->add_option("--kappa", budget_kappa, "noise tail parameter");
  budget->add_option("--slack", budget_slack, "allowed noise as a fraction of t");

  CLI11_PARSE(app, argc, argv);

  if (*server) return RunServerCommand(server_flags, std::nullopt);
  if (*histogram) return RunServerCommand(histogram_flags, "histogram");

  if (*client) {
    if (!inputs_file.empty()) {
      auto text = ReadFile(inputs_file);
      if (!text.ok()) return Fail(text.status());
      std::istringstream lines(*text);
      for (std::string line; std::getline(lines, line);) {
        if (!line.empty()) inputs.push_back(line);
      }
    }
    std::unique_ptr<poplar::RandomSource> rng;
    if (client_seed != 0) {
      rng = std::make_unique<poplar::DeterministicRandom>(client_seed);
    } else {
      rng = std::make_unique<poplar::SecureRandom>();
    }
    net::ClientOptions options;
    options.servers = {server0, server1};
    for (const std::string& hex : inputs) {
      const int bits = client_bits > 0 ? client_bits : static_cast<int>(4 * hex.size());
      auto input = BitString::FromHex(hex, bits);
      if (!input.ok()) return Fail(input.status());
      auto groups = mode == "heavy" ? poplar::HeavyGroups(bits) : poplar::HistogramGroups(bits);
      if (auto s = net::SubmitInput(options, *input, groups, *rng); !s.ok()) return Fail(s);
    }
    if (send_finish) {
      for (const auto& s : options.servers) {
        if (auto st = net::SendFinish(s, options.timeout); !st.ok()) return Fail(st);
      }
    }
    return 0;
  }

  if (*simulate) {
    sim.threshold = sim_threshold;
    if (sim_epsilon) sim.dp = {true, *sim_epsilon};
    auto report = net::Simulate(sim);
    if (!report.ok()) return Fail(report.status());
    if (!sim_csv.empty()) {
      const bool fresh = !std::filesystem::exists(sim_csv);
      std::ofstream csv(sim_csv, std::ios::app);
      if (fresh) csv << net::SimulationReport::CsvHeader() << "\n";
      csv << report->ToCsvRow() << "\n";
    }
    auto written = WriteOutput(sim_out, report->ToJson());
    return written.ok() ? 0 : Fail(written);
  }

  if (*budget) {
    // Prefix queries are bounded by n / tau.
    const auto queries = static_cast<uint64_t>(std::ceil(budget_bits / budget_tau));
    std::cout << "epsilon,bits,tau,delta,kappa,queries,composed_epsilon,noise_bound,min_clients\n";
    for (double eps : budget_eps) {
      std::cout << absl::StrCat(eps, ",", budget_bits, ",", budget_tau, ",", budget_delta, ",",
                                budget_kappa, ",", queries, ",",
                                poplar::dp::Compose(eps, queries, budget_delta), ",",
                                poplar::dp::NoiseBound(eps, budget_kappa), ",",
                                poplar::dp::MinClients(budget_tau, eps, budget_slack,
                                                       budget_kappa))
                << "\n";
    }
    return 0;
  }
  return 0;
}
