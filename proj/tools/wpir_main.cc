// Copyright 2026 The wpir-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: trade-off curves, exact optimization reports,
// optimality sweeps, criterion tables, monotonicity checks, protocol
// simulation, and exact leakage audits, as CSV or JSON. Output is
// byte-identical for identical arguments and seed.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpir/analytics.h"
#include "wpir/criteria.h"
#include "wpir/model.h"
#include "wpir/optimizer.h"
#include "wpir/protocol.h"
#include "wpir/transcript.h"

namespace {

using nlohmann::json;

std::string FormatDouble(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

wpir::Setting ParseSetting(const std::string& name) {
  if (name == "replicated") return wpir::Setting::kReplicated;
  if (name == "mds") return wpir::Setting::kMdsCoded;
  if (name == "tcolluding" || name == "colluding") {
    return wpir::Setting::kTColluding;
  }
  throw wpir::InvalidArgumentError("unknown setting: " + name);
}

wpir::Metric ParseMetric(const std::string& name) {
  if (name == "mil") return wpir::Metric::kMil;
  if (name == "maxl") return wpir::Metric::kMaxl;
  throw wpir::InvalidArgumentError("unknown metric: " + name);
}

std::vector<double> ParseProbList(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    values.push_back(std::stod(item));
  }
  return values;
}

// Inclusive start:stop:step grid; the endpoint is kept when it lands on the
// grid within rounding slack.
std::vector<double> ParseGrid(const std::string& text) {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  char sep1 = 0;
  char sep2 = 0;
  std::stringstream stream(text);
  if (!(stream >> start >> sep1 >> stop >> sep2 >> step) || sep1 != ':' ||
      sep2 != ':') {
    throw wpir::InvalidArgumentError("grid must be start:stop:step");
  }
  if (!(step > 0.0) || stop < start) {
    throw wpir::InvalidArgumentError("grid needs step > 0 and stop >= start");
  }
  const double count = (stop - start) / step;
  long long n = static_cast<long long>(count);
  if (std::abs(count - std::llround(count)) < 1e-6) n = std::llround(count);
  std::vector<double> grid;
  for (long long i = 0; i <= n; ++i) {
    grid.push_back(start + static_cast<double>(i) * step);
  }
  return grid;
}

uint64_t DefaultSeed() {
  const char* env = std::getenv("WPIR_SEED");
  if (env == nullptr) return 0;
  return std::strtoull(env, nullptr, 10);
}

void Emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw wpir::Error("cannot open output file " + out_path);
  }
  file.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

std::string SupportString(const std::vector<int>& support) {
  std::string text;
  for (size_t i = 0; i < support.size(); ++i) {
    if (i > 0) text += '|';
    text += std::to_string(support[i]);
  }
  return text;
}

struct SweepCheck {
  std::string name;
  wpir::Setting setting;
  wpir::Metric metric;
  bool coded;  // strength > 1 rows only
  double ratio_limit;
};

struct SweepOutcome {
  uint64_t instances = 0;
  uint64_t failures = 0;
  double max_gap = 0.0;
  std::string worst;
};

// Equality sweep between the exact optimum and the closed-form trade-off,
// restricted to the regime where two-point optimality is claimed.
SweepOutcome RunSweep(const SweepCheck& check, int n_max, int files_max,
                      int grid_points) {
  SweepOutcome outcome;
  for (int n = 2; n <= n_max; ++n) {
    const int s_lo = check.coded ? 2 : 1;
    const int s_hi = check.coded ? n - 1 : 1;
    for (int s = s_lo; s <= s_hi; ++s) {
      if (static_cast<double>(s) / n > check.ratio_limit) continue;
      for (int files = 3; files <= files_max; ++files) {
        const wpir::SchemeParams params =
            wpir::MakeParams(check.setting, n, s, files);
        const double cap = wpir::LeakageCap(params, check.metric);
        for (int i = 0; i < grid_points; ++i) {
          const double rho = cap * i / (grid_points - 1);
          const wpir::TheoremComparison comparison =
              wpir::CompareWithTheorem(params, check.metric, rho);
          bool support_ok = true;
          for (int index : comparison.lp_support) {
            if (index != 0 && index != files - 1) support_ok = false;
          }
          outcome.instances += 1;
          const bool ok = std::abs(comparison.gap) <= 1e-9 && support_ok;
          if (!ok) {
            outcome.failures += 1;
            if (comparison.gap > outcome.max_gap) {
              char buffer[160];
              std::snprintf(buffer, sizeof(buffer),
                            "n=%d s=%d files=%d rho=%s lp=%s closed=%s", n, s,
                            files, FormatDouble(rho).c_str(),
                            FormatDouble(comparison.lp_rate).c_str(),
                            FormatDouble(comparison.theorem_rate).c_str());
              outcome.worst = buffer;
            }
          }
          if (comparison.gap > outcome.max_gap) {
            outcome.max_gap = comparison.gap;
          }
        }
      }
    }
  }
  return outcome;
}

json ReportToJson(const wpir::MonotonicityReport& report) {
  json j;
  j["exponent"] = report.exponent;
  j["grid_points"] = report.grid_points;
  j["min_difference"] = report.min_difference;
  j["max_difference"] = report.max_difference;
  j["strictly_decreasing"] = report.strictly_decreasing;
  j["aux_at_anchor"] = report.aux_at_anchor;
  j["aux_slope_at_anchor"] = report.aux_slope_at_anchor;
  j["min_aux_curvature"] = report.min_aux_curvature;
  if (report.witness.has_value()) j["witness"] = *report.witness;
  return j;
}

int Main(int argc, char** argv) {
  CLI::App app{"weak private information retrieval laboratory"};
  app.require_subcommand(1);

  std::string setting_name = "replicated";
  std::string metric_name = "mil";
  std::string out_path;
  std::string format = "csv";
  int n_servers = 2;
  int strength = 1;
  int n_files = 2;
  double rho = 0.0;
  std::string rho_grid;
  std::string p_text;
  uint64_t trials = 10000;
  uint64_t seed = DefaultSeed();
  int threads = 1;

  auto add_params = [&](CLI::App* cmd, bool with_metric) {
    cmd->add_option("--setting", setting_name,
                    "replicated | mds | tcolluding");
    cmd->add_option("--n", n_servers, "number of servers")->required();
    cmd->add_option("--s", strength, "code dimension / collusion size");
    cmd->add_option("--files", n_files, "number of files")->required();
    if (with_metric) cmd->add_option("--metric", metric_name, "mil | maxl");
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };

  CLI::App* tradeoff = app.add_subcommand(
      "tradeoff", "closed-form vs exact-optimum trade-off curve");
  add_params(tradeoff, true);
  tradeoff->add_option("--rho", rho, "single leakage budget, bits");
  tradeoff->add_option("--rho-grid", rho_grid, "start:stop:step budgets");
  tradeoff->add_option("--format", format, "csv | json");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "exact rate maximization at one leakage budget");
  add_params(optimize, true);
  optimize->add_option("--rho", rho, "leakage budget, bits")->required();

  CLI::App* verify = app.add_subcommand(
      "verify-theorems", "two-point optimality sweeps across all settings");
  int sweep_n_max = 6;
  int sweep_files_max = 8;
  int sweep_grid = 25;
  verify->add_option("--n-max", sweep_n_max, "largest server count");
  verify->add_option("--files-max", sweep_files_max, "largest file count");
  verify->add_option("--grid-points", sweep_grid, "budgets per instance");
  verify->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* table1 = app.add_subcommand(
      "table1", "interior-gain criterion table g(m', M)");
  double table_ratio = 0.7828;
  table1->add_option("--q", table_ratio, "storage ratio (default 0.7828)");
  table1->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* lemmas = app.add_subcommand(
      "lemmas", "monotonicity and sign checks behind the thresholds");
  std::size_t lemma_grid_points = 1000;
  lemmas->add_option("--grid-points", lemma_grid_points, "grid resolution");
  lemmas->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "seeded Monte-Carlo protocol runs (replicated)");
  std::string dump_transcript;
  simulate->add_option("--n", n_servers, "number of servers")->required();
  simulate->add_option("--files", n_files, "number of files")->required();
  simulate->add_option("--p", p_text, "mixing distribution, comma separated")
      ->required();
  simulate->add_option("--trials", trials, "trial count");
  simulate->add_option("--seed", seed, "RNG seed (default: WPIR_SEED or 0)");
  simulate->add_option("--threads", threads, "worker threads");
  simulate->add_option("--dump-transcript", dump_transcript,
                       "write the transcript of trial 0 to this file");
  simulate->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* audit = app.add_subcommand(
      "audit", "exact leakage audit vs the closed-form expressions");
  std::string audit_mode = "class";
  std::string transcript_path;
  audit->add_option("--n", n_servers, "number of servers");
  audit->add_option("--files", n_files, "number of files");
  audit->add_option("--p", p_text, "mixing distribution, comma separated");
  audit->add_option("--mode", audit_mode, "class | full enumeration");
  audit->add_option("--transcript", transcript_path,
                    "verify a dumped transcript instead");
  audit->add_option("--out", out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (tradeoff->parsed()) {
    const wpir::SchemeParams params =
        wpir::MakeParams(ParseSetting(setting_name), n_servers, strength,
                         n_files);
    const wpir::Metric metric = ParseMetric(metric_name);
    std::vector<double> grid;
    if (!rho_grid.empty()) {
      grid = ParseGrid(rho_grid);
    } else {
      grid = {rho};
    }
    if (format == "csv") {
      std::string csv =
          "rho,theorem_rate,lp_rate,gap,support,within_threshold\n";
      for (double r : grid) {
        const wpir::TheoremComparison cmp =
            wpir::CompareWithTheorem(params, metric, r);
        csv += FormatDouble(r) + ',' + FormatDouble(cmp.theorem_rate) + ',' +
               FormatDouble(cmp.lp_rate) + ',' + FormatDouble(cmp.gap) + ',' +
               SupportString(cmp.lp_support) + ',' +
               (cmp.diagnostics.within_threshold ? "true" : "false") + '\n';
      }
      Emit(out_path, csv);
    } else if (format == "json") {
      json rows = json::array();
      for (double r : grid) {
        const wpir::TheoremComparison cmp =
            wpir::CompareWithTheorem(params, metric, r);
        json row;
        row["rho"] = r;
        row["theorem_rate"] = cmp.theorem_rate;
        row["lp_rate"] = cmp.lp_rate;
        row["gap"] = cmp.gap;
        row["support"] = cmp.lp_support;
        row["within_threshold"] = cmp.diagnostics.within_threshold;
        rows.push_back(row);
      }
      Emit(out_path, rows.dump(2) + "\n");
    } else {
      throw wpir::InvalidArgumentError("unknown format: " + format);
    }
    return 0;
  }

  if (optimize->parsed()) {
    const wpir::SchemeParams params =
        wpir::MakeParams(ParseSetting(setting_name), n_servers, strength,
                         n_files);
    const wpir::Metric metric = ParseMetric(metric_name);
    const wpir::LpSolution solution =
        wpir::SolveOptimal(params, metric, rho);
    const wpir::DiagnosticsReport diagnostics =
        wpir::DCoefficients(params, metric);
    json j;
    j["setting"] = wpir::ToString(params.setting);
    j["n"] = params.n_servers;
    j["s"] = params.strength;
    j["files"] = params.n_files;
    j["metric"] = wpir::ToString(metric);
    j["rho"] = rho;
    j["distribution"] = solution.distribution.probs;
    j["objective_value"] = solution.objective_value;
    j["rate"] = solution.rate;
    j["support"] = solution.support;
    j["constraint_tight"] = solution.constraint_tight;
    j["theorem_rate"] = wpir::TheoremRate(params, metric, rho);
    j["d_coefficients"] = diagnostics.d;
    j["within_threshold"] = diagnostics.within_threshold;
    j["positive_indices"] = diagnostics.positive_indices;
    Emit(out_path, j.dump(2) + "\n");
    return 0;
  }

  if (verify->parsed()) {
    const std::vector<SweepCheck> checks = {
        {"replicated-mil", wpir::Setting::kReplicated, wpir::Metric::kMil,
         false, 1.0},
        {"coded-mil", wpir::Setting::kMdsCoded, wpir::Metric::kMil, true,
         wpir::kMilRatioThreshold},
        {"colluding-mil", wpir::Setting::kTColluding, wpir::Metric::kMil, true,
         wpir::kMilRatioThreshold},
        {"replicated-maxl", wpir::Setting::kReplicated, wpir::Metric::kMaxl,
         false, 1.0},
        {"coded-maxl", wpir::Setting::kMdsCoded, wpir::Metric::kMaxl, true,
         wpir::kMaxlRatioThreshold},
        {"colluding-maxl", wpir::Setting::kTColluding, wpir::Metric::kMaxl,
         true, wpir::kMaxlRatioThreshold},
    };
    std::string text;
    bool all_ok = true;
    for (const SweepCheck& check : checks) {
      const SweepOutcome outcome =
          RunSweep(check, sweep_n_max, sweep_files_max, sweep_grid);
      const bool ok = outcome.failures == 0;
      all_ok = all_ok && ok;
      text += check.name + ": " + (ok ? "PASS" : "FAIL") + " (instances=" +
              std::to_string(outcome.instances) + ", failures=" +
              std::to_string(outcome.failures) + ", max_gap=" +
              FormatDouble(outcome.max_gap) + ")";
      if (!ok) text += " worst: " + outcome.worst;
      text += '\n';
    }
    Emit(out_path, text);
    return all_ok ? 0 : 1;
  }

  if (table1->parsed()) {
    const wpir::GainTable table = wpir::ComputeGainTable(table_ratio);
    std::string csv = "files,g1,g2,g3,g4,g5\n";
    for (int files = wpir::GainTable::kMinFiles;
         files <= wpir::GainTable::kMaxFiles; ++files) {
      csv += std::to_string(files);
      for (int m = 1; m <= wpir::GainTable::kMaxInterior; ++m) {
        const auto& cell =
            table.cells[files - wpir::GainTable::kMinFiles][m - 1];
        csv += ',';
        csv += cell.has_value() ? FormatDouble(*cell) : "na";
      }
      csv += '\n';
    }
    Emit(out_path, csv);
    return 0;
  }

  if (lemmas->parsed()) {
    const auto plain_grid = wpir::LinearGrid(1.0, 20.0, lemma_grid_points);
    const auto offset_grid = wpir::LinearGrid(6.0, 60.0, lemma_grid_points);
    const wpir::MonotonicityReport plain =
        wpir::CheckPlainRatio(wpir::kPlainRatioMinExponent, plain_grid);
    const wpir::MonotonicityReport offset =
        wpir::CheckOffsetRatio(wpir::kOffsetRatioMinExponent, offset_grid);

    bool signs_ok = true;
    json sweeps = json::array();
    for (int n = 2; n <= 5; ++n) {
      for (int files = 3; files <= 10; ++files) {
        const wpir::SignSweep sweep = wpir::ReplicatedMaxlGainSweep(n, files);
        signs_ok = signs_ok && sweep.all_negative &&
                   (files == 3 || sweep.strictly_decreasing);
        json item;
        item["n"] = n;
        item["files"] = files;
        item["all_negative"] = sweep.all_negative;
        item["strictly_decreasing"] = sweep.strictly_decreasing;
        sweeps.push_back(item);
      }
    }
    const wpir::TermRatioTable ratios =
        wpir::MaxlTermRatioTable(wpir::kMaxlMinInverseRatio, 7);

    json j;
    j["plain_ratio"] = ReportToJson(plain);
    j["offset_ratio"] = ReportToJson(offset);
    j["offset_aux_positive"] = offset.aux_at_anchor > 0.0;
    j["replicated_gain_sweeps"] = sweeps;
    json entries = json::array();
    for (const wpir::TermRatioEntry& entry : ratios.entries) {
      json item;
      item["files"] = entry.n_files;
      item["interior"] = entry.interior;
      item["value"] = entry.value;
      entries.push_back(item);
    }
    j["term_ratios"] = entries;
    j["term_ratios_above_one"] = ratios.all_above_one;
    const bool all_ok = plain.strictly_decreasing &&
                        offset.strictly_decreasing &&
                        offset.aux_at_anchor > 0.0 && signs_ok &&
                        ratios.all_above_one;
    j["all_verified"] = all_ok;
    Emit(out_path, j.dump(2) + "\n");
    return all_ok ? 0 : 1;
  }

  if (simulate->parsed()) {
    const wpir::SchemeParams params =
        wpir::MakeParams(wpir::Setting::kReplicated, n_servers, 1, n_files);
    const wpir::MixingDistribution p =
        wpir::MakeDistribution(ParseProbList(p_text));
    const wpir::EmpiricalStats stats =
        wpir::RunTrials(params, p, trials, seed, threads);
    if (!dump_transcript.empty()) {
      const wpir::FileLibrary library = wpir::BuildLibrary(params, seed);
      wpir::SplitMix64 rng(seed ^ 0);  // trial 0 stream
      const int theta =
          1 + static_cast<int>(rng.NextBelow(params.n_files));
      wpir::TranscriptFile file;
      file.params = params;
      file.library_seed = seed;
      file.transcript = wpir::RunOne(library, params, p, theta, rng);
      std::ofstream out(dump_transcript, std::ios::binary);
      if (!out) throw wpir::Error("cannot open " + dump_transcript);
      wpir::WriteTranscript(out, file);
    }
    json j;
    j["setting"] = "replicated";
    j["n"] = params.n_servers;
    j["files"] = params.n_files;
    j["p"] = p.probs;
    j["trials"] = stats.trials;
    j["seed"] = seed;
    j["mean_download"] = stats.mean_download;
    j["empirical_rate"] = stats.empirical_rate;
    j["analytic_rate"] = wpir::RetrievalRate(params, p);
    j["mprime_frequencies"] = stats.mprime_frequencies;
    j["decode_failures"] = stats.decode_failures;
    Emit(out_path, j.dump(2) + "\n");
    return stats.decode_failures == 0 ? 0 : 1;
  }

  if (audit->parsed()) {
    if (!transcript_path.empty()) {
      std::ifstream in(transcript_path, std::ios::binary);
      if (!in) throw wpir::Error("cannot open " + transcript_path);
      const wpir::TranscriptFile file = wpir::ReadTranscript(in);
      const wpir::TranscriptCheck check = wpir::VerifyTranscript(file);
      json j;
      j["n"] = file.params.n_servers;
      j["files"] = file.params.n_files;
      j["theta"] = file.transcript.draw.theta;
      j["m_prime"] = file.transcript.draw.m_prime;
      j["download"] = file.transcript.download;
      j["answers_match"] = check.answers_match;
      j["decoded_matches"] = check.decoded_matches;
      j["download_law_ok"] = check.download_law_ok;
      j["query_counts_ok"] = check.query_counts_ok;
      j["all_ok"] = check.AllOk();
      Emit(out_path, j.dump(2) + "\n");
      return check.AllOk() ? 0 : 1;
    }
    const wpir::SchemeParams params =
        wpir::MakeParams(wpir::Setting::kReplicated, n_servers, 1, n_files);
    const wpir::MixingDistribution p =
        wpir::MakeDistribution(ParseProbList(p_text));
    const wpir::AuditMode mode = audit_mode == "full"
                                     ? wpir::AuditMode::kFullEnumeration
                                     : wpir::AuditMode::kQueryClasses;
    const wpir::ExactStats stats = wpir::ExactAudit(params, p, mode);
    const double formula_mil = wpir::MilLeakage(params, p);
    const double formula_maxl = wpir::MaxlLeakage(params, p);
    const double formula_rate = wpir::RetrievalRate(params, p);
    // L = N^M is the m' = 0 download.
    const double oracle_rate =
        static_cast<double>(wpir::DownloadSymbols(params, 0)) /
        stats.expected_download;
    const double delta = std::max(
        {std::abs(stats.mil - formula_mil),
         std::abs(stats.maxl - formula_maxl),
         std::abs(oracle_rate - formula_rate)});
    json j;
    j["n"] = params.n_servers;
    j["files"] = params.n_files;
    j["p"] = p.probs;
    j["mode"] = audit_mode == "full" ? "full" : "class";
    j["expected_download"] = stats.expected_download;
    j["mil"] = stats.mil;
    j["maxl"] = stats.maxl;
    j["per_server_mil"] = stats.per_server_mil;
    j["per_server_maxl"] = stats.per_server_maxl;
    j["formula_mil"] = formula_mil;
    j["formula_maxl"] = formula_maxl;
    j["formula_rate"] = formula_rate;
    j["oracle_rate"] = oracle_rate;
    j["max_abs_delta"] = delta;
    if (stats.inner_symmetry.has_value()) {
      j["inner_symmetry"] = *stats.inner_symmetry;
    }
    const bool ok =
        delta <= 1e-9 && stats.inner_symmetry.value_or(true);
    j["agrees"] = ok;
    Emit(out_path, j.dump(2) + "\n");
    return ok ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Main(argc, argv);
  } catch (const wpir::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
