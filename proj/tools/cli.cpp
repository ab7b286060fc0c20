// Copyright 2026 The PolyPA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "polypa/algorithms.hpp"
#include "polypa/edge_io.hpp"
#include "polypa/errors.hpp"
#include "polypa/gen_em.hpp"
#include "polypa/gen_par.hpp"
#include "polypa/gen_seq.hpp"
#include "polypa/seed.hpp"
#include "polypa/verify.hpp"
#include "polypa/weight.hpp"

namespace polypa::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string algo = "seq";
  std::string seed_graph;
  std::uint64_t n = 0;
  std::uint32_t ell = 1;
  std::optional<double> alpha;
  std::string f_table;
  std::string f_tail = "extend";
  std::optional<unsigned> workers;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
  std::string csv;
  std::uint64_t draws = 1000000;
  std::uint64_t runs = 200000;
};

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--algo", o.algo, "seq | par | em | ref")
      ->check(CLI::IsMember({"seq", "par", "em", "ref"}));
  cmd->add_option("--seed-graph", o.seed_graph,
                  "ring:<n0> | 1regular:<n0> | file:<path>");
  cmd->add_option("--n", o.n, "number of nodes to add");
  cmd->add_option("--ell", o.ell, "edges per new node");
  auto* alpha = cmd->add_option("--alpha", o.alpha, "f(d) = d^alpha");
  auto* table = cmd->add_option("--f-table", o.f_table,
                                "CSV file of degree,weight rows");
  alpha->excludes(table);
  cmd->add_option("--f-tail", o.f_tail, "degrees past the table")
      ->check(CLI::IsMember({"extend", "error"}));
  cmd->add_option("--workers", o.workers, "worker threads for par");
  cmd->add_option("--seed", o.seed, "master seed");
}

unsigned resolve_workers(const Options& o) {
  if (o.workers) {
    if (*o.workers == 0) throw UsageError("--workers must be positive");
    return *o.workers;
  }
  if (const char* env = std::getenv("POLYPA_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0 || v > 4096) {
      throw UsageError("POLYPA_WORKERS must be a positive integer");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

WeightFunction resolve_weight(const Options& o) {
  if (!o.f_table.empty()) {
    std::ifstream in(o.f_table);
    if (!in) throw IoError("cannot open weight table '" + o.f_table + "'");
    const auto tail = o.f_tail == "error" ? WeightFunction::TailRule::kError
                                          : WeightFunction::TailRule::kExtend;
    return WeightFunction::from_csv(in, tail);
  }
  try {
    return WeightFunction::polynomial(o.alpha.value_or(1.0));
  } catch (const InvalidSpec& e) {
    throw UsageError(e.what());
  }
}

struct Job {
  Algorithm algo;
  Graph seed;
  GenConfig cfg;
};

// Everything that can be checked without reading data files is a usage
// error; unreadable or malformed files are runtime failures.
Job prepare(const Options& o, const std::string& default_seed) {
  Job job{};
  job.algo = parse_algorithm(o.algo);
  if (job.algo == Algorithm::kPar && !o.f_table.empty()) {
    throw UsageError("par supports only polynomial weights (--alpha)");
  }
  SeedSpec spec;
  try {
    spec = parse_seed_spec(o.seed_graph.empty() ? default_seed : o.seed_graph);
  } catch (const InvalidSpec& e) {
    throw UsageError(e.what());
  }
  job.cfg.nodes = o.n;
  job.cfg.ell = o.ell;
  job.cfg.seed = o.seed;
  job.cfg.workers = resolve_workers(o);
  try {
    job.seed = make_seed_graph(spec);
  } catch (const InvalidSpec& e) {
    throw UsageError(e.what());
  }
  job.cfg.f = resolve_weight(o);
  try {
    validate(job.seed, job.cfg,
             job.algo == Algorithm::kSeq || job.algo == Algorithm::kPar);
  } catch (const InvalidConfig& e) {
    throw UsageError(e.what());
  }
  return job;
}

int cmd_generate(const Options& o, std::ostream& out) {
  if (o.seed_graph.empty()) throw UsageError("--seed-graph is required");
  const Job job = prepare(o, o.seed_graph);
  const EdgeFormat format =
      o.format == "binary" ? EdgeFormat::kBinary : EdgeFormat::kText;
  const Graph g = run_algorithm(job.algo, job.seed, job.cfg);
  if (o.out.empty()) {
    write_edges(g, format, out);
    out.flush();
    if (!out) throw IoError("failed writing graph to standard output");
    return kExitOk;
  }
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + o.out + "' for writing");
  write_edges(g, format, file);
  file.close();
  if (!file) throw IoError("failed writing '" + o.out + "'");
  return kExitOk;
}

std::string format_double(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

int cmd_bench(const Options& o, std::ostream& out) {
  const std::string default_seed =
      "1regular:" + std::to_string(10 * std::max<std::uint32_t>(o.ell, 1));
  Job job = prepare(o, default_seed);
  if (job.algo != Algorithm::kPar) job.cfg.workers = 1;

  std::string wall, proposal_len, batches, pq_ops, em_counts = ",,,,";
  using Clock = std::chrono::steady_clock;
  switch (job.algo) {
    case Algorithm::kSeq: {
      RandomSource rng(job.cfg.seed);
      const auto r = generate_seq_timed(job.seed, job.cfg, rng);
      wall = std::to_string(r.trace.wall_ns);
      proposal_len = std::to_string(r.trace.final_stats.size);
      break;
    }
    case Algorithm::kPar: {
      const auto r = generate_par_instrumented(job.seed, job.cfg);
      wall = std::to_string(r.stats.wall_ns);
      proposal_len = std::to_string(r.stats.proposal_len);
      batches = std::to_string(r.stats.batches);
      break;
    }
    case Algorithm::kEm: {
      const auto t0 = Clock::now();
      const auto r = generate_em(job.seed, job.cfg);
      wall = std::to_string(
          std::chrono::nanoseconds(Clock::now() - t0).count());
      pq_ops = std::to_string(r.counts.pq_ops());
      const auto& c = r.counts;
      em_counts = std::to_string(c.pq_m_push) + ',' +
                  std::to_string(c.pq_m_pop) + ',' +
                  std::to_string(c.pq_u_push) + ',' +
                  std::to_string(c.pq_u_pop) + ',' +
                  std::to_string(c.sorted_items);
      break;
    }
    case Algorithm::kRef: {
      const auto t0 = Clock::now();
      run_algorithm(Algorithm::kRef, job.seed, job.cfg);
      wall = std::to_string(
          std::chrono::nanoseconds(Clock::now() - t0).count());
      break;
    }
  }
  std::ostringstream row;
  row << algorithm_name(job.algo) << ','
      << (job.cfg.f.is_polynomial() ? format_double(job.cfg.f.alpha()) : "")
      << ',' << job.cfg.ell << ',' << job.seed.num_nodes() << ','
      << job.cfg.nodes << ',' << job.cfg.workers << ',' << job.cfg.seed << ','
      << wall << ',' << proposal_len << ',' << batches << ',' << pq_ops
      << ',' << em_counts << '\n';

  if (o.csv.empty()) {
    out << kBenchHeader << '\n' << row.str();
    return kExitOk;
  }
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(o.csv, ec) ||
                     std::filesystem::file_size(o.csv, ec) == 0;
  std::ofstream file(o.csv, std::ios::app);
  if (!file) throw IoError("cannot open '" + o.csv + "' for appending");
  if (fresh) file << kBenchHeader << '\n';
  file << row.str();
  file.close();
  if (!file) throw IoError("failed writing '" + o.csv + "'");
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<VerificationRecord> records = verify_single_step(o.draws);
  const auto ref_records = verify_reference(o.draws);
  records.insert(records.end(), ref_records.begin(), ref_records.end());
  const auto subjects = oracle_subjects();
  std::uint64_t master = o.seed;
  for (const auto& oc : oracle_configs()) {
    const auto r = verify_oracle(oc, subjects, o.runs, ++master);
    records.insert(records.end(), r.begin(), r.end());
  }
  write_report_text(out, records);
  if (!o.csv.empty()) {
    std::ofstream file(o.csv, std::ios::trunc);
    if (!file) throw IoError("cannot open '" + o.csv + "' for writing");
    write_report_csv(file, records);
    if (!file) throw IoError("failed writing '" + o.csv + "'");
  }
  return all_decisive_pass(records) ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Preferential attachment graph generators"};
  app.name("polypa");
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "generate a graph");
  add_model_flags(gen, o);
  gen->add_option("--out", o.out, "output path (default: standard output)");
  gen->add_option("--format", o.format, "text | binary")
      ->check(CLI::IsMember({"text", "binary"}));

  auto* bench = app.add_subcommand("bench", "time one run and emit CSV");
  add_model_flags(bench, o);
  bench->add_option("--csv", o.csv, "append the row to this file");

  auto* ver = app.add_subcommand("verify", "run the verification matrix");
  ver->add_option("--draws", o.draws, "single-step draws per test");
  ver->add_option("--runs", o.runs, "generator runs per histogram");
  ver->add_option("--seed", o.seed, "master seed");
  ver->add_option("--csv", o.csv, "CSV report path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "polypa: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "polypa: usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "polypa: parse error at line " << e.line() << ", offset "
        << e.offset() << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "polypa: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace polypa::cli
