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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polypa/algorithms.hpp"
#include "polypa/config.hpp"
#include "polypa/errors.hpp"
#include "polypa/graph.hpp"
#include "polypa/proposal_list.hpp"
#include "polypa/random.hpp"
#include "polypa/reference.hpp"
#include "polypa/seed.hpp"
#include "polypa/stats.hpp"
#include "polypa/weight.hpp"

namespace polypa {

inline constexpr double kSignificance = 0.001;
inline constexpr double kTvThreshold = 0.02;
inline constexpr std::size_t kMaxOutcomes = 10000;
// Seeds for the repeated statistical tests; a test fails only if most fail.
inline constexpr std::array<std::uint64_t, 5> kSeedList = {
    0x5eed0001ULL, 0x5eed0002ULL, 0x5eed0003ULL, 0x5eed0004ULL, 0x5eed0005ULL};
inline constexpr std::array<double, 5> kAlphas = {0.0, 0.5, 1.0, 1.5, 2.0};

struct VerificationRecord {
  std::string config;
  std::string test;
  double statistic = 0.0;
  double p_value = std::nan("");  // NaN when the test has no p-value
  bool pass = false;
};

inline void write_report_text(std::ostream& out,
                              std::span<const VerificationRecord> records) {
  for (const auto& r : records) {
    out << (r.pass ? "PASS " : "FAIL ") << r.config << ' ' << r.test
        << " statistic=" << r.statistic;
    if (!std::isnan(r.p_value)) out << " p=" << r.p_value;
    out << '\n';
  }
}

inline void write_report_csv(std::ostream& out,
                             std::span<const VerificationRecord> records) {
  out << "config,test,statistic,p_value,pass\n";
  for (const auto& r : records) {
    out << r.config << ',' << r.test << ',' << r.statistic << ',';
    if (!std::isnan(r.p_value)) out << r.p_value;
    out << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

// Degrees [1, 1, 2, 4]; node 3 has a double edge to node 2.
inline Graph hand_built_graph() {
  return Graph::from_edges(4, {{3, 0}, {3, 1}, {3, 2}, {3, 2}});
}

// Node 0 joined to nodes 1..n-1.
inline Graph star_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({v, 0});
  return Graph::from_edges(n, edges);
}

struct DegreeCase {
  std::string name;
  std::vector<std::uint32_t> degrees;
};

inline std::vector<DegreeCase> single_step_cases() {
  return {
      {"deg[1,3]", {1, 3}},
      {"ring4", {2, 2, 2, 2}},
      {"1regular6", {1, 1, 1, 1, 1, 1}},
      {"deg[1,1,2,4]", {1, 1, 2, 4}},
  };
}

// `draws` independent samples from a freshly built proposal list.
inline Histogram<std::uint64_t> proposal_draws(
    std::span<const std::uint32_t> degrees, const WeightFunction& f,
    std::uint64_t draws, std::uint64_t seed,
    ProposalList::Options options = {.implicit_first_entry = true}) {
  const ProposalList list = ProposalList::build(degrees, f, options);
  RandomSource rng(seed);
  Histogram<std::uint64_t> h;
  for (std::uint64_t k = 0; k < draws; ++k) h.add(list.sample(rng));
  return h;
}

// Host of the single node added by ref_generate, repeated `draws` times.
inline Histogram<std::uint64_t> ref_single_step(const Graph& g,
                                                const WeightFunction& f,
                                                std::uint64_t draws,
                                                std::uint64_t seed) {
  GenConfig cfg{.nodes = 1, .ell = 1, .f = f};
  RandomSource rng(seed);
  Histogram<std::uint64_t> h;
  for (std::uint64_t k = 0; k < draws; ++k) {
    h.add(ref_generate(g, cfg, rng).edges().back().v);
  }
  return h;
}

inline Histogram<std::uint64_t> naive_single_step(const Graph& g, double alpha,
                                                  std::uint64_t draws,
                                                  std::uint64_t seed) {
  RandomSource rng(seed);
  Histogram<std::uint64_t> h;
  for (std::uint64_t k = 0; k < draws; ++k) h.add(naive_edge_sample(g, alpha, rng));
  return h;
}

// Packs the added edges, each as (min, max) with 4 bits per endpoint, in
// sorted order. Seed edges are identical across runs and left out.
inline std::uint64_t canonical_key(const Graph& g) {
  const auto added = g.added_edges();
  if (g.num_nodes() > 16 || added.size() > 8) {
    throw InvalidConfig("graph too large for a packed edge-set key");
  }
  std::array<std::uint8_t, 8> packed{};
  for (std::size_t k = 0; k < added.size(); ++k) {
    const NodeId a = std::min(added[k].u, added[k].v);
    const NodeId b = std::max(added[k].u, added[k].v);
    packed[k] = static_cast<std::uint8_t>(a << 4 | b);
  }
  std::sort(packed.begin(), packed.begin() + added.size());
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < added.size(); ++k) key = key << 8 | packed[k];
  return key;
}

using Generator = std::function<Graph(const Graph&, const GenConfig&)>;

// Histogram of canonical outputs over `runs` runs; run r uses the master seed
// derive_seed(master, r).
inline Histogram<std::uint64_t> edge_set_distribution(
    const Generator& gen, const Graph& seed, GenConfig cfg, std::uint64_t runs,
    std::uint64_t master, std::size_t max_outcomes = kMaxOutcomes) {
  Histogram<std::uint64_t> h;
  for (std::uint64_t r = 0; r < runs; ++r) {
    cfg.seed = RandomSource::derive_seed(master, r);
    h.add(canonical_key(gen(seed, cfg)));
    if (h.counts.size() > max_outcomes) {
      throw InvalidConfig("outcome space exceeds " +
                          std::to_string(max_outcomes));
    }
  }
  return h;
}

// Exact output distribution by enumerating every ordered host choice.
inline std::map<std::uint64_t, double> exact_edge_set_distribution(
    const Graph& seed, const GenConfig& cfg) {
  validate(seed, cfg, /*require_monotone=*/false);
  const std::uint64_t n0 = seed.num_nodes();
  if (n0 + cfg.nodes > 16 || cfg.nodes * cfg.ell > 8) {
    throw InvalidConfig("configuration too large to enumerate");
  }
  std::map<std::uint64_t, double> out;
  std::vector<std::uint32_t> degrees(seed.degrees().begin(),
                                     seed.degrees().end());
  std::vector<Edge> added;

  std::function<void(double)> grow;
  std::function<void(NodeId, std::vector<NodeId>&, double)> pick;
  grow = [&](double prob) {
    const NodeId v = static_cast<NodeId>(degrees.size());
    if (v == n0 + cfg.nodes) {
      std::vector<Edge> edges(seed.edges());
      edges.insert(edges.end(), added.begin(), added.end());
      Graph g = Graph::assemble(n0, seed.num_edges(), degrees.size(),
                                std::move(edges), degrees);
      out[canonical_key(g)] += prob;
      return;
    }
    std::vector<NodeId> hosts;
    pick(v, hosts, prob);
  };
  pick = [&](NodeId v, std::vector<NodeId>& hosts, double prob) {
    if (hosts.size() == cfg.ell) {
      for (NodeId h : hosts) {
        added.push_back({v, h});
        ++degrees[h];
      }
      degrees.push_back(cfg.ell);
      grow(prob);
      degrees.pop_back();
      for (NodeId h : hosts) {
        added.pop_back();
        --degrees[h];
      }
      return;
    }
    double total = 0.0;
    for (NodeId u = 0; u < v; ++u) {
      if (std::find(hosts.begin(), hosts.end(), u) == hosts.end()) {
        total += cfg.f(degrees[u]);
      }
    }
    for (NodeId u = 0; u < v; ++u) {
      if (std::find(hosts.begin(), hosts.end(), u) != hosts.end()) continue;
      const double w = cfg.f(degrees[u]);
      if (w <= 0.0) continue;
      hosts.push_back(u);
      pick(v, hosts, prob * w / total);
      hosts.pop_back();
    }
  };
  grow(1.0);
  return out;
}

// Small configurations used for whole-pipeline oracle comparison.
struct OracleConfig {
  std::string id;
  Graph seed;
  GenConfig cfg;
};

inline std::vector<OracleConfig> oracle_configs() {
  auto make = [](std::string id, Graph g, std::uint64_t nodes,
                 std::uint32_t ell, double alpha) {
    GenConfig cfg{.nodes = nodes, .ell = ell,
                  .f = WeightFunction::polynomial(alpha)};
    return OracleConfig{std::move(id), std::move(g), std::move(cfg)};
  };
  return {
      make("C1-1regular4-N3-l1-a1", make_seed_graph(OneRegularSeed{4}), 3, 1, 1.0),
      make("C2-ring5-N3-l1-a0.5", make_seed_graph(RingSeed{5}), 3, 1, 0.5),
      make("C3-1regular6-N2-l2-a1.5", make_seed_graph(OneRegularSeed{6}), 2, 2, 1.5),
      make("C4-ring4-N2-l2-a2", make_seed_graph(RingSeed{4}), 2, 2, 2.0),
      make("C5-star4-N3-l1-a2", star_graph(4), 3, 1, 2.0),
  };
}

inline std::string alpha_label(double alpha) {
  std::string s = std::to_string(alpha);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// Chi-square of `sampler(seed)` against `expected` on every seed of
// kSeedList: one record per seed and a majority record.
inline void majority_chi_square(
    const std::string& config, const std::string& test,
    std::span<const double> expected,
    const std::function<Histogram<std::uint64_t>(std::uint64_t)>& sampler,
    std::vector<VerificationRecord>& records) {
  std::array<bool, kSeedList.size()> ok{};
  for (std::size_t s = 0; s < kSeedList.size(); ++s) {
    const auto r = chi_square(sampler(kSeedList[s]), expected);
    ok[s] = r.p_value > kSignificance;
    records.push_back({config, test + "-seed" + std::to_string(s), r.statistic,
                       r.p_value, ok[s]});
  }
  const auto passed = std::count(ok.begin(), ok.end(), true);
  records.push_back({config, test + "-majority", static_cast<double>(passed),
                     std::nan(""), majority_pass(ok)});
}

// Proposal-list draws against the exact host distribution for each fixed
// degree vector and alpha.
inline std::vector<VerificationRecord> verify_single_step(std::uint64_t draws) {
  std::vector<VerificationRecord> records;
  for (const auto& c : single_step_cases()) {
    for (double alpha : kAlphas) {
      const auto f = WeightFunction::polynomial(alpha);
      const auto expected = exact_host_distribution(c.degrees, f);
      majority_chi_square(
          c.name + "-a" + alpha_label(alpha), "chi2-proposal", expected,
          [&](std::uint64_t seed) {
            return proposal_draws(c.degrees, f, draws, seed);
          },
          records);
    }
  }
  return records;
}

// The two oracles themselves: ref_generate and the edge-array scheme, one
// step each, against the exact host distribution on three fixed graphs.
inline std::vector<VerificationRecord> verify_reference(std::uint64_t draws) {
  const std::vector<std::pair<std::string, Graph>> graphs = {
      {"ring4", make_seed_graph(RingSeed{4})},
      {"1regular6", make_seed_graph(OneRegularSeed{6})},
      {"deg[1,1,2,4]", hand_built_graph()},
  };
  std::vector<VerificationRecord> records;
  for (const auto& [name, g] : graphs) {
    for (double alpha : {0.5, 2.0}) {
      const auto f = WeightFunction::polynomial(alpha);
      const auto expected = exact_host_distribution(g, f);
      const std::string id = name + "-a" + alpha_label(alpha);
      majority_chi_square(
          id, "chi2-ref", expected,
          [&](std::uint64_t seed) { return ref_single_step(g, f, draws, seed); },
          records);
      majority_chi_square(
          id, "chi2-naive", expected,
          [&](std::uint64_t seed) {
            return naive_single_step(g, alpha, draws, seed);
          },
          records);
    }
  }
  return records;
}

// Whether every decisive record passed; per-seed rows only feed majorities.
inline bool all_decisive_pass(std::span<const VerificationRecord> records) {
  return std::all_of(records.begin(), records.end(), [](const auto& r) {
    return r.pass || r.test.find("-seed") != std::string::npos;
  });
}

struct OracleSubject {
  Algorithm algo;
  unsigned workers = 1;
};

// The generators compared against ref_generate: seq, par with 2 and 4
// workers, em.
inline std::vector<OracleSubject> oracle_subjects() {
  return {{Algorithm::kSeq, 1},
          {Algorithm::kPar, 2},
          {Algorithm::kPar, 4},
          {Algorithm::kEm, 1}};
}

// TV distance between each subject's and ref_generate's edge-set histograms
// on one configuration. The reference histogram is built once.
inline std::vector<VerificationRecord> verify_oracle(
    const OracleConfig& oc, std::span<const OracleSubject> subjects,
    std::uint64_t runs, std::uint64_t master) {
  const Generator ref = [](const Graph& s, const GenConfig& c) {
    return run_algorithm(Algorithm::kRef, s, c);
  };
  const auto h_ref = edge_set_distribution(ref, oc.seed, oc.cfg, runs, master);
  std::vector<VerificationRecord> records;
  std::uint64_t stream = 0;
  for (const OracleSubject& sub : subjects) {
    GenConfig cfg = oc.cfg;
    cfg.workers = sub.workers;
    // par runs its phases in order on one thread here; the output equals
    // the threaded run and avoids thread start-up for every tiny graph.
    const Generator gen = [algo = sub.algo](const Graph& s, const GenConfig& c) {
      return run_algorithm(algo, s, c, /*threaded=*/false);
    };
    const auto h_gen = edge_set_distribution(
        gen, oc.seed, cfg, runs, RandomSource::derive_seed(master, ++stream));
    const double tv = tv_distance(h_gen, h_ref);
    std::string test = std::string("tv-") + algorithm_name(sub.algo);
    if (sub.algo == Algorithm::kPar) test += "-w" + std::to_string(sub.workers);
    records.push_back({oc.id, test, tv, std::nan(""), tv < kTvThreshold});
  }
  return records;
}

}  // namespace polypa
