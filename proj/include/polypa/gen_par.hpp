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
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "polypa/config.hpp"
#include "polypa/errors.hpp"
#include "polypa/graph.hpp"
#include "polypa/proposal_list.hpp"
#include "polypa/random.hpp"
#include "polypa/weight.hpp"

namespace polypa {

// Bookkeeping of one batch. Sample indices are 1-based positions of added
// nodes; a batch starts at `s` and is cut at the first dependent index `l`
// (nodes + 1 if none). W_s, n_s and delta_s describe the graph at the start
// of the batch and stay fixed while it is sampled. delta_s is the maximum
// degree, raised to at least `ell`.
struct BatchState {
  std::uint64_t s = 1;
  std::uint64_t l = 0;
  double W_s = 0.0;
  std::uint64_t n_s = 0;
  std::uint32_t delta_s = 0;
  std::uint32_t ell = 1;
};

// Upper bound W'_i on the total weight just before sample i:
//   alpha <= 1:  W_s + 2 ell (i - s)
//   alpha  > 1:  W_s + 2 ell ((delta_s + i - s)^alpha - delta_s^alpha)
// A node adds f(ell) for itself and at most ell host increments; for
// alpha <= 1 each contributes at most 1 per host slot, for alpha > 1 a host
// increment is at most (delta + 1)^alpha - delta^alpha with delta growing by
// at most one per node, and k ell^alpha is dominated by the host term.
inline double upper_bound_W(const BatchState& bs, std::uint64_t i,
                            const WeightFunction& f) {
  if (!f.is_polynomial()) {
    throw InvalidConfig("the batch-parallel generator needs polynomial weights");
  }
  if (i < bs.s) throw LogicError("sample index precedes the batch start");
  const double steps = static_cast<double>(i - bs.s);
  const double ell = bs.ell;
  const double alpha = f.alpha();
  if (alpha <= 1.0) return bs.W_s + 2.0 * ell * steps;
  const double delta = bs.delta_s;
  return bs.W_s +
         2.0 * ell * (std::pow(delta + steps, alpha) - std::pow(delta, alpha));
}

struct ParOptions {
  // Run workers on threads; otherwise the same phases run one worker after
  // another on the calling thread. Both produce the same graph.
  bool threaded = true;
  bool implicit_first_entry = true;
};

struct ParStats {
  std::uint64_t batches = 0;
  std::uint64_t wall_ns = 0;
  std::uint64_t proposal_len = 0;  // explicit + implicit entries at the end
  std::uint64_t dependent_from_added = 0;  // dependent samples drawn from P2
  std::uint64_t dependent_from_new = 0;    // dependent samples drawn from P3
};

struct ParResult {
  Graph graph;
  ParStats stats;
};

// Batch-parallel preferential attachment.
//
// Each batch runs in phases separated by barriers:
//  1. Every worker draws hosts for the indices it owns (i = p + 1 mod P)
//     from the distribution frozen at batch start. Before each draw a coin
//     with heads probability W_s / W'_i decides whether the draw may use the
//     frozen distribution; tails marks i as dependent and lowers the shared
//     cut index l.
//  2a. Committed nodes (i < l) write their edges and bump host degrees and
//     per-batch touch counters.
//  2b. For every touched host, the event with the smallest index (decided by
//     an atomic minimum in 2a) reads the final degree, appends the missing
//     proposal entries and records the weight the host gained. Picking the
//     appender this way keeps the list layout independent of timing.
//  3. The owner of l draws the dependent sample: with probability
//     (W_l - W_s) / (W'_l - W_s) from the weight added during the batch (P2),
//     otherwise from the current distribution (P3). Together with the coin
//     this yields f(d_h at l) / W_l exactly.
//
// For ell > 1 every draw attempt of a node (including re-draws after a
// repeated host) gets its own coin; a tails cuts the batch at that node and
// phase 3 completes the node's remaining hosts from the current
// distribution.
//
// The proposal list is one logical list made of per-worker segments plus the
// implicit first entries. A uniform entry is found by drawing a worker and a
// position below the longest segment and retrying when that position is
// past the end of the chosen segment.
//
// Randomness comes from child streams named by (batch, worker), so a fixed
// master seed and worker count give the same graph whatever the thread
// scheduling.
class ParPolyPA {
 public:
  ParPolyPA(const Graph& seed, const GenConfig& cfg, ParOptions options = {})
      : f_(cfg.f),
        ell_(cfg.ell),
        nodes_(cfg.nodes),
        n0_(seed.num_nodes()),
        m0_(seed.num_edges()),
        workers_(cfg.workers),
        master_(cfg.seed),
        options_(options) {
    validate(seed, cfg, /*require_monotone=*/true);
    if (!f_.is_polynomial()) {
      throw InvalidConfig(
          "the batch-parallel generator needs polynomial weights");
    }
    if (workers_ == 0) throw InvalidConfig("workers must be at least 1");

    const std::uint64_t total = n0_ + nodes_;
    edges_.resize(m0_ + nodes_ * ell_);
    std::copy(seed.edges().begin(), seed.edges().end(), edges_.begin());
    degrees_.assign(total, 0);
    std::copy(seed.degrees().begin(), seed.degrees().end(), degrees_.begin());
    counts_.assign(total, 0);
    incs_.assign(total, 0);
    first_touch_.assign(total, kNoTouch);
    states_.resize(workers_);

    double w0 = 0.0;
    std::uint32_t max_degree = 0;
    for (std::uint64_t v = 0; v < n0_; ++v) {
      w0 += f_(degrees_[v]);
      max_degree = std::max(max_degree, degrees_[v]);
    }
    if (!(w0 > 0.0)) throw InvalidConfig("total weight is zero");
    W_ = w0;
    n_ = n0_;
    delta_ = max_degree;
    accept_bound_ = W_ / static_cast<double>(n_);
    // Seed nodes are split into contiguous ranges, one per worker segment.
    for (std::uint64_t v = 0; v < n0_; ++v) {
      const auto c = required_count(f_(degrees_[v]), static_cast<double>(n_),
                                    W_);
      counts_[v] = static_cast<std::uint32_t>(c);
      auto& seg = states_[v * workers_ / n0_].segment;
      seg.insert(seg.end(), c - (options_.implicit_first_entry ? 1 : 0),
                 static_cast<NodeId>(v));
    }
    begin_batch(1);
  }

  bool done() const { return done_; }
  std::uint64_t batches() const { return batches_; }
  const BatchState& batch_state() const { return bs_; }
  unsigned workers() const { return workers_; }

  double total_weight() const { return W_; }
  std::uint64_t node_count() const { return n_; }
  double accept_bound() const { return accept_bound_; }
  std::uint32_t degree(NodeId v) const { return degrees_[v]; }
  std::uint32_t count(NodeId v) const { return counts_[v]; }

  std::uint64_t proposal_size() const {
    std::uint64_t size = options_.implicit_first_entry ? n_ : 0;
    for (const auto& st : states_) size += st.segment.size();
    return size;
  }

  // Cut index of the batch that ran last (nodes + 1 if it had none).
  std::uint64_t last_cut() const { return last_cut_; }

  // Weight each node gained during the last batch's committed prefix, i.e.
  // the unnormalized P2 of that batch, in worker order.
  std::vector<std::pair<NodeId, double>> added_weights() const {
    std::vector<std::pair<NodeId, double>> out;
    for (const auto& st : states_) {
      out.insert(out.end(), st.added.begin(), st.added.end());
    }
    return out;
  }

  // Runs one batch with the workers' phases executed in order on the calling
  // thread. Returns the number of nodes added by the batch.
  std::uint64_t run_batch() {
    if (done_) return 0;
    const std::uint64_t before = n_;
    for (unsigned p = 0; p < workers_; ++p) phase_sample(p);
    for (unsigned p = 0; p < workers_; ++p) phase_commit_degrees(p);
    for (unsigned p = 0; p < workers_; ++p) phase_commit_entries(p);
    phase_dependent();
    return n_ - before;
  }

  // Runs to completion.
  void run() {
    const auto start = std::chrono::steady_clock::now();
    if (!options_.threaded || workers_ == 1) {
      while (!done_) run_batch();
    } else {
      run_threaded();
    }
    wall_ns_ += static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - start)
            .count());
  }

  ParStats stats() const {
    ParStats s;
    s.batches = batches_;
    s.wall_ns = wall_ns_;
    s.proposal_len = proposal_size();
    s.dependent_from_added = from_added_;
    s.dependent_from_new = from_new_;
    return s;
  }

  // The generated graph; the generator is left empty.
  Graph take_graph() {
    if (!done_) throw LogicError("generation has not finished");
    return Graph::assemble(n0_, m0_, n0_ + nodes_, std::move(edges_),
                           std::move(degrees_));
  }

 private:
  static constexpr std::uint32_t kNoTouch =
      std::numeric_limits<std::uint32_t>::max();

  struct alignas(64) WorkerState {
    std::vector<NodeId> segment;
    // Nodes sampled in phase 1: index and ell hosts each.
    std::vector<std::uint64_t> sampled;
    std::vector<NodeId> sampled_hosts;
    // Own dependent node, if this worker hit a tails coin.
    std::uint64_t cut = 0;
    std::vector<NodeId> cut_hosts;
    // (node, weight gained) for the committed prefix.
    std::vector<std::pair<NodeId, double>> added;
    double added_total = 0.0;
    std::uint32_t max_degree = 0;
  };

  unsigned owner(std::uint64_t i) const {
    return static_cast<unsigned>((i - 1) % workers_);
  }

  void begin_batch(std::uint64_t s) {
    if (s > nodes_) {
      done_ = true;
      return;
    }
    bs_.s = s;
    bs_.l = nodes_ + 1;
    bs_.W_s = W_;
    bs_.n_s = n_;
    bs_.delta_s = std::max(delta_, ell_);
    bs_.ell = ell_;
    accept_bound_ = std::max(accept_bound_, W_ / static_cast<double>(n_));
    cut_.store(nodes_ + 1, std::memory_order_relaxed);
    refresh_segment_span();
  }

  void refresh_segment_span() {
    max_segment_ = 0;
    for (const auto& st : states_) {
      max_segment_ = std::max<std::uint64_t>(max_segment_, st.segment.size());
    }
  }

  // Uniform entry of the logical list with the usual acceptance test. Only
  // valid while no segment, degree or count is being written.
  NodeId sample_current(RandomSource& rng, std::uint64_t node_count) const {
    const std::uint64_t implicit =
        options_.implicit_first_entry ? node_count : 0;
    const std::uint64_t span = implicit + workers_ * max_segment_;
    for (;;) {
      const std::uint64_t idx = rng.uniform_below(span);
      NodeId h;
      if (idx < implicit) {
        h = static_cast<NodeId>(idx);
      } else {
        const std::uint64_t pos = idx - implicit;
        const auto& seg = states_[pos / max_segment_].segment;
        const std::uint64_t at = pos % max_segment_;
        if (at >= seg.size()) continue;
        h = seg[at];
      }
      if (rng.uniform() * accept_bound_ * counts_[h] < f_(degrees_[h])) {
        return h;
      }
    }
  }

  static bool contains(const std::vector<NodeId>& hosts, NodeId h,
                       std::size_t begin = 0) {
    return std::find(hosts.begin() + static_cast<std::ptrdiff_t>(begin),
                     hosts.end(), h) != hosts.end();
  }

  void phase_sample(unsigned p) {
    WorkerState& st = states_[p];
    st.sampled.clear();
    st.sampled_hosts.clear();
    st.cut = 0;
    st.cut_hosts.clear();
    st.added.clear();
    st.added_total = 0.0;
    st.max_degree = 0;

    std::uint64_t i = bs_.s + (p + workers_ - owner(bs_.s)) % workers_;
    if (i > nodes_) return;  // no index left for this worker
    RandomSource rng = RandomSource::child(master_, batches_, p);
    for (; i <= nodes_; i += workers_) {
      if (i >= cut_.load(std::memory_order_relaxed)) break;
      const double heads = bs_.W_s / upper_bound_W(bs_, i, f_);
      const std::size_t base = st.sampled_hosts.size();
      bool dependent = false;
      while (st.sampled_hosts.size() - base < ell_) {
        if (!(rng.uniform() < heads)) {
          dependent = true;
          break;
        }
        const NodeId h = sample_current(rng, bs_.n_s);
        if (!contains(st.sampled_hosts, h, base)) st.sampled_hosts.push_back(h);
      }
      if (dependent) {
        st.cut = i;
        st.cut_hosts.assign(st.sampled_hosts.begin() +
                                static_cast<std::ptrdiff_t>(base),
                            st.sampled_hosts.end());
        st.sampled_hosts.resize(base);
        std::uint64_t current = cut_.load(std::memory_order_relaxed);
        while (i < current &&
               !cut_.compare_exchange_weak(current, i,
                                           std::memory_order_relaxed)) {
        }
        break;
      }
      st.sampled.push_back(i);
    }
  }

  void phase_commit_degrees(unsigned p) {
    WorkerState& st = states_[p];
    const std::uint64_t l = cut_.load(std::memory_order_relaxed);
    const auto new_count = static_cast<std::uint32_t>(required_count(
        f_(ell_), static_cast<double>(bs_.n_s), bs_.W_s));
    for (std::size_t k = 0; k < st.sampled.size(); ++k) {
      const std::uint64_t i = st.sampled[k];
      if (i >= l) break;
      const auto v = static_cast<NodeId>(n0_ + i - 1);
      for (std::uint32_t j = 0; j < ell_; ++j) {
        const NodeId h = st.sampled_hosts[k * ell_ + j];
        edges_[m0_ + (i - 1) * ell_ + j] = {v, h};
        std::atomic_ref<std::uint32_t>(degrees_[h])
            .fetch_add(1, std::memory_order_relaxed);
        std::atomic_ref<std::uint32_t>(incs_[h])
            .fetch_add(1, std::memory_order_relaxed);
        std::atomic_ref<std::uint32_t> touch(first_touch_[h]);
        std::uint32_t seen = touch.load(std::memory_order_relaxed);
        const auto mine = static_cast<std::uint32_t>(i);
        while (mine < seen &&
               !touch.compare_exchange_weak(seen, mine,
                                            std::memory_order_relaxed)) {
        }
      }
      degrees_[v] = ell_;
      counts_[v] = new_count;
      st.segment.insert(st.segment.end(),
                        new_count - (options_.implicit_first_entry ? 1 : 0), v);
    }
  }

  void phase_commit_entries(unsigned p) {
    WorkerState& st = states_[p];
    const std::uint64_t l = cut_.load(std::memory_order_relaxed);
    const double n_s = static_cast<double>(bs_.n_s);
    const double new_weight = f_(ell_);
    for (std::size_t k = 0; k < st.sampled.size(); ++k) {
      const std::uint64_t i = st.sampled[k];
      if (i >= l) break;
      for (std::uint32_t j = 0; j < ell_; ++j) {
        const NodeId h = st.sampled_hosts[k * ell_ + j];
        if (first_touch_[h] != static_cast<std::uint32_t>(i)) continue;
        first_touch_[h] = kNoTouch;
        const std::uint32_t d_now = degrees_[h];
        const std::uint32_t d_start = d_now - incs_[h];
        incs_[h] = 0;
        const double w_now = f_(d_now);
        const double gained = w_now - f_(d_start);
        const auto need = required_count(w_now, n_s, bs_.W_s);
        if (need > counts_[h]) {
          st.segment.insert(st.segment.end(), need - counts_[h], h);
          counts_[h] = static_cast<std::uint32_t>(need);
        }
        st.added.emplace_back(h, gained);
        st.added_total += gained;
        st.max_degree = std::max(st.max_degree, d_now);
      }
      st.added.emplace_back(static_cast<NodeId>(n0_ + i - 1), new_weight);
      st.added_total += new_weight;
    }
  }

  // Draws from P2(h) = (f(d_h at l) - f(d_h at s)) / (W_l - W_s).
  NodeId sample_added(RandomSource& rng, double added_total) const {
    double u = rng.uniform() * added_total;
    const std::pair<NodeId, double>* last = nullptr;
    for (const auto& st : states_) {
      if (u >= st.added_total) {
        u -= st.added_total;
        if (!st.added.empty()) last = &st.added.back();
        continue;
      }
      for (const auto& entry : st.added) {
        if (u < entry.second) return entry.first;
        u -= entry.second;
        last = &entry;
      }
    }
    if (last == nullptr) throw LogicError("no weight was added in the batch");
    return last->first;  // rounding fell off the end
  }

  void phase_dependent() {
    const std::uint64_t l = cut_.load(std::memory_order_relaxed);
    last_cut_ = l;
    const std::uint64_t committed = std::min(l, nodes_ + 1) - bs_.s;
    double added_total = 0.0;
    for (const auto& st : states_) {
      added_total += st.added_total;
      delta_ = std::max(delta_, st.max_degree);
    }
    W_ = bs_.W_s + added_total;
    n_ = bs_.n_s + committed;
    refresh_segment_span();
    ++batches_;

    if (l > nodes_) {
      begin_batch(nodes_ + 1);
      return;
    }

    const double W_l = W_;
    const double W_bound = upper_bound_W(bs_, l, f_);
    const double tol = 1e-9 * W_bound;
    if (!(bs_.W_s <= W_l + tol && W_l <= W_bound + tol)) {
      throw LogicError("batch weights violate W_s <= W_l <= W'_l");
    }
    const double p_frozen = bs_.W_s / W_bound;
    const double p_added = (W_l - bs_.W_s) / W_bound;
    const double p_new = (W_bound - W_l) / W_bound;
    if (std::abs(p_frozen + p_added + p_new - 1.0) > 1e-9 ||
        p_added < -1e-9 || p_new < -1e-9) {
      throw LogicError("dependent-sample mixture does not sum to one");
    }

    RandomSource rng = RandomSource::child(master_, batches_ - 1, workers_);
    const unsigned resp = owner(l);
    std::vector<NodeId> hosts = states_[resp].cut_hosts;
    const double take_added =
        std::clamp((W_l - bs_.W_s) / (W_bound - bs_.W_s), 0.0, 1.0);
    NodeId h;
    if (rng.uniform() < take_added) {
      h = sample_added(rng, added_total);
      ++from_added_;
    } else {
      h = sample_current(rng, n_);
      ++from_new_;
    }
    if (!contains(hosts, h)) hosts.push_back(h);
    while (hosts.size() < ell_) {
      h = sample_current(rng, n_);
      if (!contains(hosts, h)) hosts.push_back(h);
    }

    // Commit node l as the sequential generator would.
    auto& seg = states_[resp].segment;
    const auto v = static_cast<NodeId>(n0_ + l - 1);
    ++n_;
    const double new_weight = f_(ell_);
    W_ += new_weight;
    const auto new_count = required_count(new_weight,
                                          static_cast<double>(n_), W_);
    degrees_[v] = ell_;
    counts_[v] = static_cast<std::uint32_t>(new_count);
    seg.insert(seg.end(), new_count - (options_.implicit_first_entry ? 1 : 0),
               v);
    for (std::uint32_t j = 0; j < ell_; ++j) {
      const NodeId host = hosts[j];
      edges_[m0_ + (l - 1) * ell_ + j] = {v, host};
      const std::uint32_t d = degrees_[host] + 1;
      degrees_[host] = d;
      const double w_now = f_(d);
      W_ += w_now - f_(d - 1);
      delta_ = std::max(delta_, d);
      const auto need = required_count(w_now, static_cast<double>(n_), W_);
      if (need > counts_[host]) {
        seg.insert(seg.end(), need - counts_[host], host);
        counts_[host] = static_cast<std::uint32_t>(need);
      }
    }
    accept_bound_ = std::max(accept_bound_, W_ / static_cast<double>(n_));
    begin_batch(l + 1);
  }

  void run_threaded() {
    std::barrier sync(static_cast<std::ptrdiff_t>(workers_));
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto guarded = [&](auto&& fn) {
      if (failed.load(std::memory_order_relaxed)) return;
      try {
        fn();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    };
    // The loop exit flag is written only by the thread that runs phase 3,
    // between the third and fourth barrier, so every thread sees the same
    // value at the top of the loop.
    bool stop = done_;
    auto body = [&](unsigned p) {
      while (!stop) {
        guarded([&] { phase_sample(p); });
        sync.arrive_and_wait();
        const std::uint64_t l = cut_.load(std::memory_order_relaxed);
        guarded([&] { phase_commit_degrees(p); });
        sync.arrive_and_wait();
        guarded([&] { phase_commit_entries(p); });
        sync.arrive_and_wait();
        if (p == (l <= nodes_ ? owner(l) : 0)) {
          guarded([&] { phase_dependent(); });
          stop = done_ || failed.load(std::memory_order_relaxed);
        }
        sync.arrive_and_wait();
      }
    };
    {
      std::vector<std::jthread> threads;
      threads.reserve(workers_ - 1);
      for (unsigned p = 1; p < workers_; ++p) threads.emplace_back(body, p);
      body(0);
    }
    if (error) std::rethrow_exception(error);
  }

  WeightFunction f_;
  std::uint32_t ell_;
  std::uint64_t nodes_;
  std::uint64_t n0_;
  std::uint64_t m0_;
  unsigned workers_;
  std::uint64_t master_;
  ParOptions options_;

  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> incs_;
  std::vector<std::uint32_t> first_touch_;
  std::vector<WorkerState> states_;

  BatchState bs_;
  std::atomic<std::uint64_t> cut_{0};
  double W_ = 0.0;
  std::uint64_t n_ = 0;
  std::uint32_t delta_ = 0;
  double accept_bound_ = 0.0;
  std::uint64_t max_segment_ = 0;
  std::uint64_t batches_ = 0;
  std::uint64_t last_cut_ = 0;
  std::uint64_t from_added_ = 0;
  std::uint64_t from_new_ = 0;
  std::uint64_t wall_ns_ = 0;
  bool done_ = false;
};

inline ParResult generate_par_instrumented(const Graph& seed,
                                           const GenConfig& cfg,
                                           ParOptions options = {}) {
  ParPolyPA gen(seed, cfg, options);
  gen.run();
  ParResult result;
  result.stats = gen.stats();
  result.graph = gen.take_graph();
  return result;
}

// Grows `seed` like generate_seq, using cfg.workers workers and cfg.seed as
// the master seed.
inline Graph generate_par(const Graph& seed, const GenConfig& cfg,
                          ParOptions options = {}) {
  return generate_par_instrumented(seed, cfg, options).graph;
}

}  // namespace polypa
