#ifndef SCUBA_EXPERIMENTS_HPP
#define SCUBA_EXPERIMENTS_HPP

// Seeded sweeps over (K, q, heuristic) grids and the statistics drawn from them.
//
// Seeds. The i-th landscape of cell (K, q) is generated from
//   stable_mix(seed, {kLandscapeTag, K, q, i})
// so all heuristics of a cell share the same instances. Run r on instance i
// uses a generator seeded with
//   stable_mix(seed, {kRunTag, K, q, heuristic, i, r});
// its first N draws give the start genotype, the rest drive the heuristic.
//
// A cell's `runs` are spread over its `instances`: instance i gets
// runs/instances runs, plus one for the first runs%instances instances.
//
// Work is split over threads, but every result lands in a slot fixed by its
// (cell, instance, run) index, so the output never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "scuba/heuristics.hpp"
#include "scuba/landscape.hpp"
#include "scuba/neighborhood.hpp"
#include "scuba/random.hpp"

namespace scuba {

inline constexpr std::uint64_t kLandscapeTag = 0x4c414e44;  // "LAND"
inline constexpr std::uint64_t kRunTag = 0x52554e53;        // "RUNS"

inline std::uint64_t landscape_seed(std::uint64_t base, std::size_t k, Total q, std::uint64_t instance) {
  return stable_mix(base, {kLandscapeTag, k, static_cast<std::uint64_t>(q), instance});
}

inline std::uint64_t run_seed(std::uint64_t base, std::size_t k, Total q, HeuristicKind h, std::uint64_t instance,
                              std::uint64_t run) {
  return stable_mix(base, {kRunTag, k, static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(h), instance, run});
}

/// Dispatches one run. `step_max` is used by Netcrawler, `spec` by Generic Scuba.
template <class Urbg>
RunResult run_heuristic(HeuristicKind h, const NkqLandscape& l, Genotype start, Urbg& rng, EvalCounter& counter,
                        std::uint64_t step_max = 300, const ImproverSpec& spec = {}, bool trace = false) {
  switch (h) {
    case HeuristicKind::hill_climb: return hill_climb(l, std::move(start), rng, counter, trace);
    case HeuristicKind::hill_climb2: return hill_climb2(l, std::move(start), rng, counter, trace);
    case HeuristicKind::netcrawler: return netcrawler(l, std::move(start), rng, step_max, counter, trace);
    case HeuristicKind::scuba: return scuba(l, std::move(start), rng, counter, trace);
    case HeuristicKind::generic_scuba: return generic_scuba(l, std::move(start), spec, rng, counter, trace);
  }
  throw std::logic_error("unknown heuristic");
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware concurrency).
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
}

struct SweepConfig {
  std::size_t n = 64;
  std::vector<std::size_t> ks{0};
  std::vector<Total> qs{2};
  Epistasis mode = Epistasis::random;
  std::vector<HeuristicKind> heuristics{HeuristicKind::hill_climb};
  std::uint64_t runs = 100;
  std::uint64_t instances = 10;
  std::uint64_t seed = 0;
  std::uint64_t step_max = 300;
  ImproverSpec generic;
  bool keep_traces = false;
  unsigned threads = 0;

  void validate() const {
    if (n < 1) throw InvalidParameter("n must be at least 1");
    if (ks.empty() || qs.empty() || heuristics.empty()) throw InvalidParameter("k, q and heuristic lists must be non-empty");
    for (auto k : ks)
      if (k >= n) throw InvalidParameter("every k must satisfy k <= n-1");
    for (auto q : qs)
      if (q < 2) throw InvalidParameter("every q must be at least 2");
    if (runs < 1) throw InvalidParameter("runs must be at least 1");
    if (instances < 1) throw InvalidParameter("instances must be at least 1");
    if (step_max < 1) throw InvalidParameter("step_max must be positive");
  }
};

struct RunRecord {
  HeuristicKind heuristic = HeuristicKind::hill_climb;
  std::size_t k = 0;
  Total q = 2;
  std::uint64_t instance = 0;
  std::uint64_t run = 0;
  std::uint64_t landscape_seed = 0;
  std::uint64_t run_seed = 0;
  RunResult result;
};

struct CellStats {
  HeuristicKind heuristic = HeuristicKind::hill_climb;
  std::size_t n = 0;
  std::size_t k = 0;
  Total q = 2;
  std::uint64_t runs = 0;
  double mean_fitness = 0;
  double std_fitness = 0;  // sample standard deviation (n-1), 0 for a single run
  double mean_evals = 0;
  double mean_steps = 0;
  double mean_flat = 0;
  double mean_gate = 0;
};

struct SweepReport {
  std::vector<CellStats> cells;
  std::vector<RunRecord> records;  // cell-major, then instance, then run
};

inline double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0;
  for (auto x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0;
  for (auto x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Statistics of one cell; all records are assumed to share heuristic, K and q.
inline CellStats summarize(std::span<const RunRecord> records, std::size_t n) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  CellStats c;
  c.heuristic = records.front().heuristic;
  c.n = n;
  c.k = records.front().k;
  c.q = records.front().q;
  c.runs = records.size();
  std::vector<double> fit, evals, steps, flat, gate;
  for (const auto& r : records) {
    fit.push_back(r.result.fitness.normalized());
    evals.push_back(static_cast<double>(r.result.evaluations));
    steps.push_back(static_cast<double>(r.result.steps));
    flat.push_back(static_cast<double>(r.result.flat_count));
    gate.push_back(static_cast<double>(r.result.gate_count));
  }
  c.mean_fitness = mean(fit);
  c.std_fitness = sample_std(fit);
  c.mean_evals = mean(evals);
  c.mean_steps = mean(steps);
  c.mean_flat = mean(flat);
  c.mean_gate = mean(gate);
  return c;
}

inline std::uint64_t runs_on_instance(std::uint64_t runs, std::uint64_t instances, std::uint64_t instance) {
  return runs / instances + (instance < runs % instances ? 1 : 0);
}

inline SweepReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepReport report;

  struct Task {
    std::size_t landscape;  // index into `landscapes`
    RunRecord record;
  };
  std::vector<NkqLandscape> landscapes;
  std::vector<Task> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> cell_ranges;

  for (auto k : cfg.ks) {
    for (auto q : cfg.qs) {
      const std::size_t first_landscape = landscapes.size();
      for (std::uint64_t i = 0; i < cfg.instances; ++i)
        landscapes.push_back(NkqLandscape::generate(cfg.n, k, q, cfg.mode, landscape_seed(cfg.seed, k, q, i)));
      for (auto h : cfg.heuristics) {
        const std::size_t begin = tasks.size();
        for (std::uint64_t i = 0; i < cfg.instances; ++i) {
          for (std::uint64_t r = 0; r < runs_on_instance(cfg.runs, cfg.instances, i); ++r) {
            Task t{first_landscape + i, {}};
            t.record.heuristic = h;
            t.record.k = k;
            t.record.q = q;
            t.record.instance = i;
            t.record.run = r;
            t.record.landscape_seed = landscapes[first_landscape + i].seed();
            t.record.run_seed = run_seed(cfg.seed, k, q, h, i, r);
            tasks.push_back(std::move(t));
          }
        }
        cell_ranges.emplace_back(begin, tasks.size());
      }
    }
  }

  parallel_for(tasks.size(), cfg.threads, [&](std::size_t idx) {
    auto& task = tasks[idx];
    const auto& l = landscapes[task.landscape];
    Rng rng(task.record.run_seed);
    EvalCounter counter;
    Genotype start = random_genotype(rng, l.n());
    task.record.result =
        run_heuristic(task.record.heuristic, l, std::move(start), rng, counter, cfg.step_max, cfg.generic,
                      cfg.keep_traces);
  });

  report.records.reserve(tasks.size());
  for (auto& t : tasks) report.records.push_back(std::move(t.record));
  for (auto [b, e] : cell_ranges)
    report.cells.push_back(summarize(std::span<const RunRecord>(report.records).subspan(b, e - b), cfg.n));
  return report;
}

// ---------------------------------------------------------------------------
// Neutral degree

struct DegreeStats {
  double mean = 0;
  double std_error = 0;  // spread of the per-instance means, or of the samples when there is one instance
  std::uint64_t instances = 0;
  std::uint64_t samples = 0;  // per instance
};

/// Mean Degn of uniformly drawn genotypes, averaged over generated instances.
inline DegreeStats neutral_degree_stats(std::size_t n, std::size_t k, Total q, std::uint64_t samples,
                                        std::uint64_t instances, std::uint64_t seed,
                                        Epistasis mode = Epistasis::random, unsigned threads = 0) {
  if (samples < 1 || instances < 1) throw InvalidParameter("samples and instances must be at least 1");
  std::vector<double> instance_means(instances);
  std::vector<std::vector<double>> per_sample(instances);
  parallel_for(instances, threads, [&](std::size_t i) {
    const auto l = NkqLandscape::generate(n, k, q, mode, landscape_seed(seed, k, q, i));
    Rng rng(stable_mix(seed, {kRunTag, k, static_cast<std::uint64_t>(q), i}));
    std::vector<double> degs(samples);
    for (auto& d : degs) d = static_cast<double>(neutral_degree(l, random_genotype(rng, n)));
    instance_means[i] = mean(degs);
    if (instances == 1) per_sample[i] = std::move(degs);
  });
  DegreeStats out;
  out.instances = instances;
  out.samples = samples;
  out.mean = mean(instance_means);
  out.std_error = instances > 1 ? sample_std(instance_means) / std::sqrt(static_cast<double>(instances))
                                : sample_std(per_sample[0]) / std::sqrt(static_cast<double>(samples));
  return out;
}

/// Number of Netcrawler proposals from a fixed state that land on an equal total.
template <class Urbg>
std::uint64_t neutral_proposals(const NkqLandscape& l, const Genotype& s, std::uint64_t proposals, Urbg& rng) {
  const Total total = l.fitness(s).total;
  std::uint64_t neutral = 0;
  for (std::uint64_t p = 0; p < proposals; ++p)
    neutral += l.flip_fitness(s, total, propose_flip(rng, l.n())).total == total ? 1 : 0;
  return neutral;
}

// ---------------------------------------------------------------------------
// Neutral-move profile: P(neutral move | Degn of the source state = d)
//
// Per step: every move (and, for Netcrawler, every rejected proposal) is
// charged to the Degn of the state it leaves; the statistic is the fraction of
// those events that were neutral moves. Per state: every visited state is
// counted once per visit, including the final one, and the statistic is the
// fraction of visits that ended with a neutral move.

struct ProfileRow {
  HeuristicKind heuristic = HeuristicKind::netcrawler;
  std::size_t k = 0;
  Total q = 2;
  std::size_t degn = 0;
  std::uint64_t moves = 0;
  std::uint64_t neutral_moves = 0;
  std::uint64_t states = 0;
  std::uint64_t neutral_states = 0;

  double p_step() const noexcept { return moves ? static_cast<double>(neutral_moves) / static_cast<double>(moves) : 0.0; }
  double p_state() const noexcept {
    return states ? static_cast<double>(neutral_states) / static_cast<double>(states) : 0.0;
  }
};

class NeutralProfile {
 public:
  /// Adds one traced run. The trace must start with the start state.
  void add(const NkqLandscape& l, HeuristicKind h, const RunResult& run) {
    if (run.trace.empty()) throw std::invalid_argument("neutral profile needs traced runs");
    const Genotype* current = &run.trace.front().genotype;
    std::size_t d = neutral_degree(l, *current);
    ProfileRow* visit = &row(h, l.k(), l.q(), d);
    ++visit->states;
    for (std::size_t t = 1; t < run.trace.size(); ++t) {
      const auto& e = run.trace[t];
      auto& r = row(h, l.k(), l.q(), d);
      ++r.moves;
      if (e.kind == MoveKind::neutral) ++r.neutral_moves;
      if (e.kind == MoveKind::rejected) continue;
      if (e.kind == MoveKind::neutral) ++visit->neutral_states;
      current = &e.genotype;
      d = neutral_degree(l, *current);
      visit = &row(h, l.k(), l.q(), d);
      ++visit->states;
    }
  }

  /// Non-empty bins in (heuristic, K, q, Degn) order.
  std::vector<ProfileRow> rows() const {
    std::vector<ProfileRow> out;
    for (const auto& [key, r] : bins_) out.push_back(r);
    return out;
  }

 private:
  ProfileRow& row(HeuristicKind h, std::size_t k, Total q, std::size_t d) {
    auto [it, fresh] = bins_.try_emplace(std::tuple{static_cast<int>(h), k, q, d});
    if (fresh) {
      it->second.heuristic = h;
      it->second.k = k;
      it->second.q = q;
      it->second.degn = d;
    }
    return it->second;
  }

  std::map<std::tuple<int, std::size_t, Total, std::size_t>, ProfileRow> bins_;
};

/// Profile over the Netcrawler and Scuba runs of a sweep run with keep_traces.
inline std::vector<ProfileRow> neutral_mutation_profile(const SweepConfig& cfg, const SweepReport& report) {
  NeutralProfile profile;
  std::map<std::uint64_t, NkqLandscape> cache;
  for (const auto& rec : report.records) {
    if (rec.heuristic != HeuristicKind::netcrawler && rec.heuristic != HeuristicKind::scuba) continue;
    auto it = cache.find(rec.landscape_seed);
    if (it == cache.end())
      it = cache.emplace(rec.landscape_seed, NkqLandscape::generate(cfg.n, rec.k, rec.q, cfg.mode, rec.landscape_seed))
               .first;
    profile.add(it->second, rec.heuristic, rec.result);
  }
  return profile.rows();
}

struct StepRow {
  std::size_t k = 0;
  Total q = 2;
  std::uint64_t runs = 0;
  double mean_steps = 0;  // flat + gate
  double mean_flat = 0;
};

/// Mean step and neutral-move counts per (K, q) over the Scuba records.
inline std::vector<StepRow> step_stats(std::span<const RunRecord> records) {
  std::map<std::pair<std::size_t, Total>, std::vector<const RunRecord*>> groups;
  for (const auto& r : records)
    if (r.heuristic == HeuristicKind::scuba) groups[{r.k, r.q}].push_back(&r);
  std::vector<StepRow> out;
  for (const auto& [key, group] : groups) {
    StepRow row;
    row.k = key.first;
    row.q = key.second;
    row.runs = group.size();
    for (const auto* r : group) {
      row.mean_steps += static_cast<double>(r->result.flat_count + r->result.gate_count);
      row.mean_flat += static_cast<double>(r->result.flat_count);
    }
    row.mean_steps /= static_cast<double>(group.size());
    row.mean_flat /= static_cast<double>(group.size());
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV output

inline constexpr const char* kSweepHeader =
    "heuristic,n,k,q,runs,mean_fitness,std_fitness,mean_evals,mean_steps,mean_flat,mean_gate";
inline constexpr const char* kRecordHeader =
    "heuristic,k,q,instance,run,landscape_seed,run_seed,terminal_total,fitness,steps,flat,gate,evaluations";
inline constexpr const char* kProfileHeader =
    "heuristic,k,q,degn,moves,neutral_moves,p_neutral_step,states,neutral_states,p_neutral_state";
inline constexpr const char* kDegreeHeader = "n,k,q,instances,samples,mean_degn,std_error";

inline void write_csv(const SweepReport& report, std::ostream& out) {
  out << kSweepHeader << '\n';
  out << std::fixed;
  for (const auto& c : report.cells) {
    out << to_string(c.heuristic) << ',' << c.n << ',' << c.k << ',' << c.q << ',' << c.runs << ','
        << std::setprecision(6) << c.mean_fitness << ',' << c.std_fitness << ',' << std::setprecision(3)
        << c.mean_evals << ',' << c.mean_steps << ',' << c.mean_flat << ',' << c.mean_gate << '\n';
  }
}

inline void write_records(const SweepReport& report, std::ostream& out) {
  out << kRecordHeader << '\n';
  out << std::fixed << std::setprecision(6);
  for (const auto& r : report.records) {
    out << to_string(r.heuristic) << ',' << r.k << ',' << r.q << ',' << r.instance << ',' << r.run << ','
        << r.landscape_seed << ',' << r.run_seed << ',' << r.result.fitness.total << ','
        << r.result.fitness.normalized() << ',' << r.result.steps << ',' << r.result.flat_count << ','
        << r.result.gate_count << ',' << r.result.evaluations << '\n';
  }
}

inline void write_profile(std::span<const ProfileRow> rows, std::ostream& out) {
  out << kProfileHeader << '\n';
  out << std::fixed << std::setprecision(6);
  for (const auto& r : rows)
    out << to_string(r.heuristic) << ',' << r.k << ',' << r.q << ',' << r.degn << ',' << r.moves << ','
        << r.neutral_moves << ',' << r.p_step() << ',' << r.states << ',' << r.neutral_states << ',' << r.p_state()
        << '\n';
}

struct DegreeRow {
  std::size_t n = 0;
  std::size_t k = 0;
  Total q = 2;
  DegreeStats stats;
};

inline void write_degree_csv(std::span<const DegreeRow> rows, std::ostream& out) {
  out << kDegreeHeader << '\n';
  out << std::fixed << std::setprecision(6);
  for (const auto& r : rows)
    out << r.n << ',' << r.k << ',' << r.q << ',' << r.stats.instances << ',' << r.stats.samples << ','
        << r.stats.mean << ',' << r.stats.std_error << '\n';
}

/// Writes through `writer` into `path`, reporting failures with the path.
template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("error while writing '" + path.string() + "'");
}

inline void write_csv(const SweepReport& report, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& os) { write_csv(report, os); });
}

}  // namespace scuba

#endif  // SCUBA_EXPERIMENTS_HPP
