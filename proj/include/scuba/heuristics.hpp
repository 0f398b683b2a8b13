#ifndef SCUBA_HEURISTICS_HPP
#define SCUBA_HEURISTICS_HPP

// Local search heuristics over NKq landscapes: Hill Climbing, Hill Climbing
// two steps, Netcrawler, Scuba Search and the Generic Scuba skeleton.
//
// Conventions shared by every run:
//  * f(start) is computed uncounted; every later fitness query ticks the
//    run's EvalCounter exactly once.
//  * Ties are broken uniformly at random with uniform_below on the run's
//    generator, one draw per move.
//  * steps counts moves made. flat_count counts moves that keep the total,
//    gate_count moves that strictly raise it.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "scuba/genotype.hpp"
#include "scuba/landscape.hpp"
#include "scuba/neighborhood.hpp"
#include "scuba/random.hpp"

namespace scuba {

enum class HeuristicKind { hill_climb, hill_climb2, netcrawler, scuba, generic_scuba };

inline const char* to_string(HeuristicKind h) {
  switch (h) {
    case HeuristicKind::hill_climb: return "hc";
    case HeuristicKind::hill_climb2: return "hc2";
    case HeuristicKind::netcrawler: return "nc";
    case HeuristicKind::scuba: return "ss";
    case HeuristicKind::generic_scuba: return "gss";
  }
  return "?";
}

inline HeuristicKind parse_heuristic(const std::string& id) {
  if (id == "hc") return HeuristicKind::hill_climb;
  if (id == "hc2") return HeuristicKind::hill_climb2;
  if (id == "nc") return HeuristicKind::netcrawler;
  if (id == "ss") return HeuristicKind::scuba;
  if (id == "gss") return HeuristicKind::generic_scuba;
  throw InvalidParameter("unknown heuristic '" + id + "' (expected hc, hc2, nc, ss or gss)");
}

enum class MoveKind { start, improving, neutral, worsening, rejected };

inline const char* to_string(MoveKind m) {
  switch (m) {
    case MoveKind::start: return "start";
    case MoveKind::improving: return "improving";
    case MoveKind::neutral: return "neutral";
    case MoveKind::worsening: return "worsening";
    case MoveKind::rejected: return "rejected";
  }
  return "?";
}

/// One trace entry: the state after the move (or proposal, for Netcrawler).
struct TraceEntry {
  Genotype genotype;
  Total total = 0;
  MoveKind kind = MoveKind::start;
};

struct RunResult {
  Genotype terminal;
  FitnessValue fitness;
  std::uint64_t steps = 0;
  std::uint64_t flat_count = 0;
  std::uint64_t gate_count = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t last_improvement = 0;  // index of the last improving move (Netcrawler iteration), 0 if none
  std::vector<TraceEntry> trace;
};

namespace detail {

// Tracks the current point of a run and keeps the counters and trace in step.
class Walk {
 public:
  Walk(const NkqLandscape& l, Genotype start, EvalCounter& counter, bool record)
      : landscape_(l), counter_(counter), first_count_(counter.count()), record_(record) {
    result_.terminal = std::move(start);
    total_ = l.fitness(result_.terminal).total;
    if (record_) result_.trace.push_back({result_.terminal, total_, MoveKind::start});
  }

  const Genotype& point() const noexcept { return result_.terminal; }
  Total total() const noexcept { return total_; }

  void move(std::size_t locus, Total new_total) {
    const MoveKind kind = new_total > total_    ? MoveKind::improving
                          : new_total == total_ ? MoveKind::neutral
                                                : MoveKind::worsening;
    result_.terminal.flip(locus);
    total_ = new_total;
    ++result_.steps;
    if (kind == MoveKind::neutral) ++result_.flat_count;
    if (kind == MoveKind::improving) ++result_.gate_count;
    if (record_) result_.trace.push_back({result_.terminal, total_, kind});
  }

  void reject(std::size_t locus, Total proposed) {
    if (record_) result_.trace.push_back({result_.terminal.flipped(locus), proposed, MoveKind::rejected});
  }

  RunResult& result() noexcept { return result_; }

  RunResult finish() {
    result_.fitness = landscape_.make_fitness(total_);
    result_.evaluations = counter_.count() - first_count_;
    return std::move(result_);
  }

 private:
  const NkqLandscape& landscape_;
  EvalCounter& counter_;
  std::uint64_t first_count_;
  bool record_;
  Total total_ = 0;
  RunResult result_;
};

template <class Urbg>
std::size_t pick(Urbg& rng, const std::vector<std::size_t>& candidates) {
  if (candidates.empty()) throw std::logic_error("no candidate move");
  return candidates[uniform_below(rng, candidates.size())];
}

inline std::vector<std::size_t> loci_equal(const std::vector<Total>& values, Total target) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == target) out.push_back(i);
  return out;
}

// Evolvability of each neutral neighbor of the current point; N evaluations each.
struct NeutralScan {
  std::vector<std::size_t> loci;
  std::vector<Total> evol;
  Total best = -1;
};

inline NeutralScan scan_neutral(const NkqLandscape& l, const Genotype& s, Total total,
                                const std::vector<Total>& flips, EvalCounter& counter) {
  NeutralScan out;
  out.loci = neutral_loci(flips, total);
  Genotype mutant = s;
  for (auto i : out.loci) {
    mutant.flip(i);
    const Total e = evol(l, mutant, total, counter).total;
    mutant.flip(i);
    out.evol.push_back(e);
    out.best = std::max(out.best, e);
  }
  return out;
}

}  // namespace detail

/// Best-improvement hill climbing; stops as soon as no neighbor is strictly fitter.
template <class Urbg>
RunResult hill_climb(const NkqLandscape& l, Genotype start, Urbg& rng, EvalCounter& counter, bool trace = false) {
  detail::Walk walk(l, std::move(start), counter, trace);
  for (;;) {
    const auto flips = neighbor_totals(l, walk.point(), walk.total(), counter);
    const Total best = max_or(flips, walk.total());
    if (best <= walk.total()) break;
    const std::size_t locus = detail::pick(rng, detail::loci_equal(flips, best));
    walk.move(locus, best);
  }
  return walk.finish();
}

/// Hill climbing over the distance-2 neighborhood, moving one bit at a time.
///
/// When the best distance-2 point is not a direct neighbor the walk moves to a
/// neighbor whose own evolvability reaches it. Such a move can lower f, but
/// evol2 never decreases along the walk.
template <class Urbg>
RunResult hill_climb2(const NkqLandscape& l, Genotype start, Urbg& rng, EvalCounter& counter, bool trace = false) {
  detail::Walk walk(l, std::move(start), counter, trace);
  for (;;) {
    const auto scan = scan_two_flip(l, walk.point(), walk.total(), counter);
    if (scan.evol2 <= walk.total()) break;
    const auto& values = scan.evol == scan.evol2 ? scan.flip : scan.flip_evol;
    const std::size_t locus = detail::pick(rng, detail::loci_equal(values, scan.evol2));
    walk.move(locus, scan.flip[locus]);
  }
  return walk.finish();
}

/// The single proposal Netcrawler makes per iteration.
template <class Urbg>
std::size_t propose_flip(Urbg& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform_below(rng, n));
}

/// Netcrawler with a one-bit mutation: step_max proposals, accept when not worse.
template <class Urbg>
RunResult netcrawler(const NkqLandscape& l, Genotype start, Urbg& rng, std::uint64_t step_max, EvalCounter& counter,
                     bool trace = false) {
  if (step_max == 0) throw InvalidParameter("step_max must be positive");
  detail::Walk walk(l, std::move(start), counter, trace);
  for (std::uint64_t step = 0; step < step_max; ++step) {
    const std::size_t locus = propose_flip(rng, l.n());
    const Total t = delta_evaluate(l, walk.point(), walk.total(), locus, counter).total;
    if (walk.total() <= t) {
      if (t > walk.total()) walk.result().last_improvement = step + 1;
      walk.move(locus, t);
    } else {
      walk.reject(locus, t);
    }
  }
  return walk.finish();
}

/// Scuba Search.
///
/// Conquest of the waters: while some neutral neighbor has a strictly larger
/// evolvability than the current point, move to one of the neutral neighbors
/// with the largest evolvability (flat move). Invasion of the land: once the
/// point is a local-neutral maximum, jump to one of the fittest neighbors
/// (gate move). The run ends at the first point with no fitter neighbor; the
/// jump is only attempted when such a neighbor exists.
///
/// Each inner iteration scans V(s) and V of every neutral neighbor, so it
/// costs (1 + Degn(s)) N evaluations.
template <class Urbg>
RunResult scuba(const NkqLandscape& l, Genotype start, Urbg& rng, EvalCounter& counter, bool trace = false) {
  detail::Walk walk(l, std::move(start), counter, trace);
  auto flips = neighbor_totals(l, walk.point(), walk.total(), counter);
  for (;;) {
    Total own_evol = max_or(flips, walk.total());
    for (;;) {
      const auto neutral = detail::scan_neutral(l, walk.point(), walk.total(), flips, counter);
      if (neutral.loci.empty() || neutral.best <= own_evol) break;
      std::vector<std::size_t> candidates;
      for (std::size_t a = 0; a < neutral.loci.size(); ++a)
        if (neutral.evol[a] == neutral.best) candidates.push_back(neutral.loci[a]);
      walk.move(detail::pick(rng, candidates), walk.total());
      flips = neighbor_totals(l, walk.point(), walk.total(), counter);
      own_evol = max_or(flips, walk.total());
    }
    if (own_evol <= walk.total()) break;
    walk.move(detail::pick(rng, detail::loci_equal(flips, own_evol)), own_evol);
    flips = neighbor_totals(l, walk.point(), walk.total(), counter);
  }
  return walk.finish();
}

// ---------------------------------------------------------------------------
// Generic Scuba: a neutral-network phase (Improve1 until condition 1) followed
// by a jump (Improve2), repeated until condition 2.

/// Improve1: move to a neutral neighbor of largest evolvability, if it beats the current one.
struct GreedyEvolvability {};
/// Improve1: move to a uniformly chosen neutral neighbor.
struct NeutralDrift {};

/// Condition 1: the point is a local-neutral maximum.
struct UntilLocalNeutralMaximum {};
/// Condition 1: a fixed number of neutral moves per phase.
struct UntilBudget {
  std::uint64_t moves = 0;
};

/// Improve2: jump to one of the fittest one-flip neighbors.
struct JumpToEvolvability {};
/// Condition 2: no one-flip neighbor is fitter.
struct UntilLocalMaximum {};

struct ImproverSpec {
  std::variant<GreedyEvolvability, NeutralDrift> improve1 = GreedyEvolvability{};
  std::variant<UntilLocalNeutralMaximum, UntilBudget> until1 = UntilLocalNeutralMaximum{};
  std::variant<JumpToEvolvability> improve2 = JumpToEvolvability{};
  std::variant<UntilLocalMaximum> until2 = UntilLocalMaximum{};
};

template <class Urbg>
RunResult generic_scuba(const NkqLandscape& l, Genotype start, const ImproverSpec& spec, Urbg& rng,
                        EvalCounter& counter, bool trace = false) {
  detail::Walk walk(l, std::move(start), counter, trace);
  const bool greedy = std::holds_alternative<GreedyEvolvability>(spec.improve1);
  const auto* budget = std::get_if<UntilBudget>(&spec.until1);

  auto flips = neighbor_totals(l, walk.point(), walk.total(), counter);
  auto at_local_maximum = [&] { return max_or(flips, walk.total()) <= walk.total(); };

  for (;;) {
    std::uint64_t phase_moves = 0;
    for (;;) {
      if (budget && phase_moves >= budget->moves) break;
      std::size_t next;
      if (greedy || !budget) {
        // Both the greedy step and the local-neutral stop test need the evolvability of Vn(s).
        const Total own_evol = max_or(flips, walk.total());
        const auto neutral = detail::scan_neutral(l, walk.point(), walk.total(), flips, counter);
        if (neutral.loci.empty() || neutral.best <= own_evol) break;
        if (greedy) {
          std::vector<std::size_t> candidates;
          for (std::size_t a = 0; a < neutral.loci.size(); ++a)
            if (neutral.evol[a] == neutral.best) candidates.push_back(neutral.loci[a]);
          next = detail::pick(rng, candidates);
        } else {
          next = detail::pick(rng, neutral.loci);
        }
      } else {
        const auto neutral = neutral_loci(flips, walk.total());
        if (neutral.empty()) break;
        next = detail::pick(rng, neutral);
      }
      walk.move(next, walk.total());
      ++phase_moves;
      flips = neighbor_totals(l, walk.point(), walk.total(), counter);
    }

    if (at_local_maximum()) break;
    const Total best = max_or(flips, walk.total());
    const auto targets = detail::loci_equal(flips, best);
    if (targets.empty()) throw std::logic_error("generic_scuba: Improve2 failed at a non-local point");
    walk.move(detail::pick(rng, targets), best);
    flips = neighbor_totals(l, walk.point(), walk.total(), counter);
  }
  return walk.finish();
}

}  // namespace scuba

#endif  // SCUBA_HEURISTICS_HPP
