#ifndef SCUBA_NEIGHBORHOOD_HPP
#define SCUBA_NEIGHBORHOOD_HPP

// One-bit-flip neighborhoods and the predicates built on them.
//
// V(s) is s together with its N one-bit mutants. Scans only query the N
// mutants: the caller always knows f(s), so one scan of V(s) costs exactly N
// counted evaluations. V2(s) is the union of V over V(s), i.e. every point
// within Hamming distance 2; its scan costs N + N(N-1)/2 (distance-0 points
// are not re-queried).
//
// evol(s)  = max f over V(s)
// evol2(s) = max f over V2(s)
// Vn(s)    = {s' in V(s) : f(s') = f(s)},  Degn(s) = |Vn(s)| - 1

#include <algorithm>
#include <cstddef>
#include <vector>

#include "scuba/genotype.hpp"
#include "scuba/landscape.hpp"

namespace scuba {

enum class Measure { fitness, evolvability };
enum class Neighborhood { one_flip, neutral, two_flip };

inline std::vector<Genotype> flip_neighbors(const Genotype& s) {
  std::vector<Genotype> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.flipped(i));
  return out;
}

/// Totals of the N one-bit mutants, in locus order. Costs N evaluations.
inline std::vector<Total> neighbor_totals(const NkqLandscape& l, const Genotype& s, Total total,
                                          EvalCounter& counter) {
  std::vector<Total> out(l.n());
  for (std::size_t i = 0; i < l.n(); ++i) out[i] = delta_evaluate(l, s, total, i, counter).total;
  return out;
}

inline Total max_or(const std::vector<Total>& values, Total floor) {
  for (auto v : values) floor = std::max(floor, v);
  return floor;
}

inline FitnessValue evol(const NkqLandscape& l, const Genotype& s, Total total, EvalCounter& counter) {
  return l.make_fitness(max_or(neighbor_totals(l, s, total, counter), total));
}

/// Everything one distance-2 scan reveals about s and its one-flip mutants.
struct TwoFlipScan {
  std::vector<Total> flip;          // f(s ^ i)
  std::vector<Total> flip_evol;     // evol(s ^ i), derived from the same scan
  Total evol = 0;                   // evol(s)
  Total evol2 = 0;                  // evol2(s)
};

/// Scans V2(s) once: N one-flip and N(N-1)/2 two-flip queries.
inline TwoFlipScan scan_two_flip(const NkqLandscape& l, const Genotype& s, Total total, EvalCounter& counter) {
  const std::size_t n = l.n();
  TwoFlipScan scan;
  scan.flip = neighbor_totals(l, s, total, counter);
  // V(s ^ i) = {s ^ i, s} plus the pairs (i, j), so evol(s ^ i) starts at max(f(s ^ i), f(s)).
  scan.flip_evol.resize(n);
  for (std::size_t i = 0; i < n; ++i) scan.flip_evol[i] = std::max(scan.flip[i], total);

  Genotype mutant = s;
  for (std::size_t i = 0; i < n; ++i) {
    mutant.flip(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Total t = delta_evaluate(l, mutant, scan.flip[i], j, counter).total;
      scan.flip_evol[i] = std::max(scan.flip_evol[i], t);
      scan.flip_evol[j] = std::max(scan.flip_evol[j], t);
    }
    mutant.flip(i);
  }
  scan.evol = max_or(scan.flip, total);
  scan.evol2 = max_or(scan.flip_evol, scan.evol);
  return scan;
}

inline FitnessValue evol2(const NkqLandscape& l, const Genotype& s, Total total, EvalCounter& counter) {
  return l.make_fitness(scan_two_flip(l, s, total, counter).evol2);
}

/// Loci whose flip leaves the total unchanged.
inline std::vector<std::size_t> neutral_loci(const std::vector<Total>& flip_totals, Total total) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flip_totals.size(); ++i)
    if (flip_totals[i] == total) out.push_back(i);
  return out;
}

/// Vn(s) \ {s}, in locus order.
inline std::vector<Genotype> neutral_neighbors(const NkqLandscape& l, const Genotype& s, Total total,
                                               EvalCounter& counter) {
  std::vector<Genotype> out;
  for (auto i : neutral_loci(neighbor_totals(l, s, total, counter), total)) out.push_back(s.flipped(i));
  return out;
}

inline std::size_t neutral_degree(const NkqLandscape& l, const Genotype& s, Total total, EvalCounter& counter) {
  return neutral_loci(neighbor_totals(l, s, total, counter), total).size();
}

/// Uncounted neutral degree, for post-hoc statistics.
inline std::size_t neutral_degree(const NkqLandscape& l, const Genotype& s) {
  const Total total = l.fitness(s).total;
  std::size_t d = 0;
  for (std::size_t i = 0; i < l.n(); ++i) d += l.flip_fitness(s, total, i).total == total ? 1 : 0;
  return d;
}

/// isLocal(s, g, W): no member of W(s) has a larger g than s (ties allowed).
inline bool is_local(const NkqLandscape& l, const Genotype& s, Total total, Measure g, Neighborhood w,
                     EvalCounter& counter) {
  const auto flips = neighbor_totals(l, s, total, counter);

  if (g == Measure::fitness) {
    switch (w) {
      case Neighborhood::one_flip:
        return max_or(flips, total) <= total;
      case Neighborhood::neutral:
        return true;  // every member has f equal to f(s)
      case Neighborhood::two_flip: {
        Genotype mutant = s;
        bool local = max_or(flips, total) <= total;
        for (std::size_t i = 0; i < l.n(); ++i) {
          mutant.flip(i);
          for (std::size_t j = i + 1; j < l.n(); ++j)
            local = local && delta_evaluate(l, mutant, flips[i], j, counter).total <= total;
          mutant.flip(i);
        }
        return local;
      }
    }
  }

  const Total own = max_or(flips, total);
  auto evol_of_flip = [&](std::size_t i) { return evol(l, s.flipped(i), flips[i], counter).total; };

  switch (w) {
    case Neighborhood::one_flip:
      for (std::size_t i = 0; i < l.n(); ++i)
        if (evol_of_flip(i) > own) return false;
      return true;
    case Neighborhood::neutral:
      for (auto i : neutral_loci(flips, total))
        if (evol_of_flip(i) > own) return false;
      return true;
    case Neighborhood::two_flip:
      for (std::size_t i = 0; i < l.n(); ++i) {
        if (evol_of_flip(i) > own) return false;
        const Genotype mi = s.flipped(i);
        for (std::size_t j = i + 1; j < l.n(); ++j) {
          const Total tij = delta_evaluate(l, mi, flips[i], j, counter).total;
          if (evol(l, mi.flipped(j), tij, counter).total > own) return false;
        }
      }
      return true;
  }
  return true;
}

}  // namespace scuba

#endif  // SCUBA_NEIGHBORHOOD_HPP
