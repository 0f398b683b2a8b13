// scuba: generate NKq landscapes, run the search heuristics on them, sweep
// parameter grids into CSV, and export small landscapes as DOT graphs.
//
// Exit codes: 0 success, 1 usage error, 2 runtime or I/O error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scuba/scuba.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> parse_list(const std::string& flag, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError(flag + ": expected a comma-separated list of non-negative integers, got '" + text + "'");
    out.push_back(static_cast<T>(std::stoll(item)));
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

template <class T>
T parse_single(const std::string& flag, const std::string& text) {
  auto values = parse_list<T>(flag, text);
  if (values.size() != 1) throw UsageError(flag + ": this subcommand takes a single value");
  return values.front();
}

std::vector<scuba::HeuristicKind> parse_heuristics(const std::string& flag, const std::string& text) {
  std::vector<scuba::HeuristicKind> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(scuba::parse_heuristic(item));
    } catch (const scuba::InvalidParameter& e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

scuba::Epistasis parse_mode(const std::string& text) {
  try {
    return scuba::parse_epistasis(text);
  } catch (const scuba::InvalidParameter& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
}

void check_shape(std::size_t n, const std::vector<std::size_t>& ks, const std::vector<scuba::Total>& qs) {
  if (n < 1) throw UsageError("--n: must be at least 1");
  for (auto k : ks)
    if (k >= n) throw UsageError("--k: " + std::to_string(k) + " must be at most n-1 = " + std::to_string(n - 1));
  for (auto q : qs)
    if (q < 2) throw UsageError("--q: " + std::to_string(q) + " must be at least 2");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t drawn = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << drawn << '\n';
  return drawn;
}

template <class Writer>
void emit(const std::string& path, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    std::cout.flush();
  } else {
    scuba::write_file(path, writer);
  }
}

scuba::NkqLandscape load_landscape(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open landscape file '" + path + "'");
  try {
    return scuba::deserialize(in);
  } catch (const scuba::ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

// Flags shared by the single-landscape subcommands.
struct LandscapeFlags {
  std::size_t n = 64;
  std::string k = "0";
  std::string q = "2";
  std::string mode = "random";
  std::optional<std::uint64_t> seed;
  std::string landscape;

  void add_to(CLI::App* app, bool allow_file) {
    app->add_option("--n", n, "number of loci N")->capture_default_str();
    app->add_option("--k", k, "epistasis degree K, 0 <= K <= N-1")->capture_default_str();
    app->add_option("--q", q, "neutrality parameter q >= 2")->capture_default_str();
    app->add_option("--mode", mode, "epistasis links: adjacent or random")->capture_default_str();
    app->add_option("--seed", seed, "base seed; drawn from system entropy and printed when absent");
    if (allow_file) app->add_option("--landscape", landscape, "read the landscape from a file written by 'gen'");
  }

  // The landscape from --landscape, or generated from the flags as instance 0 of cell (K, q).
  scuba::NkqLandscape make(std::uint64_t base_seed) const {
    if (!landscape.empty()) return load_landscape(landscape);
    const auto kk = parse_single<std::size_t>("--k", k);
    const auto qq = parse_single<scuba::Total>("--q", q);
    check_shape(n, {kk}, {qq});
    return scuba::NkqLandscape::generate(n, kk, qq, parse_mode(mode), scuba::landscape_seed(base_seed, kk, qq, 0));
  }
};

struct GenericFlags {
  std::string improve1 = "greedy";
  std::optional<std::uint64_t> budget;

  void add_to(CLI::App* app) {
    app->add_option("--improve1", improve1, "gss neutral phase: greedy (evolvability ascent) or drift (random neutral walk)")
        ->capture_default_str();
    app->add_option("--budget", budget,
                    "gss: neutral moves per phase; without it the phase runs until a local-neutral maximum");
  }

  scuba::ImproverSpec spec() const {
    scuba::ImproverSpec s;
    if (improve1 == "greedy")
      s.improve1 = scuba::GreedyEvolvability{};
    else if (improve1 == "drift")
      s.improve1 = scuba::NeutralDrift{};
    else
      throw UsageError("--improve1: expected greedy or drift, got '" + improve1 + "'");
    if (budget) s.until1 = scuba::UntilBudget{*budget};
    return s;
  }
};

constexpr const char* kFormats = R"(
File formats
  landscape (gen, --landscape):
    nkq-landscape
    format-version 1
    n <N> / k <K> / q <q> / mode <adjacent|random> / seed <u64>   (one key per line)
    then N lines: <locus> <K link indices> <2^(K+1) table entries>
    Table index: own allele in bit 0, link j in bit j+1.
  sweep CSV:   heuristic,n,k,q,runs,mean_fitness,std_fitness,mean_evals,mean_steps,mean_flat,mean_gate
  records CSV: heuristic,k,q,instance,run,landscape_seed,run_seed,terminal_total,fitness,steps,flat,gate,evaluations
  profile CSV: heuristic,k,q,degn,moves,neutral_moves,p_neutral_step,states,neutral_states,p_neutral_state
  degn CSV:    n,k,q,instances,samples,mean_degn,std_error
  census CSV:  n,k,q,seed,nodes,local_maxima,local_maxima_v2,scuba_terminals,neutral_networks
  graph:       Graphviz DOT; nodes are genotype integers (locus 0 = most significant bit)
)";

int run_cli(int argc, char** argv) {
  CLI::App app{"Scuba Search and comparison heuristics on NKq fitness landscapes"};
  app.footer(kFormats);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a landscape and write it in the landscape text format");
  LandscapeFlags gen_flags;
  std::string gen_out;
  gen_flags.add_to(gen, false);
  gen->add_option("--out", gen_out, "output path ('-' or absent: stdout)");

  // run
  auto* run = app.add_subcommand("run", "run one heuristic from a random start and print its result");
  LandscapeFlags run_flags;
  GenericFlags run_generic;
  std::string run_heuristic = "ss";
  std::uint64_t run_step_max = 300;
  std::string run_trace;
  run_flags.add_to(run, true);
  run_generic.add_to(run);
  run->add_option("--heuristic", run_heuristic, "hc, hc2, nc, ss or gss")->capture_default_str();
  run->add_option("--step-max", run_step_max, "netcrawler proposal budget")->capture_default_str();
  run->add_option("--trace", run_trace, "write the move trace as CSV (step,genotype,total,kind) to this path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run every heuristic on a (K, q) grid and write per-cell statistics");
  std::size_t sw_n = 64;
  std::string sw_k = "0,2,4,8,12,16", sw_q = "2,3,4,100", sw_mode = "random", sw_h = "hc,hc2,nc,ss";
  std::uint64_t sw_runs = 100, sw_instances = 10, sw_step_max = 300;
  std::optional<std::uint64_t> sw_seed;
  std::string sw_out, sw_records, sw_profile;
  unsigned sw_threads = 0;
  GenericFlags sw_generic;
  sweep->add_option("--n", sw_n, "number of loci N")->capture_default_str();
  sweep->add_option("--k", sw_k, "comma list of K values")->capture_default_str();
  sweep->add_option("--q", sw_q, "comma list of q values")->capture_default_str();
  sweep->add_option("--mode", sw_mode, "epistasis links: adjacent or random")->capture_default_str();
  sweep->add_option("--heuristics,--heuristic", sw_h, "comma list from hc, hc2, nc, ss, gss")->capture_default_str();
  sweep->add_option("--runs", sw_runs, "runs per cell, spread evenly over the instances")->capture_default_str();
  sweep->add_option("--instances", sw_instances, "landscape instances per (K, q)")->capture_default_str();
  sweep->add_option("--step-max", sw_step_max, "netcrawler proposal budget")->capture_default_str();
  sweep->add_option("--seed", sw_seed, "base seed; drawn from system entropy and printed when absent");
  sweep->add_option("--out", sw_out, "sweep CSV path ('-' or absent: stdout)");
  sweep->add_option("--records", sw_records, "also write one CSV line per run to this path");
  sweep->add_option("--profile", sw_profile, "also write the neutral-move profile of nc/ss runs to this path");
  sweep->add_option("--threads", sw_threads, "worker threads (0: all cores); output does not depend on it");
  sw_generic.add_to(sweep);

  // degn
  auto* degn = app.add_subcommand("degn", "average neutral degree of random genotypes over a (K, q) grid");
  std::size_t dg_n = 64;
  std::string dg_k = "0,2,4,8,12,16", dg_q = "2,3,4,100", dg_mode = "random", dg_out;
  std::uint64_t dg_samples = 1000, dg_instances = 50;
  std::optional<std::uint64_t> dg_seed;
  degn->add_option("--n", dg_n, "number of loci N")->capture_default_str();
  degn->add_option("--k", dg_k, "comma list of K values")->capture_default_str();
  degn->add_option("--q", dg_q, "comma list of q values")->capture_default_str();
  degn->add_option("--mode", dg_mode, "epistasis links: adjacent or random")->capture_default_str();
  degn->add_option("--samples", dg_samples, "genotypes per instance")->capture_default_str();
  degn->add_option("--instances", dg_instances, "landscape instances per (K, q)")->capture_default_str();
  degn->add_option("--seed", dg_seed, "base seed; drawn from system entropy and printed when absent");
  degn->add_option("--out", dg_out, "CSV path ('-' or absent: stdout)");

  // graph
  auto* graph = app.add_subcommand("graph", "export a small landscape (N <= 12) with heuristic paths as DOT");
  LandscapeFlags gr_flags;
  gr_flags.n = 5;
  gr_flags.k = "2";
  std::string gr_heuristic = "ss", gr_out, gr_census;
  gr_flags.add_to(graph, true);
  graph->add_option("--heuristic", gr_heuristic, "paths to draw: hc, hc2, nc or ss")->capture_default_str();
  graph->add_option("--out", gr_out, "DOT path ('-' or absent: stdout)");
  graph->add_option("--census", gr_census, "also write a census CSV (header + one row) to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      const auto seed = resolve_seed(gen_flags.seed);
      const auto l = gen_flags.make(seed);
      emit(gen_out, [&](std::ostream& os) { scuba::serialize(l, os); });
    } else if (*run) {
      const auto seed = resolve_seed(run_flags.seed);
      const auto l = run_flags.make(seed);
      const auto h = parse_heuristics("--heuristic", run_heuristic);
      if (h.size() != 1) throw UsageError("--heuristic: run takes a single heuristic");
      if (run_step_max < 1) throw UsageError("--step-max: must be positive");
      const auto spec = run_generic.spec();
      const auto rseed = scuba::run_seed(seed, l.k(), l.q(), h.front(), 0, 0);
      scuba::Rng rng(rseed);
      scuba::EvalCounter counter;
      const auto start = scuba::random_genotype(rng, l.n());
      const auto r = scuba::run_heuristic(h.front(), l, start, rng, counter, run_step_max, spec, !run_trace.empty());
      std::cout << "heuristic " << scuba::to_string(h.front()) << '\n'
                << "landscape n=" << l.n() << " k=" << l.k() << " q=" << l.q() << " mode=" << to_string(l.mode())
                << " seed=" << l.seed() << '\n'
                << "run_seed " << rseed << '\n'
                << "start " << start.to_string() << " total " << l.fitness(start).total << '\n'
                << "terminal " << r.terminal.to_string() << " total " << r.fitness.total << '\n'
                << "fitness " << std::fixed << std::setprecision(6) << r.fitness.normalized() << '\n'
                << "steps " << r.steps << '\n'
                << "flat_count " << r.flat_count << '\n'
                << "gate_count " << r.gate_count << '\n'
                << "evaluations " << r.evaluations << '\n';
      if (h.front() == scuba::HeuristicKind::netcrawler) std::cout << "last_improvement " << r.last_improvement << '\n';
      if (!run_trace.empty()) {
        scuba::write_file(run_trace, [&](std::ostream& os) {
          os << "step,genotype,total,kind\n";
          for (std::size_t i = 0; i < r.trace.size(); ++i)
            os << i << ',' << r.trace[i].genotype.to_string() << ',' << r.trace[i].total << ','
               << scuba::to_string(r.trace[i].kind) << '\n';
        });
      }
    } else if (*sweep) {
      scuba::SweepConfig cfg;
      cfg.n = sw_n;
      cfg.ks = parse_list<std::size_t>("--k", sw_k);
      cfg.qs = parse_list<scuba::Total>("--q", sw_q);
      check_shape(cfg.n, cfg.ks, cfg.qs);
      cfg.mode = parse_mode(sw_mode);
      cfg.heuristics = parse_heuristics("--heuristics", sw_h);
      if (sw_runs < 1) throw UsageError("--runs: must be at least 1");
      if (sw_instances < 1) throw UsageError("--instances: must be at least 1");
      if (sw_step_max < 1) throw UsageError("--step-max: must be positive");
      cfg.runs = sw_runs;
      cfg.instances = sw_instances;
      cfg.step_max = sw_step_max;
      cfg.generic = sw_generic.spec();
      cfg.seed = resolve_seed(sw_seed);
      cfg.keep_traces = !sw_profile.empty();
      cfg.threads = sw_threads;
      const auto report = scuba::run_sweep(cfg);
      emit(sw_out, [&](std::ostream& os) { scuba::write_csv(report, os); });
      if (!sw_records.empty())
        scuba::write_file(sw_records, [&](std::ostream& os) { scuba::write_records(report, os); });
      if (!sw_profile.empty()) {
        const auto rows = scuba::neutral_mutation_profile(cfg, report);
        scuba::write_file(sw_profile, [&](std::ostream& os) { scuba::write_profile(rows, os); });
      }
    } else if (*degn) {
      const auto ks = parse_list<std::size_t>("--k", dg_k);
      const auto qs = parse_list<scuba::Total>("--q", dg_q);
      check_shape(dg_n, ks, qs);
      const auto mode = parse_mode(dg_mode);
      if (dg_samples < 1) throw UsageError("--samples: must be at least 1");
      if (dg_instances < 1) throw UsageError("--instances: must be at least 1");
      const auto seed = resolve_seed(dg_seed);
      std::vector<scuba::DegreeRow> rows;
      for (auto k : ks)
        for (auto q : qs)
          rows.push_back({dg_n, k, q, scuba::neutral_degree_stats(dg_n, k, q, dg_samples, dg_instances, seed, mode)});
      emit(dg_out, [&](std::ostream& os) { scuba::write_degree_csv(rows, os); });
    } else if (*graph) {
      const auto seed = resolve_seed(gr_flags.seed);
      if (gr_flags.landscape.empty() && gr_flags.n > scuba::kMaxGraphLoci)
        throw UsageError("--n: graph export needs N <= " + std::to_string(scuba::kMaxGraphLoci));
      const auto l = gr_flags.make(seed);
      const auto h = parse_heuristics("--heuristic", gr_heuristic);
      if (h.size() != 1 || h.front() == scuba::HeuristicKind::generic_scuba)
        throw UsageError("--heuristic: graph takes one of hc, hc2, nc, ss");
      const auto annotated = scuba::annotate(scuba::build_graph(l), h.front());
      emit(gr_out, [&](std::ostream& os) { scuba::to_dot(annotated, os); });
      if (!gr_census.empty()) {
        const auto c = scuba::census(l);
        scuba::write_file(gr_census, [&](std::ostream& os) {
          os << scuba::kCensusHeader << '\n';
          scuba::write_census_row(l, c, os);
        });
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return 1;
  } catch (const scuba::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
