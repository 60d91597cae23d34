/*
 * report.cpp
 */

#include "aosearch/report.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace aosearch {

std::string format_number(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_header() {
  return "instance,n,e,w,h,algorithm,heuristic,ibound,seed,status,mpe_log10,mpe_probability,"
         "nodes,cache_hits,cache_entries,time";
}

std::string to_csv(const RunRecord& r, bool omit_time) {
  std::ostringstream out;
  out << r.instance << ',' << r.n << ',' << r.e << ',' << r.induced_width << ',' << r.height << ','
      << to_string(r.algorithm) << ',' << to_string(r.heuristic) << ',' << r.i_bound << ','
      << r.seed << ',' << to_string(r.status) << ',';
  if (r.status == SearchStatus::Solved) {
    out << format_number(r.mpe_log10) << ','
        << (std::isinf(r.mpe_log10) ? std::string("0") : format_number(std::pow(10.0, r.mpe_log10)));
  } else {
    out << "-,-";
  }
  out << ',' << r.nodes << ',' << r.cache_hits << ',' << r.cache_entries << ','
      << (omit_time ? std::string("0") : format_number(r.seconds));
  return out.str();
}

std::vector<Instance> parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open manifest " + path);
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return (fp.is_absolute() ? fp : base / fp).string();
  };
  std::vector<Instance> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string uai, evid;
    if (!(ls >> uai) || uai[0] == '#') continue;
    ls >> evid;
    Instance inst;
    inst.name = std::filesystem::path(uai).stem().string();
    inst.uai_path = resolve(uai);
    if (!evid.empty()) inst.evidence_path = resolve(evid);
    out.push_back(std::move(inst));
  }
  return out;
}

RunRecord run_network(const std::string& name, const BeliefNetwork& net, const Evidence& evidence,
                      const SolverConfig& config, Assignment* original_assignment) {
  BeliefNetwork reduced = apply_evidence(net, evidence);
  SolverReport rep = solve_network(reduced, config);

  RunRecord r;
  r.instance = name;
  r.n = net.num_variables();
  r.e = static_cast<int>(evidence.size());
  r.induced_width = rep.induced_width;
  r.height = rep.height;
  r.algorithm = config.algorithm;
  r.heuristic = config.heuristic;
  r.i_bound = config.i_bound;
  r.seed = config.seed;
  r.status = rep.result.status;
  r.mpe_log10 = rep.result.mpe_log_value / std::numbers::ln10;
  r.nodes = rep.result.stats.nodes_expanded;
  r.cache_hits = rep.result.stats.cache_hits;
  r.cache_entries = rep.result.stats.cache_entries;
  r.seconds = rep.result.stats.seconds;
  if (original_assignment && rep.result.status == SearchStatus::Solved)
    *original_assignment = expand_assignment(reduced, rep.result.assignment, evidence, net.num_variables());
  return r;
}

RunRecord run_instance(const Instance& inst, const SolverConfig& config,
                       Assignment* original_assignment) {
  BeliefNetwork net = load_uai(inst.uai_path);
  Evidence e = inst.evidence_path.empty() ? Evidence{} : load_evidence(inst.evidence_path);
  return run_network(inst.name, net, e, config, original_assignment);
}

BenchResult run_bench(const std::vector<Instance>& instances, const BenchConfig& config) {
  BenchResult out;
  std::map<std::pair<int, int>, std::size_t> slot;
  for (Algorithm a : config.algorithms)
    for (int i : config.i_bounds) {
      slot[{static_cast<int>(a), i}] = out.summaries.size();
      out.summaries.push_back({a, i});
    }

  for (const Instance& inst : instances) {
    std::optional<BeliefNetwork> net;
    Evidence e;
    std::string load_error;
    try {
      net = load_uai(inst.uai_path);
      if (!inst.evidence_path.empty()) e = load_evidence(inst.evidence_path);
    } catch (const std::exception& ex) {
      load_error = ex.what();
    }
    for (Algorithm a : config.algorithms) {
      for (int i : config.i_bounds) {
        SolverConfig sc;
        sc.algorithm = a;
        sc.heuristic = config.heuristic;
        sc.i_bound = i;
        sc.seed = config.seed;
        sc.limits = config.limits;
        RunRecord r;
        if (net) {
          r = run_network(inst.name, *net, e, sc);
        } else {
          // unreadable instance: record it as a failed cell
          r.instance = inst.name;
          r.algorithm = a;
          r.heuristic = config.heuristic;
          r.i_bound = i;
          r.seed = config.seed;
          r.status = SearchStatus::Memout;
        }
        BenchSummary& s = out.summaries[slot[{static_cast<int>(a), i}]];
        ++s.runs;
        if (r.status == SearchStatus::Solved) {
          ++s.solved;
          s.mean_nodes += static_cast<double>(r.nodes);
          s.mean_seconds += r.seconds;
        }
        out.records.push_back(std::move(r));
      }
    }
  }
  for (BenchSummary& s : out.summaries)
    if (s.solved) {
      s.mean_nodes /= s.solved;
      s.mean_seconds /= s.solved;
    }
  return out;
}

void write_bench_csv(std::ostream& out, const BenchResult& bench, HeuristicMode mode, bool omit_time) {
  out << csv_header() << '\n';
  for (const RunRecord& r : bench.records) out << to_csv(r, omit_time) << '\n';
  for (const BenchSummary& s : bench.summaries) {
    if (s.runs == 0) continue;
    out << "mean,-,-,-,-," << to_string(s.algorithm) << ',' << to_string(mode) << ',' << s.i_bound
        << ",-," << (s.solved == s.runs ? "solved" : std::to_string(s.solved) + "/" + std::to_string(s.runs))
        << ",-,-," << (s.solved ? format_number(s.mean_nodes) : "-") << ",-,-,"
        << (omit_time ? std::string("0") : (s.solved ? format_number(s.mean_seconds) : "-")) << '\n';
  }
}

void write_gnuplot(std::ostream& out, const BenchResult& bench) {
  std::map<int, std::vector<const BenchSummary*>> by_i;
  std::vector<Algorithm> algs;
  for (const BenchSummary& s : bench.summaries) {
    by_i[s.i_bound].push_back(&s);
    if (std::find(algs.begin(), algs.end(), s.algorithm) == algs.end()) algs.push_back(s.algorithm);
  }
  out << "# i";
  for (Algorithm a : algs) out << ' ' << to_string(a) << "_time " << to_string(a) << "_nodes";
  out << '\n';
  for (const auto& [i, rows] : by_i) {
    out << i;
    for (Algorithm a : algs)
      for (const BenchSummary* s : rows)
        if (s->algorithm == a) {
          if (s->solved)
            out << ' ' << format_number(s->mean_seconds) << ' ' << format_number(s->mean_nodes);
          else
            out << " - -";
        }
    out << '\n';
  }
}

}  // namespace aosearch
