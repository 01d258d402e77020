// Copyright 2026 The qanneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// qanneal command-line tool. Every stage reads and writes plain text files
// so intermediate artifacts can be inspected or swapped.
//
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 contract violation,
// 4 solver or schedule error, 5 embedding not found, 6 instance or domain
// error.

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "qanneal/qanneal.hpp"

namespace {

using namespace qanneal;

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kContract = 3, kSolver = 4, kEmbedding = 5, kInstance = 6 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::FileError::Missing(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::FileError("cannot write " + path);
  out << text;
}

std::string join_bits(std::span<const Binary> x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(int(x[i]));
  return s;
}

bool starts_with_keyword(const std::string& text, std::initializer_list<std::string_view> words) {
  std::string_view first;
  detail::for_each_line(text, '#', [&](std::size_t, std::string_view line) {
    if (!first.empty()) return;
    auto tok = detail::split_ws(line);
    if (!tok.empty()) first = tok[0];
  });
  for (auto w : words)
    if (first == w) return true;
  return false;
}

// Model files (`ising n` / `qubo n`) or quadratic polynomials.
IsingModel load_ising(const std::string& path) {
  const std::string text = read_file(path);
  if (starts_with_keyword(text, {"ising", "qubo"})) {
    auto model = parse_model(text);
    if (auto* q = std::get_if<Qubo>(&model)) return qubo_to_ising(*q);
    return std::get<IsingModel>(model);
  }
  return qubo_to_ising(qubo_from_pbf(parse_pbf(text)));
}

// ---------------------------------------------------------------------------
// Shared option groups

struct SolverFlags {
  std::string solver = "sa";
  std::size_t readouts = 1000;
  std::uint64_t seed = 1;
  SaSchedule sa;
  SqaSchedule sqa;
  std::optional<std::size_t> sweeps;
  std::size_t levels = 1;

  void attach(CLI::App* app) {
    app->add_option("--solver", solver, "bf, sa or sqa")->check(CLI::IsMember({"bf", "sa", "sqa"}))->capture_default_str();
    app->add_option("--readouts", readouts, "anneal-readout cycles")->capture_default_str();
    app->add_option("--seed", seed, "master seed")->capture_default_str();
    app->add_option("--t0", sa.t0, "SA initial temperature")->capture_default_str();
    app->add_option("--cooling", sa.cooling, "SA cooling factor")->capture_default_str();
    app->add_option("--steps", sa.temperature_steps, "SA temperature steps")->capture_default_str();
    app->add_option("--sweeps", sweeps, "SA sweeps per temperature, or SQA sweeps");
    app->add_option("--trotter", sqa.trotter_slices, "SQA Trotter slices")->capture_default_str();
    app->add_option("--gamma0", sqa.gamma0, "SQA initial transverse field")->capture_default_str();
    app->add_option("--gamma-final", sqa.gamma_final, "SQA final transverse field")->capture_default_str();
    app->add_option("--temp", sqa.temperature, "SQA temperature")->capture_default_str();
    app->add_option("--levels", levels, "bf: lowest energy levels kept (0 = all)")->capture_default_str();
  }

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.kind = solver == "bf"    ? SolverKind::brute_force
               : solver == "sqa" ? SolverKind::simulated_quantum_annealing
                                 : SolverKind::simulated_annealing;
    cfg.readouts = readouts;
    cfg.sa = sa;
    cfg.sqa = sqa;
    if (sweeps) {
      cfg.sa.sweeps_per_temperature = *sweeps;
      cfg.sqa.sweeps = *sweeps;
    }
    cfg.bf.levels = levels;
    return cfg;
  }
};

struct ChimeraFlags {
  bool embed = false;
  std::size_t M = 4, N = 4, L = 4;
  std::string inoperable;
  std::optional<double> chain_strength;
  std::string embedding_out;

  void attach(CLI::App* app, bool with_switch) {
    if (with_switch) {
      app->add_flag("--embed", embed, "solve on a Chimera graph through a minor embedding");
      app->add_option("--embedding-out", embedding_out, "write the embedding file here");
    }
    app->add_option("-M", M, "Chimera rows")->capture_default_str();
    app->add_option("-N", N, "Chimera columns")->capture_default_str();
    app->add_option("-L", L, "qubits per cell shore")->capture_default_str();
    app->add_option("--inoperable", inoperable, "file listing inoperable qubit ids")->check(CLI::ExistingFile);
    app->add_option("--chain-strength", chain_strength, "chain coupler magnitude M (default from the model)");
  }

  ChimeraGraph graph() const {
    std::set<Qubit> dead;
    if (!inoperable.empty()) dead = parse_qubit_list(read_file(inoperable));
    return build_chimera(M, N, L, dead);
  }
};

struct TtsFlags {
  std::optional<double> target;
  double anneal_time = 20e-6;

  void attach(CLI::App* app) {
    app->add_option("--target-p", target, "report time to solution at this confidence");
    app->add_option("--anneal-time", anneal_time, "seconds per anneal for the TTS report")->capture_default_str();
  }
};

void print_embedding_stats(std::ostream& out, const EmbeddedIsing& em, const ChimeraGraph& c) {
  out << "chimera " << c.rows() << "x" << c.cols() << "x" << c.shore_size() << ": " << em.embedding.chains.size()
      << " logical variables on " << em.embedding.num_qubits() << " physical qubits, longest chain "
      << em.embedding.max_chain_length() << ", chain strength " << detail::format_real(em.chain_strength) << "\n";
}

struct Solved {
  SampleSet logical;
  std::optional<double> chain_break_rate;
};

Solved run_solver(const IsingModel& m, const SolverFlags& sf, const ChimeraFlags& cf) {
  const auto cfg = sf.config();
  if (!cf.embed) return {solve(m, cfg, sf.seed), std::nullopt};
  const auto c = cf.graph();
  const auto e = find_embedding(LogicalGraph::from_ising(m), c, {.seed = sf.seed});
  const auto em = embed_weights(m, e, c, cf.chain_strength.value_or(default_chain_strength(m)));
  print_embedding_stats(std::cout, em, c);
  if (!cf.embedding_out.empty()) write_output(cf.embedding_out, render_embedding(e));
  auto r = solve_embedded(em, cfg, sf.seed);
  return {std::move(r.logical), r.chain_break_rate};
}

void print_solver_header(const SolverFlags& sf, const SampleSet& s) {
  std::cout << "solver " << sf.solver << ", " << s.readouts() << " readouts, seed " << sf.seed << "\n";
}

void print_tts(const TtsFlags& tf, double hits, double readouts) {
  if (!tf.target) return;
  try {
    auto r = time_to_solution(hits, readouts, tf.anneal_time, *tf.target);
    std::cout << "time to solution: p_s " << detail::format_real(r.success_probability) << ", R_P "
              << r.repetitions << ", t " << detail::format_real(r.total_time) << " s\n";
  } catch (const UndefinedTts&) {
    std::cout << "time to solution: infinite (best level never sampled)\n";
  }
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_reduce(const std::string& in, const std::string& out, const std::string& sidecar) {
  const auto rec = reduce_to_quadratic(parse_pbf(read_file(in)));
  write_output(out, render_pbf(rec.result));
  if (!sidecar.empty()) write_output(sidecar, render_sidecar(rec));
  std::cerr << rec.original_vars << " original + " << rec.auxiliary.size() << " auxiliary = " << rec.total_vars()
            << " variables\n";
}

void cmd_to_ising(const std::string& in, const std::string& out, bool as_qubo) {
  const auto f = parse_pbf(read_file(in));
  const auto q = qubo_from_pbf(f);
  write_output(out, as_qubo ? render_model(q) : render_model(qubo_to_ising(q)));
}

void cmd_encode(const std::string& in, const std::string& out, std::optional<double> lambda) {
  const std::string text = read_file(in);
  if (starts_with_keyword(text, {"tree"})) {
    const auto enc = encode_mmc_tree(parse_tree(text), lambda);
    std::string header = "# " + std::to_string(enc.num_vars()) + " edge variables, lambda " +
                         detail::format_real(enc.lambda) + "\n";
    for (std::size_t j = 0; j < enc.num_vars(); ++j)
      header += "# x" + std::to_string(j + 1) + " = edge " + std::to_string(enc.edge_of_var[j] + 1) + "\n";
    write_output(out, header + render_pbf(enc.objective));
  } else {
    write_output(out, render_pbf(encode_maxsat(parse_dimacs(text))));
  }
}

void cmd_embed(const std::string& in, const std::string& out, const ChimeraFlags& cf, std::uint64_t seed) {
  const auto m = load_ising(in);
  const auto c = cf.graph();
  const auto e = find_embedding(LogicalGraph::from_ising(m), c, {.seed = seed});
  const auto em = embed_weights(m, e, c, cf.chain_strength.value_or(default_chain_strength(m)));
  write_output(out, render_embedding(e));
  print_embedding_stats(out.empty() || out == "-" ? std::cerr : std::cout, em, c);
}

void cmd_solve(const std::string& in, const SolverFlags& sf, const ChimeraFlags& cf, const std::string& csv) {
  const auto m = load_ising(in);
  const auto r = run_solver(m, sf, cf);
  const auto& s = r.logical;
  print_solver_header(sf, s);
  if (r.chain_break_rate) std::cout << "chain break rate " << detail::format_real(*r.chain_break_rate) << "\n";
  const auto& best = s.lowest();
  std::cout << "lowest energy " << detail::format_real(best.energy) << " (adjusted "
            << detail::format_real(best.energy + s.offset()) << "), frequency " << best.frequency << "\n";
  std::cout << "best x = " << join_bits(to_binary(best.spins)) << "\n\n";
  const auto h = histogram(s);
  std::cout << render_table(h);
  if (csv.empty()) {
    std::cout << "\n" << render_csv(h);
  } else {
    write_output(csv, render_csv(h));
  }
}

// Solves a polynomial objective on its first n variables. bf enumerates
// the polynomial itself; the samplers run on the reduced Ising model and
// every readout is rescored on the original polynomial.
struct DomainSamples {
  SampleSet ising;                                  // as sampled
  std::map<std::vector<Binary>, std::size_t> hits;  // original variables -> frequency
  std::optional<double> chain_break_rate;
};

DomainSamples sample_objective(const PseudoBooleanFunction& f, const SolverFlags& sf, const ChimeraFlags& cf) {
  DomainSamples out;
  const std::size_t n = f.num_vars();
  if (sf.solver == "bf" && !cf.embed) {
    out.ising = brute_force(f, {.levels = sf.levels});
  } else {
    const auto rec = reduce_to_quadratic(f);
    auto r = run_solver(qubo_to_ising(qubo_from_pbf(rec.result)), sf, cf);
    out.ising = std::move(r.logical);
    out.chain_break_rate = r.chain_break_rate;
  }
  for (const auto& e : out.ising.entries()) {
    auto x = to_binary(e.spins);
    x.resize(n);
    out.hits[x] += e.frequency;
  }
  return out;
}

void cmd_maxsat(const std::string& in, const SolverFlags& sf, const ChimeraFlags& cf, const TtsFlags& tf) {
  const auto cnf = parse_dimacs(read_file(in));
  const auto h = encode_maxsat(cnf);
  const auto d = sample_objective(h, sf, cf);
  print_solver_header(sf, d.ising);
  if (d.chain_break_rate) std::cout << "chain break rate " << detail::format_real(*d.chain_break_rate) << "\n";

  std::size_t best_sat = 0, best_hits = 0;
  std::vector<Binary> best;
  for (const auto& [x, freq] : d.hits) {
    const std::size_t sat = count_satisfied(cnf, x);
    if (best.empty() || sat > best_sat) {
      best_sat = sat;
      best = x;
      best_hits = 0;
    }
    if (sat == best_sat) best_hits += freq;
  }
  std::cout << "best assignment x = " << join_bits(best) << "\n";
  std::cout << "satisfied " << best_sat << "/" << cnf.clauses.size() << " clauses, frequency " << best_hits << "\n\n";
  std::cout << render_table(histogram(d.ising));
  print_tts(tf, static_cast<double>(best_hits), static_cast<double>(d.ising.readouts()));
}

void cmd_mmc(const std::string& in, const SolverFlags& sf, const ChimeraFlags& cf, const TtsFlags& tf,
             std::optional<double> lambda, std::size_t top) {
  const auto tree = parse_tree(read_file(in));
  const auto enc = encode_mmc_tree(tree, lambda);
  if (enc.num_vars() == 0) {
    std::cout << "no terminal pairs: the empty cut is optimal\n";
    return;
  }
  const auto d = sample_objective(enc.objective, sf, cf);
  print_solver_header(sf, d.ising);
  if (d.chain_break_rate) std::cout << "chain break rate " << detail::format_real(*d.chain_break_rate) << "\n";

  struct Row {
    double objective;
    MmcDecoding cut;
    std::size_t frequency;
  };
  std::vector<Row> rows;
  for (const auto& [x, freq] : d.hits) rows.push_back({enc.objective.evaluate(x), decode_mmc(tree, enc, x), freq});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.cut.valid != b.cut.valid) return a.cut.valid;
    return a.objective < b.objective;
  });

  std::size_t best_hits = 0;
  if (!rows.empty() && rows.front().cut.valid) {
    const auto& b = rows.front();
    for (const auto& r : rows)
      if (r.cut.valid && r.objective == b.objective) best_hits += r.frequency;
    std::cout << "best valid cut: size " << b.cut.size() << ", edges {";
    for (std::size_t i = 0; i < b.cut.cut.size(); ++i) std::cout << (i ? "," : "") << "e" << b.cut.cut[i] + 1;
    std::cout << "}\n";
  } else {
    std::cout << "no valid cut sampled\n";
  }

  std::cout << "\n objective  size  valid  frequency  cut\n";
  for (std::size_t i = 0; i < rows.size() && i < top; ++i) {
    const auto& r = rows[i];
    std::ostringstream cut;
    for (std::size_t k = 0; k < r.cut.cut.size(); ++k) cut << (k ? "," : "") << "e" << r.cut.cut[k] + 1;
    std::cout << std::setw(10) << detail::format_real(r.objective) << std::setw(6) << r.cut.size() << std::setw(7)
              << (r.cut.valid ? "yes" : "no") << std::setw(11) << r.frequency << "  {" << cut.str() << "}\n";
  }

  const std::size_t n = enc.num_vars();
  HistogramOptions opt;
  opt.keep = [&](const Sample& s) {
    auto x = to_binary(s.spins);
    x.resize(n);
    return decode_mmc(tree, enc, x).valid;
  };
  std::cout << "\nvalid-cut energy levels\n" << render_table(histogram(d.ising, opt));
  print_tts(tf, static_cast<double>(best_hits), static_cast<double>(d.ising.readouts()));
}

void cmd_tts(double hits, double readouts, double anneal_time, double target) {
  const auto r = time_to_solution(hits, readouts, anneal_time, target);
  std::cout << "p_s " << detail::format_real(r.success_probability) << "\n"
            << "R_P " << r.repetitions << "\n"
            << "t_QA " << detail::format_real(r.total_time) << " s\n";
}

void cmd_machine_time(double program_us, double anneal_us, double readout_us, std::uint64_t reps) {
  auto ns = [](double us) {
    return std::chrono::nanoseconds(static_cast<std::int64_t>(std::llround(us * 1000.0)));
  };
  const auto t = machine_time({ns(program_us), ns(anneal_us), ns(readout_us), reps});
  std::cout << "T(" << reps << ") = " << detail::format_real(to_seconds(t) * 1000.0) << " ms\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Annealing pipeline: encode, reduce, embed and sample pseudo-Boolean problems"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  std::string in, out, sidecar, csv;
  SolverFlags sf;
  ChimeraFlags cf;
  TtsFlags tf;
  std::optional<double> lambda;
  bool as_qubo = false;
  std::size_t top = 10;

  auto* reduce = app.add_subcommand("reduce", "quadratize a polynomial file");
  reduce->add_option("input", in, "polynomial file")->required()->check(CLI::ExistingFile);
  reduce->add_option("-o,--output", out, "output polynomial (default stdout)");
  reduce->add_option("--sidecar", sidecar, "write the auxiliary-variable listing here");

  auto* to_ising = app.add_subcommand("to-ising", "convert a quadratic polynomial to an Ising model file");
  to_ising->add_option("input", in, "quadratic polynomial file")->required()->check(CLI::ExistingFile);
  to_ising->add_option("-o,--output", out, "output model (default stdout)");
  to_ising->add_flag("--qubo", as_qubo, "write a QUBO model file instead");

  auto* encode = app.add_subcommand("encode", "encode a DIMACS CNF or tree multicut instance as a polynomial");
  encode->add_option("input", in, "instance file")->required()->check(CLI::ExistingFile);
  encode->add_option("-o,--output", out, "output polynomial (default stdout)");
  encode->add_option("--lambda", lambda, "multicut penalty weight (default: number of pairs)");

  auto* embed = app.add_subcommand("embed", "find a Chimera minor embedding for a model");
  embed->add_option("input", in, "model or quadratic polynomial file")->required()->check(CLI::ExistingFile);
  embed->add_option("-o,--output", out, "embedding file (default stdout)");
  embed->add_option("--seed", sf.seed, "embedding seed")->capture_default_str();
  cf.attach(embed, false);

  auto* solve_cmd = app.add_subcommand("solve", "sample a model and print its energy histogram");
  solve_cmd->add_option("input", in, "model or quadratic polynomial file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--csv", csv, "write the CSV histogram here instead of stdout");
  sf.attach(solve_cmd);
  cf.attach(solve_cmd, true);

  auto* maxsat = app.add_subcommand("maxsat", "solve max-SAT on a DIMACS CNF file");
  maxsat->add_option("input", in, "DIMACS CNF file")->required()->check(CLI::ExistingFile);
  sf.attach(maxsat);
  cf.attach(maxsat, true);
  tf.attach(maxsat);

  auto* mmc = app.add_subcommand("mmc", "solve minimum multicut on a tree instance");
  mmc->add_option("input", in, "tree instance file")->required()->check(CLI::ExistingFile);
  mmc->add_option("--lambda", lambda, "penalty weight (default: number of pairs)");
  mmc->add_option("--top", top, "distinct decoded solutions to list")->capture_default_str();
  sf.attach(mmc);
  cf.attach(mmc, true);
  tf.attach(mmc);

  double hits = 0, readouts = 0, anneal_time = 0, target = 0.99;
  auto* tts = app.add_subcommand("tts", "time to solution from a ground-state count");
  tts->add_option("--gs", hits, "ground-state readouts (may be an average)")->required();
  tts->add_option("--readouts", readouts, "total readouts")->required();
  tts->add_option("--anneal-time", anneal_time, "seconds per anneal")->required();
  tts->add_option("--target-p", target, "confidence")->capture_default_str();

  double program_us = 0, anneal_us = 0, readout_us = 0;
  std::uint64_t reps = 0;
  auto* mt = app.add_subcommand("machine-time", "T(R) = t_program + R (t_anneal + t_readout)");
  mt->add_option("--program-us", program_us, "programming time, microseconds")->required();
  mt->add_option("--anneal-us", anneal_us, "anneal time, microseconds")->required();
  mt->add_option("--readout-us", readout_us, "readout time, microseconds")->required();
  mt->add_option("-R,--repetitions", reps, "anneal-readout cycles")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*reduce) cmd_reduce(in, out, sidecar);
    if (*to_ising) cmd_to_ising(in, out, as_qubo);
    if (*encode) cmd_encode(in, out, lambda);
    if (*embed) cmd_embed(in, out, cf, sf.seed);
    if (*solve_cmd) cmd_solve(in, sf, cf, csv);
    if (*maxsat) cmd_maxsat(in, sf, cf, tf);
    if (*mmc) cmd_mmc(in, sf, cf, tf, lambda, top);
    if (*tts) cmd_tts(hits, readouts, anneal_time, target);
    if (*mt) cmd_machine_time(program_us, anneal_us, readout_us, reps);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const DimensionError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const ScheduleError& e) {
    std::cerr << "schedule error: " << e.what() << "\n";
    return kSolver;
  } catch (const SizeError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const UndefinedTts& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const EmbeddingNotFound& e) {
    std::cerr << "embedding not found: " << e.what() << "\n";
    return kEmbedding;
  } catch (const InstanceError& e) {
    std::cerr << "instance error: " << e.what() << "\n";
    return kInstance;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kInstance;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
