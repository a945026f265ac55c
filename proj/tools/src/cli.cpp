// Copyright 2026 The pmerge Authors
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

#include "pmerge_cli/cli.hpp"

#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pmerge/bench.hpp"
#include "pmerge/column_model.hpp"
#include "pmerge/constructions.hpp"
#include "pmerge/error.hpp"
#include "pmerge/intervals.hpp"
#include "pmerge/network_io.hpp"
#include "pmerge/parallel.hpp"
#include "pmerge/simulator.hpp"
#include "pmerge/verify.hpp"

namespace pmerge::cli {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::int64_t> read_integers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  std::vector<std::int64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream is(line);
    std::int64_t v = 0;
    std::string rest;
    if (!(is >> v) || (is >> rest)) {
      throw PreconditionError(path + ":" + std::to_string(line_no) + ": not an integer: " + line);
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> parse_counts(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw PreconditionError("bad column count '" + item + "' in --state");
    }
  }
  return out;
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

void print_values(std::ostream& out, const std::vector<std::int64_t>& values) {
  for (std::int64_t v : values) out << v << '\n';
}

struct Common {
  int p = 4;
  int k = 5;
  bool allow_p3 = false;
  bool json = false;
};

void add_params(CLI::App* cmd, Common& c, bool with_p = true) {
  if (with_p) cmd->add_option("--p", c.p, "period p")->required();
  cmd->add_option("--k", c.k, "size exponent k")->required();
  cmd->add_flag("--allow-p3", c.allow_p3, "accept p = 3");
}

int do_build(const Common& c, const std::string& target, const std::string& format,
             const std::string& out_path, std::ostream& out) {
  Network net;
  std::string name;
  if (target == "cw") {
    if (c.k < 1 || c.k > kMaxExponent) throw ParameterError("cw needs 1 <= k <= 24");
    net = build_cw(c.k);
    name = "CW_" + std::to_string(c.k);
  } else {
    const NetworkParams prm = params(c.p, c.k, c.allow_p3);
    net = target == "p" ? build_p(prm) : build_m(prm);
    name = (target == "p" ? "P_" : "M_") + std::to_string(c.p) + "_" + std::to_string(c.k);
  }
  std::string text;
  if (format == "json") {
    text = network_to_json(net) + "\n";
  } else if (format == "dot") {
    text = network_to_dot(net, name);
  } else {
    text = network_to_listing(net);
  }
  emit(out, text, out_path);
  return kOk;
}

int do_merge(const Common& c, const std::string& a_path, const std::string& b_path,
             std::ostream& out) {
  const NetworkParams prm = params(c.p, c.k, c.allow_p3);
  const auto a = read_integers(a_path);
  const auto b = read_integers(b_path);
  const PeriodicMerger merger(prm);
  const auto merged = merger.merge(a, b);
  if (c.json) {
    json j;
    j["p"] = c.p;
    j["k"] = c.k;
    j["passes"] = prm.merge_passes();
    j["stages"] = prm.merge_stages();
    j["output"] = merged;
    out << j.dump() << '\n';
  } else {
    print_values(out, merged);
  }
  return kOk;
}

int do_sort(const Common& c, const std::string& input, std::optional<std::uint64_t> random_seed,
            std::ostream& out) {
  const NetworkParams prm = params(c.p, c.k, c.allow_p3);
  std::vector<std::int64_t> values;
  if (random_seed) {
    values.resize(static_cast<std::size_t>(prm.registers));
    std::iota(values.begin(), values.end(), 1);
    auto rng = substream(*random_seed, 0);
    for (std::size_t i = values.size() - 1; i > 0; --i) {
      std::swap(values[i], values[rng() % (i + 1)]);
    }
  } else {
    values = read_integers(input);
  }
  const auto trace = PeriodicMerger(prm).sort_until_done(std::move(values));
  if (c.json) {
    json j;
    j["p"] = c.p;
    j["k"] = c.k;
    j["stages_executed"] = trace.stages_executed;
    j["passes_executed"] = trace.passes_executed;
    j["output"] = trace.final_values;
    out << j.dump() << '\n';
  } else {
    out << "stages " << trace.stages_executed << " passes " << trace.passes_executed << '\n';
    print_values(out, trace.final_values);
  }
  return kOk;
}

int do_verify(const Common& c, const std::string& claim, const CampaignOptions& opt,
              std::ostream& out) {
  params(c.p, c.k);
  std::vector<VerificationReport> reports;
  if (claim == "all") {
    reports = verify_all(c.p, c.k, opt);
  } else if (claim == "merger") {
    reports.push_back(verify_merger(c.p, c.k, opt));
  } else if (claim == "cw") {
    reports.push_back(verify_cw(c.k, opt));
  } else if (claim == "columns") {
    reports.push_back(verify_column_equivalence(c.p, c.k, opt));
  } else if (claim == "theorems") {
    reports.push_back(verify_column_theorems(c.p, c.k, opt));
  } else {
    reports.push_back(verify_structure(c.p, c.k));
  }
  bool ok = true;
  if (c.json) {
    out << '[';
    for (std::size_t i = 0; i < reports.size(); ++i) {
      out << (i ? "," : "") << report_to_json(reports[i]);
    }
    out << "]\n";
  } else {
    for (const auto& r : reports) out << report_to_text(r);
  }
  for (const auto& r : reports) ok = ok && r.passed();
  return ok ? kOk : kClaimFailed;
}

int do_abstract(const Common& c, const std::string& state, std::uint64_t seed,
                std::optional<std::int64_t> steps_opt, bool trace, std::ostream& out) {
  const NetworkParams prm = params(c.p, c.k, c.allow_p3);
  const ColumnDynamics dyn(prm);
  const StateSequences seqs(prm);
  ColumnState cur;
  if (state.empty()) {
    auto rng = substream(seed, 0);
    cur = TwoFlatEnumeration(prm).random_balanced(rng);
  } else {
    cur = make_column_state(prm, parse_counts(state));
  }
  const std::int64_t steps = steps_opt.value_or(prm.merge_stages());
  if (steps < 0) throw PreconditionError("--steps must be non-negative");

  json rows = json::array();
  auto record = [&](std::int64_t i) {
    json row;
    row["step"] = i;
    row["state"] = to_string(cur);
    if (is_balanced(cur)) {
      const ReducedState d = reduce(cur);
      row["reduced"] = to_string(d);
      if (i >= 1 && i <= seqs.last_index()) {
        const auto xi = seqs.x(i);
        row["descriptor"] = to_string(xi, c.k);
        row["contained"] = contained(d, xi, c.k);
      }
    }
    if (c.json) {
      rows.push_back(row);
      return;
    }
    out << "step " << i << ": " << row["state"].get<std::string>();
    if (row.contains("reduced")) out << " reduced " << row["reduced"].get<std::string>();
    if (row.contains("descriptor")) {
      out << " in X" << (row["contained"].get<bool>() ? " " : " VIOLATED ")
          << row["descriptor"].get<std::string>();
    }
    if (!row.contains("reduced")) out << " unbalanced";
    out << '\n';
  };

  bool ok = true;
  if (trace) record(0);
  for (std::int64_t i = 1; i <= steps; ++i) {
    cur = dyn.q_stage(dyn.stage_of_step(i), cur);
    if (is_balanced(cur) && i <= seqs.last_index() && !contained(reduce(cur), seqs.x(i), c.k)) {
      ok = false;
    }
    if (trace || i == steps) record(i);
  }
  if (steps == 0 && !trace) record(0);
  if (c.json) {
    json j;
    j["p"] = c.p;
    j["k"] = c.k;
    j["steps"] = steps;
    j["flat"] = is_flat(cur);
    j["trace"] = rows;
    out << j.dump() << '\n';
  } else {
    out << (is_flat(cur) ? "flat" : "not flat") << " after " << steps << " steps\n";
  }
  return ok ? kOk : kClaimFailed;
}

int do_bench(const Common& c, const std::vector<int>& ps, const std::vector<int>& ks,
             std::uint64_t trials, std::uint64_t seed, const std::string& out_path,
             const std::string& svg_path, bool merging, std::ostream& out) {
  if (merging) {
    emit(out, merging_table_csv(ps, ks, c.allow_p3), out_path);
    return kOk;
  }
  std::vector<BenchResult> results;
  for (int p : ps) {
    for (int k : ks) {
      if (k < p) continue;
      results.push_back(bench_sort(p, k, trials, seed, c.allow_p3));
    }
  }
  if (results.empty()) throw ParameterError("no (p, k) pair with p <= k in the grid");
  if (c.json) {
    json j = json::array();
    for (const auto& r : results) {
      j.push_back({{"p", r.p},
                   {"k", r.k},
                   {"N", r.registers},
                   {"trials", r.trials},
                   {"seed", r.seed},
                   {"avg_stages", r.avg_stages},
                   {"max_stages", r.max_stages},
                   {"avg_passes", r.avg_passes},
                   {"max_passes", r.max_passes},
                   {"log2N_sq", r.log2n_squared}});
    }
    out << j.dump() << '\n';
    if (!out_path.empty()) write_text_file(out_path, results_to_csv(results));
  } else {
    emit(out, results_to_csv(results), out_path);
  }
  if (!svg_path.empty()) write_text_file(svg_path, results_to_svg(results));
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic merging and sorting networks: build, simulate, verify, benchmark."};
  app.name("pmerge");
  app.require_subcommand(1, 1);

  Common common;

  auto* build = app.add_subcommand("build", "emit a network");
  std::string target = "m";
  std::string format = "json";
  std::string build_out;
  build->add_option("--p", common.p, "period p (ignored for cw)");
  build->add_option("--k", common.k, "size exponent k")->required();
  build->add_flag("--allow-p3", common.allow_p3, "accept p = 3");
  build->add_option("--target", target, "cw | p | m")
      ->check(CLI::IsMember({"cw", "p", "m"}));
  build->add_option("--format", format, "json | dot | stages")
      ->check(CLI::IsMember({"json", "dot", "stages"}));
  build->add_option("--out", build_out, "write to a file instead of stdout");

  auto* merge_cmd = app.add_subcommand("merge", "merge two sorted files of N/2 integers");
  std::string a_path;
  std::string b_path;
  add_params(merge_cmd, common);
  merge_cmd->add_option("--a", a_path, "first sorted sequence, one integer per line")
      ->required();
  merge_cmd->add_option("--b", b_path, "second sorted sequence")->required();
  merge_cmd->add_flag("--json", common.json, "JSON output");

  auto* sort_cmd = app.add_subcommand("sort", "sort N integers with early stopping");
  std::string input;
  std::optional<std::uint64_t> random_seed;
  add_params(sort_cmd, common);
  auto* input_opt = sort_cmd->add_option("--input", input, "one integer per line");
  auto* random_opt = sort_cmd->add_option("--random", random_seed, "random permutation seed");
  input_opt->excludes(random_opt);
  sort_cmd->add_flag("--json", common.json, "JSON output");

  auto* verify = app.add_subcommand("verify", "run verification campaigns");
  std::string claim = "all";
  CampaignOptions opt;
  add_params(verify, common);
  verify->add_option("--claim", claim, "merger | cw | columns | theorems | structure | all")
      ->check(CLI::IsMember({"merger", "cw", "columns", "theorems", "structure", "all"}));
  verify->add_option("--trials", opt.trials, "random column states")->capture_default_str();
  verify->add_option("--samples", opt.samples, "random cw / 2-flat samples")
      ->capture_default_str();
  verify->add_option("--seed", opt.seed, "campaign seed")->capture_default_str();
  verify->add_option("--budget", opt.budget_seconds, "seconds per claim, 0 = unlimited")
      ->capture_default_str();
  verify->add_flag("--json", common.json, "JSON output");

  auto* abstract = app.add_subcommand("abstract", "run the column-count dynamics");
  std::string state;
  std::uint64_t abstract_seed = 1;
  std::optional<std::int64_t> steps;
  bool trace = false;
  add_params(abstract, common);
  abstract->add_option("--state", state, "comma-separated column counts c_1..c_b");
  abstract->add_option("--seed", abstract_seed, "seed for a random balanced 2-flat state")
      ->capture_default_str();
  abstract->add_option("--steps", steps, "steps to run, default p(b-1)");
  abstract->add_flag("--trace", trace, "print every step");
  abstract->add_flag("--json", common.json, "JSON output");

  auto* bench = app.add_subcommand("bench", "early-stopped sorting times of random permutations");
  std::vector<int> ps{4};
  std::vector<int> ks{9};
  std::uint64_t trials = 1000;
  std::uint64_t bench_seed = 1;
  std::string bench_out;
  std::string svg_path;
  bool merging = false;
  bench->add_option("--p", ps, "periods, e.g. 4,5")->delimiter(',');
  bench->add_option("--k", ks, "size exponents, e.g. 9,10")->delimiter(',');
  bench->add_option("--trials", trials, "permutations per (p, k)")->capture_default_str();
  bench->add_option("--seed", bench_seed, "seed")->capture_default_str();
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");
  bench->add_option("--svg", svg_path, "SVG chart output file");
  bench->add_flag("--merging", merging, "print the merging-time table instead");
  bench->add_flag("--allow-p3", common.allow_p3, "accept p = 3");
  bench->add_flag("--json", common.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (build->parsed()) return do_build(common, target, format, build_out, out);
    if (merge_cmd->parsed()) return do_merge(common, a_path, b_path, out);
    if (sort_cmd->parsed()) {
      if (input.empty() && !random_seed) {
        throw PreconditionError("sort needs --input FILE or --random SEED");
      }
      return do_sort(common, input, random_seed, out);
    }
    if (verify->parsed()) return do_verify(common, claim, opt, out);
    if (abstract->parsed()) return do_abstract(common, state, abstract_seed, steps, trace, out);
    if (bench->parsed()) {
      if (trials == 0) throw PreconditionError("--trials must be at least 1");
      return do_bench(common, ps, ks, trials, bench_seed, bench_out, svg_path, merging, out);
    }
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << '\n';
    return kClaimFailed;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kUsageError;
  } catch (const PreconditionError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConstructionError& e) {
    err << "construction error: " << e.what() << '\n';
    return kClaimFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace pmerge::cli
