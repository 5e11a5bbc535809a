// Command-line surface: decomposition plans, transpose-order pattern
// analysis, closed-form baseline comparisons, and simulated parallel FFT
// runs with traffic validation.
//
// Exit codes: 0 success, 2 invalid configuration, 3 infeasible parallelism
// (a rank's ownership would split a 1-D FFT line).

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fftdecomp/commcost.hpp"
#include "fftdecomp/layout.hpp"
#include "fftdecomp/orders.hpp"
#include "fftdecomp/prng.hpp"
#include "fftdecomp/simulator.hpp"

using json = nlohmann::json;
using namespace fftdecomp;

namespace {

constexpr int kBytesPerPoint = 16;  // double-precision complex

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  bool ellipsis = false;
  while (std::getline(ss, tok, ',')) {
    if (tok == "...") {
      ellipsis = true;
      continue;
    }
    const std::int64_t v = std::stoll(tok);
    if (ellipsis) {
      // geometric continuation: keep multiplying by the preceding step ratio
      if (out.size() < 1) throw std::invalid_argument("'...' needs a preceding value");
      const std::int64_t ratio =
          out.size() >= 2 && out[out.size() - 1] % out[out.size() - 2] == 0
              ? out[out.size() - 1] / out[out.size() - 2]
              : 2;
      if (ratio < 2) throw std::invalid_argument("'...' needs a growing sequence");
      for (std::int64_t next = out.back() * ratio; next <= v; next *= ratio) {
        out.push_back(next);
      }
      ellipsis = false;
    } else {
      out.push_back(v);
    }
  }
  if (ellipsis) throw std::invalid_argument("'...' needs a bound after it");
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

Shape parse_shape(const std::string& text) {
  return Shape{parse_int_list(text)};
}

TransposeSequence parse_order(const std::string& text) {
  TransposeSequence seq;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) seq.layouts.push_back(Layout::parse(tok));
  if (auto violation = validate_sequence(seq)) {
    throw std::invalid_argument("invalid order '" + text + "': " + *violation);
  }
  return seq;
}

std::string fmt_ratio(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// integers print unquoted; fractional closed forms keep two decimals
std::string fmt_amount(double v) {
  if (v == static_cast<double>(static_cast<std::int64_t>(v))) {
    return std::to_string(static_cast<std::int64_t>(v));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << content;
}

int cmd_plan(const std::string& shape_s, const std::string& order_s, std::int64_t np,
             const std::string& out_path) {
  const Shape shape = parse_shape(shape_s);
  const TransposeSequence seq = parse_order(order_s);
  if (seq.order() != shape.order()) {
    throw std::invalid_argument("order dimensionality does not match shape");
  }
  json plan;
  plan["shape"] = shape.dims;
  plan["np"] = np;
  plan["layouts"] = json::array();
  for (const auto& layout : seq.layouts) {
    const DecompContext ctx(shape, layout, np);
    json jl;
    jl["order"] = layout.str();
    jl["ranks"] = json::array();
    for (std::int64_t r = 0; r < np; ++r) {
      const RankRange rr = rank_range(ctx, r);
      json jr;
      jr["myid"] = r;
      jr["start"] = rr.start;
      jr["end"] = rr.end;
      jr["count"] = rr.count();
      if (!rr.empty()) {
        const auto [cs, ce] = rank_corner_coords(ctx, r);
        jr["start_coord"] = cs;
        jr["end_coord"] = ce;
      }
      jl["ranks"].push_back(std::move(jr));
    }
    plan["layouts"].push_back(std::move(jl));
  }
  write_output(out_path, plan.dump(2) + "\n");
  return 0;
}

int cmd_analyze(int m, const std::string& shape_s, std::int64_t n, const std::string& np_s,
                bool exhaustive, std::int64_t samples, std::uint64_t seed,
                const std::string& model_s, bool bytes, const std::string& out_path) {
  const Shape shape = shape_s.empty() ? Shape{std::vector<std::int64_t>(m, n)}
                                      : parse_shape(shape_s);
  if (m == 5 && !exhaustive && samples <= 0) {
    throw std::invalid_argument("m=5 needs --exhaustive or a positive --sample count");
  }
  AnalyzeOptions opts;
  opts.exhaustive = exhaustive;
  opts.samples = samples;
  opts.seed = seed;
  opts.model = model_s == "closed-form" ? CostModel::kClassification : CostModel::kExact;
  const auto npv = parse_int_list(np_s);
  const auto rep = analyze_patterns(shape, m, npv, opts);

  const std::int64_t unit = bytes ? kBytesPerPoint : 1;
  std::ostringstream csv;
  csv << "pattern,representative,members";
  for (auto np : rep.np_values) csv << ",np_" << np;
  csv << "\n";
  int id = 1;
  for (const auto& g : rep.groups) {
    csv << "P" << id++ << "," << g.representative.str() << "," << g.member_count;
    for (auto a : g.profile.amounts) csv << "," << a * unit;
    csv << "\n";
  }
  csv << "worst_best_ratio,,";
  for (double r : rep.worst_best_ratio) csv << "," << fmt_ratio(r);
  csv << "\n";
  write_output(out_path, csv.str());
  return 0;
}

int cmd_compare(int m, std::int64_t n, const std::string& np_s, bool bytes,
                const std::string& out_path) {
  const auto npv = parse_int_list(np_s);
  const auto rep = compare_report(m, n, npv);
  const std::int64_t unit = bytes ? kBytesPerPoint : 1;

  std::ostringstream csv;
  csv << "np,ours";
  if (m == 3) csv << ",a_1d,a_1p5d,a_2d";
  csv << ",a_" << m << "d";
  if (m == 3) csv << ",pct_better_2d";
  csv << ",a_" << m << "d_over_ours\n";
  auto cell = [&](const std::optional<double>& v) {
    csv << ',' << (v ? fmt_amount(*v * unit) : "n/a");
  };
  for (const auto& row : rep.rows) {
    csv << row.np << ',' << row.ours * unit;
    if (m == 3) {
      cell(row.a1d);
      cell(row.a1p5d);
      cell(row.a2d);
    }
    cell(row.baseline_md);
    if (m == 3) {
      csv << ',' << (row.pct_better_2d ? fmt_ratio(*row.pct_better_2d) : "n/a");
    }
    csv << ',' << (row.md_over_ours ? fmt_ratio(*row.md_over_ours) : "n/a") << "\n";
  }
  write_output(out_path, csv.str());
  return 0;
}

int cmd_simulate(const std::string& shape_s, const std::string& order_s, std::int64_t np,
                 std::uint64_t seed, bool restore, const std::string& out_path) {
  const Shape shape = parse_shape(shape_s);
  const TransposeSequence seq = parse_order(order_s);
  if (seq.order() != shape.order()) {
    throw std::invalid_argument("order dimensionality does not match shape");
  }
  SplitMix64 rng(seed);
  std::vector<cplx> input(shape.total());
  for (auto& v : input) v = cplx(rng.next_signed_unit(), rng.next_signed_unit());

  const auto result = run_parallel_fft(shape, seq, np, input, restore);
  const auto reference = dft_md(shape, input);
  const double err = max_rel_error(result.natural_order(shape), reference);

  std::ostringstream out;
  out << "shape " << shape_s << "  order " << seq.str() << "  np " << np << "  seed "
      << seed << "\n";
  bool all_match = true;
  std::int64_t model_total = 0;
  for (std::size_t h = 0; h < result.ledger.hops.size(); ++h) {
    const auto& hop = result.ledger.hops[h];
    const std::int64_t model = transpose_cost_fast(shape, hop.from, hop.to, np);
    model_total += model;
    const bool match = hop.total == model;
    all_match &= match;
    out << "hop " << h + 1 << ": " << hop.from.str() << "->" << hop.to.str() << " moved "
        << hop.total << " model " << model << (match ? " MATCH" : " MISMATCH") << "\n";
  }
  out << "traffic total " << result.ledger.total() << " model " << model_total
      << (result.ledger.total() == model_total ? " MATCH" : " MISMATCH") << "\n";
  char errbuf[64];
  std::snprintf(errbuf, sizeof errbuf, "%.3e", err);
  const bool ok = err <= 1e-9;
  out << "max_rel_error " << errbuf << " (tolerance 1e-9) " << (ok ? "OK" : "FAIL") << "\n";
  write_output(out_path, out.str());
  return all_match && ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Adaptive row-wise decomposition for parallel multi-dimensional FFTs:\n"
      "plans, transpose-order analysis, baseline comparison, simulated runs.\n"
      "Random data and sampling use SplitMix64 seeded via --seed.\n"
      "CSV output: header row, comma separator, integer amounts unquoted,\n"
      "ratios with 4 decimal places, 'n/a' past a method's process limit."};
  app.require_subcommand(1);

  std::string shape_s, order_s, np_s, out_path, model_s = "exact";
  std::int64_t np = 1, n = 0, samples = 10000;
  std::uint64_t seed = 1;
  int m = 3;
  bool exhaustive = false, restore = false, bytes = false;

  auto* plan = app.add_subcommand("plan", "Per-rank ranges and corner coordinates (JSON)");
  plan->add_option("--shape", shape_s, "comma-separated dims, e.g. 4,4,4")->required();
  plan->add_option("--order", order_s, "comma-separated layouts, e.g. abc,cab,cba")->required();
  plan->add_option("--np", np, "process count")->required();
  plan->add_option("--output,-o", out_path, "output path (default stdout)");

  auto* analyze = app.add_subcommand(
      "analyze", "Group transpose sequences by communication profile (CSV)");
  analyze->add_option("--m", m, "dimensionality (3,4; 5 sampled or --exhaustive)")->required();
  analyze->add_option("--n", n, "cubic size N (alternative to --shape)");
  analyze->add_option("--shape", shape_s, "explicit dims");
  analyze->add_option("--np", np_s, "process counts, e.g. 2,4,8")->required();
  analyze->add_flag("--exhaustive", exhaustive, "m=5: enumerate all 7,962,624 sequences");
  analyze->add_option("--sample", samples, "m=5 default: sample size (10000)");
  analyze->add_option("--seed", seed, "sampling seed");
  analyze->add_option("--model", model_s, "exact | closed-form")
      ->check(CLI::IsMember({"exact", "closed-form"}));
  analyze->add_flag("--bytes", bytes, "report bytes (16 per point) instead of points");
  analyze->add_option("--output,-o", out_path, "output path (default stdout)");

  auto* compare = app.add_subcommand(
      "compare", "Catalog order vs closed-form decomposition baselines (CSV)");
  compare->add_option("--m", m, "dimensionality (3, 4, or 5)")->required();
  compare->add_option("--n", n, "per-dimension size N")->required();
  compare->add_option("--np", np_s, "process counts; '2,4,...,262144' continues the ratio")
      ->required();
  compare->add_flag("--bytes", bytes, "report bytes (16 per point) instead of points");
  compare->add_option("--output,-o", out_path, "output path (default stdout)");

  auto* simulate = app.add_subcommand(
      "simulate", "Run the staged parallel FFT on seeded data; verify vs the oracle");
  simulate->add_option("--shape", shape_s, "comma-separated dims")->required();
  simulate->add_option("--order", order_s, "comma-separated layouts")->required();
  simulate->add_option("--np", np, "process count")->required();
  simulate->add_option("--seed", seed, "input seed");
  simulate->add_flag("--restore", restore, "transpose back to natural order (costed)");
  simulate->add_option("--output,-o", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (plan->parsed()) return cmd_plan(shape_s, order_s, np, out_path);
    if (analyze->parsed()) {
      if (n == 0 && shape_s.empty()) {
        throw std::invalid_argument("analyze needs --n or --shape");
      }
      return cmd_analyze(m, shape_s, n, np_s, exhaustive, samples, seed, model_s, bytes,
                         out_path);
    }
    if (compare->parsed()) return cmd_compare(m, n, np_s, bytes, out_path);
    if (simulate->parsed()) return cmd_simulate(shape_s, order_s, np, seed, restore, out_path);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InfeasibleParallelism& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
