// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest (test name "acceptance") or directly; pass
// --skip-exhaustive to leave out the flagged full 5-D search.

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fftdecomp/commcost.hpp"
#include "fftdecomp/layout.hpp"
#include "fftdecomp/orders.hpp"
#include "fftdecomp/prng.hpp"
#include "fftdecomp/simulator.hpp"

using namespace fftdecomp;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

void criterion(int id, bool ok, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  for (const auto& n : g_notes) std::printf("         - %s\n", n.c_str());
  g_notes.clear();
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Shape cube(int m, std::int64_t n) { return Shape{std::vector<std::int64_t>(m, n)}; }

std::set<std::string> name_set(const std::vector<TransposeSequence>& seqs) {
  std::set<std::string> out;
  for (const auto& s : seqs) out.insert(s.str());
  return out;
}

std::set<std::string> catalog_names(int m) {
  std::set<std::string> out;
  for (const auto& s : best_orders(m).best) out.insert(s.str());
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::int64_t n3 = 0, n4 = 0;
  for_each_sequence(3, [&](const TransposeSequence&) { ++n3; });
  for_each_sequence(4, [&](const TransposeSequence&) { ++n4; });
  const double secs = seconds_since(t0);
  const bool ok = n3 == 8 && n4 == 1296 && count_orders(5) == 7962624 &&
                  count_orders(6) == 2985984000000LL && secs < 1.0;
  note("enumerated " + std::to_string(n3) + " (3-D) and " + std::to_string(n4) +
       " (4-D) sequences in " + fmt(secs) + " s; counts(5,6) = " +
       std::to_string(count_orders(5)) + ", " + std::to_string(count_orders(6)));
  criterion(1, ok, "order-space counts: 8 / 1,296 enumerated, exact counts for 5-D and 6-D");
}

// ---------------------------------------------------------------- criterion 2

bool two_pattern_block(std::int64_t n, const std::vector<std::int64_t>& npv) {
  const auto rep = analyze_patterns(cube(3, n), 3, npv);
  bool ok = rep.groups.size() == 2;
  for (std::size_t i = 0; i < npv.size(); ++i) {
    ok = ok && rep.groups.back().profile.amounts[i] == 2 * rep.groups.front().profile.amounts[i];
  }
  note("N=" + std::to_string(n) + ", np<=" + std::to_string(npv.back()) + ": " +
       std::to_string(rep.groups.size()) + " patterns, worst = 2 x best " +
       (ok ? "(exact)" : "(VIOLATED)"));
  return ok;
}

std::vector<double> bracket2_ratios(std::int64_t n, const std::vector<std::int64_t>& npv,
                                    CostModel model) {
  AnalyzeOptions opts;
  opts.model = model;
  return analyze_patterns(cube(3, n), 3, npv, opts).worst_best_ratio;
}

void criterion2() {
  bool ok = two_pattern_block(8, {2, 4, 8});
  ok &= two_pattern_block(16, {2, 4, 8, 16});

  // ratio bound past the slab regime: gated on the classification model the
  // bound derives from; exact point counting reported alongside
  const auto cls8 = bracket2_ratios(8, {16, 32, 64}, CostModel::kClassification);
  const auto exact8 = bracket2_ratios(8, {16, 32, 64}, CostModel::kExact);
  for (double r : cls8) ok &= r <= 1.3 + 0.05;
  note("N=8, np {16,32,64}: classification-model ratios " + fmt(cls8[0]) + ", " +
       fmt(cls8[1]) + ", " + fmt(cls8[2]) + " (bound 1.35)");
  note("exact point-count ratios " + fmt(exact8[0]) + ", " + fmt(exact8[1]) + ", " +
       fmt(exact8[2]) + " -- above the classification-model 1.3 at np=2N (see README, cost models)");

  // N-independence: same np/N positions at N=16
  const auto cls16 = bracket2_ratios(16, {32, 64, 128}, CostModel::kClassification);
  const auto exact16 = bracket2_ratios(16, {32, 64, 128}, CostModel::kExact);
  double max_delta = 0;
  for (int i = 0; i < 3; ++i) {
    max_delta = std::max(max_delta, std::abs(cls8[i] - cls16[i]));
    max_delta = std::max(max_delta, std::abs(exact8[i] - exact16[i]));
  }
  ok &= max_delta <= 0.05;
  note("N-independence at matched np/N: max ratio delta " + fmt(max_delta) +
       " (bound 0.05)");
  criterion(2, ok, "3-D two-pattern collapse, 2x slab ratio, bounded ratios beyond");
}

// ---------------------------------------------------------------- criterion 3

void criterion3() {
  const auto w8 = name_set(search_best(cube(3, 8), 3, {2, 4, 8}));
  const auto w16 = name_set(search_best(cube(3, 16), 3, {2, 4, 8, 16}));
  const auto cat = catalog_names(3);
  const bool ok = w8 == cat && w16 == cat;
  note("N=8 winners: " + std::to_string(w8.size()) + ", N=16 winners: " +
       std::to_string(w16.size()) + " (exact set equality with the catalog)");
  const auto narrowed = name_set(search_best(cube(3, 8), 3, {2, 4, 8, 16, 32, 64}));
  std::string names;
  for (const auto& s : narrowed) names += (names.empty() ? "" : ", ") + s;
  note("full-range exact winners narrow to {" + names + "}");
  criterion(3, ok, "best 3-D orders: search returns exactly the four catalog sequences");
}

// ---------------------------------------------------------------- criterion 4

void criterion4() {
  bool ok = true;
  for (std::int64_t n : {8, 16}) {
    const Shape s = cube(3, n);
    const auto aware = TransposeSequence::parse("abc->cab->cba");
    const auto unaware = TransposeSequence::parse("abc->cab->bca");
    for (std::int64_t np = 2; np <= n; np *= 2) {
      ok &= sequence_cost(s, unaware, np) == 2 * sequence_cost(s, aware, np);
    }
  }
  note("abc->cab->bca costs exactly 2 x abc->cab->cba at every np <= N, N in {8,16}");
  criterion(4, ok, "order-unaware sequence doubles the communication amount");
}

// ---------------------------------------------------------------- criterion 5

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  const Shape s = cube(4, 4);
  const auto low = analyze_patterns(s, 4, {2, 4, 8, 16});
  bool ok = true;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& best = low.groups.front().profile.amounts;
    std::int64_t worst = 0;
    for (const auto& g : low.groups) worst = std::max(worst, g.profile.amounts[i]);
    ok &= worst == 3 * best[i];
  }
  note("worst = 3 x best exactly at np {2,4,8,16} over all 1,296 sequences");

  const auto mid = analyze_patterns(s, 4, {32, 64});
  for (double r : mid.worst_best_ratio) ok &= r <= 1.5 + 0.05;
  note("np {32,64} worst/best: " + fmt(mid.worst_best_ratio[0]) + ", " +
       fmt(mid.worst_best_ratio[1]) + " (bound 1.55)");

  const auto winners = name_set(search_best(s, 4, {2, 4, 8, 16}));
  const auto cat = catalog_names(4);
  bool contains = true;
  for (const auto& c : cat) contains &= winners.count(c) == 1;
  ok &= contains;
  note("search winners: " + std::to_string(winners.size()) +
       (winners == cat ? " (exactly the catalog four)" : ""));
  note("elapsed " + fmt(seconds_since(t0)) + " s");
  criterion(5, ok, "4-D: catalog orders win, 3x ratio to N^2, <=1.5 ratio to N^3");
}

// ---------------------------------------------------------------- criterion 6

void criterion6(bool run_exhaustive) {
  const auto t0 = std::chrono::steady_clock::now();
  const Shape s = cube(5, 4);
  const std::vector<std::int64_t> npv{2, 4, 8, 16};

  // catalog and known-worst profiles
  std::vector<std::vector<std::int64_t>> cat_profiles;
  for (const auto& c : best_orders(5).best) {
    std::vector<std::int64_t> prof;
    for (auto np : npv) prof.push_back(sequence_cost(s, c, np));
    cat_profiles.push_back(prof);
  }
  bool ok = true;
  for (const auto& p : cat_profiles) ok &= p == cat_profiles.front();
  std::vector<std::int64_t> worst_prof;
  for (auto np : npv) worst_prof.push_back(sequence_cost(s, worst_order(5), np));
  for (std::size_t i = 0; i < npv.size(); ++i) {
    ok &= worst_prof[i] == 4 * cat_profiles.front()[i];
  }
  note("known worst = 4 x catalog exactly at np {2,4,8,16}");

  // 10,000 seeded samples never beat the catalog at any tested np
  SplitMix64 rng(1);
  std::int64_t beaten = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto seq = sample_sequence(5, rng);
    for (std::size_t i = 0; i < npv.size(); ++i) {
      if (sequence_cost(s, seq, npv[i]) < cat_profiles.front()[i]) ++beaten;
    }
  }
  ok &= beaten == 0;
  note("10,000 seeded samples: catalog beaten at " + std::to_string(beaten) +
       " (sequence, np) points");

  if (run_exhaustive) {
    SearchOptions cls;
    cls.model = CostModel::kClassification;
    cls.exhaustive = true;
    std::vector<std::int64_t> full;
    for (std::int64_t p = 2; p <= 1024; p *= 2) full.push_back(p);
    const auto winners = search_best(s, 5, full, cls);
    const auto got = name_set(winners);
    bool has_cat = true;
    for (const auto& c : catalog_names(5)) has_cat &= got.count(c) == 1;
    ok &= winners.size() == 96 && has_cat;
    note("exhaustive classification-model search: " + std::to_string(winners.size()) +
         " always-best orders (must be 96), catalog included: " +
         (has_cat ? "yes" : "NO"));

    SearchOptions exact;
    exact.exhaustive = true;
    const auto refined = search_best(s, 5, {2, 4, 8, 16, 32, 64}, exact);
    int listed = 0;
    for (const auto& c : catalog_names(5)) listed += name_set(refined).count(c);
    note("exact point-count refinement over np<=N^3: " + std::to_string(refined.size()) +
         " winners, containing " + std::to_string(listed) +
         " of the four catalog entries (see README, cost models)");
  } else {
    note("exhaustive search skipped (--skip-exhaustive)");
  }
  note("elapsed " + fmt(seconds_since(t0)) + " s");
  criterion(6, ok, "5-D: catalog tops samples, exact 4x vs worst, 96 always-best orders");
}

// ---------------------------------------------------------------- criterion 7

void criterion7() {
  std::vector<std::int64_t> npv;
  for (std::int64_t p = 2; p <= 262144; p *= 2) npv.push_back(p);
  const auto rep = compare_report(3, 64, npv);
  auto row = [&](std::int64_t np) -> const CompareRow& {
    for (const auto& r : rep.rows) {
      if (r.np == np) return r;
    }
    throw std::logic_error("missing row");
  };
  bool ok = true;

  double lo = 1e300, hi = -1e300;
  for (std::int64_t np : {16, 32, 64}) {
    lo = std::min(lo, *row(np).pct_better_2d);
    hi = std::max(hi, *row(np).pct_better_2d);
  }
  ok &= std::abs(lo - 60.0) <= 0.5 && std::abs(hi - 77.8) <= 0.5;
  note("np {16,32,64}: " + fmt(lo) + "% to " + fmt(hi) + "% below the 2-D method");

  for (std::int64_t np : {2048, 4096}) {
    const double gap = std::abs(*row(np).a2d - row(np).ours) / *row(np).a2d;
    ok &= gap <= 0.005;
    note("np " + std::to_string(np) + ": |ours - A_2D| / A_2D = " + fmt(100 * gap) + "%");
  }

  double peak = 0;
  std::int64_t peak_np = 0;
  for (const auto& r : rep.rows) {
    if (r.np > 4096 && *r.md_over_ours > peak) {
      peak = *r.md_over_ours;
      peak_np = r.np;
    }
  }
  ok &= peak_np == 8192 && std::abs(peak - 11.6) <= 0.2;
  note("A_3D/ours in the volumetric regime peaks at " + fmt(peak) + " (np=" +
       std::to_string(peak_np) + "), target 11.6 +/- 0.2");

  for (const auto& r : rep.rows) {
    ok &= r.a1d.has_value() == (r.np <= 64);
    ok &= r.a1p5d.has_value() == (r.np <= 512);
    ok &= r.a2d.has_value() == (r.np <= 4096);
  }
  note("method limits honored: 1-D rows stop at 64, 1.5-D at 512, 2-D at 4,096");
  criterion(7, ok, "3-D comparison at N=64 matches the reference behavior");
}

// ---------------------------------------------------------------- criterion 8

void criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int m : {4, 5}) {
    std::vector<std::int64_t> npv;
    const std::int64_t total = m == 4 ? 65536 : 1048576;
    for (std::int64_t p = 2; p <= total; p *= 2) npv.push_back(p);
    const auto rep = compare_report(m, 16, npv);
    double peak = 0;
    std::int64_t at = 0;
    for (const auto& r : rep.rows) {
      if (r.md_over_ours && *r.md_over_ours > peak) {
        peak = *r.md_over_ours;
        at = r.np;
      }
    }
    const double target = m == 4 ? 12.0 : 11.1;
    ok &= std::abs(peak - target) <= 0.10 * target;
    note("A_" + std::to_string(m) + "D/ours peaks at " + fmt(peak) + " (np=" +
         std::to_string(at) + "), target ~" + fmt(target) + " +/- 10%");
  }
  note("elapsed " + fmt(seconds_since(t0)) + " s");
  criterion(8, ok, "4-D and 5-D comparisons at N=16 reach the expected peak gaps");
}

// ---------------------------------------------------------------- criterion 9

void criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  // exhaustive 3-D grid
  const Shape s443 = cube(3, 4);
  std::vector<Layout> l3;
  for (const char* n : {"abc", "acb", "bac", "bca", "cab", "cba"}) {
    l3.push_back(Layout::parse(n));
  }
  std::int64_t checked = 0;
  for (const auto& a : l3) {
    for (const auto& b : l3) {
      for (std::int64_t np : {1, 2, 4, 8, 16, 32, 64}) {
        ok &= transpose_cost_fast(s443, a, b, np) == transpose_cost(s443, a, b, np);
        ++checked;
      }
    }
  }
  // randomized 4-D and 5-D instances
  SplitMix64 rng(99);
  for (int m : {4, 5}) {
    for (int iter = 0; iter < 1000; ++iter) {
      std::vector<std::int64_t> dims(m);
      for (auto& d : dims) d = 2 + static_cast<std::int64_t>(rng.next_below(3));
      const Shape shape{dims};
      auto shuffle = [&rng, m] {
        auto l = Layout::identity(m);
        for (int i = m - 1; i > 0; --i) std::swap(l.perm[i], l.perm[rng.next_below(i + 1)]);
        return l;
      };
      const Layout from = shuffle(), to = shuffle();
      const std::int64_t np = 1 + static_cast<std::int64_t>(rng.next_below(shape.total()));
      ok &= transpose_cost_fast(shape, from, to, np) == transpose_cost(shape, from, to, np);
      ++checked;
    }
  }
  const double secs = seconds_since(t0);
  ok &= secs < 60.0;
  note(std::to_string(checked) + " instances compared integer-exactly in " + fmt(secs) + " s");
  criterion(9, ok, "fast transpose cost equals the point-walk reference everywhere tested");
}

// --------------------------------------------------------------- criterion 10

void criterion10() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    Shape shape;
    std::string order;
    std::int64_t np;
  };
  std::vector<Case> cases;
  for (std::int64_t np : {1, 2, 4, 8, 16}) {
    cases.push_back({cube(3, 8), "abc->cab->cba", np});
    cases.push_back({cube(3, 8), "abc->acb->bca", np});
    cases.push_back({cube(4, 4), "abcd->abdc->dcba->dcab", np});
  }
  cases.push_back({Shape{{2, 3, 4}}, "abc->cab->cba", 2});
  cases.push_back({cube(3, 4), "abc->cba->cab", 16});
  cases.push_back({Shape{{3, 2, 4, 2}}, "abcd->abdc->dcba->dcab", 2});
  cases.push_back({cube(4, 8), "abcd->abdc->cdab->cdba", 8});
  cases.push_back({cube(5, 4), "abcde->abced->abedc->cedba->cedab", 4});
  cases.push_back({cube(5, 4), "abcde->abced->abedc->cdeab->cdeba", 16});
  cases.push_back({cube(5, 2), "abcde->bcdea->cdeab->deabc->eabcd", 2});

  bool ok = true;
  double worst_err = 0;
  std::uint64_t seed = 1000;
  for (const auto& c : cases) {
    SplitMix64 rng(seed++);
    std::vector<cplx> input(c.shape.total());
    for (auto& v : input) v = cplx(rng.next_signed_unit(), rng.next_signed_unit());
    const auto seq = TransposeSequence::parse(c.order);
    const auto res = run_parallel_fft(c.shape, seq, c.np, input);
    const double err = max_rel_error(res.natural_order(c.shape), dft_md(c.shape, input));
    worst_err = std::max(worst_err, err);
    ok &= err <= 1e-9;
    for (std::size_t h = 0; h < res.ledger.hops.size(); ++h) {
      ok &= res.ledger.hops[h].total ==
            transpose_cost_fast(c.shape, seq.layouts[h], seq.layouts[h + 1], c.np);
    }
  }
  note(std::to_string(cases.size()) + " seeded runs; worst max-relative error " +
       fmt(worst_err * 1e12) + "e-12; every hop ledger equals the model exactly");
  note("elapsed " + fmt(seconds_since(t0)) + " s");
  criterion(10, ok, "parallel runs match the direct transform and the traffic model");
}

// --------------------------------------------------------------- criterion 11

void criterion11() {
  SplitMix64 rng(31337);
  std::int64_t cases = 0;
  bool ok = true;
  while (cases < 10000) {
    const int m = 2 + static_cast<int>(rng.next_below(4));
    std::vector<std::int64_t> dims(m);
    for (auto& d : dims) d = 1 + static_cast<std::int64_t>(rng.next_below(6));
    if (dims[0] == 1 && dims[1] == 1) dims[0] = 2;
    const Shape shape{dims};
    auto layout = Layout::identity(m);
    for (int i = m - 1; i > 0; --i) {
      std::swap(layout.perm[i], layout.perm[rng.next_below(i + 1)]);
    }
    const std::int64_t total = shape.total();
    const std::int64_t np = 1 + static_cast<std::int64_t>(rng.next_below(total));
    const DecompContext ctx(shape, layout, np);
    const auto sizes = layout.permuted_dims(shape);
    std::int64_t prefix = 1;
    int bracket = 0;
    while (np > prefix) prefix *= sizes[bracket++];
    const std::int64_t unit = total / prefix;

    std::int64_t prev_end = -1;
    for (std::int64_t r = 0; r < np; ++r) {
      const RankRange rr = rank_range(ctx, r);
      ok &= rr.start == prev_end + 1 && !rr.empty();
      prev_end = rr.end;
      ok &= std::abs(rr.count() - total / np) <= unit;
      auto [cs, ce] = rank_corner_coords(ctx, r);
      for (int i = bracket; i < m; ++i) ok &= cs[i] == 0 && ce[i] == sizes[i] - 1;
      ok &= owner_of(ctx, rr.start) == r && owner_of(ctx, rr.end) == r;
      ok &= linearize(shape, layout, cs) == rr.start &&
            linearize(shape, layout, ce) == rr.end;
    }
    ok &= prev_end == total - 1;
    // bijection spot checks
    for (int probe = 0; probe < 4; ++probe) {
      const std::int64_t x = static_cast<std::int64_t>(rng.next_below(total));
      ok &= linearize(shape, layout, delinearize(shape, layout, x)) == x;
    }
    ++cases;
    if (!ok) break;
  }
  note(std::to_string(cases) +
       " generated cases: tiling, load balance, adaptivity, bijection, owner lookup");
  criterion(11, ok, "layout structural invariants hold on randomized decompositions");
}

}  // namespace

int main(int argc, char** argv) {
  bool run_exhaustive = true;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--skip-exhaustive") == 0) run_exhaustive = false;
  }
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6(run_exhaustive);
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("ACCEPTANCE: %d/11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
