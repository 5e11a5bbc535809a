#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fftdecomp/commcost.hpp"
#include "fftdecomp/layout.hpp"
#include "fftdecomp/prng.hpp"
#include "fftdecomp/simulator.hpp"

using namespace fftdecomp;

namespace {

std::vector<cplx> random_buf(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(rng.next_signed_unit(), rng.next_signed_unit());
  return v;
}

bool same_bits(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST_CASE("scatter places ranks' intervals, gather inverts") {
  const Shape s{{4, 4, 4}};
  const Layout abc = Layout::parse("abc");
  const auto global = random_buf(64, 1);

  const auto t1 = scatter(s, abc, 1, global);
  REQUIRE(t1.local.size() == 1);
  CHECK(same_bits(t1.local[0], global));  // identity layout: permuted == natural

  const auto t8 = scatter(s, abc, 8, global);
  REQUIRE(t8.local[3].size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(t8.local[3][i] == global[24 + i]);

  CHECK(same_bits(gather(t8), global));
  CHECK_THROWS_AS(scatter(s, abc, 2, std::vector<cplx>(63)), std::invalid_argument);
}

TEST_CASE("scatter/gather round-trips under permuted layouts and ragged np") {
  const Shape s{{2, 3, 4}};
  const auto global = random_buf(24, 9);
  for (const char* name : {"abc", "cab", "bca"}) {
    for (std::int64_t np : {1, 2, 5, 7, 24}) {
      const auto t = scatter(s, Layout::parse(name), np, global);
      CHECK(same_bits(gather(t), global));
    }
  }
}

TEST_CASE("transpose: identity target moves nothing, measured traffic matches the model") {
  const Shape s{{4, 4, 4}};
  const auto global = random_buf(64, 3);
  const Layout abc = Layout::parse("abc"), cab = Layout::parse("cab");

  TrafficLedger ledger;
  const auto t = scatter(s, abc, 2, global);
  const auto same = transpose(t, abc, ledger);
  CHECK(ledger.hops.back().total == 0);
  CHECK(same_bits(gather(same), global));

  const auto moved = transpose(t, cab, ledger);
  CHECK(ledger.hops.back().total == 32);
  CHECK(ledger.hops.back().total == transpose_cost(s, abc, cab, 2));
  CHECK(same_bits(gather(moved), global));  // values permuted, never altered

  // self-traffic never recorded
  for (const auto& [pair, n] : ledger.hops.back().sent) {
    CHECK(pair.first != pair.second);
    CHECK(n > 0);
  }

  // double transpose restores the original distribution exactly
  const auto back = transpose(moved, abc, ledger);
  REQUIRE(back.local.size() == t.local.size());
  for (std::size_t r = 0; r < t.local.size(); ++r) CHECK(same_bits(back.local[r], t.local[r]));
}

TEST_CASE("transpose ledger equals the cost model on random instances") {
  SplitMix64 rng(77);
  for (int iter = 0; iter < 60; ++iter) {
    const int m = 3 + static_cast<int>(rng.next_below(3));
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
    TrafficLedger ledger;
    const auto t = scatter(shape, from, np, random_buf(shape.total(), iter));
    transpose(t, to, ledger);
    CHECK(ledger.hops.back().total == transpose_cost(shape, from, to, np));
  }
}

TEST_CASE("value conservation: transposes only permute") {
  const Shape s{{4, 4, 4, 4}};
  const auto global = random_buf(256, 4);
  TrafficLedger ledger;
  auto t = scatter(s, Layout::parse("abcd"), 8, global);
  t = transpose(t, Layout::parse("dcab"), ledger);
  auto flat = gather(t);
  auto sorted_in = global, sorted_out = flat;
  auto key = [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  };
  std::sort(sorted_in.begin(), sorted_in.end(), key);
  std::sort(sorted_out.begin(), sorted_out.end(), key);
  CHECK(same_bits(sorted_in, sorted_out));
}

TEST_CASE("run_parallel_fft: single process equals the oracle with zero traffic") {
  const Shape s{{8, 8, 8}};
  const auto in = random_buf(512, 6);
  const auto res = run_parallel_fft(s, TransposeSequence::parse("abc->cab->cba"), 1, in);
  CHECK(res.ledger.total() == 0);
  CHECK(max_rel_error(res.natural_order(s), dft_md(s, in)) < 1e-9);
}

TEST_CASE("run_parallel_fft: catalog order at np=4 with per-hop model agreement") {
  const Shape s{{8, 8, 8}};
  const auto in = random_buf(512, 7);
  const auto seq = TransposeSequence::parse("abc->cab->cba");
  const auto res = run_parallel_fft(s, seq, 4, in);
  CHECK(max_rel_error(res.natural_order(s), dft_md(s, in)) < 1e-9);
  const auto hops = res.ledger.hop_totals();
  REQUIRE(hops.size() == 2);
  CHECK(hops[0] == transpose_cost(s, seq.layouts[0], seq.layouts[1], 4));
  CHECK(hops[1] == transpose_cost(s, seq.layouts[1], seq.layouts[2], 4));
  CHECK(hops[0] == 384);
  CHECK(hops[1] == 0);
}

TEST_CASE("run_parallel_fft: 4-D catalog order matches the oracle") {
  const Shape s{{4, 4, 4, 4}};
  const auto in = random_buf(256, 8);
  const auto seq = TransposeSequence::parse("abcd->abdc->dcba->dcab");
  const auto res = run_parallel_fft(s, seq, 8, in);
  CHECK(max_rel_error(res.natural_order(s), dft_md(s, in)) < 1e-9);
}

TEST_CASE("run_parallel_fft: non-power-of-two lines and uneven ranks") {
  const Shape s{{2, 3, 4}};
  const auto in = random_buf(24, 10);
  const auto res = run_parallel_fft(s, TransposeSequence::parse("abc->cab->cba"), 2, in);
  CHECK(max_rel_error(res.natural_order(s), dft_md(s, in)) < 1e-9);
}

TEST_CASE("run_parallel_fft: restore_output returns natural order and costs the hop") {
  const Shape s{{8, 8, 8}};
  const auto in = random_buf(512, 12);
  const auto seq = TransposeSequence::parse("abc->cab->cba");
  const auto plain = run_parallel_fft(s, seq, 4, in);
  const auto restored = run_parallel_fft(s, seq, 4, in, true);
  CHECK(restored.layout.is_identity());
  CHECK(max_rel_error(restored.data, dft_md(s, in)) < 1e-9);
  REQUIRE(restored.ledger.hops.size() == 3);
  CHECK(restored.ledger.hops[2].total ==
        transpose_cost(s, Layout::parse("cba"), Layout::parse("abc"), 4));
  CHECK(restored.ledger.hops[2].total > 0);
  CHECK(same_bits(restored.data, plain.natural_order(s)));
}

TEST_CASE("run_parallel_fft refuses process counts that split FFT lines") {
  const Shape s{{4, 4, 4}};
  const auto in = random_buf(64, 13);
  CHECK_THROWS_AS(
      run_parallel_fft(s, TransposeSequence::parse("abc->cab->cba"), 32, in),
      InfeasibleParallelism);
  // np = 16 keeps whole lines at every stage and still works
  const auto res = run_parallel_fft(s, TransposeSequence::parse("abc->cab->cba"), 16, in);
  CHECK(max_rel_error(res.natural_order(s), dft_md(s, in)) < 1e-9);
}

TEST_CASE("run_parallel_fft: the 2-D transform (one transpose) works") {
  const Shape s{{4, 6}};
  const auto in = random_buf(24, 21);
  const auto res = run_parallel_fft(s, TransposeSequence::parse("ab->ba"), 4, in);
  CHECK(max_rel_error(res.natural_order(s), dft_md(s, in)) < 1e-9);
  REQUIRE(res.ledger.hops.size() == 1);
  CHECK(res.ledger.hops[0].total ==
        transpose_cost(s, Layout::parse("ab"), Layout::parse("ba"), 4));
}

TEST_CASE("runs are bit-identical across invocations") {
  const Shape s{{4, 4, 4}};
  const auto in = random_buf(64, 14);
  const auto seq = TransposeSequence::parse("abc->acb->bca");
  const auto a = run_parallel_fft(s, seq, 8, in);
  const auto b = run_parallel_fft(s, seq, 8, in);
  CHECK(same_bits(a.data, b.data));
  CHECK(a.ledger.hop_totals() == b.ledger.hop_totals());
}
