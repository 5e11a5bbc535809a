#include "fftdecomp/commcost.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <thread>

#include "fftdecomp/layout.hpp"
#include "parallel.hpp"

namespace fftdecomp {
namespace {

using detail::parallel_over;
using detail::resolve_threads;

constexpr int kMaxOrder = 8;

std::vector<std::int64_t> boundaries(const Shape& shape, const Layout& layout,
                                     std::int64_t np) {
  std::vector<std::int64_t> b(np + 1);
  for (std::int64_t r = 0; r <= np; ++r) b[r] = f_md(shape, layout, np, r);
  return b;
}

std::int64_t owner_from_bounds(const std::vector<std::int64_t>& b, std::int64_t x) {
  return std::upper_bound(b.begin(), b.end(), x) - b.begin() - 1;
}

/// Axis-aligned box of physical points: [lo[axis], hi[axis]] per axis.
struct Box {
  std::array<std::int64_t, kMaxOrder> lo, hi;
};

/// Decompose the set of points whose 1-D index under `perm` lies in [a, b]
/// into at most 2M-1 disjoint boxes (common prefix fixed, one mid slice,
/// lower- and upper-bound staircases).
int decompose_interval(const std::vector<std::int64_t>& sizes, const std::vector<int>& perm,
                       std::int64_t a, std::int64_t b, Box* out) {
  const int m = static_cast<int>(sizes.size());
  std::array<std::int64_t, kMaxOrder> da{}, db{};
  std::int64_t ra = a, rb = b;
  for (int i = m - 1; i >= 0; --i) {
    da[i] = ra % sizes[i];
    ra /= sizes[i];
    db[i] = rb % sizes[i];
    rb /= sizes[i];
  }
  int d = 0;
  while (d < m && da[d] == db[d]) ++d;

  int count = 0;
  auto emit = [&](auto&& fill) {
    Box& box = out[count++];
    for (int i = 0; i < m; ++i) {
      box.lo[perm[i]] = 0;
      box.hi[perm[i]] = sizes[i] - 1;
    }
    for (int i = 0; i < d; ++i) {
      box.lo[perm[i]] = da[i];
      box.hi[perm[i]] = da[i];
    }
    fill(box);
  };

  if (d == m) {  // a == b: a single point
    emit([](Box&) {});
    return count;
  }
  if (d == m - 1) {  // bounds differ only in the fastest digit: one box
    emit([&](Box& box) {
      box.lo[perm[d]] = da[d];
      box.hi[perm[d]] = db[d];
    });
    return count;
  }
  if (db[d] - da[d] >= 2) {  // full slices strictly between the two bounds
    emit([&](Box& box) {
      box.lo[perm[d]] = da[d] + 1;
      box.hi[perm[d]] = db[d] - 1;
    });
  }
  // Staircase of suffixes >= digits of a (position d pinned to da[d]).
  for (int j = d + 1; j < m; ++j) {
    const std::int64_t lo = (j == m - 1) ? da[j] : da[j] + 1;
    if (lo > sizes[j] - 1) continue;
    emit([&](Box& box) {
      box.lo[perm[d]] = da[d];
      box.hi[perm[d]] = da[d];
      for (int i = d + 1; i < j; ++i) {
        box.lo[perm[i]] = da[i];
        box.hi[perm[i]] = da[i];
      }
      box.lo[perm[j]] = lo;
      box.hi[perm[j]] = sizes[j] - 1;
    });
  }
  // Staircase of suffixes <= digits of b (position d pinned to db[d]).
  for (int j = d + 1; j < m; ++j) {
    const std::int64_t hi = (j == m - 1) ? db[j] : db[j] - 1;
    if (hi < 0) continue;
    emit([&](Box& box) {
      box.lo[perm[d]] = db[d];
      box.hi[perm[d]] = db[d];
      for (int i = d + 1; i < j; ++i) {
        box.lo[perm[i]] = db[i];
        box.hi[perm[i]] = db[i];
      }
      box.lo[perm[j]] = 0;
      box.hi[perm[j]] = hi;
    });
  }
  return count;
}

std::int64_t overlap_volume(const Box& x, const Box& y, int m) {
  std::int64_t v = 1;
  for (int axis = 0; axis < m; ++axis) {
    const std::int64_t len =
        std::min(x.hi[axis], y.hi[axis]) - std::max(x.lo[axis], y.lo[axis]) + 1;
    if (len <= 0) return 0;
    v *= len;
  }
  return v;
}

void check_pair(const Shape& shape, const Layout& from, const Layout& to, std::int64_t np) {
  if (from.order() != shape.order() || to.order() != shape.order()) {
    throw std::invalid_argument("layout order does not match shape order");
  }
  if (shape.order() > kMaxOrder) {
    throw CapacityError("shapes beyond 8 dimensions are not supported");
  }
  if (np < 1 || np > shape.total()) {
    throw std::invalid_argument("process count must be in [1, total]");
  }
}

std::vector<Layout> all_layouts(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Layout> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Per-(ordered layout pair, np) costs, memoized. For cubic shapes the cost
/// is invariant under relabeling the axes, so (from, to) collapses to
/// (identity, from^-1 compose to) and only M! entries are needed.
class PairCostTable {
 public:
  PairCostTable(const Shape& shape, int m, std::vector<std::int64_t> np_values,
                CostModel model, int threads)
      : shape_(shape),
        npv_(std::move(np_values)),
        layouts_(all_layouts(m)),
        cubic_(shape.is_cubic()),
        m_(m) {
    index_of_.resize(layouts_.size());
    for (std::size_t i = 0; i < layouts_.size(); ++i) {
      index_of_[rank_of(layouts_[i])] = i;
    }
    const std::size_t keys = cubic_ ? layouts_.size() : layouts_.size() * layouts_.size();
    cache_.assign(keys * npv_.size(), 0);
    auto cost_fn = model == CostModel::kExact ? transpose_cost_fast : classification_cost;
    parallel_over(keys, resolve_threads(threads), [&](std::size_t key) {
      const Layout from = cubic_ ? Layout::identity(m_) : layouts_[key / layouts_.size()];
      const Layout& to = layouts_[cubic_ ? key : key % layouts_.size()];
      for (std::size_t i = 0; i < npv_.size(); ++i) {
        cache_[key * npv_.size() + i] = cost_fn(shape_, from, to, npv_[i]);
      }
    });
  }

  const std::vector<std::int64_t>& np_values() const { return npv_; }

  /// Costs for one hop, one entry per np value.
  const std::int64_t* costs(const Layout& from, const Layout& to) const {
    std::size_t key;
    if (cubic_) {
      // relabel axes so `from` becomes the identity
      std::array<int, kMaxOrder> inv{};
      for (int i = 0; i < m_; ++i) inv[from.perm[i]] = i;
      std::array<int, kMaxOrder> composed{};
      for (int i = 0; i < m_; ++i) composed[i] = inv[to.perm[i]];
      key = index_of_[rank_of_raw(composed.data())];
    } else {
      key = index_of_[rank_of(from)] * layouts_.size() + index_of_[rank_of(to)];
    }
    return cache_.data() + key * npv_.size();
  }

  const std::vector<Layout>& layouts() const { return layouts_; }

 private:
  // Lehmer rank of a permutation, used as a dense lookup key.
  std::size_t rank_of(const Layout& l) const { return rank_of_raw(l.perm.data()); }

  std::size_t rank_of_raw(const int* perm) const {
    std::size_t r = 0;
    for (int i = 0; i < m_; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < m_; ++j) smaller += perm[j] < perm[i];
      r = r * (m_ - i) + smaller;
    }
    return r;
  }

  Shape shape_;
  std::vector<std::int64_t> npv_;
  std::vector<Layout> layouts_;
  std::vector<std::size_t> index_of_;  // Lehmer rank -> index in layouts_
  std::vector<std::int64_t> cache_;
  bool cubic_;
  int m_;
};

void add_profile(std::vector<std::int64_t>& acc, const std::int64_t* hop) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += hop[i];
}

void sub_profile(std::vector<std::int64_t>& acc, const std::int64_t* hop) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= hop[i];
}

void check_analysis_args(const Shape& shape, int m, const std::vector<std::int64_t>& npv) {
  if (m != shape.order()) throw std::invalid_argument("m does not match shape order");
  if (m >= 6) {
    throw CapacityError("pattern analysis refused for m >= 6 (" +
                        std::to_string(count_orders(m)) + " cases)");
  }
  if (m < 2) throw std::invalid_argument("analysis needs m >= 2");
  if (npv.empty()) throw std::invalid_argument("np list must not be empty");
  for (auto np : npv) {
    if (np < 1 || np > shape.total()) {
      throw std::invalid_argument("np " + std::to_string(np) + " out of [1, total]");
    }
  }
}

}  // namespace

std::int64_t transpose_cost(const Shape& shape, const Layout& from, const Layout& to,
                            std::int64_t np) {
  check_pair(shape, from, to, np);
  if (from == to || np == 1) return 0;
  const int m = shape.order();
  const auto fsizes = from.permuted_dims(shape);
  const auto bf = boundaries(shape, from, np);
  const auto bt = boundaries(shape, to, np);
  // strides of each physical axis under `to`
  std::array<std::int64_t, kMaxOrder> stride_to{};
  {
    std::int64_t s = 1;
    for (int i = m - 1; i >= 0; --i) {
      stride_to[to.perm[i]] = s;
      s *= shape.dims[to.perm[i]];
    }
  }
  std::array<std::int64_t, kMaxOrder> coord{};  // odometer in `from` order
  std::int64_t lin_to = 0;
  std::int64_t owner_f = 0;
  std::int64_t moved = 0;
  const std::int64_t total = shape.total();
  for (std::int64_t x = 0;; ++x) {
    while (x >= bf[owner_f + 1]) ++owner_f;
    if (owner_from_bounds(bt, lin_to) != owner_f) ++moved;
    if (x + 1 == total) break;
    for (int i = m - 1; i >= 0; --i) {  // increment, updating the to-index
      lin_to += stride_to[from.perm[i]];
      if (++coord[i] < fsizes[i]) break;
      coord[i] = 0;
      lin_to -= fsizes[i] * stride_to[from.perm[i]];
    }
  }
  return moved;
}

std::int64_t transpose_cost_fast(const Shape& shape, const Layout& from, const Layout& to,
                                 std::int64_t np) {
  check_pair(shape, from, to, np);
  if (from == to || np == 1) return 0;
  const int m = shape.order();
  const auto fsizes = from.permuted_dims(shape);
  const auto tsizes = to.permuted_dims(shape);
  const auto bf = boundaries(shape, from, np);
  const auto bt = boundaries(shape, to, np);
  Box fbox[2 * kMaxOrder], tbox[2 * kMaxOrder];
  std::int64_t kept = 0;
  for (std::int64_t r = 0; r < np; ++r) {
    if (bf[r + 1] <= bf[r] || bt[r + 1] <= bt[r]) continue;
    const int nf = decompose_interval(fsizes, from.perm, bf[r], bf[r + 1] - 1, fbox);
    const int nt = decompose_interval(tsizes, to.perm, bt[r], bt[r + 1] - 1, tbox);
    for (int i = 0; i < nf; ++i) {
      for (int j = 0; j < nt; ++j) {
        kept += overlap_volume(fbox[i], tbox[j], m);
      }
    }
  }
  return shape.total() - kept;
}

std::int64_t classification_cost(const Shape& shape, const Layout& from, const Layout& to,
                                 std::int64_t np) {
  check_pair(shape, from, to, np);
  const int m = shape.order();
  std::int64_t shared = 1;
  for (int i = 0; i < m && from.perm[i] == to.perm[i]; ++i) {
    shared *= shape.dims[from.perm[i]];
  }
  if (shared >= np) return 0;
  const std::int64_t total = shape.total();
  return total - static_cast<std::int64_t>(
                     static_cast<__int128>(total) * shared / np);
}

std::int64_t sequence_cost(const Shape& shape, const TransposeSequence& seq, std::int64_t np,
                           bool include_final_restore) {
  if (auto violation = validate_sequence(seq)) {
    throw std::invalid_argument("invalid transpose sequence: " + *violation);
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < seq.layouts.size(); ++i) {
    total += transpose_cost_fast(shape, seq.layouts[i], seq.layouts[i + 1], np);
  }
  if (include_final_restore) {
    total += transpose_cost_fast(shape, seq.layouts.back(),
                                 Layout::identity(seq.order()), np);
  }
  return total;
}

std::int64_t line_completion_amount(const Shape& shape, const Layout& layout,
                                    std::int64_t np) {
  if (np < 1 || np > shape.total()) {
    throw std::invalid_argument("process count must be in [1, total]");
  }
  const std::int64_t line = shape.dims[layout.last_axis()];
  const auto b = boundaries(shape, layout, np);
  std::int64_t amount = 0;
  for (std::int64_t r = 0; r < np; ++r) {
    const std::int64_t s = b[r], e = b[r + 1] - 1;
    if (e < s) continue;
    const std::int64_t first = s / line, last = e / line;
    // only the two edge lines of a contiguous range can be fragments
    const std::int64_t head = std::min(e, first * line + line - 1) - s + 1;
    if (head < line) amount += line - head;
    if (last > first) {
      const std::int64_t tail = e - last * line + 1;
      if (tail < line) amount += line - tail;
    }
  }
  return amount;
}

PatternReport analyze_patterns(const Shape& shape, int m,
                               const std::vector<std::int64_t>& np_values,
                               const AnalyzeOptions& opts) {
  check_analysis_args(shape, m, np_values);
  const bool full = m < 5 || opts.exhaustive;
  PairCostTable table(shape, m, np_values, opts.model, opts.threads);

  struct Accum {
    TransposeSequence representative;
    std::int64_t count = 0;
    std::vector<TransposeSequence> members;
  };
  std::map<std::vector<std::int64_t>, Accum> groups;
  std::int64_t seen = 0;
  auto record = [&](const TransposeSequence& seq, const std::vector<std::int64_t>& prof) {
    ++seen;
    auto [it, inserted] = groups.try_emplace(prof);
    Accum& acc = it->second;
    if (inserted || seq < acc.representative) acc.representative = seq;
    ++acc.count;
    if (acc.members.size() < opts.member_cap) acc.members.push_back(seq);
  };

  if (full) {
    std::vector<std::int64_t> prof(np_values.size(), 0);
    TransposeSequence seq;
    seq.layouts.push_back(Layout::identity(m));
    unsigned used = 1u << (m - 1);
    const std::function<void()> rec = [&] {
      if (static_cast<int>(seq.layouts.size()) == m) {
        record(seq, prof);
        return;
      }
      for (const auto& l : table.layouts()) {
        if (used & (1u << l.last_axis())) continue;
        const std::int64_t* hop = table.costs(seq.layouts.back(), l);
        add_profile(prof, hop);
        used |= 1u << l.last_axis();
        seq.layouts.push_back(l);
        rec();
        seq.layouts.pop_back();
        used &= ~(1u << l.last_axis());
        sub_profile(prof, hop);
      }
    };
    rec();
  } else {
    SplitMix64 rng(opts.seed);
    for (std::int64_t k = 0; k < opts.samples; ++k) {
      const TransposeSequence seq = sample_sequence(m, rng);
      std::vector<std::int64_t> prof(np_values.size(), 0);
      for (std::size_t i = 0; i + 1 < seq.layouts.size(); ++i) {
        add_profile(prof, table.costs(seq.layouts[i], seq.layouts[i + 1]));
      }
      record(seq, prof);
    }
  }

  PatternReport report;
  report.np_values = np_values;
  report.sequence_count = seen;
  for (auto& [prof, acc] : groups) {
    PatternGroup g;
    g.profile = CommProfile{np_values, prof};
    g.representative = acc.representative;
    g.member_count = acc.count;
    g.members = std::move(acc.members);
    report.groups.push_back(std::move(g));
  }
  report.worst_best_ratio.resize(np_values.size());
  for (std::size_t i = 0; i < np_values.size(); ++i) {
    std::int64_t lo = report.groups.front().profile.amounts[i];
    std::int64_t hi = lo;
    for (const auto& g : report.groups) {
      lo = std::min(lo, g.profile.amounts[i]);
      hi = std::max(hi, g.profile.amounts[i]);
    }
    report.worst_best_ratio[i] =
        lo == 0 ? (hi == 0 ? 1.0 : std::numeric_limits<double>::infinity())
                : static_cast<double>(hi) / static_cast<double>(lo);
  }
  return report;
}

std::vector<TransposeSequence> search_best(const Shape& shape, int m,
                                           const std::vector<std::int64_t>& np_values,
                                           const SearchOptions& opts) {
  check_analysis_args(shape, m, np_values);
  const std::size_t nv = np_values.size();
  PairCostTable table(shape, m, np_values, opts.model, opts.threads);

  if (m == 5 && !opts.exhaustive) {
    // Candidate pool: the catalog, the known worst order, seeded samples.
    std::vector<TransposeSequence> pool = best_orders(5).best;
    pool.push_back(worst_order(5));
    SplitMix64 rng(opts.seed);
    for (std::int64_t k = 0; k < opts.samples; ++k) pool.push_back(sample_sequence(5, rng));
    std::map<TransposeSequence, std::vector<std::int64_t>> profs;
    for (const auto& seq : pool) {
      if (profs.count(seq)) continue;
      std::vector<std::int64_t> prof(nv, 0);
      for (std::size_t i = 0; i + 1 < seq.layouts.size(); ++i) {
        add_profile(prof, table.costs(seq.layouts[i], seq.layouts[i + 1]));
      }
      profs.emplace(seq, std::move(prof));
    }
    std::vector<std::int64_t> minv(nv, std::numeric_limits<std::int64_t>::max());
    for (const auto& [seq, prof] : profs) {
      for (std::size_t i = 0; i < nv; ++i) minv[i] = std::min(minv[i], prof[i]);
    }
    std::vector<TransposeSequence> out;
    for (const auto& [seq, prof] : profs) {
      if (prof == minv) out.push_back(seq);
    }
    return out;  // std::map iteration: already sorted
  }

  // Exhaustive: minimum profile by dynamic program over (used-axes, layout)
  // states, then pruned enumeration of the sequences attaining it at every np.
  const auto& layouts = table.layouts();
  const std::size_t nl = layouts.size();
  const std::size_t nmask = 1u << m;
  const std::int64_t INF = std::numeric_limits<std::int64_t>::max() / 4;
  auto state = [&](unsigned mask, std::size_t lid) { return mask * nl + lid; };

  std::size_t ident_id = 0;
  for (std::size_t i = 0; i < nl; ++i) {
    if (layouts[i].is_identity()) ident_id = i;
  }

  // comp[k][state][i]: minimal completion cost from a depth-k state, per np.
  std::vector<std::vector<std::int64_t>> comp(
      m, std::vector<std::int64_t>(nmask * nl * nv, INF));
  // depth k means k+1 layouts chosen, i.e. popcount(mask) == k+1
  for (std::size_t s = 0; s < nmask * nl; ++s) {
    for (std::size_t i = 0; i < nv; ++i) comp[m - 1][s * nv + i] = 0;
  }
  for (int k = m - 2; k >= 0; --k) {
    for (unsigned mask = 0; mask < nmask; ++mask) {
      if (__builtin_popcount(mask) != k + 1) continue;
      for (std::size_t lid = 0; lid < nl; ++lid) {
        std::int64_t* dst = comp[k].data() + state(mask, lid) * nv;
        for (std::size_t q = 0; q < nl; ++q) {
          const int axis = layouts[q].last_axis();
          if (mask & (1u << axis)) continue;
          const std::int64_t* hop = table.costs(layouts[lid], layouts[q]);
          const std::int64_t* nxt =
              comp[k + 1].data() + state(mask | (1u << axis), q) * nv;
          for (std::size_t i = 0; i < nv; ++i) {
            dst[i] = std::min(dst[i], hop[i] + nxt[i]);
          }
        }
      }
    }
  }
  const unsigned mask0 = 1u << (m - 1);
  std::vector<std::int64_t> minv(comp[0].begin() + state(mask0, ident_id) * nv,
                                 comp[0].begin() + state(mask0, ident_id) * nv + nv);

  std::vector<TransposeSequence> winners;
  std::vector<std::int64_t> prof(nv, 0);
  TransposeSequence seq;
  seq.layouts.push_back(Layout::identity(m));
  unsigned used = mask0;
  std::size_t cur = ident_id;
  const std::function<void(int)> dfs = [&](int k) {
    const std::int64_t* h = comp[k].data() + state(used, cur) * nv;
    for (std::size_t i = 0; i < nv; ++i) {
      if (prof[i] + h[i] > minv[i]) return;
    }
    if (k == m - 1) {
      if (prof == minv) winners.push_back(seq);
      return;
    }
    const std::size_t prev = cur;
    for (std::size_t q = 0; q < nl; ++q) {
      const int axis = layouts[q].last_axis();
      if (used & (1u << axis)) continue;
      const std::int64_t* hop = table.costs(layouts[prev], layouts[q]);
      add_profile(prof, hop);
      used |= 1u << axis;
      seq.layouts.push_back(layouts[q]);
      cur = q;
      dfs(k + 1);
      cur = prev;
      seq.layouts.pop_back();
      used &= ~(1u << axis);
      sub_profile(prof, hop);
    }
  };
  dfs(0);
  return winners;
}

const char* baseline_name(Baseline b) {
  switch (b) {
    case Baseline::k1D: return "1D";
    case Baseline::k1p5D: return "1.5D";
    case Baseline::k2D: return "2D";
    case Baseline::k3D: return "3D";
    case Baseline::k4D: return "4D";
    case Baseline::k5D: return "5D";
  }
  return "?";
}

std::int64_t baseline_limit(Baseline b, std::int64_t n) {
  switch (b) {
    case Baseline::k1D: return n;
    case Baseline::k1p5D:
      return static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), 1.5) *
                                                  (1 + 1e-12)));
    case Baseline::k2D: return n * n;
    case Baseline::k3D: return n * n * n;
    case Baseline::k4D: return n * n * n * n;
    case Baseline::k5D: return n * n * n * n * n;
  }
  return 0;
}

double baseline_amount(Baseline b, std::int64_t n, std::int64_t np) {
  if (n < 2 || np < 1) throw std::invalid_argument("baseline needs n >= 2, np >= 1");
  if (np > baseline_limit(b, n)) {
    throw MethodInapplicable(std::string(baseline_name(b)) + " method is limited to " +
                             std::to_string(baseline_limit(b, n)) + " processes at N=" +
                             std::to_string(n));
  }
  const double N = static_cast<double>(n);
  const double P = static_cast<double>(np);
  const double N3 = N * N * N;
  switch (b) {
    case Baseline::k1D:
      return N3 - N3 / P;
    case Baseline::k1p5D:
      return np <= n ? baseline_amount(Baseline::k1D, n, np)
                     : baseline_amount(Baseline::k2D, n, np);
    case Baseline::k2D:
      return 2 * N3 - 2 * P * std::pow(N * N / P, 1.5);
    case Baseline::k3D:
      return 3 * N3 * (N / std::cbrt(N3 / P) - 1);
    case Baseline::k4D: {
      const double N4 = N3 * N;
      return 4 * N4 * (N / std::pow(N4 / P, 0.25) - 1);
    }
    case Baseline::k5D: {
      const double N5 = N3 * N * N;
      return 5 * N5 * (N / std::pow(N5 / P, 0.2) - 1);
    }
  }
  return 0;
}

CompareReport compare_report(int m, std::int64_t n,
                             const std::vector<std::int64_t>& np_values) {
  if (m < 3 || m > 5) throw std::invalid_argument("comparison supports m in {3,4,5}");
  const Shape shape{std::vector<std::int64_t>(m, n)};
  CompareReport rep;
  rep.m = m;
  rep.n = n;
  rep.order = best_orders(m).best.front();
  const Baseline md = m == 3 ? Baseline::k3D : (m == 4 ? Baseline::k4D : Baseline::k5D);
  for (const std::int64_t np : np_values) {
    if (np < 1 || np > shape.total()) {
      throw std::invalid_argument("np " + std::to_string(np) + " out of [1, total]");
    }
    CompareRow row;
    row.np = np;
    row.ours_transpose = sequence_cost(shape, rep.order, np);
    for (const auto& l : rep.order.layouts) {
      row.ours_completion += line_completion_amount(shape, l, np);
    }
    row.ours = row.ours_transpose + row.ours_completion;
    auto maybe = [&](Baseline b) -> std::optional<double> {
      if (np > baseline_limit(b, n)) return std::nullopt;
      return baseline_amount(b, n, np);
    };
    if (m == 3) {
      row.a1d = maybe(Baseline::k1D);
      row.a1p5d = maybe(Baseline::k1p5D);
      row.a2d = maybe(Baseline::k2D);
      if (row.a2d && row.ours > 0) {
        row.pct_better_2d = 100.0 * (*row.a2d - row.ours) / row.ours;
      }
    }
    row.baseline_md = maybe(md);
    if (row.baseline_md && row.ours > 0) {
      row.md_over_ours = *row.baseline_md / row.ours;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace fftdecomp
