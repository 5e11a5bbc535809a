#include "fftdecomp/orders.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace fftdecomp {
namespace {

std::vector<Layout> sorted_layouts(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Layout> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;  // std::next_permutation emits in lexicographic order
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw CapacityError("order count exceeds 64-bit range");
  }
  return r;
}

}  // namespace

TransposeSequence TransposeSequence::parse(const std::string& s) {
  TransposeSequence seq;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t arrow = s.find("->", pos);
    const std::string tok = s.substr(pos, arrow == std::string::npos ? std::string::npos
                                                                     : arrow - pos);
    if (tok.empty()) throw std::invalid_argument("empty layout in sequence '" + s + "'");
    seq.layouts.push_back(Layout::parse(tok));
    if (arrow == std::string::npos) break;
    pos = arrow + 2;
  }
  return seq;
}

std::string TransposeSequence::str() const {
  std::string out;
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    if (i) out += "->";
    out += layouts[i].str();
  }
  return out;
}

std::int64_t count_orders(int m) {
  if (m < 2) throw std::invalid_argument("order count needs m >= 2");
  std::int64_t fact = 1;
  for (int i = 2; i < m; ++i) fact *= i;  // (m-1)!
  std::int64_t r = 1;
  for (int i = 0; i < m; ++i) r = checked_mul(r, fact);
  return r;
}

std::optional<std::string> validate_sequence(const TransposeSequence& seq) {
  const int m = seq.order();
  if (m < 2) return "sequence has no layouts or 1-D layouts";
  if (static_cast<int>(seq.layouts.size()) != m) {
    std::ostringstream os;
    os << "sequence must contain exactly " << m << " layouts, got " << seq.layouts.size();
    return os.str();
  }
  for (const auto& l : seq.layouts) {
    if (l.order() != m) return "layouts have mismatched dimensionality";
  }
  if (!seq.layouts[0].is_identity()) return "first layout must be the identity order";
  std::vector<char> used(m, 0);
  std::string axes;
  for (const auto& l : seq.layouts) axes += static_cast<char>('a' + l.last_axis());
  for (const auto& l : seq.layouts) {
    if (used[l.last_axis()]) {
      return "final axes (" + axes + ") repeat '" +
             std::string(1, static_cast<char>('a' + l.last_axis())) + "'";
    }
    used[l.last_axis()] = 1;
  }
  return std::nullopt;
}

void for_each_sequence(int m, const std::function<void(const TransposeSequence&)>& fn) {
  if (m < 2) throw std::invalid_argument("enumeration needs m >= 2");
  if (m >= 6) {
    throw CapacityError("full enumeration refused for m >= 6 (" +
                        std::to_string(count_orders(m)) + " cases); use sampling");
  }
  const auto layouts = sorted_layouts(m);
  TransposeSequence seq;
  seq.layouts.reserve(m);
  seq.layouts.push_back(Layout::identity(m));
  unsigned used = 1u << (m - 1);

  const std::function<void()> rec = [&] {
    if (static_cast<int>(seq.layouts.size()) == m) {
      fn(seq);
      return;
    }
    for (const auto& l : layouts) {
      if (used & (1u << l.last_axis())) continue;
      used |= 1u << l.last_axis();
      seq.layouts.push_back(l);
      rec();
      seq.layouts.pop_back();
      used &= ~(1u << l.last_axis());
    }
  };
  rec();
}

std::vector<TransposeSequence> enumerate_sequences(int m) {
  std::vector<TransposeSequence> out;
  out.reserve(m <= 4 ? count_orders(m) : 0);
  for_each_sequence(m, [&](const TransposeSequence& s) { out.push_back(s); });
  return out;
}

OrderCatalog best_orders(int m) {
  static const char* k3[] = {"abc->acb->bca", "abc->acb->cba", "abc->cba->cab",
                             "abc->cab->cba"};
  static const char* k4[] = {"abcd->abdc->dcba->dcab", "abcd->abdc->dcab->dcba",
                             "abcd->abdc->cdab->cdba", "abcd->abdc->cdba->cdab"};
  static const char* k5[] = {"abcde->abced->abedc->cedba->cedab",
                             "abcde->abced->abedc->ecdba->ecdab",
                             "abcde->abced->abedc->cdeba->cdeab",
                             "abcde->abced->abedc->cdeab->cdeba"};
  OrderCatalog cat;
  cat.m = m;
  auto fill = [&cat](const char* const* names, int n) {
    for (int i = 0; i < n; ++i) cat.best.push_back(TransposeSequence::parse(names[i]));
  };
  switch (m) {
    case 3: fill(k3, 4); break;
    case 4: fill(k4, 4); break;
    case 5: fill(k5, 4); break;
    default:
      throw std::invalid_argument("no best-order catalog for m=" + std::to_string(m));
  }
  return cat;
}

TransposeSequence worst_order(int m) {
  if (m < 2) throw std::invalid_argument("worst order needs m >= 2");
  TransposeSequence seq;
  for (int k = 0; k < m; ++k) {
    std::vector<int> p(m);
    for (int i = 0; i < m; ++i) p[i] = (i + k) % m;
    seq.layouts.emplace_back(std::move(p));
  }
  return seq;
}

TransposeSequence sample_sequence(int m, SplitMix64& rng) {
  if (m < 2) throw std::invalid_argument("sampling needs m >= 2");
  const auto layouts = sorted_layouts(m);
  TransposeSequence seq;
  seq.layouts.push_back(Layout::identity(m));
  unsigned used = 1u << (m - 1);
  std::vector<const Layout*> options;
  while (static_cast<int>(seq.layouts.size()) < m) {
    options.clear();
    for (const auto& l : layouts) {
      if (!(used & (1u << l.last_axis()))) options.push_back(&l);
    }
    const Layout* pick = options[rng.next_below(options.size())];
    used |= 1u << pick->last_axis();
    seq.layouts.push_back(*pick);
  }
  return seq;
}

}  // namespace fftdecomp
