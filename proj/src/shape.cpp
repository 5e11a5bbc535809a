#include "fftdecomp/shape.hpp"

#include <numeric>
#include <stdexcept>

namespace fftdecomp {

Shape::Shape(std::vector<std::int64_t> d) : dims(std::move(d)) {
  if (dims.size() < 2) {
    throw std::invalid_argument("shape needs at least 2 dimensions");
  }
  std::int64_t t = 1;
  for (auto n : dims) {
    if (n < 1) throw std::invalid_argument("shape dims must be positive");
    if (__builtin_mul_overflow(t, n, &t) || t > (std::int64_t{1} << 31)) {
      throw std::invalid_argument("shape too large: index arithmetic supports up to 2^31 points");
    }
  }
}

std::int64_t Shape::total() const {
  std::int64_t t = 1;
  for (auto n : dims) t *= n;
  return t;
}

bool Shape::is_cubic() const {
  for (auto n : dims) {
    if (n != dims[0]) return false;
  }
  return true;
}

Layout::Layout(std::vector<int> p) : perm(std::move(p)) {
  std::vector<char> seen(perm.size(), 0);
  for (int a : perm) {
    if (a < 0 || a >= static_cast<int>(perm.size()) || seen[a]) {
      throw std::invalid_argument("layout must be a permutation of 0..M-1");
    }
    seen[a] = 1;
  }
}

Layout Layout::identity(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  return Layout(std::move(p));
}

Layout Layout::parse(const std::string& s) {
  std::vector<int> p;
  p.reserve(s.size());
  for (char c : s) {
    if (c < 'a' || c >= 'a' + static_cast<int>(s.size())) {
      throw std::invalid_argument("bad layout string '" + s + "': axis letters must be the first " +
                                  std::to_string(s.size()) + " of 'a'..'z'");
    }
    p.push_back(c - 'a');
  }
  return Layout(std::move(p));  // permutation check in ctor
}

bool Layout::is_identity() const {
  for (int i = 0; i < order(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

std::string Layout::str() const {
  std::string s;
  for (int a : perm) s += static_cast<char>('a' + a);
  return s;
}

std::vector<std::int64_t> Layout::permuted_dims(const Shape& shape) const {
  if (order() != shape.order()) {
    throw std::invalid_argument("layout order does not match shape order");
  }
  std::vector<std::int64_t> out(perm.size());
  for (int i = 0; i < order(); ++i) out[i] = shape.dims[perm[i]];
  return out;
}

DecompContext::DecompContext(Shape s, Layout l, std::int64_t n)
    : shape(std::move(s)), layout(std::move(l)), np(n) {
  if (layout.order() != shape.order()) {
    throw std::invalid_argument("layout order does not match shape order");
  }
  if (np < 1 || np > shape.total()) {
    throw std::invalid_argument("process count must be in [1, total]");
  }
}

}  // namespace fftdecomp
