#include "fftdecomp/fftcore.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace fftdecomp {
namespace {

bool is_pow2(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<cplx> make_table(std::int64_t n) {
  std::vector<cplx> t(n);
  for (std::int64_t k = 0; k < n; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    t[k] = cplx(std::cos(ang), std::sin(ang));
  }
  return t;
}

}  // namespace

const std::vector<cplx>& twiddle_table(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("twiddle table needs n >= 1");
  static std::mutex mu;
  static std::unordered_map<std::int64_t, std::vector<cplx>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_table(n)).first;
  return it->second;
}

std::vector<cplx> dft_1d(std::span<const cplx> input) {
  const std::int64_t n = static_cast<std::int64_t>(input.size());
  if (n < 1) throw std::invalid_argument("empty input");
  const auto& w = twiddle_table(n);
  std::vector<cplx> out(n);
  for (std::int64_t k = 0; k < n; ++k) {
    cplx acc = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      acc += w[(j * k) % n] * input[j];
    }
    out[k] = acc;
  }
  return out;
}

void fft_1d_inplace(std::span<cplx> a) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  if (n < 1) throw std::invalid_argument("empty input");
  if (!is_pow2(n)) {
    auto out = dft_1d(a);
    std::copy(out.begin(), out.end(), a.begin());
    return;
  }
  // bit-reversal permutation
  for (std::int64_t i = 1, j = 0; i < n; ++i) {
    std::int64_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto& w = twiddle_table(n);
  for (std::int64_t len = 2; len <= n; len <<= 1) {
    const std::int64_t step = n / len;
    for (std::int64_t i = 0; i < n; i += len) {
      for (std::int64_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w[j * step];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

std::vector<cplx> fft_1d(std::span<const cplx> input) {
  std::vector<cplx> out(input.begin(), input.end());
  fft_1d_inplace(out);
  return out;
}

std::vector<cplx> inverse_fft_1d(std::span<const cplx> input) {
  std::vector<cplx> tmp(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) tmp[i] = std::conj(input[i]);
  fft_1d_inplace(tmp);
  for (auto& v : tmp) v = std::conj(v);
  return tmp;
}

std::vector<cplx> dft_md(const Shape& shape, std::span<const cplx> input) {
  const std::int64_t total = shape.total();
  if (static_cast<std::int64_t>(input.size()) != total) {
    throw std::invalid_argument("input length does not match shape total");
  }
  const int m = shape.order();
  std::vector<const std::vector<cplx>*> tables(m);
  for (int r = 0; r < m; ++r) tables[r] = &twiddle_table(shape.dims[r]);

  std::vector<cplx> out(total);
  std::vector<std::int64_t> k(m, 0), j(m, 0);
  for (std::int64_t ki = 0; ki < total; ++ki) {
    cplx acc = 0;
    std::fill(j.begin(), j.end(), 0);
    for (std::int64_t ji = 0; ji < total; ++ji) {
      cplx factor = input[ji];
      for (int r = 0; r < m; ++r) {
        factor *= (*tables[r])[(j[r] * k[r]) % shape.dims[r]];
      }
      acc += factor;
      for (int r = m - 1; r >= 0; --r) {
        if (++j[r] < shape.dims[r]) break;
        j[r] = 0;
      }
    }
    out[ki] = acc;
    for (int r = m - 1; r >= 0; --r) {
      if (++k[r] < shape.dims[r]) break;
      k[r] = 0;
    }
  }
  return out;
}

double max_rel_error(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  double ref = 0, err = 0;
  for (std::size_t i = 0; i < b.size(); ++i) ref = std::max(ref, std::abs(b[i]));
  for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return err / std::max(ref, 1e-300);
}

}  // namespace fftdecomp
