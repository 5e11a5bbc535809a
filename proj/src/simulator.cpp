#include "fftdecomp/simulator.hpp"

#include <algorithm>
#include <string>

#include "fftdecomp/layout.hpp"

namespace fftdecomp {
namespace {

std::vector<std::int64_t> boundaries(const DecompContext& ctx) {
  std::vector<std::int64_t> b(ctx.np + 1);
  for (std::int64_t r = 0; r <= ctx.np; ++r) b[r] = f_md(ctx.shape, ctx.layout, ctx.np, r);
  return b;
}

/// Physical-axis strides under a layout's linearization.
std::vector<std::int64_t> axis_strides(const Shape& shape, const Layout& layout) {
  std::vector<std::int64_t> stride(shape.order());
  std::int64_t s = 1;
  for (int i = shape.order() - 1; i >= 0; --i) {
    stride[layout.perm[i]] = s;
    s *= shape.dims[layout.perm[i]];
  }
  return stride;
}

void require_whole_lines(const Shape& shape, const Layout& layout, std::int64_t np) {
  const std::int64_t line = shape.dims[layout.last_axis()];
  for (std::int64_t r = 0; r <= np; ++r) {
    if (f_md(shape, layout, np, r) % line != 0) {
      throw InfeasibleParallelism(
          "np=" + std::to_string(np) + " splits 1-D FFT lines of length " +
          std::to_string(line) + " under order " + layout.str() +
          "; local FFTs need whole lines");
    }
  }
}

}  // namespace

std::int64_t TrafficLedger::total() const {
  std::int64_t t = 0;
  for (const auto& h : hops) t += h.total;
  return t;
}

std::vector<std::int64_t> TrafficLedger::hop_totals() const {
  std::vector<std::int64_t> out;
  out.reserve(hops.size());
  for (const auto& h : hops) out.push_back(h.total);
  return out;
}

DistTensor scatter(const Shape& shape, const Layout& layout, std::int64_t np,
                   std::span<const cplx> global) {
  if (static_cast<std::int64_t>(global.size()) != shape.total()) {
    throw std::invalid_argument("global buffer length does not match shape total");
  }
  DistTensor t{DecompContext(shape, layout, np), {}};
  const auto b = boundaries(t.ctx);
  const auto stride = axis_strides(shape, Layout::identity(shape.order()));
  const auto sizes = layout.permuted_dims(shape);
  const int m = shape.order();
  t.local.resize(np);
  for (std::int64_t r = 0; r < np; ++r) {
    t.local[r].reserve(b[r + 1] - b[r]);
    // walk the rank's interval, carrying the natural-order index
    Coord c = b[r] < b[r + 1] ? delinearize(shape, layout, b[r]) : Coord(m, 0);
    std::int64_t nat = 0;
    for (int i = 0; i < m; ++i) nat += c[i] * stride[layout.perm[i]];
    for (std::int64_t x = b[r]; x < b[r + 1]; ++x) {
      t.local[r].push_back(global[nat]);
      if (x + 1 == b[r + 1]) break;
      for (int i = m - 1; i >= 0; --i) {
        nat += stride[layout.perm[i]];
        if (++c[i] < sizes[i]) break;
        c[i] = 0;
        nat -= sizes[i] * stride[layout.perm[i]];
      }
    }
  }
  return t;
}

std::vector<cplx> gather(const DistTensor& t) {
  const Shape& shape = t.ctx.shape;
  std::vector<cplx> out(shape.total());
  const auto b = boundaries(t.ctx);
  const auto stride = axis_strides(shape, Layout::identity(shape.order()));
  const auto sizes = t.ctx.layout.permuted_dims(shape);
  const int m = shape.order();
  for (std::int64_t r = 0; r < t.ctx.np; ++r) {
    if (b[r] >= b[r + 1]) continue;
    Coord c = delinearize(shape, t.ctx.layout, b[r]);
    std::int64_t nat = 0;
    for (int i = 0; i < m; ++i) nat += c[i] * stride[t.ctx.layout.perm[i]];
    for (std::int64_t x = b[r]; x < b[r + 1]; ++x) {
      out[nat] = t.local[r][x - b[r]];
      if (x + 1 == b[r + 1]) break;
      for (int i = m - 1; i >= 0; --i) {
        nat += stride[t.ctx.layout.perm[i]];
        if (++c[i] < sizes[i]) break;
        c[i] = 0;
        nat -= sizes[i] * stride[t.ctx.layout.perm[i]];
      }
    }
  }
  return out;
}

DistTensor transpose(const DistTensor& t, const Layout& to, TrafficLedger& ledger) {
  const Shape& shape = t.ctx.shape;
  const std::int64_t np = t.ctx.np;
  DistTensor out{DecompContext(shape, to, np), {}};
  out.local.resize(np);

  TrafficLedger::Hop hop;
  hop.from = t.ctx.layout;
  hop.to = to;

  const auto bf = boundaries(t.ctx);
  const auto bt = boundaries(out.ctx);
  const auto from_stride = axis_strides(shape, t.ctx.layout);
  const auto to_sizes = to.permuted_dims(shape);
  const int m = shape.order();

  for (std::int64_t dst = 0; dst < np; ++dst) {
    out.local[dst].reserve(bt[dst + 1] - bt[dst]);
    if (bt[dst] >= bt[dst + 1]) continue;
    // walk destination indices, carrying the source-layout index
    Coord c = delinearize(shape, to, bt[dst]);
    std::int64_t src_idx = 0;
    for (int i = 0; i < m; ++i) src_idx += c[i] * from_stride[to.perm[i]];
    for (std::int64_t y = bt[dst]; y < bt[dst + 1]; ++y) {
      // src_idx is not monotone along the destination walk, so bisect
      const std::int64_t src =
          std::upper_bound(bf.begin(), bf.end(), src_idx) - bf.begin() - 1;
      out.local[dst].push_back(t.local[src][src_idx - bf[src]]);
      if (src != dst) {
        ++hop.sent[{src, dst}];
        ++hop.total;
      }
      if (y + 1 == bt[dst + 1]) break;
      for (int i = m - 1; i >= 0; --i) {
        src_idx += from_stride[to.perm[i]];
        if (++c[i] < to_sizes[i]) break;
        c[i] = 0;
        src_idx -= to_sizes[i] * from_stride[to.perm[i]];
      }
    }
  }
  ledger.hops.push_back(std::move(hop));
  return out;
}

std::vector<cplx> RunResult::natural_order(const Shape& shape) const {
  if (layout.is_identity()) return data;
  std::vector<cplx> out(data.size());
  const auto stride = axis_strides(shape, layout);
  const int m = shape.order();
  Coord c(m, 0);
  std::int64_t lin = 0;
  for (std::int64_t nat = 0; nat < static_cast<std::int64_t>(data.size()); ++nat) {
    out[nat] = data[lin];
    for (int i = m - 1; i >= 0; --i) {
      lin += stride[i];
      if (++c[i] < shape.dims[i]) break;
      c[i] = 0;
      lin -= shape.dims[i] * stride[i];
    }
  }
  return out;
}

RunResult run_parallel_fft(const Shape& shape, const TransposeSequence& seq, std::int64_t np,
                           std::span<const cplx> input, bool restore_output) {
  if (auto violation = validate_sequence(seq)) {
    throw std::invalid_argument("invalid transpose sequence: " + *violation);
  }
  if (seq.order() != shape.order()) {
    throw std::invalid_argument("sequence order does not match shape order");
  }
  for (const auto& l : seq.layouts) require_whole_lines(shape, l, np);

  RunResult result;
  DistTensor t = scatter(shape, seq.layouts.front(), np, input);
  for (std::size_t stage = 0; stage < seq.layouts.size(); ++stage) {
    const std::int64_t line = shape.dims[seq.layouts[stage].last_axis()];
    for (auto& buf : t.local) {
      for (std::size_t off = 0; off + line <= buf.size(); off += line) {
        fft_1d_inplace(std::span<cplx>(buf.data() + off, line));
      }
    }
    if (stage + 1 < seq.layouts.size()) {
      t = transpose(t, seq.layouts[stage + 1], result.ledger);
    }
  }
  if (restore_output && !t.ctx.layout.is_identity()) {
    t = transpose(t, Layout::identity(shape.order()), result.ledger);
  }
  result.layout = t.ctx.layout;
  // rank buffers concatenate to the layout-linearized tensor
  result.data.reserve(shape.total());
  for (const auto& buf : t.local) {
    result.data.insert(result.data.end(), buf.begin(), buf.end());
  }
  return result;
}

}  // namespace fftdecomp
