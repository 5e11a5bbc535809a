#include "fftdecomp/layout.hpp"

#include <stdexcept>
#include <string>

namespace fftdecomp {

std::int64_t linearize(const Shape& shape, const Layout& layout, const Coord& coord) {
  const auto sizes = layout.permuted_dims(shape);
  if (coord.size() != sizes.size()) {
    throw std::invalid_argument("coordinate order does not match shape order");
  }
  std::int64_t x = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (coord[i] < 0 || coord[i] >= sizes[i]) {
      throw std::out_of_range("coordinate component " + std::to_string(i) +
                              " out of range for permuted dim size " + std::to_string(sizes[i]));
    }
    x = x * sizes[i] + coord[i];
  }
  return x;
}

Coord delinearize(const Shape& shape, const Layout& layout, std::int64_t index) {
  const auto sizes = layout.permuted_dims(shape);
  if (index < 0 || index >= shape.total()) {
    throw std::out_of_range("1-D index out of range");
  }
  Coord c(sizes.size());
  for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
    c[i] = index % sizes[i];
    index /= sizes[i];
  }
  return c;
}

std::int64_t f_md(const Shape& shape, const Layout& layout, std::int64_t np,
                  std::int64_t myid) {
  const std::int64_t total = shape.total();
  if (np < 1 || np > total) {
    throw std::invalid_argument("unsupported process count " + std::to_string(np) +
                                " for " + std::to_string(total) + " data points");
  }
  if (myid < 0 || myid > np) {
    throw std::out_of_range("myid out of range [0, np]");
  }
  const auto sizes = layout.permuted_dims(shape);
  std::int64_t prefix = 1;
  for (auto s : sizes) {
    prefix *= s;
    if (np <= prefix) {
      return (prefix * myid / np) * (total / prefix);
    }
  }
  return total;  // unreachable: np <= total
}

RankRange rank_range(const DecompContext& ctx, std::int64_t myid) {
  if (myid < 0 || myid >= ctx.np) {
    throw std::out_of_range("myid out of range [0, np)");
  }
  return RankRange{f_md(ctx.shape, ctx.layout, ctx.np, myid),
                   f_md(ctx.shape, ctx.layout, ctx.np, myid + 1) - 1};
}

std::pair<Coord, Coord> rank_corner_coords(const DecompContext& ctx, std::int64_t myid) {
  const RankRange r = rank_range(ctx, myid);
  if (r.empty()) {
    throw std::domain_error("rank owns no points; corner coordinates undefined");
  }
  return {delinearize(ctx.shape, ctx.layout, r.start),
          delinearize(ctx.shape, ctx.layout, r.end)};
}

std::int64_t owner_of(const DecompContext& ctx, std::int64_t index) {
  if (index < 0 || index >= ctx.shape.total()) {
    throw std::out_of_range("1-D index out of range");
  }
  // Smallest r with f_md(r+1) > index.
  std::int64_t lo = 0, hi = ctx.np - 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (f_md(ctx.shape, ctx.layout, ctx.np, mid + 1) > index) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace fftdecomp
