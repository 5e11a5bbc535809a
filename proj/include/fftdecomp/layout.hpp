#pragma once

#include <cstdint>
#include <utility>

#include "fftdecomp/shape.hpp"

namespace fftdecomp {

/// Row-major mixed-radix index of `coord` under the layout-permuted
/// dimension order. Bijective over [0, total).
std::int64_t linearize(const Shape& shape, const Layout& layout, const Coord& coord);

/// Inverse of linearize.
Coord delinearize(const Shape& shape, const Layout& layout, std::int64_t index);

/// Adaptive-decomposition boundary index for rank `myid` out of `np`.
///
/// With permuted sizes S_0..S_{M-1} and prefix products P_k, the bracket is
/// the smallest k with np <= P_k, and the boundary is
/// floor(P_k * myid / np) * (total / P_k). The decomposition therefore splits
/// only the first k axes: whole hyperplanes for np <= S_0, whole rows of the
/// trailing axes for S_0 < np <= S_0*S_1, and so on. myid may equal np (used
/// as the exclusive end boundary); f_md(np, 0) = 0 and f_md(np, np) = total.
std::int64_t f_md(const Shape& shape, const Layout& layout, std::int64_t np,
                  std::int64_t myid);

/// [f_md(myid), f_md(myid+1) - 1]. Ranges over myid = 0..np-1 tile [0, total)
/// with no gaps or overlaps.
RankRange rank_range(const DecompContext& ctx, std::int64_t myid);

/// Coordinates (layout order) of both ends of rank_range(myid).
std::pair<Coord, Coord> rank_corner_coords(const DecompContext& ctx, std::int64_t myid);

/// The unique rank whose range contains `index` (bisection over f_md).
std::int64_t owner_of(const DecompContext& ctx, std::int64_t index);

}  // namespace fftdecomp
