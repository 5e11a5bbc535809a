#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fftdecomp {

/// Per-dimension sizes N_1..N_M of the data grid. Each element is one
/// complex data point; total() is the product of all dims.
struct Shape {
  std::vector<std::int64_t> dims;

  Shape() = default;
  explicit Shape(std::vector<std::int64_t> d);

  int order() const { return static_cast<int>(dims.size()); }
  std::int64_t total() const;
  bool is_cubic() const;

  bool operator==(const Shape&) const = default;
};

/// Storage order of the dimensions, written as a string over 'a'..'z'
/// ("abc", "cab", ...). perm[0] is the slowest-varying axis, perm.back()
/// the fastest (the axis local 1-D FFTs run along).
struct Layout {
  std::vector<int> perm;

  Layout() = default;
  explicit Layout(std::vector<int> p);

  static Layout identity(int m);
  static Layout parse(const std::string& s);

  int order() const { return static_cast<int>(perm.size()); }
  int last_axis() const { return perm.back(); }
  bool is_identity() const;
  std::string str() const;

  /// Dim sizes reordered to this layout (index 0 = slowest).
  std::vector<std::int64_t> permuted_dims(const Shape& shape) const;

  bool operator==(const Layout&) const = default;
  bool operator<(const Layout& o) const { return perm < o.perm; }
};

/// Coordinate in layout order: components[i] indexes the axis perm[i].
using Coord = std::vector<std::int64_t>;

/// Contiguous 1-D index interval [start, end] owned by one rank.
/// May be empty (end == start - 1).
struct RankRange {
  std::int64_t start = 0;
  std::int64_t end = -1;

  std::int64_t count() const { return end - start + 1; }
  bool empty() const { return end < start; }
  bool contains(std::int64_t x) const { return start <= x && x <= end; }

  bool operator==(const RankRange&) const = default;
};

/// A shape decomposed over np ranks under a given storage order.
struct DecompContext {
  Shape shape;
  Layout layout;
  std::int64_t np = 1;

  DecompContext(Shape s, Layout l, std::int64_t n);
};

}  // namespace fftdecomp
