#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fftdecomp/prng.hpp"
#include "fftdecomp/shape.hpp"

namespace fftdecomp {

/// Thrown when an enumeration or count would exceed what is tractable
/// (full 6-D enumeration and beyond).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An ordered list of M storage orders the data passes through, one 1-D FFT
/// stage per entry. layouts[0] is the identity order; the last axis of each
/// entry is the FFT axis of that stage and must be distinct across stages.
struct TransposeSequence {
  std::vector<Layout> layouts;

  static TransposeSequence parse(const std::string& s);  // "abc->cab->cba"
  std::string str() const;
  int order() const { return layouts.empty() ? 0 : layouts[0].order(); }

  bool operator==(const TransposeSequence&) const = default;
  bool operator<(const TransposeSequence& o) const { return layouts < o.layouts; }
};

/// Known-optimal sequences for one dimensionality.
struct OrderCatalog {
  int m = 0;
  std::vector<TransposeSequence> best;
};

/// Number of transpose-order cases for the m-dimensional transform:
/// (m-1)!^m. Exact integer; throws CapacityError once the value would no
/// longer fit in 64 bits (m >= 7).
std::int64_t count_orders(int m);

/// ok -> nullopt, otherwise a description of the violated rule.
std::optional<std::string> validate_sequence(const TransposeSequence& seq);

/// Visit every valid sequence exactly once, in lexicographic order of the
/// concatenated layout strings. Full enumeration is refused for m >= 6
/// (use sampling instead).
void for_each_sequence(int m, const std::function<void(const TransposeSequence&)>& fn);

/// Materialized for_each_sequence; intended for m <= 4 (1,296 sequences).
std::vector<TransposeSequence> enumerate_sequences(int m);

/// Known always-best order catalogs for m in {3,4,5}.
OrderCatalog best_orders(int m);

/// Cyclic-rotation sequence (abc->cab->bca style): every hop changes every
/// prefix, giving the maximal-communication pattern at every process count.
TransposeSequence worst_order(int m);

/// Uniform random valid sequence (each slot choice is uniform over a
/// constant-size option set, so sequences are equiprobable).
TransposeSequence sample_sequence(int m, SplitMix64& rng);

}  // namespace fftdecomp
