#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fftdecomp/fftcore.hpp"
#include "fftdecomp/orders.hpp"
#include "fftdecomp/shape.hpp"

namespace fftdecomp {

/// Raised when some rank's ownership splits a 1-D FFT line; local FFTs need
/// whole lines, so such process counts are refused.
struct InfeasibleParallelism : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The tensor spread over simulated ranks: rank r's buffer holds its owned
/// points in ascending 1-D index order under the current layout, so
/// concatenating the buffers in rank order reconstructs the full linearized
/// tensor.
struct DistTensor {
  DecompContext ctx;
  std::vector<std::vector<cplx>> local;
};

/// Per-transpose record of who sent how much to whom. Self-retained points
/// are not traffic and never appear.
struct TrafficLedger {
  struct Hop {
    Layout from, to;
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> sent;  // (src,dst) -> points
    std::int64_t total = 0;
  };
  std::vector<Hop> hops;

  std::int64_t total() const;
  std::vector<std::int64_t> hop_totals() const;
};

/// Distribute a row-major natural-order buffer over np ranks under `layout`.
DistTensor scatter(const Shape& shape, const Layout& layout, std::int64_t np,
                   std::span<const cplx> global);

/// Reassemble the row-major natural-order buffer. Inverse of scatter.
std::vector<cplx> gather(const DistTensor& t);

/// Redistribute to layout `to`, recording every moved point in the ledger.
/// Values are permuted, never altered.
DistTensor transpose(const DistTensor& t, const Layout& to, TrafficLedger& ledger);

struct RunResult {
  std::vector<cplx> data;  // gathered output, linearized under `layout`
  Layout layout;           // identity when restore_output was set
  TrafficLedger ledger;

  /// Output reordered to row-major natural order (undoes `layout`).
  std::vector<cplx> natural_order(const Shape& shape) const;
};

/// The staged parallel transform: per stage, every rank runs contiguous 1-D
/// FFTs along the current last axis on its local buffer, then the tensor is
/// transposed to the next order in the sequence. With restore_output a final
/// transpose back to the identity order is performed (and costed).
RunResult run_parallel_fft(const Shape& shape, const TransposeSequence& seq, std::int64_t np,
                           std::span<const cplx> input, bool restore_output = false);

}  // namespace fftdecomp
