#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fftdecomp/orders.hpp"
#include "fftdecomp/shape.hpp"

namespace fftdecomp {

/// Thrown when a closed-form baseline is queried past its scalability limit.
struct MethodInapplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Which transpose-cost accounting to use for pattern analysis and search.
///
/// kExact counts, point by point, how many data points change owning rank
/// (the measurable quantity; the simulator's ledgers match it exactly).
///
/// kClassification is the leading-order model the best-order
/// catalogs derive from: a transpose from one order to another reuses
/// total * P_l / np points, where P_l is the size product of the longest
/// shared ordered axis prefix; cost = max(0, total - total * P_l / np).
/// It ignores the extra reuse exact counting finds for transposes that share
/// a non-leading axis, which is what collapses the exact cost classes into
/// the classic two-pattern / 96-order structure.
enum class CostModel { kExact, kClassification };

/// Data points that change owning rank when redistributing from one storage
/// order to another at a fixed process count. Reference implementation:
/// walks every physical point and compares owners. Zero when from == to or
/// np == 1.
std::int64_t transpose_cost(const Shape& shape, const Layout& from, const Layout& to,
                            std::int64_t np);

/// Same contract as transpose_cost, computed without visiting points:
/// each rank's owned interval is decomposed into at most 2M-1 axis-aligned
/// boxes under each order, and the kept points are the summed volumes of
/// pairwise box intersections. Agrees with transpose_cost integer-exactly.
std::int64_t transpose_cost_fast(const Shape& shape, const Layout& from, const Layout& to,
                                 std::int64_t np);

/// Leading-order model cost (see CostModel::kClassification).
std::int64_t classification_cost(const Shape& shape, const Layout& from, const Layout& to,
                                 std::int64_t np);

/// Sum of per-hop transpose costs over the sequence (fast path); optionally
/// adds the final restore hop back to the identity order.
std::int64_t sequence_cost(const Shape& shape, const TransposeSequence& seq, std::int64_t np,
                           bool include_final_restore = false);

/// Traffic needed to complete 1-D FFT lines along the last axis of `layout`
/// when ranks own less than a whole line (each owner of a line fragment
/// receives the missing points). Zero whenever np <= total / last-axis size,
/// i.e. in the regime the parallel simulator accepts. Used by compare
/// reports to extend "ours" past the whole-line limit.
std::int64_t line_completion_amount(const Shape& shape, const Layout& layout, std::int64_t np);

/// Communication amount per process count; the fingerprint sequences are
/// grouped by.
struct CommProfile {
  std::vector<std::int64_t> np_values;
  std::vector<std::int64_t> amounts;

  bool operator==(const CommProfile&) const = default;
};

struct PatternGroup {
  CommProfile profile;
  TransposeSequence representative;       // lexicographically first member
  std::int64_t member_count = 0;
  std::vector<TransposeSequence> members;  // truncated to the analysis member cap
};

struct PatternReport {
  std::vector<std::int64_t> np_values;
  std::vector<PatternGroup> groups;        // sorted by profile, best first
  std::vector<double> worst_best_ratio;    // per np: max amount / min amount
  std::int64_t sequence_count = 0;
};

struct AnalyzeOptions {
  CostModel model = CostModel::kExact;
  bool exhaustive = false;        // m == 5: enumerate all 7,962,624 sequences
  std::int64_t samples = 10000;   // m == 5 default: seeded sample size
  std::uint64_t seed = 1;
  std::size_t member_cap = 16;    // per-group members kept in the report
  int threads = 0;                // 0: FFTDECOMP_THREADS or hardware default
};

/// Group all sequences (or the m=5 sample) of dimensionality m by their
/// communication profile over np_values. m >= 6 raises CapacityError.
PatternReport analyze_patterns(const Shape& shape, int m,
                               const std::vector<std::int64_t>& np_values,
                               const AnalyzeOptions& opts = {});

struct SearchOptions {
  CostModel model = CostModel::kExact;
  bool exhaustive = false;   // m == 5: exact search over all sequences
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
};

/// Sequences whose profile attains the per-np minimum simultaneously at
/// every supplied np. Exhaustive for m <= 4 always; for m == 5 the default
/// checks the catalog against seeded samples plus the known worst
/// order, while exhaustive mode searches the full space (min-profile dynamic
/// program plus pruned enumeration of attaining sequences).
std::vector<TransposeSequence> search_best(const Shape& shape, int m,
                                           const std::vector<std::int64_t>& np_values,
                                           const SearchOptions& opts = {});

/// Conventional decomposition baselines (cubic/hypercubic data).
enum class Baseline { k1D, k1p5D, k2D, k3D, k4D, k5D };

const char* baseline_name(Baseline b);

/// Largest applicable process count: N, N^1.5, N^2, ... respectively.
std::int64_t baseline_limit(Baseline b, std::int64_t n);

/// Closed-form communication amount in data points. Throws
/// MethodInapplicable past the method's limit. All methods except 1-D/1.5-D
/// involve fractional powers and return non-integer values in general.
double baseline_amount(Baseline b, std::int64_t n, std::int64_t np);

struct CompareRow {
  std::int64_t np = 0;
  std::int64_t ours_transpose = 0;    // sequence_cost of the catalog order
  std::int64_t ours_completion = 0;   // line completion past the whole-line limit
  std::int64_t ours = 0;              // sum of the two
  std::optional<double> a1d, a1p5d, a2d;   // m == 3 only
  std::optional<double> baseline_md;       // A_3D / A_4D / A_5D for m = 3/4/5
  std::optional<double> pct_better_2d;     // 100 * (A_2D - ours) / ours
  std::optional<double> md_over_ours;      // baseline_md / ours
};

struct CompareReport {
  int m = 0;
  std::int64_t n = 0;
  TransposeSequence order;   // the catalog order "ours" uses
  std::vector<CompareRow> rows;
};

/// Communication-amount comparison against the closed-form baselines at
/// N^m data points, one row per np.
CompareReport compare_report(int m, std::int64_t n, const std::vector<std::int64_t>& np_values);

}  // namespace fftdecomp
