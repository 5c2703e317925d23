#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dilative/core_model.hpp"

namespace dilative {

// ---------------------------------------------------------------------------
// Exact combinatorial engine behind the moment expansion
//   E X^p = sum over set partitions Pi of prod over blocks B of c_{|B|}
// and the scaled increment moments of the stationary-increments scaling law.
// ---------------------------------------------------------------------------

/// A partition of {1..p} in canonical order: blocks sorted by smallest
/// element, elements ascending within a block.
struct SetPartition {
    int p = 0;
    std::vector<std::vector<int>> blocks;
};

inline constexpr int kMaxPartitionOrder = 12; // Bell(12) = 4,213,597

/// Streams every partition of {1..p} exactly once, in lexicographic order of
/// the restricted-growth string (which is canonical order). Deterministic and
/// reentrant; each enumerator owns its state.
class PartitionEnumerator {
public:
    PartitionEnumerator(int p, bool skip_singletons);

    /// Advances to the next partition; false when exhausted. The partition is
    /// materialized into `out`.
    bool next(SetPartition& out);

private:
    bool advance();
    bool current_ok() const;
    void materialize(SetPartition& out) const;

    int p_;
    bool skip_singletons_;
    bool fresh_ = true;
    bool done_ = false;
    std::vector<int> rgs_;  // rgs_[i] = block index of element i+1
    std::vector<int> maxp_; // maxp_[i] = max(rgs_[0..i-1])
};

/// All partitions of {1..p}; with skip_singletons only those whose blocks all
/// have size >= 2. Throws for p outside [1, 12].
std::vector<SetPartition> enumerate_partitions(int p, bool skip_singletons = false);

/// Visits block-size multisets without materializing blocks:
/// fn(block_sizes, n_blocks). Used by the moment sums.
void for_each_partition_sizes(int p, const std::function<void(const std::vector<int>&, int)>& fn);

std::uint64_t bell_number(int p);

/// p-th raw moment of the zero-mean law with cumulants `c`:
/// sum over partitions of prod c_{|B|}. Even p only; p <= min(p_max, 12).
double moment_from_cumulants(const CumulantVector& c, int p);

/// E|X(t)-X(s)|^p for |t-s| = h under the stationary scaling law:
/// h^{(H-delta/2)p} * sum_{Pi} h^{delta*|Pi|} prod c_{|B|}.
/// Singleton blocks vanish via c_1 = 0.
double scaled_increment_moment(const DilativeParams& params, const CumulantVector& c,
                               int p, double h);

/// The majorant used in the Kolmogorov-condition argument, h in (0,1]:
/// CaseI:   moment * h^{Hp}
/// CaseII:  moment * h^{(H-delta/2)p}
/// CaseIII: c_2 * h^{2H}, p = 2 only.
double kolmogorov_bound(const DilativeParams& params, const CumulantVector& c,
                        int p, double h);

/// Smallest even p giving a positive Kolmogorov exponent q = bound*p - 1:
/// p > 1/H (CaseI), p > 1/(H-delta/2) (CaseII), 2 (CaseIII, H > 1/2).
int min_even_order(const DilativeParams& params);

} // namespace dilative
