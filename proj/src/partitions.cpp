#include "dilative/partitions.hpp"

#include <cmath>
#include <stdexcept>

namespace dilative {

namespace {

void check_order(int p) {
    if (p < 1 || p > kMaxPartitionOrder)
        throw std::invalid_argument("partition order must be in [1, " +
                                    std::to_string(kMaxPartitionOrder) +
                                    "]: " + std::to_string(p));
}

// Advances a restricted-growth string in lexicographic order; returns the
// changed index, or -1 when exhausted.
int rgs_advance(std::vector<int>& rgs, std::vector<int>& maxp, int p) {
    for (int i = p - 1; i >= 1; --i) {
        if (rgs[i] <= maxp[i]) {
            ++rgs[i];
            const int m = std::max(maxp[i], rgs[i]);
            for (int j = i + 1; j < p; ++j) {
                rgs[j] = 0;
                maxp[j] = m;
            }
            return i;
        }
    }
    return -1;
}

} // namespace

PartitionEnumerator::PartitionEnumerator(int p, bool skip_singletons)
    : p_(p), skip_singletons_(skip_singletons) {
    check_order(p);
    rgs_.assign(static_cast<std::size_t>(p), 0);
    maxp_.assign(static_cast<std::size_t>(p), 0);
}

bool PartitionEnumerator::advance() {
    return rgs_advance(rgs_, maxp_, p_) >= 0;
}

bool PartitionEnumerator::current_ok() const {
    if (!skip_singletons_) return true;
    const int nblocks = std::max(maxp_[p_ - 1], rgs_[p_ - 1]) + 1;
    std::vector<int> sizes(static_cast<std::size_t>(nblocks), 0);
    for (int i = 0; i < p_; ++i) ++sizes[rgs_[i]];
    for (int s : sizes)
        if (s < 2) return false;
    return true;
}

void PartitionEnumerator::materialize(SetPartition& out) const {
    const int nblocks = std::max(maxp_[p_ - 1], rgs_[p_ - 1]) + 1;
    out.p = p_;
    out.blocks.assign(static_cast<std::size_t>(nblocks), {});
    for (int i = 0; i < p_; ++i) out.blocks[rgs_[i]].push_back(i + 1);
}

bool PartitionEnumerator::next(SetPartition& out) {
    if (done_) return false;
    if (fresh_) {
        fresh_ = false;
        if (current_ok()) {
            materialize(out);
            return true;
        }
    }
    while (advance()) {
        if (current_ok()) {
            materialize(out);
            return true;
        }
    }
    done_ = true;
    return false;
}

std::vector<SetPartition> enumerate_partitions(int p, bool skip_singletons) {
    PartitionEnumerator en(p, skip_singletons);
    std::vector<SetPartition> out;
    SetPartition part;
    while (en.next(part)) out.push_back(part);
    return out;
}

void for_each_partition_sizes(int p,
                              const std::function<void(const std::vector<int>&, int)>& fn) {
    check_order(p);
    std::vector<int> rgs(static_cast<std::size_t>(p), 0);
    std::vector<int> maxp(static_cast<std::size_t>(p), 0);
    std::vector<int> sizes(static_cast<std::size_t>(p), 0);
    for (;;) {
        const int nblocks = std::max(maxp[p - 1], rgs[p - 1]) + 1;
        for (int b = 0; b < nblocks; ++b) sizes[b] = 0;
        for (int i = 0; i < p; ++i) ++sizes[rgs[i]];
        fn(sizes, nblocks);

        if (rgs_advance(rgs, maxp, p) < 0) return;
    }
}

std::uint64_t bell_number(int p) {
    check_order(p);
    // Bell triangle; the partition count of {1..p} is the last entry of row p
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i < p; ++i) {
        std::vector<std::uint64_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (std::size_t j = 0; j < row.size(); ++j)
            next.push_back(next[j] + row[j]);
        row = std::move(next);
    }
    return row.back();
}

double moment_from_cumulants(const CumulantVector& c, int p) {
    check_order(p);
    if (p % 2 != 0)
        throw std::invalid_argument("moment_from_cumulants: odd order " +
                                    std::to_string(p) + " is not supported");
    if (p > c.p_max())
        throw std::invalid_argument("moment_from_cumulants: order exceeds p_max");

    double total = 0.0;
    for_each_partition_sizes(p, [&](const std::vector<int>& sizes, int nblocks) {
        double prod = 1.0;
        for (int b = 0; b < nblocks; ++b) {
            prod *= c.entries[static_cast<std::size_t>(sizes[b] - 1)];
            if (prod == 0.0) break;
        }
        total += prod;
    });
    return total;
}

double scaled_increment_moment(const DilativeParams& params, const CumulantVector& c,
                               int p, double h) {
    check_order(p);
    if (!params.stationary_increments)
        throw std::invalid_argument("scaled_increment_moment: requires stationary increments");
    if (p % 2 != 0)
        throw std::invalid_argument("scaled_increment_moment: odd order not supported");
    if (p > c.p_max())
        throw std::invalid_argument("scaled_increment_moment: order exceeds p_max");
    if (!(h > 0.0))
        throw std::invalid_argument("scaled_increment_moment: h must be > 0");

    const double hurst = params.alpha;
    const double delta = params.delta;
    double total = 0.0;
    for_each_partition_sizes(p, [&](const std::vector<int>& sizes, int nblocks) {
        double prod = 1.0;
        for (int b = 0; b < nblocks; ++b) {
            prod *= c.entries[static_cast<std::size_t>(sizes[b] - 1)];
            if (prod == 0.0) break;
        }
        if (prod != 0.0) total += std::pow(h, delta * nblocks) * prod;
    });
    return std::pow(h, (hurst - 0.5 * delta) * p) * total;
}

double kolmogorov_bound(const DilativeParams& params, const CumulantVector& c,
                        int p, double h) {
    if (!(h > 0.0 && h <= 1.0))
        throw std::invalid_argument("kolmogorov_bound: h must be in (0,1]");
    const HolderCase hc = holder_case(params);
    const double hurst = params.alpha;
    switch (hc.regime) {
        case HolderRegime::case_i:
            return moment_from_cumulants(c, p) * std::pow(h, hurst * p);
        case HolderRegime::case_ii:
            return moment_from_cumulants(c, p) *
                   std::pow(h, (hurst - 0.5 * params.delta) * p);
        case HolderRegime::case_iii:
            if (p != 2)
                throw std::invalid_argument(
                    "kolmogorov_bound: CaseIII (delta = 2H) supports p = 2 only");
            return c.order(2) * std::pow(h, 2.0 * hurst);
    }
    throw std::logic_error("kolmogorov_bound: unreachable");
}

int min_even_order(const DilativeParams& params) {
    const HolderCase hc = holder_case(params);
    if (hc.regime == HolderRegime::case_iii) return 2;
    const double threshold =
        (hc.regime == HolderRegime::case_i) ? 1.0 / params.alpha
                                            : 1.0 / (params.alpha - 0.5 * params.delta);
    int p = 2;
    while (!(static_cast<double>(p) > threshold)) p += 2;
    return p;
}

} // namespace dilative
