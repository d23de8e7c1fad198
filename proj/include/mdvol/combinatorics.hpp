#pragma once

#include "mdvol/error.hpp"
#include "mdvol/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

namespace mdvol {

/// Sorted, distinct, 1-based indices into a weight vector.
using IndexSubset = std::vector<int>;

/// A partition of {1..n}. Canonical form: blocks ordered by their minimum
/// element, elements ascending inside each block.
struct SetPartition {
    std::vector<std::vector<int>> blocks;

    std::size_t block_count() const noexcept { return blocks.size(); }
    friend bool operator==(const SetPartition&, const SetPartition&) = default;
    friend auto operator<=>(const SetPartition&, const SetPartition&) = default;
};

struct EnumerationLimits {
    int partition_cap = 12;
    int subset_cap = 30;
};

inline constexpr int kMaxCountArg = 30;

inline BigInt stirling2(int n, int k)
{
    if (n < 0 || k < 0 || k > n || n > kMaxCountArg)
        throw Error(Errc::InvalidArgs, "stirling2 needs 0 <= k <= n <= 30");
    // row-by-row recurrence S(i,j) = j*S(i-1,j) + S(i-1,j-1)
    std::vector<BigInt> row(static_cast<std::size_t>(k) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j)
            row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

inline BigInt bell(int n)
{
    if (n < 0 || n > kMaxCountArg) throw Error(Errc::InvalidArgs, "bell needs 0 <= n <= 30");
    BigInt total = 0;
    for (int k = 0; k <= n; ++k) total += stirling2(n, k);
    return total;
}

inline BigInt binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n) throw Error(Errc::InvalidArgs, "binomial needs 0 <= k <= n");
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline IndexSubset mask_to_subset(std::uint64_t mask)
{
    IndexSubset out;
    for (int i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u) out.push_back(i + 1);
    return out;
}

inline std::uint64_t subset_to_mask(const IndexSubset& s)
{
    std::uint64_t m = 0;
    for (int i : s) m |= std::uint64_t{1} << (i - 1);
    return m;
}

inline std::string format_subset(const IndexSubset& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Streaming partition enumeration over restricted growth strings. Each
// partition into exactly k blocks corresponds to one string a[0..n-1] with
// a[0] = 0, a[i] <= 1 + max(a[0..i-1]) and max(a) = k-1; strings are visited
// in lexicographic order and only the current one is held in memory.
// ---------------------------------------------------------------------------

class PartitionCursor {
public:
    PartitionCursor() = default;

    PartitionCursor(int n, int k) : n_(n), k_(k), rgs_(static_cast<std::size_t>(n), 0)
    {
        // zeros, then 1..k-1 in the last k-1 slots
        for (int j = 1; j < k; ++j) rgs_[static_cast<std::size_t>(n - k + j)] = j;
        done_ = false;
        materialize();
    }

    bool done() const noexcept { return done_; }
    const SetPartition& current() const noexcept { return current_; }
    const std::vector<int>& growth_string() const noexcept { return rgs_; }

    void advance()
    {
        if (done_) return;
        for (int i = n_ - 1; i >= 1; --i) {
            int prefix_max = 0;
            for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs_[j]);
            const int hi = std::min(prefix_max + 1, k_ - 1);
            const int remaining = n_ - 1 - i;
            for (int v = rgs_[i] + 1; v <= hi; ++v) {
                const int m = std::max(prefix_max, v);
                const int need = k_ - 1 - m;
                if (need > remaining) continue;
                rgs_[i] = v;
                int pos = i + 1;
                for (int z = 0; z < remaining - need; ++z) rgs_[pos++] = 0;
                for (int label = m + 1; label <= k_ - 1; ++label) rgs_[pos++] = label;
                materialize();
                return;
            }
        }
        done_ = true;
    }

private:
    void materialize()
    {
        current_.blocks.assign(static_cast<std::size_t>(k_), {});
        for (int i = 0; i < n_; ++i) current_.blocks[rgs_[i]].push_back(i + 1);
    }

    int n_ = 0;
    int k_ = 0;
    std::vector<int> rgs_;
    SetPartition current_;
    bool done_ = true;
};

/// Input range over the partitions of {1..n} with block counts in
/// [kmin, kmax], ordered by block count and then lexicographically.
class PartitionRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = SetPartition;
        using difference_type = std::ptrdiff_t;
        using pointer = const SetPartition*;
        using reference = const SetPartition&;

        iterator() = default;
        iterator(int n, int k, int kmax) : n_(n), k_(k), kmax_(kmax) { open(); }

        reference operator*() const { return cursor_.current(); }
        pointer operator->() const { return &cursor_.current(); }

        iterator& operator++()
        {
            cursor_.advance();
            if (cursor_.done()) {
                ++k_;
                open();
            }
            return *this;
        }
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.finished_; }

    private:
        void open()
        {
            if (k_ > kmax_) {
                finished_ = true;
                return;
            }
            cursor_ = PartitionCursor(n_, k_);
        }

        int n_ = 0;
        int k_ = 0;
        int kmax_ = -1;
        PartitionCursor cursor_;
        bool finished_ = false;
    };

    PartitionRange(int n, int kmin, int kmax) : n_(n), kmin_(kmin), kmax_(kmax) {}

    iterator begin() const { return iterator(n_, kmin_, kmax_); }
    std::default_sentinel_t end() const { return {}; }

private:
    int n_;
    int kmin_;
    int kmax_;
};

namespace detail {

inline void check_partition_args(int n, int k, const EnumerationLimits& limits)
{
    if (n > limits.partition_cap)
        throw Error(Errc::UnsupportedSize,
                    "partition enumeration for n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(limits.partition_cap));
    if (n < 1 || k < 1 || k > n)
        throw Error(Errc::InvalidArgs, "need 1 <= k <= n, got n = " + std::to_string(n) +
                                           ", k = " + std::to_string(k));
}

} // namespace detail

inline PartitionRange partitions_into_k_blocks(int n, int k, const EnumerationLimits& limits = {})
{
    detail::check_partition_args(n, k, limits);
    return PartitionRange(n, k, k);
}

inline PartitionRange partitions_with_at_least(int n, int kmin, const EnumerationLimits& limits = {})
{
    detail::check_partition_args(n, kmin, limits);
    return PartitionRange(n, kmin, n);
}

// ---------------------------------------------------------------------------
// Fixed-size subsets in lexicographic order.
// ---------------------------------------------------------------------------

class SubsetRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = IndexSubset;
        using difference_type = std::ptrdiff_t;
        using pointer = const IndexSubset*;
        using reference = const IndexSubset&;

        iterator() = default;
        iterator(int n, int k) : n_(n), current_(static_cast<std::size_t>(k))
        {
            for (int i = 0; i < k; ++i) current_[i] = i + 1;
            finished_ = false;
        }

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }

        iterator& operator++()
        {
            const int k = static_cast<int>(current_.size());
            int i = k - 1;
            while (i >= 0 && current_[i] == n_ - k + i + 1) --i;
            if (i < 0) {
                finished_ = true;
                return *this;
            }
            ++current_[i];
            for (int j = i + 1; j < k; ++j) current_[j] = current_[j - 1] + 1;
            return *this;
        }
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.finished_; }

    private:
        int n_ = 0;
        IndexSubset current_;
        bool finished_ = true;
    };

    SubsetRange(int n, int k) : n_(n), k_(k) {}

    iterator begin() const { return iterator(n_, k_); }
    std::default_sentinel_t end() const { return {}; }

private:
    int n_;
    int k_;
};

inline SubsetRange subsets_of_size(int n, int k, const EnumerationLimits& limits = {})
{
    if (n > limits.subset_cap)
        throw Error(Errc::UnsupportedSize, "subset enumeration for n = " + std::to_string(n));
    if (n < 0 || k < 0 || k > n) throw Error(Errc::InvalidArgs, "need 0 <= k <= n");
    return SubsetRange(n, k);
}

// ---------------------------------------------------------------------------
// Depth-first partition walk with pruning. Elements 0..n-1 are placed one at
// a time into an existing block or a fresh one. The visitor sees
//
//   bool place(int element, int block, bool fresh)   // false prunes the branch
//   void unplace(int element, int block, bool fresh)
//   void leaf(int block_count)
//
// Branches that can no longer reach min_blocks are cut before the visitor
// sees them. Used by the volume engines, which need incremental block state.
// ---------------------------------------------------------------------------

namespace detail {

template <class Visitor>
void walk_partitions_from(int element, int n, int blocks, int min_blocks, Visitor& visitor)
{
    if (element == n) {
        visitor.leaf(blocks);
        return;
    }
    const int remaining_after = n - element - 1;
    if (blocks + 1 + remaining_after < min_blocks) return;
    if (blocks + remaining_after >= min_blocks) {
        for (int b = 0; b < blocks; ++b) {
            if (visitor.place(element, b, false)) walk_partitions_from(element + 1, n, blocks, min_blocks, visitor);
            visitor.unplace(element, b, false);
        }
    }
    if (visitor.place(element, blocks, true)) walk_partitions_from(element + 1, n, blocks + 1, min_blocks, visitor);
    visitor.unplace(element, blocks, true);
}

} // namespace detail

template <class Visitor>
void walk_partitions(int n, int min_blocks, Visitor& visitor)
{
    if (n <= 0) return;
    detail::walk_partitions_from(0, n, 0, min_blocks, visitor);
}

} // namespace mdvol
