#pragma once

// Zero-sum structure of a spectrum: the partitions of {1..d} into blocks
// whose mu-values sum to zero, ordered by refinement.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/exactnum.hpp"
#include "fixmult/index_set.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

struct LatticeOptions {
    /// Largest degree accepted for the 2^d subset scan.
    int max_degree = 16;
    /// Abort enumeration beyond this many partitions.
    std::size_t max_partitions = 2'000'000;
};

/// A set partition stored in canonical form (blocks sorted by smallest
/// element).
class BlockPartition {
public:
    BlockPartition() = default;
    explicit BlockPartition(std::vector<IndexSet> blocks) : blocks_(std::move(blocks))
    {
        std::sort(blocks_.begin(), blocks_.end());
        IndexSet seen;
        for (IndexSet b : blocks_) {
            if (b.empty())
                throw Error(ErrorCode::InvalidArgument, "empty block in partition");
            if (!b.disjoint(seen))
                throw Error(ErrorCode::InvalidArgument, "overlapping blocks in partition");
            seen |= b;
        }
        ground_ = seen;
    }

    /// The one-block partition {{0..d-1}}.
    static BlockPartition trivial(int d) { return BlockPartition({IndexSet::full(d)}); }

    const std::vector<IndexSet>& blocks() const noexcept { return blocks_; }
    int size() const noexcept { return static_cast<int>(blocks_.size()); }
    IndexSet ground() const noexcept { return ground_; }

    friend bool operator==(const BlockPartition& a, const BlockPartition& b) { return a.blocks_ == b.blocks_; }
    friend bool operator<(const BlockPartition& a, const BlockPartition& b)
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a.blocks_ < b.blocks_;
    }

    std::size_t hash() const noexcept
    {
        std::size_t h = 0;
        for (IndexSet b : blocks_)
            h = h * 0x100000001b3ULL ^ std::hash<std::uint64_t>{}(b.bits());
        return h;
    }

    /// 1-based text form, e.g. "{{1,2},{3,4}}".
    std::string to_string() const
    {
        std::string out = "{";
        for (std::size_t k = 0; k < blocks_.size(); ++k) {
            out += k ? ",{" : "{";
            const auto elems = blocks_[k].elements();
            for (std::size_t j = 0; j < elems.size(); ++j)
                out += (j ? "," : "") + std::to_string(elems[j] + 1);
            out += "}";
        }
        return out + "}";
    }

private:
    std::vector<IndexSet> blocks_;
    IndexSet ground_;
};

struct BlockPartitionHash {
    std::size_t operator()(const BlockPartition& p) const noexcept { return p.hash(); }
};

/// True iff `coarse` precedes `fine` in the refinement order, i.e. every
/// block of `fine` lies inside a block of `coarse`. Reflexive.
inline bool refines(const BlockPartition& coarse, const BlockPartition& fine)
{
    if (coarse.ground() != fine.ground())
        throw Error(ErrorCode::GroundSetMismatch, "partitions over different ground sets");
    for (IndexSet b : fine.blocks()) {
        const bool inside = std::any_of(coarse.blocks().begin(), coarse.blocks().end(),
                                        [b](IndexSet c) { return b.subset_of(c); });
        if (!inside)
            return false;
    }
    return true;
}

/// Number of blocks of `fine` contained in `block`.
inline int chi(IndexSet block, const BlockPartition& fine)
{
    return static_cast<int>(std::count_if(fine.blocks().begin(), fine.blocks().end(),
                                          [block](IndexSet b) { return b.subset_of(block); }));
}

namespace detail {

inline void check_degree(const Spectrum& s, const LatticeOptions& opts)
{
    const int cap = std::min(opts.max_degree, IndexSet::max_size);
    if (s.degree() > cap)
        throw Error(ErrorCode::DimensionTooLarge,
                    "degree " + std::to_string(s.degree()) + " exceeds lattice cap " + std::to_string(cap));
}

// Gray-code walk over all subsets, keeping the running sum of the scaled
// (Gaussian integer) mu-values. One add or subtract per subset.
template <class Int>
std::vector<IndexSet> gray_zero_sums(const std::vector<Int>& re, const std::vector<Int>& im)
{
    const int d = static_cast<int>(re.size());
    const std::uint64_t full = (d >= 64) ? ~0ULL : (1ULL << d) - 1;
    std::vector<IndexSet> out;
    Int sum_re = 0;
    Int sum_im = 0;
    std::uint64_t mask = 0;
    for (std::uint64_t g = 1; g <= full; ++g) {
        const int bit = std::countr_zero(g);
        const std::uint64_t flip = 1ULL << bit;
        const auto i = static_cast<std::size_t>(bit);
        if (mask & flip) {
            sum_re -= re[i];
            sum_im -= im[i];
        } else {
            sum_re += re[i];
            sum_im += im[i];
        }
        mask ^= flip;
        if (sum_re == 0 && sum_im == 0 && mask != full)
            out.emplace_back(mask);
        if (g == full)
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// All proper nonempty subsets I of {0..d-1} with sum_{i in I} mu_i = 0.
/// Every such set has at least two elements since mu_i != 0.
inline std::vector<IndexSet> zero_sum_subsets(const Spectrum& s, const LatticeOptions& opts = {})
{
    detail::check_degree(s, opts);
    const auto& mu = s.mu();

    // Clear denominators so that the subset sums are exact integer sums.
    BigInt common = 1;
    for (const auto& m : mu) {
        common = boost::multiprecision::lcm(common, m.re().den());
        common = boost::multiprecision::lcm(common, m.im().den());
    }
    std::vector<BigInt> re;
    std::vector<BigInt> im;
    BigInt bound_re = 0;
    BigInt bound_im = 0;
    for (const auto& m : mu) {
        re.push_back(m.re().num() * (common / m.re().den()));
        im.push_back(m.im().num() * (common / m.im().den()));
        bound_re += abs(re.back());
        bound_im += abs(im.back());
    }

    const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 2);
    if (bound_re < limit && bound_im < limit) {
        std::vector<std::int64_t> re64;
        std::vector<std::int64_t> im64;
        for (std::size_t i = 0; i < re.size(); ++i) {
            re64.push_back(re[i].convert_to<std::int64_t>());
            im64.push_back(im[i].convert_to<std::int64_t>());
        }
        return detail::gray_zero_sums(re64, im64);
    }
    return detail::gray_zero_sums(re, im);
}

/// The set J'(lambda) of zero-sum partitions, including the trivial
/// partition, with lookup by value.
class Lattice {
public:
    Lattice(int degree, std::vector<IndexSet> zero_sums, std::vector<BlockPartition> partitions)
        : degree_(degree), zero_sums_(std::move(zero_sums)), partitions_(std::move(partitions))
    {
        std::sort(partitions_.begin(), partitions_.end());
        for (std::size_t k = 0; k < partitions_.size(); ++k)
            index_.emplace(partitions_[k], k);
    }

    int degree() const noexcept { return degree_; }

    /// All members of J'(lambda); index 0 is always the trivial partition.
    /// Ordered by block count, then canonically.
    const std::vector<BlockPartition>& partitions() const noexcept { return partitions_; }
    const std::vector<IndexSet>& zero_sum_subsets() const noexcept { return zero_sums_; }

    /// Size of J(lambda), i.e. without the trivial partition.
    std::size_t proper_size() const noexcept { return partitions_.size() - 1; }

    std::optional<std::size_t> find(const BlockPartition& p) const
    {
        auto it = index_.find(p);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const BlockPartition& p) const
    {
        auto k = find(p);
        if (!k)
            throw Error(ErrorCode::PartitionNotInLattice, p.to_string());
        return *k;
    }

    /// Indices of the partitions strictly finer than partitions()[k].
    std::vector<std::size_t> strict_refinements(std::size_t k) const
    {
        std::vector<std::size_t> out;
        const auto& base = partitions_[k];
        for (std::size_t j = 0; j < partitions_.size(); ++j)
            if (partitions_[j].size() > base.size() && refines(base, partitions_[j]))
                out.push_back(j);
        return out;
    }

private:
    int degree_;
    std::vector<IndexSet> zero_sums_;
    std::vector<BlockPartition> partitions_;
    std::unordered_map<BlockPartition, std::size_t, BlockPartitionHash> index_;
};

/// Enumerates J'(lambda) by exact cover over the zero-sum subsets, always
/// extending with a block that contains the smallest uncovered index. The
/// uncovered remainder is itself zero-sum at every step, so no branch dies.
inline Lattice enumerate_lattice(const Spectrum& s, const LatticeOptions& opts = {})
{
    const int d = s.degree();
    std::vector<IndexSet> zero_sums = zero_sum_subsets(s, opts);

    std::vector<std::vector<IndexSet>> by_lowest(static_cast<std::size_t>(d));
    for (IndexSet z : zero_sums)
        by_lowest[static_cast<std::size_t>(z.lowest())].push_back(z);
    by_lowest[0].push_back(IndexSet::full(d));

    std::vector<BlockPartition> partitions;
    std::vector<IndexSet> stack;
    auto extend = [&](auto&& self, IndexSet remaining) -> void {
        if (remaining.empty()) {
            if (partitions.size() >= opts.max_partitions)
                throw Error(ErrorCode::LatticeTooLarge,
                            "more than " + std::to_string(opts.max_partitions) + " zero-sum partitions");
            partitions.emplace_back(stack);
            return;
        }
        for (IndexSet candidate : by_lowest[static_cast<std::size_t>(remaining.lowest())]) {
            if (!candidate.subset_of(remaining))
                continue;
            stack.push_back(candidate);
            self(self, remaining - candidate);
            stack.pop_back();
        }
    };
    extend(extend, IndexSet::full(d));
    return Lattice(d, std::move(zero_sums), std::move(partitions));
}

} // namespace fixmult
