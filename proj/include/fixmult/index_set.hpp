#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace fixmult {

/// Subset of {0, ..., 62} stored as a bitmask. Indices are 0-based
/// internally; I/O layers convert to 1-based.
class IndexSet {
public:
    static constexpr int max_size = 63;

    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr IndexSet full(int n) { return IndexSet(n >= 64 ? ~0ULL : (1ULL << n) - 1); }
    static constexpr IndexSet single(int i) { return IndexSet(1ULL << i); }
    static IndexSet of(const std::vector<int>& indices)
    {
        std::uint64_t bits = 0;
        for (int i : indices)
            bits |= 1ULL << i;
        return IndexSet(bits);
    }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr int lowest() const noexcept { return std::countr_zero(bits_); }
    constexpr bool contains(int i) const noexcept { return (bits_ >> i) & 1U; }
    constexpr bool subset_of(IndexSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    constexpr bool disjoint(IndexSet other) const noexcept { return (bits_ & other.bits_) == 0; }

    constexpr IndexSet operator|(IndexSet o) const noexcept { return IndexSet(bits_ | o.bits_); }
    constexpr IndexSet operator&(IndexSet o) const noexcept { return IndexSet(bits_ & o.bits_); }
    constexpr IndexSet operator-(IndexSet o) const noexcept { return IndexSet(bits_ & ~o.bits_); }
    constexpr IndexSet& operator|=(IndexSet o) noexcept
    {
        bits_ |= o.bits_;
        return *this;
    }

    std::vector<int> elements() const
    {
        std::vector<int> out;
        out.reserve(size());
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b));
        return out;
    }

    friend constexpr bool operator==(IndexSet, IndexSet) = default;

    /// Orders by smallest element first, then by the remaining elements.
    friend constexpr std::strong_ordering operator<=>(IndexSet a, IndexSet b)
    {
        if (a.bits_ == b.bits_)
            return std::strong_ordering::equal;
        // The lowest differing element decides: whichever set contains it
        // sorts first.
        const std::uint64_t diff = a.bits_ ^ b.bits_;
        const std::uint64_t low = diff & (~diff + 1);
        return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }

private:
    std::uint64_t bits_ = 0;
};

} // namespace fixmult
