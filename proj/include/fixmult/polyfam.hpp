#pragma once

// Coarsening-sum coefficients. For an l-block partition with block sizes
// i_1..i_l (summing to d), f_{l,k} sums prod_{I} (-(#I - 1))^{chi_I - 1} over
// its k-block coarsenings. As a polynomial in the sizes this is g_{l,k}; it
// depends on the sizes only through d, giving h_{l,k}(d).

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/exactnum.hpp"
#include "fixmult/index_set.hpp"
#include "fixmult/lattice.hpp"

namespace fixmult {

/// Univariate polynomial with integer coefficients, ascending degree.
/// The zero polynomial has no coefficients.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long long> coeffs)
    {
        for (long long c : coeffs)
            coeffs_.emplace_back(c);
        trim();
    }

    static IntPolynomial constant(BigInt c) { return IntPolynomial(std::vector<BigInt>{std::move(c)}); }
    /// The monomial Y.
    static IntPolynomial variable() { return IntPolynomial({0, 1}); }

    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    BigInt leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }

    BigInt operator()(const BigInt& y) const
    {
        BigInt out = 0;
        for (std::size_t k = coeffs_.size(); k-- > 0;)
            out = out * y + coeffs_[k];
        return out;
    }

    IntPolynomial& operator+=(const IntPolynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
            coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    IntPolynomial operator-() const
    {
        IntPolynomial out = *this;
        for (auto& c : out.coeffs_)
            c = -c;
        return out;
    }
    IntPolynomial& operator-=(const IntPolynomial& o) { return *this += -o; }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(out));
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    /// Human-readable form in descending powers, e.g. "3d^2-9d+7".
    std::string to_string(const std::string& var = "d") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const BigInt& c = coeffs_[k];
            if (c.is_zero())
                continue;
            const BigInt mag = abs(c);
            if (c.sign() < 0)
                out += '-';
            else if (!out.empty())
                out += '+';
            if (k == 0 || mag != 1)
                out += mag.str();
            if (k >= 1)
                out += var;
            if (k >= 2)
                out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

/// Calls f(blocks) for every partition of {0..n-1} into exactly k blocks
/// (any number of blocks when k < 0). Blocks arrive ordered by smallest
/// element.
template <class F>
void for_each_set_partition(int n, int k, F&& f)
{
    std::vector<IndexSet> blocks;
    auto place = [&](auto&& self, int i) -> void {
        const int nblocks = static_cast<int>(blocks.size());
        if (k >= 0 && (nblocks > k || nblocks + (n - i) < k))
            return;
        if (i == n) {
            f(static_cast<const std::vector<IndexSet>&>(blocks));
            return;
        }
        for (int j = 0; j < nblocks; ++j) {
            const IndexSet saved = blocks[static_cast<std::size_t>(j)];
            blocks[static_cast<std::size_t>(j)] |= IndexSet::single(i);
            self(self, i + 1);
            blocks[static_cast<std::size_t>(j)] = saved;
        }
        blocks.push_back(IndexSet::single(i));
        self(self, i + 1);
        blocks.pop_back();
    };
    if (n == 0) {
        if (k <= 0)
            f(static_cast<const std::vector<IndexSet>&>(blocks));
        return;
    }
    place(place, 0);
}

/// Partitions of {1..l} into k nonempty blocks; empty when k <= 0 or k > l.
inline std::vector<BlockPartition> shape_partitions(int l, int k)
{
    if (l < 2)
        throw Error(ErrorCode::InvalidArgument, "shape_partitions needs l >= 2");
    std::vector<BlockPartition> out;
    if (k <= 0 || k > l)
        return out;
    for_each_set_partition(l, k, [&](const std::vector<IndexSet>& blocks) { out.emplace_back(blocks); });
    return out;
}

namespace detail {

inline BigInt coarsening_weight(const std::vector<IndexSet>& blocks, const std::vector<BigInt>& x)
{
    BigInt term = 1;
    for (IndexSet j : blocks) {
        BigInt s = -1;
        for (int u : j.elements())
            s += x[static_cast<std::size_t>(u)];
        // (-(s))^{#J - 1}
        const int e = j.size() - 1;
        BigInt p = boost::multiprecision::pow(s, static_cast<unsigned>(e));
        term *= (e % 2 == 1) ? BigInt(-p) : p;
    }
    return term;
}

inline std::vector<BigInt> to_big(const std::vector<long long>& x)
{
    std::vector<BigInt> out;
    for (long long v : x)
        out.emplace_back(v);
    return out;
}

} // namespace detail

/// g_{l,k}(x) by direct summation over the k-block partitions of {1..l}.
inline BigInt g_eval(int l, int k, const std::vector<long long>& x)
{
    if (l < 2)
        throw Error(ErrorCode::InvalidArgument, "g_eval needs l >= 2");
    if (static_cast<int>(x.size()) != l)
        throw Error(ErrorCode::InvalidArgument, "g_eval expects " + std::to_string(l) + " values");
    if (k <= 0 || k > l)
        return 0;
    const auto big = detail::to_big(x);
    BigInt sum = 0;
    for_each_set_partition(l, k, [&](const std::vector<IndexSet>& blocks) {
        sum += detail::coarsening_weight(blocks, big);
    });
    return sum;
}

/// h_{l,k}(Y) from h_{l+1,k} = h_{l,k-1} - (Y - k) h_{l,k}, starting at
/// h_{2,1} = -(Y - 1), h_{2,2} = 1. Rows are cached.
inline IntPolynomial h_polynomial(int l, int k)
{
    if (l < 2)
        throw Error(ErrorCode::InvalidArgument, "h_polynomial needs l >= 2");
    if (k <= 0 || k > l)
        return {};

    static std::mutex mutex;
    // rows[l - 2][k] for 0 <= k <= l + 1
    static std::vector<std::vector<IntPolynomial>> rows;
    std::lock_guard lock(mutex);
    if (rows.empty())
        rows.push_back({IntPolynomial{}, IntPolynomial{1, -1}, IntPolynomial{1}, IntPolynomial{}});
    while (static_cast<int>(rows.size()) < l - 1) {
        const int prev_l = static_cast<int>(rows.size()) + 1;
        const auto& prev = rows.back();
        std::vector<IntPolynomial> next(static_cast<std::size_t>(prev_l + 3));
        for (int kk = 1; kk <= prev_l + 1; ++kk) {
            const IntPolynomial lower = prev[static_cast<std::size_t>(kk - 1)];
            const IntPolynomial same = kk <= prev_l ? prev[static_cast<std::size_t>(kk)] : IntPolynomial{};
            next[static_cast<std::size_t>(kk)] = lower - (IntPolynomial{-kk, 1} * same);
        }
        rows.push_back(std::move(next));
    }
    return rows[static_cast<std::size_t>(l - 2)][static_cast<std::size_t>(k)];
}

inline BigInt f_value(int l, int k, long long d) { return h_polynomial(l, k)(BigInt(d)); }

/// Signed sum over all coarsenings of an l-block partition with the given
/// block sizes, weighted by prod_{k'=d-#I+1}^{d-1} k'. Always zero.
inline BigInt check_vanishing_identity(const std::vector<int>& block_sizes)
{
    const int l = static_cast<int>(block_sizes.size());
    if (l < 2)
        throw Error(ErrorCode::InvalidArgument, "need at least 2 blocks");
    for (int s : block_sizes)
        if (s < 2)
            throw Error(ErrorCode::InvalidArgument, "block sizes must be >= 2");
    if (l > IndexSet::max_size)
        throw Error(ErrorCode::DimensionTooLarge, "too many blocks");
    const long long d = std::accumulate(block_sizes.begin(), block_sizes.end(), 0LL);
    std::vector<BigInt> x;
    for (int s : block_sizes)
        x.emplace_back(s);

    BigInt sum = 0;
    for_each_set_partition(l, -1, [&](const std::vector<IndexSet>& blocks) {
        BigInt weight = 1;
        for (long long k = d - static_cast<long long>(blocks.size()) + 1; k <= d - 1; ++k)
            weight *= k;
        sum += weight * detail::coarsening_weight(blocks, x);
    });
    return sum;
}

/// g_{l+1,k}(x, 0) == g_{l,k-1}(x) - (sum(x) - k) g_{l,k}(x)
inline bool check_restriction_recurrence(int l, int k, const std::vector<long long>& x)
{
    std::vector<long long> extended = x;
    extended.push_back(0);
    const long long total = std::accumulate(x.begin(), x.end(), 0LL);
    const BigInt lhs = g_eval(l + 1, k, extended);
    const BigInt rhs = g_eval(l, k - 1, x) - BigInt(total - k) * g_eval(l, k, x);
    return lhs == rhs;
}

} // namespace fixmult
