#pragma once

// Test-spectrum factory: spectra built from a plan of zero-sum mu-blocks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/exactnum.hpp"
#include "fixmult/lattice.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

using BlockPlan = std::vector<std::vector<GaussianRational>>;

struct GenerateOptions {
    /// Bound on |numerator| of the random parts.
    int max_abs = 20;
    /// Bound on the random denominators.
    int max_den = 20;
    /// Draw imaginary parts as well.
    bool complex_values = false;
    /// Reject draws whose lattice has zero-sum subsets beyond unions of the
    /// planned blocks.
    bool exact_lattice = false;
    /// Randomly permute the indices after drawing.
    bool shuffle = false;
    int max_attempts = 100'000;
};

struct GeneratedSpectrum {
    Spectrum spectrum;
    /// The planned blocks, in the spectrum's index convention.
    BlockPartition blocks;
};

/// Concatenates the plan's mu-targets into a spectrum. Each block must have
/// nonzero targets summing to zero.
inline GeneratedSpectrum generate(const BlockPlan& plan)
{
    std::vector<GaussianRational> mu;
    std::vector<IndexSet> blocks;
    for (const auto& block : plan) {
        GaussianRational sum;
        IndexSet indices;
        for (const auto& target : block) {
            if (target.is_zero())
                throw Error(ErrorCode::ZeroMuTarget, "zero mu-target in plan");
            sum += target;
            indices |= IndexSet::single(static_cast<int>(mu.size()));
            mu.push_back(target);
        }
        if (!sum.is_zero() || block.empty())
            throw Error(ErrorCode::BlockSumNonzero, "plan block sums to " + sum.to_string());
        blocks.push_back(indices);
    }
    if (mu.size() > static_cast<std::size_t>(IndexSet::max_size))
        throw Error(ErrorCode::DimensionTooLarge, "plan has more than 63 entries");
    Spectrum s = Spectrum::from_mu(std::move(mu));
    return {std::move(s), BlockPartition(std::move(blocks))};
}

/// True iff every proper zero-sum subset of `s` is a union of blocks of
/// `blocks`, i.e. J'(lambda) is exactly the set of coarsenings of `blocks`.
inline bool lattice_is_exact(const Spectrum& s, const BlockPartition& blocks, const LatticeOptions& opts = {})
{
    for (IndexSet z : zero_sum_subsets(s, opts))
        for (IndexSet b : blocks.blocks())
            if (!(z & b).empty() && !b.subset_of(z))
                return false;
    return true;
}

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, int max_abs, int max_den, bool allow_zero)
{
    std::uniform_int_distribution<int> num(-max_abs, max_abs);
    std::uniform_int_distribution<int> den(1, max_den);
    for (;;) {
        const int n = num(rng);
        if (n != 0 || allow_zero)
            return Rational(BigInt(n), BigInt(den(rng)));
    }
}

} // namespace detail

/// Draws random nonzero mu-targets for blocks of the given sizes (each
/// >= 2), the last entry of each block closing it to a zero sum.
/// Deterministic for a fixed seed.
inline GeneratedSpectrum generate_random(const std::vector<int>& block_sizes, std::uint64_t seed,
                                         const GenerateOptions& opts = {})
{
    for (int size : block_sizes)
        if (size < 2)
            throw Error(ErrorCode::BlockSumNonzero, "a zero-sum block needs at least 2 entries");
    const int d = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
    if (d < 2)
        throw Error(ErrorCode::DegreeTooSmall, "empty plan");

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        BlockPlan plan;
        bool ok = true;
        for (int size : block_sizes) {
            std::vector<GaussianRational> block;
            GaussianRational sum;
            for (int k = 0; k + 1 < size; ++k) {
                Rational re = detail::random_rational(rng, opts.max_abs, opts.max_den, opts.complex_values);
                Rational im = opts.complex_values
                                  ? detail::random_rational(rng, opts.max_abs, opts.max_den, !re.is_zero())
                                  : Rational();
                GaussianRational value(std::move(re), std::move(im));
                sum += value;
                block.push_back(std::move(value));
            }
            if (sum.is_zero()) {
                ok = false;
                break;
            }
            block.push_back(-sum);
            plan.push_back(std::move(block));
        }
        if (!ok)
            continue;

        GeneratedSpectrum gen = generate(plan);
        if (opts.shuffle) {
            std::vector<int> perm(static_cast<std::size_t>(d));
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            // New index i holds old index perm[i].
            std::vector<int> inverse(perm.size());
            for (std::size_t i = 0; i < perm.size(); ++i)
                inverse[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
            std::vector<IndexSet> blocks;
            for (IndexSet b : gen.blocks.blocks()) {
                IndexSet moved;
                for (int i : b.elements())
                    moved |= IndexSet::single(inverse[static_cast<std::size_t>(i)]);
                blocks.push_back(moved);
            }
            gen = {gen.spectrum.permuted(perm), BlockPartition(std::move(blocks))};
        }
        if (opts.exact_lattice && !lattice_is_exact(gen.spectrum, gen.blocks))
            continue;
        return gen;
    }
    throw Error(ErrorCode::InvalidArgument, "no acceptable spectrum after " + std::to_string(opts.max_attempts) +
                                                " attempts");
}

} // namespace fixmult
