#pragma once

// Fiber counts of the fixed-point multiplier map.
//
// s_d(lambda) is computed three ways:
//   * SubSpectrum: e_I = prod_{I} (#I - 1) * s_{#I}(lambda_I), recursing into
//     sub-spectra with their own lattices;
//   * Refinement: e_I from the finer members of the same lattice;
//   * the closed form (d-1) s_d = sum over J'(lambda) of
//     (-(d-1))^{#I - 1} prod_{I} (#I - 1)!.
// The first two feed s_d = (d-2)! - sum_{I in J(lambda)} e_I prod_{k=d-#I+1}^{d-2} k.

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/exactnum.hpp"
#include "fixmult/lattice.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

enum class Engine {
    SubSpectrum, ///< e_I through sub-spectrum counts
    Refinement,  ///< e_I through strict refinements in the lattice
};

inline BigInt factorial(int n)
{
    BigInt out = 1;
    for (int k = 2; k <= n; ++k)
        out *= k;
    return out;
}

/// prod_{k=lo}^{hi} k, equal to 1 when lo > hi.
inline BigInt range_product(long long lo, long long hi)
{
    BigInt out = 1;
    for (long long k = lo; k <= hi; ++k)
        out *= k;
    return out;
}

/// prod_{I} (#I - 1)!
inline BigInt block_factorial_product(const BlockPartition& p)
{
    BigInt out = 1;
    for (IndexSet b : p.blocks())
        out *= factorial(b.size() - 1);
    return out;
}

namespace detail {

struct MultisetHash {
    std::size_t operator()(const std::vector<GaussianRational>& key) const
    {
        std::size_t h = key.size();
        for (const auto& z : key)
            h = h * 1099511628211ULL ^ z.hash();
        return h;
    }
};

inline BigInt exact_quotient(const BigInt& num, const BigInt& den, const char* what)
{
    if (den.is_zero() || num % den != 0)
        throw Error(ErrorCode::InternalDivisibilityViolation,
                    std::string(what) + ": " + num.str() + " is not divisible by " + den.str());
    return num / den;
}

} // namespace detail

/// Memo of s_d over sub-spectra, keyed by the sorted mu multiset. Safe to
/// share between threads.
class CountingContext {
public:
    explicit CountingContext(LatticeOptions opts = {}) : opts_(opts) {}

    const LatticeOptions& lattice_options() const noexcept { return opts_; }

    std::optional<BigInt> lookup(const std::vector<GaussianRational>& key) const
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(key);
        if (it == cache_.end())
            return std::nullopt;
        return it->second;
    }

    void store(std::vector<GaussianRational> key, BigInt value)
    {
        std::lock_guard lock(mutex_);
        cache_.emplace(std::move(key), std::move(value));
    }

    std::size_t cached() const
    {
        std::lock_guard lock(mutex_);
        return cache_.size();
    }

private:
    LatticeOptions opts_;
    mutable std::mutex mutex_;
    std::unordered_map<std::vector<GaussianRational>, BigInt, detail::MultisetHash> cache_;
};

/// (d-1) s_d(lambda) as the signed sum over J'(lambda), before division.
inline BigInt closed_form_sum(const Lattice& lat)
{
    const long long d = lat.degree();
    BigInt sum = 0;
    for (const auto& p : lat.partitions()) {
        BigInt term = block_factorial_product(p);
        BigInt power = boost::multiprecision::pow(BigInt(d - 1), static_cast<unsigned>(p.size() - 1));
        term *= power;
        if ((p.size() - 1) % 2 == 1)
            term = -term;
        sum += term;
    }
    return sum;
}

inline BigInt s_closed_form(const Spectrum& s, const Lattice& lat)
{
    (void)s;
    return detail::exact_quotient(closed_form_sum(lat), BigInt(lat.degree() - 1), "closed form");
}

inline BigInt s_recursive(const Spectrum& s, const Lattice& lat, Engine engine, CountingContext& ctx);

namespace detail {

inline void require_proper_member(const BlockPartition& p, const Lattice& lat)
{
    const auto k = lat.find(p);
    if (!k || *k == 0)
        throw Error(ErrorCode::PartitionNotInLattice, p.to_string() + " is not in J(lambda)");
}

inline BigInt sub_spectrum_count(const Spectrum& sub, CountingContext& ctx)
{
    auto key = sub.mu_multiset();
    if (auto hit = ctx.lookup(key))
        return *hit;
    const Lattice sub_lat = enumerate_lattice(sub, ctx.lattice_options());
    BigInt value = s_recursive(sub, sub_lat, Engine::SubSpectrum, ctx);
    ctx.store(std::move(key), value);
    return value;
}

} // namespace detail

/// e_I(lambda) = prod_{I in p} (#I - 1) s_{#I}(lambda_I).
inline BigInt e_recursive(const Spectrum& s, const BlockPartition& p, const Lattice& lat, CountingContext& ctx)
{
    detail::require_proper_member(p, lat);
    BigInt out = 1;
    for (IndexSet block : p.blocks())
        out *= BigInt(block.size() - 1) * detail::sub_spectrum_count(s.restrict(block), ctx);
    return out;
}

inline BigInt e_recursive(const Spectrum& s, const BlockPartition& p, const Lattice& lat)
{
    CountingContext ctx;
    return e_recursive(s, p, lat, ctx);
}

/// e_I for every member of the lattice by downward recursion over strict
/// refinements. Entry 0 (the trivial partition) is left at zero.
inline std::vector<BigInt> e_refinement_all(const Lattice& lat)
{
    const auto& parts = lat.partitions();
    std::vector<BigInt> e(parts.size());
    // Partitions are sorted by block count, so strict refinements of entry k
    // all sit at larger indices.
    for (std::size_t k = parts.size(); k-- > 1;) {
        BigInt value = block_factorial_product(parts[k]);
        for (std::size_t j : lat.strict_refinements(k)) {
            BigInt weight = 1;
            for (IndexSet block : parts[k].blocks()) {
                const int n = block.size();
                weight *= range_product(n - chi(block, parts[j]) + 1, n - 1);
            }
            value -= e[j] * weight;
        }
        e[k] = std::move(value);
    }
    return e;
}

inline BigInt e_refinement(const Spectrum& s, const BlockPartition& p, const Lattice& lat)
{
    (void)s;
    detail::require_proper_member(p, lat);
    return e_refinement_all(lat)[lat.index_of(p)];
}

/// s_d(lambda) from (d-2)! minus the weighted e_I over J(lambda).
inline BigInt s_recursive(const Spectrum& s, const Lattice& lat, Engine engine, CountingContext& ctx)
{
    const long long d = s.degree();
    const auto& parts = lat.partitions();
    std::vector<BigInt> e;
    if (engine == Engine::Refinement)
        e = e_refinement_all(lat);

    BigInt out = factorial(static_cast<int>(d - 2));
    for (std::size_t k = 1; k < parts.size(); ++k) {
        const BigInt e_k = engine == Engine::Refinement ? e[k] : e_recursive(s, parts[k], lat, ctx);
        out -= e_k * range_product(d - parts[k].size() + 1, d - 2);
    }
    return out;
}

inline BigInt s_recursive(const Spectrum& s, const Lattice& lat, Engine engine)
{
    CountingContext ctx;
    return s_recursive(s, lat, engine, ctx);
}

/// g_w = gcd(#K_1, ..., #K_w - 1, ..., #K_q) for each value class K_w.
inline std::vector<int> class_gcds(const std::vector<int>& class_sizes)
{
    std::vector<int> out;
    for (std::size_t w = 0; w < class_sizes.size(); ++w) {
        int g = 0;
        for (std::size_t v = 0; v < class_sizes.size(); ++v)
            g = std::gcd(g, v == w ? class_sizes[v] - 1 : class_sizes[v]);
        out.push_back(g);
    }
    return out;
}

inline BigInt class_factorial_product(const std::vector<int>& class_sizes)
{
    BigInt out = 1;
    for (int n : class_sizes)
        out *= factorial(n);
    return out;
}

/// Number of monic centered polynomials with multiplier spectrum lambda.
inline BigInt count_mc_fiber(const Spectrum& s, const Lattice& lat)
{
    const BigInt sd = s_closed_form(s, lat);
    const auto sizes = value_classes(s).sizes();
    return detail::exact_quotient(BigInt(s.degree() - 1) * sd, class_factorial_product(sizes), "mc fiber");
}

/// Number of conjugacy classes with multiplier spectrum lambda, available
/// only when every class gcd g_w equals 1.
inline std::optional<BigInt> count_mp_fiber(const Spectrum& s, const Lattice& lat)
{
    const auto sizes = value_classes(s).sizes();
    const auto g = class_gcds(sizes);
    if (!std::all_of(g.begin(), g.end(), [](int x) { return x == 1; }))
        return std::nullopt;
    return detail::exact_quotient(s_closed_form(s, lat), class_factorial_product(sizes), "mp fiber");
}

struct FiberReport {
    int d = 0;
    BigInt s_d;
    BigInt e_I0;
    BigInt mc_count;
    std::optional<BigInt> mp_count;
    std::vector<int> kappa_sizes;
    std::vector<int> gw;
    std::size_t lattice_size = 0; ///< #J'(lambda)
    std::size_t zero_sum_subsets = 0;
    /// (engine name, s_d) for every engine that ran.
    std::vector<std::pair<std::string, BigInt>> engines;
    bool agreement = true;
};

struct CountOptions {
    LatticeOptions lattice;
    /// Also run both recursive engines and compare.
    bool all_engines = true;
};

inline FiberReport count_fibers(const Spectrum& s, const CountOptions& opts = {})
{
    const Lattice lat = enumerate_lattice(s, opts.lattice);
    FiberReport r;
    r.d = s.degree();
    r.s_d = s_closed_form(s, lat);
    r.e_I0 = BigInt(r.d - 1) * r.s_d;
    r.kappa_sizes = value_classes(s).sizes();
    r.gw = class_gcds(r.kappa_sizes);
    r.mc_count = detail::exact_quotient(r.e_I0, class_factorial_product(r.kappa_sizes), "mc fiber");
    if (std::all_of(r.gw.begin(), r.gw.end(), [](int x) { return x == 1; }))
        r.mp_count = detail::exact_quotient(r.s_d, class_factorial_product(r.kappa_sizes), "mp fiber");
    r.lattice_size = lat.partitions().size();
    r.zero_sum_subsets = lat.zero_sum_subsets().size();
    r.engines.emplace_back("closed_form", r.s_d);
    if (opts.all_engines) {
        CountingContext ctx(opts.lattice);
        r.engines.emplace_back("recursive_subspectrum", s_recursive(s, lat, Engine::SubSpectrum, ctx));
        r.engines.emplace_back("recursive_refinement", s_recursive(s, lat, Engine::Refinement, ctx));
    }
    r.agreement = std::all_of(r.engines.begin(), r.engines.end(),
                              [&](const auto& e) { return e.second == r.s_d; });
    return r;
}

} // namespace fixmult
