#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/exactnum.hpp"
#include "fixmult/index_set.hpp"

namespace fixmult {

/// An ordered multiplier vector lambda in V_d together with its
/// reciprocal shifts mu_i = 1/(1 - lambda_i).
///
/// Invariants: d >= 2, no lambda_i equals 1, sum(mu) == 0 exactly. The two
/// vectors are only ever produced together by the factories below.
class Spectrum {
public:
    /// Validates raw multipliers. Throws DegreeTooSmall, HasUnitMultiplier
    /// or NotOnHyperplane.
    static Spectrum from_lambda(std::vector<GaussianRational> lambda)
    {
        if (lambda.size() < 2)
            throw Error(ErrorCode::DegreeTooSmall, "need at least 2 multipliers, got " + std::to_string(lambda.size()));
        std::vector<GaussianRational> mu;
        mu.reserve(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            if (lambda[i] == GaussianRational(1))
                throw Error(ErrorCode::HasUnitMultiplier, "lambda[" + std::to_string(i + 1) + "] = 1");
            mu.push_back(reciprocal_shift(lambda[i]));
        }
        check_hyperplane(mu);
        return Spectrum(std::move(lambda), std::move(mu));
    }

    /// Builds a spectrum from its mu-vector. Throws DegreeTooSmall,
    /// ZeroMuTarget or NotOnHyperplane.
    static Spectrum from_mu(std::vector<GaussianRational> mu)
    {
        if (mu.size() < 2)
            throw Error(ErrorCode::DegreeTooSmall, "need at least 2 values, got " + std::to_string(mu.size()));
        std::vector<GaussianRational> lambda;
        lambda.reserve(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) {
            if (mu[i].is_zero())
                throw Error(ErrorCode::ZeroMuTarget, "mu[" + std::to_string(i + 1) + "] = 0");
            lambda.push_back(inverse_reciprocal_shift(mu[i]));
        }
        check_hyperplane(mu);
        return Spectrum(std::move(lambda), std::move(mu));
    }

    int degree() const noexcept { return static_cast<int>(lambda_.size()); }
    const std::vector<GaussianRational>& lambda() const noexcept { return lambda_; }
    const std::vector<GaussianRational>& mu() const noexcept { return mu_; }

    /// lambda_I for a zero-sum index set I with #I >= 2.
    Spectrum restrict(IndexSet block) const
    {
        std::vector<GaussianRational> lambda;
        std::vector<GaussianRational> mu;
        for (int i : block.elements()) {
            lambda.push_back(lambda_.at(static_cast<std::size_t>(i)));
            mu.push_back(mu_.at(static_cast<std::size_t>(i)));
        }
        if (lambda.size() < 2)
            throw Error(ErrorCode::DegreeTooSmall, "restriction to fewer than 2 indices");
        check_hyperplane(mu);
        return Spectrum(std::move(lambda), std::move(mu));
    }

    /// Reorders indices: the result's i-th entry is this spectrum's perm[i]-th.
    Spectrum permuted(const std::vector<int>& perm) const
    {
        std::vector<GaussianRational> lambda;
        std::vector<GaussianRational> mu;
        for (int p : perm) {
            lambda.push_back(lambda_.at(static_cast<std::size_t>(p)));
            mu.push_back(mu_.at(static_cast<std::size_t>(p)));
        }
        return Spectrum(std::move(lambda), std::move(mu));
    }

    /// Sorted mu multiset; a permutation-invariant key for counting caches.
    std::vector<GaussianRational> mu_multiset() const
    {
        std::vector<GaussianRational> key = mu_;
        std::sort(key.begin(), key.end());
        return key;
    }

    friend bool operator==(const Spectrum& a, const Spectrum& b) { return a.lambda_ == b.lambda_; }

private:
    Spectrum(std::vector<GaussianRational> lambda, std::vector<GaussianRational> mu)
        : lambda_(std::move(lambda)), mu_(std::move(mu))
    {
    }

    static void check_hyperplane(const std::vector<GaussianRational>& mu)
    {
        const GaussianRational sum = std::accumulate(mu.begin(), mu.end(), GaussianRational());
        if (!sum.is_zero())
            throw Error(ErrorCode::NotOnHyperplane, "sum of 1/(1-lambda_i) is " + sum.to_string() + ", not 0");
    }

    std::vector<GaussianRational> lambda_;
    std::vector<GaussianRational> mu_;
};

/// Partition of the indices by exact equality of lambda values. Classes are
/// ordered by smallest member.
struct ValueClasses {
    std::vector<IndexSet> classes;

    std::vector<int> sizes() const
    {
        std::vector<int> out;
        for (IndexSet k : classes)
            out.push_back(k.size());
        return out;
    }
};

inline ValueClasses value_classes(const Spectrum& s)
{
    const auto& lambda = s.lambda();
    ValueClasses out;
    IndexSet assigned;
    for (int i = 0; i < s.degree(); ++i) {
        if (assigned.contains(i))
            continue;
        IndexSet cls = IndexSet::single(i);
        for (int j = i + 1; j < s.degree(); ++j)
            if (lambda[static_cast<std::size_t>(j)] == lambda[static_cast<std::size_t>(i)])
                cls |= IndexSet::single(j);
        assigned |= cls;
        out.classes.push_back(cls);
    }
    return out;
}

} // namespace fixmult
