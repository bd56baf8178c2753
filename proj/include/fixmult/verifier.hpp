#pragma once

// Numerical cross-check of the fiber counts.
//
// The ordered fixed-point configurations (zeta_1..zeta_d) realizing lambda
// solve
//     sum_i zeta_i            = 0
//     sum_i mu_i zeta_i^k     = 0      for 1 <= k <= d-2
//     sum_i mu_i zeta_i^{d-1} = -1
// with pairwise distinct coordinates, and there are exactly (d-1) s_d of
// them. Each gives the monic centered f(z) = z + prod (z - zeta_i) with
// f'(zeta_i) = lambda_i. We find them with multi-start damped Newton.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fixmult/counting.hpp"
#include "fixmult/error.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

using cplx = std::complex<double>;

struct SolverConfig {
    double eps_res = 1e-10;  ///< max-norm residual for convergence
    double eps_dup = 1e-6;   ///< coordinate distance below which tuples coincide
    double eps_sep = 1e-7;   ///< minimal separation of coordinates in a tuple
    double eps_mult = 1e-8;  ///< tolerance on reconstructed multipliers
    int max_iterations = 200;
    /// Defaults to 5000 (d-1) max(s_d, 1).
    std::optional<std::size_t> start_budget;
    /// Extra starts run after the expected number of tuples is found, to
    /// catch spurious solutions. Defaults to 100 d.
    std::optional<std::size_t> confirm_starts;
    std::uint64_t seed = 0x5eed;
    /// Worker threads; 0 means hardware concurrency.
    unsigned threads = 0;
    std::size_t batch = 64;
};

/// The square polynomial system for a spectrum of degree d >= 3, with its
/// Jacobian (row k: k mu_j zeta_j^{k-1}).
class SigmaSystem {
public:
    explicit SigmaSystem(const Spectrum& s)
    {
        if (s.degree() < 3)
            throw Error(ErrorCode::DegreeTooSmall, "the configuration system needs d >= 3");
        for (const auto& m : s.mu())
            mu_.push_back(m.to_complex());
    }

    int degree() const noexcept { return static_cast<int>(mu_.size()); }
    const std::vector<cplx>& mu() const noexcept { return mu_; }

    Eigen::VectorXcd residual(const Eigen::VectorXcd& z) const
    {
        const int d = degree();
        Eigen::VectorXcd f = Eigen::VectorXcd::Zero(d);
        f(0) = z.sum();
        for (int j = 0; j < d; ++j) {
            cplx power = 1.0;
            for (int k = 1; k <= d - 1; ++k) {
                power *= z(j);
                f(k) += mu_[static_cast<std::size_t>(j)] * power;
            }
        }
        f(d - 1) += 1.0;
        return f;
    }

    Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& z) const
    {
        const int d = degree();
        Eigen::MatrixXcd jac(d, d);
        for (int j = 0; j < d; ++j) {
            jac(0, j) = 1.0;
            cplx power = 1.0; // zeta_j^{k-1}
            for (int k = 1; k <= d - 1; ++k) {
                jac(k, j) = static_cast<double>(k) * mu_[static_cast<std::size_t>(j)] * power;
                power *= z(j);
            }
        }
        return jac;
    }

private:
    std::vector<cplx> mu_;
};

inline SigmaSystem sigma_system(const Spectrum& s) { return SigmaSystem(s); }

struct RootTuple {
    std::vector<cplx> zeta;
    double residual = 0.0;
};

inline double tuple_distance(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        out = std::max(out, std::abs(a[i] - b[i]));
    return out;
}

inline double min_separation(const std::vector<cplx>& zeta)
{
    double out = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zeta.size(); ++i)
        for (std::size_t j = i + 1; j < zeta.size(); ++j)
            out = std::min(out, std::abs(zeta[i] - zeta[j]));
    return out;
}

/// f'(zeta_i) = 1 + prod_{j != i} (zeta_i - zeta_j) for f(z) = z + prod (z - zeta_j).
inline std::vector<cplx> forward_multipliers(const std::vector<cplx>& zeta)
{
    if (min_separation(zeta) == 0.0)
        throw Error(ErrorCode::CoincidentRoots, "fixed points must be distinct");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        cplx prod = 1.0;
        for (std::size_t j = 0; j < zeta.size(); ++j)
            if (j != i)
                prod *= zeta[i] - zeta[j];
        out.push_back(1.0 + prod);
    }
    return out;
}

inline std::vector<cplx> forward_multipliers(const RootTuple& t) { return forward_multipliers(t.zeta); }

struct SolverStats {
    std::size_t starts = 0;
    std::size_t converged = 0;
    std::size_t collisions = 0;   ///< converged but with coinciding coordinates
    std::size_t duplicates = 0;   ///< converged to an already known tuple
};

enum class SolveStatus { Complete, BudgetExhausted, Spurious };

inline std::string to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Complete: return "complete";
    case SolveStatus::BudgetExhausted: return "budget_exhausted";
    case SolveStatus::Spurious: return "spurious";
    }
    return "unknown";
}

struct SolveResult {
    std::vector<RootTuple> tuples;
    SolverStats stats;
    SolveStatus status = SolveStatus::Complete;
    /// Pairs of accepted tuples closer than 10 eps_dup.
    std::vector<std::pair<std::size_t, std::size_t>> near_collisions;
};

namespace detail {

/// One damped Newton run. Returns the converged point, if any.
inline std::optional<RootTuple> newton_run(const SigmaSystem& sys, Eigen::VectorXcd z, const SolverConfig& cfg)
{
    Eigen::VectorXcd f = sys.residual(z);
    double norm2 = f.norm();
    for (int it = 0; it < cfg.max_iterations; ++it) {
        if (f.lpNorm<Eigen::Infinity>() < cfg.eps_res) {
            // A couple of polishing steps; keep whichever is best.
            for (int polish = 0; polish < 2; ++polish) {
                const Eigen::VectorXcd step = sys.jacobian(z).colPivHouseholderQr().solve(-f);
                const Eigen::VectorXcd zn = z + step;
                const Eigen::VectorXcd fn = sys.residual(zn);
                if (!zn.allFinite() || fn.lpNorm<Eigen::Infinity>() >= f.lpNorm<Eigen::Infinity>())
                    break;
                z = zn;
                f = fn;
            }
            RootTuple out;
            out.zeta.assign(z.data(), z.data() + z.size());
            out.residual = f.lpNorm<Eigen::Infinity>();
            return out;
        }
        const Eigen::VectorXcd step = sys.jacobian(z).colPivHouseholderQr().solve(-f);
        if (!step.allFinite())
            return std::nullopt;
        double t = 1.0;
        bool accepted = false;
        while (t > 1e-6) {
            const Eigen::VectorXcd zn = z + t * step;
            const Eigen::VectorXcd fn = sys.residual(zn);
            const double n2 = fn.norm();
            if (std::isfinite(n2) && n2 < (1.0 - 1e-4 * t) * norm2) {
                z = zn;
                f = fn;
                norm2 = n2;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted || z.cwiseAbs().maxCoeff() > 1e8)
            return std::nullopt;
    }
    return std::nullopt;
}

inline Eigen::VectorXcd random_start(int d, double radius, std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXcd z(d);
    for (int i = 0; i < d; ++i) {
        const double r = radius * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        z(i) = std::polar(r, theta);
    }
    z.array() -= z.mean();
    return z;
}

} // namespace detail

/// Multi-start Newton for the configuration system. `expected` is the
/// number of tuples the counting formulas predict; the search stops once
/// it is reached (plus confirmation starts) or the budget runs out.
/// Results are deterministic for a fixed seed regardless of thread count.
inline SolveResult solve_sigma(const Spectrum& s, std::size_t expected, const SolverConfig& cfg = {})
{
    const SigmaSystem sys(s);
    const int d = sys.degree();
    double max_lambda = 0.0;
    for (const auto& l : s.lambda())
        max_lambda = std::max(max_lambda, std::abs(l.to_complex()));
    const double radius = 2.0 * (1.0 + max_lambda);

    const std::size_t budget =
        cfg.start_budget.value_or(5000 * static_cast<std::size_t>(d - 1) * std::max<std::size_t>(expected / (d - 1), 1));
    const std::size_t confirm = cfg.confirm_starts.value_or(100 * static_cast<std::size_t>(d));
    const unsigned threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    const std::size_t batch = std::max<std::size_t>(cfg.batch, 1);

    SolveResult out;
    std::optional<std::size_t> stop_at;
    std::size_t next = 0;
    while (next < budget && (!stop_at || next < *stop_at)) {
        std::size_t end = std::min(budget, next + batch);
        if (stop_at)
            end = std::min(end, *stop_at);
        std::vector<std::optional<RootTuple>> results(end - next);
        auto work = [&](unsigned worker) {
            for (std::size_t k = next + worker; k < end; k += threads)
                results[k - next] = detail::newton_run(sys, detail::random_start(d, radius, cfg.seed, k), cfg);
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w)
                pool.emplace_back(work, w);
        }

        for (auto& r : results) {
            ++out.stats.starts;
            if (!r)
                continue;
            ++out.stats.converged;
            if (min_separation(r->zeta) <= cfg.eps_sep) {
                ++out.stats.collisions;
                continue;
            }
            const bool known = std::any_of(out.tuples.begin(), out.tuples.end(), [&](const RootTuple& t) {
                return tuple_distance(t.zeta, r->zeta) < cfg.eps_dup;
            });
            if (known) {
                ++out.stats.duplicates;
                continue;
            }
            out.tuples.push_back(std::move(*r));
        }
        next = end;
        if (!stop_at && out.tuples.size() >= expected && expected > 0)
            stop_at = next + confirm;
    }

    std::sort(out.tuples.begin(), out.tuples.end(), [](const RootTuple& a, const RootTuple& b) {
        for (std::size_t i = 0; i < a.zeta.size(); ++i) {
            if (a.zeta[i].real() != b.zeta[i].real())
                return a.zeta[i].real() < b.zeta[i].real();
            if (a.zeta[i].imag() != b.zeta[i].imag())
                return a.zeta[i].imag() < b.zeta[i].imag();
        }
        return false;
    });
    for (std::size_t i = 0; i < out.tuples.size(); ++i)
        for (std::size_t j = i + 1; j < out.tuples.size(); ++j)
            if (tuple_distance(out.tuples[i].zeta, out.tuples[j].zeta) < 10 * cfg.eps_dup)
                out.near_collisions.emplace_back(i, j);

    if (out.tuples.size() > expected)
        out.status = SolveStatus::Spurious;
    else if (out.tuples.size() < expected)
        out.status = SolveStatus::BudgetExhausted;
    return out;
}

/// All permutations of {0..d-1} that map every value class to itself.
inline std::vector<std::vector<int>> class_preserving_permutations(const ValueClasses& classes, int d)
{
    std::vector<std::vector<int>> group{std::vector<int>(static_cast<std::size_t>(d))};
    for (int i = 0; i < d; ++i)
        group[0][static_cast<std::size_t>(i)] = i;
    for (IndexSet cls : classes.classes) {
        const std::vector<int> members = cls.elements();
        std::vector<int> image = members;
        std::vector<std::vector<int>> next;
        do {
            for (const auto& g : group) {
                std::vector<int> h = g;
                for (std::size_t k = 0; k < members.size(); ++k)
                    h[static_cast<std::size_t>(members[k])] = image[k];
                next.push_back(std::move(h));
            }
        } while (std::next_permutation(image.begin(), image.end()));
        group = std::move(next);
    }
    return group;
}

/// Number of orbits of the class-preserving permutation group acting on the
/// tuples by permuting coordinates. Throws NonFreeAction unless the tuple set
/// is closed under the action and every orbit has full size.
inline std::size_t orbit_count(const std::vector<RootTuple>& tuples, const ValueClasses& classes, double eps_dup = 1e-6)
{
    if (tuples.empty())
        return 0;
    const int d = static_cast<int>(tuples.front().zeta.size());
    const auto group = class_preserving_permutations(classes, d);
    std::vector<bool> assigned(tuples.size(), false);
    std::size_t orbits = 0;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        if (assigned[t])
            continue;
        std::vector<std::size_t> members;
        for (const auto& sigma : group) {
            std::vector<cplx> image(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                image[static_cast<std::size_t>(i)] = tuples[t].zeta[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
            auto it = std::find_if(tuples.begin(), tuples.end(),
                                   [&](const RootTuple& u) { return tuple_distance(u.zeta, image) < eps_dup; });
            if (it == tuples.end())
                throw Error(ErrorCode::NonFreeAction, "tuple set not closed under class-preserving permutations");
            const auto j = static_cast<std::size_t>(it - tuples.begin());
            if (std::find(members.begin(), members.end(), j) == members.end())
                members.push_back(j);
        }
        if (members.size() != group.size())
            throw Error(ErrorCode::NonFreeAction, "orbit of size " + std::to_string(members.size()) + ", expected " +
                                                      std::to_string(group.size()));
        for (std::size_t j : members) {
            if (assigned[j])
                throw Error(ErrorCode::NonFreeAction, "overlapping orbits");
            assigned[j] = true;
        }
        ++orbits;
    }
    return orbits;
}

struct VerificationReport {
    int d = 0;
    std::size_t found_tuples = 0;
    std::size_t expected_tuples = 0;
    std::size_t mc_orbits = 0;
    std::size_t expected_orbits = 0;
    double max_multiplier_error = 0.0;
    double max_residual = 0.0;
    SolverStats stats;
    /// "proved", "consistent" (empty fiber, budget exhausted with nothing
    /// found), "budget_exhausted", "spurious", "non_free",
    /// "multiplier_mismatch" or "orbit_mismatch".
    std::string status;
    bool analytic = false;
    std::vector<std::string> warnings;
    std::vector<RootTuple> tuples;

    bool ok() const { return status == "proved" || status == "consistent"; }
};

/// Solves for all configurations, rebuilds the polynomials' multipliers and
/// compares tuple and orbit counts with the exact formulas.
inline VerificationReport verify(const Spectrum& s, const SolverConfig& cfg = {}, const CountOptions& count_opts = {})
{
    CountOptions opts = count_opts;
    opts.all_engines = false;
    const FiberReport counts = count_fibers(s, opts);

    VerificationReport rep;
    rep.d = s.degree();
    rep.expected_tuples = counts.e_I0.convert_to<std::size_t>();
    rep.expected_orbits = counts.mc_count.convert_to<std::size_t>();

    if (rep.d == 2) {
        // z + (z - c)(z + c) has multipliers 1 +- 2c.
        rep.analytic = true;
        const cplx c = (s.lambda()[0].to_complex() - 1.0) / 2.0;
        rep.tuples.push_back(RootTuple{{c, -c}, 0.0});
        rep.stats.starts = 0;
    } else {
        SolveResult solved = solve_sigma(s, rep.expected_tuples, cfg);
        rep.stats = solved.stats;
        rep.tuples = std::move(solved.tuples);
        for (auto [i, j] : solved.near_collisions)
            rep.warnings.push_back("near collision between tuples " + std::to_string(i) + " and " + std::to_string(j));
    }
    rep.found_tuples = rep.tuples.size();

    std::vector<cplx> lambda;
    for (const auto& l : s.lambda())
        lambda.push_back(l.to_complex());
    for (const auto& t : rep.tuples) {
        rep.max_residual = std::max(rep.max_residual, t.residual);
        const auto mult = forward_multipliers(t);
        for (std::size_t i = 0; i < mult.size(); ++i)
            rep.max_multiplier_error = std::max(rep.max_multiplier_error, std::abs(mult[i] - lambda[i]));
    }

    if (rep.found_tuples > rep.expected_tuples) {
        rep.status = "spurious";
        return rep;
    }
    try {
        rep.mc_orbits = orbit_count(rep.tuples, value_classes(s), cfg.eps_dup);
    } catch (const Error& e) {
        rep.status = "non_free";
        rep.warnings.emplace_back(e.what());
        return rep;
    }
    if (rep.found_tuples < rep.expected_tuples)
        rep.status = "budget_exhausted";
    else if (rep.max_multiplier_error >= cfg.eps_mult)
        rep.status = "multiplier_mismatch";
    else if (rep.mc_orbits != rep.expected_orbits)
        rep.status = "orbit_mismatch";
    else
        rep.status = rep.expected_tuples == 0 ? "consistent" : "proved";
    return rep;
}

} // namespace fixmult
