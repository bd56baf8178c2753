#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixmult/spectrum_gen.hpp"
#include "fixmult/verifier.hpp"

using namespace fixmult;

namespace {

Spectrum lambda_of(std::initializer_list<const char*> values)
{
    std::vector<GaussianRational> lambda;
    for (const char* v : values)
        lambda.push_back(GaussianRational::parse(v));
    return Spectrum::from_lambda(std::move(lambda));
}

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

} // namespace

TEST(SigmaSystem, EquationsAndJacobian)
{
    const Spectrum s = lambda_of({"0", "2", "1/2", "3/2"});
    const SigmaSystem sys(s);
    EXPECT_EQ(sys.degree(), 4);
    Eigen::VectorXcd z(4);
    z << cplx(0.3, 0.1), cplx(-0.7, 0.2), cplx(1.1, -0.4), cplx(-0.2, 0.5);
    const Eigen::VectorXcd f = sys.residual(z);
    // mu = (1, -1, 2, -2)
    const std::vector<double> mu{1, -1, 2, -2};
    EXPECT_NEAR(std::abs(f(0) - z.sum()), 0.0, 1e-14);
    for (int k = 1; k <= 3; ++k) {
        cplx expected = k == 3 ? 1.0 : 0.0;
        for (int j = 0; j < 4; ++j)
            expected += mu[static_cast<std::size_t>(j)] * std::pow(z(j), k);
        EXPECT_NEAR(std::abs(f(k) - expected), 0.0, 1e-13) << k;
    }

    const Eigen::MatrixXcd jac = sys.jacobian(z);
    const double h = 1e-7;
    for (int j = 0; j < 4; ++j) {
        Eigen::VectorXcd zp = z;
        zp(j) += h;
        const Eigen::VectorXcd column = (sys.residual(zp) - f) / h;
        EXPECT_LT(max_abs(column - jac.col(j)), 1e-5) << j;
    }
    EXPECT_EQ(code_of([] { SigmaSystem(lambda_of({"0", "2"})); }), ErrorCode::DegreeTooSmall);
}

TEST(ForwardMultipliers, DegreeTwo)
{
    const cplx c(0.25, -1.5);
    const auto m = forward_multipliers(std::vector<cplx>{c, -c});
    EXPECT_LT(std::abs(m[0] - (1.0 + 2.0 * c)), 1e-15);
    EXPECT_LT(std::abs(m[1] - (1.0 - 2.0 * c)), 1e-15);
    EXPECT_EQ(code_of([] { forward_multipliers(std::vector<cplx>{1.0, 1.0, -2.0}); }), ErrorCode::CoincidentRoots);
}

TEST(SolveSigma, FourDistinctMultipliers)
{
    const Spectrum s = lambda_of({"0", "2", "1/2", "3/2"});
    const auto result = solve_sigma(s, 3);
    ASSERT_EQ(result.tuples.size(), 3U);
    EXPECT_EQ(result.status, SolveStatus::Complete);
    for (const auto& t : result.tuples) {
        EXPECT_LT(t.residual, 1e-10);
        const auto m = forward_multipliers(t);
        for (std::size_t i = 0; i < 4; ++i)
            EXPECT_LT(std::abs(m[i] - s.lambda()[i].to_complex()), 1e-8);
    }
    EXPECT_EQ(orbit_count(result.tuples, value_classes(s)), 3U);
}

TEST(SolveSigma, EmptyFiberFindsNothing)
{
    const Spectrum s = lambda_of({"0", "2", "0", "2"});
    SolverConfig cfg;
    cfg.start_budget = 3000;
    const auto result = solve_sigma(s, 0, cfg);
    EXPECT_TRUE(result.tuples.empty());
    EXPECT_EQ(result.stats.starts, 3000U);
    EXPECT_EQ(result.status, SolveStatus::Complete);
}

TEST(SolveSigma, DegreeThreeHasTwoTuples)
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GenerateOptions opts;
        opts.complex_values = seed % 2 == 0;
        const auto g = generate_random({3}, seed, opts);
        const auto result = solve_sigma(g.spectrum, 2);
        EXPECT_EQ(result.tuples.size(), 2U) << g.spectrum.lambda()[0];
    }
}

TEST(SolveSigma, ThreadCountDoesNotChangeResult)
{
    const Spectrum s = lambda_of({"0", "2", "1/2", "3/2"});
    SolverConfig one;
    one.threads = 1;
    SolverConfig many;
    many.threads = 4;
    const auto a = solve_sigma(s, 3, one);
    const auto b = solve_sigma(s, 3, many);
    ASSERT_EQ(a.tuples.size(), b.tuples.size());
    EXPECT_EQ(a.stats.starts, b.stats.starts);
    for (std::size_t i = 0; i < a.tuples.size(); ++i)
        EXPECT_EQ(a.tuples[i].zeta, b.tuples[i].zeta);
}

TEST(OrbitCount, ClassPreservingAction)
{
    const Spectrum s = lambda_of({"0", "2", "0", "2"});
    const auto classes = value_classes(s);
    EXPECT_EQ(class_preserving_permutations(classes, 4).size(), 4U);

    const std::vector<cplx> base{1.0, 2.0, 3.0, 4.0};
    std::vector<RootTuple> tuples;
    for (const auto& sigma : class_preserving_permutations(classes, 4)) {
        RootTuple t;
        for (int i : sigma)
            t.zeta.push_back(base[static_cast<std::size_t>(i)]);
        tuples.push_back(t);
    }
    EXPECT_EQ(orbit_count(tuples, classes), 1U);

    tuples.pop_back();
    EXPECT_EQ(code_of([&] { orbit_count(tuples, classes); }), ErrorCode::NonFreeAction);

    // A tuple fixed by swapping the first class has a short orbit.
    std::vector<RootTuple> fixed{RootTuple{{1.0, 2.0, 1.0, 4.0}, 0.0}, RootTuple{{1.0, 4.0, 1.0, 2.0}, 0.0}};
    EXPECT_EQ(code_of([&] { orbit_count(fixed, classes); }), ErrorCode::NonFreeAction);

    const auto singletons = value_classes(lambda_of({"0", "2", "1/2", "3/2"}));
    EXPECT_EQ(orbit_count(tuples, singletons), tuples.size());
}

TEST(Verify, ClosedUnderClassPermutations)
{
    const auto g = generate({{GaussianRational(1), GaussianRational(1), GaussianRational(-2)},
                             {GaussianRational(3), GaussianRational(-3)}});
    const auto rep = verify(g.spectrum);
    ASSERT_EQ(rep.status, "proved");
    const auto classes = value_classes(g.spectrum);
    for (const auto& t : rep.tuples) {
        for (const auto& sigma : class_preserving_permutations(classes, rep.d)) {
            std::vector<cplx> image;
            for (int i : sigma)
                image.push_back(t.zeta[static_cast<std::size_t>(i)]);
            const bool present = std::any_of(rep.tuples.begin(), rep.tuples.end(),
                                             [&](const RootTuple& u) { return tuple_distance(u.zeta, image) < 1e-6; });
            EXPECT_TRUE(present);
        }
    }
    EXPECT_EQ(rep.mc_orbits * 2, rep.found_tuples);
}

TEST(Verify, PerturbationShowsUpInMultipliers)
{
    const Spectrum s = lambda_of({"0", "2", "1/2", "3/2"});
    const auto rep = verify(s);
    ASSERT_FALSE(rep.tuples.empty());
    std::vector<cplx> moved = rep.tuples.front().zeta;
    double previous = 0.0;
    for (double delta : {1e-9, 1e-6, 1e-3}) {
        moved = rep.tuples.front().zeta;
        moved[0] += delta;
        moved[1] -= delta;
        const auto m = forward_multipliers(moved);
        double err = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i)
            err = std::max(err, std::abs(m[i] - s.lambda()[i].to_complex()));
        EXPECT_GT(err, previous);
        EXPECT_GT(err, delta * 0.1);
        EXPECT_LT(err, delta * 100.0);
        previous = err;
    }
}

TEST(Verify, DegreeTwoIsAnalytic)
{
    const Spectrum s = lambda_of({"3", "-1"});
    const auto rep = verify(s);
    EXPECT_TRUE(rep.analytic);
    EXPECT_EQ(rep.status, "proved");
    EXPECT_EQ(rep.found_tuples, 1U);
    EXPECT_LT(rep.max_multiplier_error, 1e-15);
}

TEST(Verify, ReportsFixtures)
{
    const auto proved = verify(lambda_of({"0", "2", "1/2", "3/2"}));
    EXPECT_EQ(proved.status, "proved");
    EXPECT_EQ(proved.expected_tuples, 3U);
    EXPECT_EQ(proved.mc_orbits, 3U);
    EXPECT_TRUE(proved.ok());

    SolverConfig cfg;
    cfg.start_budget = 2000;
    const auto empty = verify(lambda_of({"0", "2", "0", "2"}), cfg);
    EXPECT_EQ(empty.status, "consistent");
    EXPECT_EQ(empty.found_tuples, 0U);

    SolverConfig starved;
    starved.start_budget = 1;
    const auto short_run = verify(lambda_of({"0", "2", "1/2", "3/2"}), starved);
    EXPECT_EQ(short_run.status, "budget_exhausted");
    EXPECT_FALSE(short_run.ok());
}
