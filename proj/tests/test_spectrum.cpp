#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixmult/spectrum.hpp"
#include "fixmult/spectrum_gen.hpp"

using namespace fixmult;

namespace {

std::vector<GaussianRational> nums(std::initializer_list<const char*> text)
{
    std::vector<GaussianRational> out;
    for (const char* t : text)
        out.push_back(GaussianRational::parse(t));
    return out;
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

} // namespace

TEST(Spectrum, ValidatesMembership)
{
    const Spectrum two = Spectrum::from_lambda(nums({"0", "2"}));
    EXPECT_EQ(two.mu(), nums({"1", "-1"}));

    const Spectrum four = Spectrum::from_lambda(nums({"0", "2", "1/2", "3/2"}));
    EXPECT_EQ(four.mu(), nums({"1", "-1", "2", "-2"}));
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(GaussianRational(1) - GaussianRational(1) / four.mu()[i], four.lambda()[i]);

    EXPECT_EQ(code_of([] { Spectrum::from_lambda(nums({"1", "0", "2"})); }), ErrorCode::HasUnitMultiplier);
    EXPECT_EQ(code_of([] { Spectrum::from_lambda(nums({"0", "0"})); }), ErrorCode::NotOnHyperplane);
    EXPECT_EQ(code_of([] { Spectrum::from_lambda(nums({"3", "3", "3"})); }), ErrorCode::NotOnHyperplane);
    EXPECT_EQ(code_of([] { Spectrum::from_lambda(nums({"0"})); }), ErrorCode::DegreeTooSmall);
    EXPECT_EQ(code_of([] { Spectrum::from_mu(nums({"1", "0", "-1"})); }), ErrorCode::ZeroMuTarget);
}

TEST(Spectrum, ComplexMultipliers)
{
    // mu = (i, -i)
    const Spectrum s = Spectrum::from_mu(nums({"0+1i", "0-1i"}));
    EXPECT_EQ(s.lambda()[0], GaussianRational::parse("1+1i"));
    EXPECT_EQ(Spectrum::from_lambda(s.lambda()), s);
}

TEST(Spectrum, Restrict)
{
    const Spectrum s = Spectrum::from_mu(nums({"1", "-1", "2", "-2"}));
    const Spectrum sub = s.restrict(IndexSet::of({2, 3}));
    EXPECT_EQ(sub.mu(), nums({"2", "-2"}));
    EXPECT_EQ(code_of([&] { s.restrict(IndexSet::of({0, 2})); }), ErrorCode::NotOnHyperplane);
}

TEST(ValueClasses, GroupsByExactEquality)
{
    const auto distinct = value_classes(Spectrum::from_lambda(nums({"0", "2", "1/2", "3/2"})));
    ASSERT_EQ(distinct.classes.size(), 4U);
    EXPECT_EQ(distinct.sizes(), (std::vector<int>{1, 1, 1, 1}));

    const auto paired = value_classes(Spectrum::from_lambda(nums({"0", "2", "0", "2"})));
    ASSERT_EQ(paired.classes.size(), 2U);
    EXPECT_EQ(paired.classes[0], IndexSet::of({0, 2}));
    EXPECT_EQ(paired.classes[1], IndexSet::of({1, 3}));
}

TEST(ValueClassesProperty, PermutationRelabelsClasses)
{
    std::mt19937_64 rng(5);
    const Spectrum s = Spectrum::from_mu(nums({"1", "1", "-2", "3", "-3", "1", "-1"}));
    const auto base = value_classes(s).sizes();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto sizes = value_classes(s.permuted(perm)).sizes();
        auto expected = base;
        std::sort(sizes.begin(), sizes.end());
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(sizes, expected);
        // Idempotent: the classes of the same spectrum never change.
        EXPECT_EQ(value_classes(s).classes, value_classes(s).classes);
    }
}

TEST(Generate, FromPlan)
{
    auto a = generate({nums({"1", "-1"}), nums({"2", "-2"})});
    EXPECT_EQ(a.spectrum.lambda(), nums({"0", "2", "1/2", "3/2"}));
    EXPECT_EQ(a.blocks.to_string(), "{{1,2},{3,4}}");

    auto b = generate({nums({"1", "-1"}), nums({"1", "-1"})});
    EXPECT_EQ(b.spectrum.lambda(), nums({"0", "2", "0", "2"}));

    auto c = generate({nums({"1", "2", "-3"})});
    EXPECT_EQ(c.spectrum.lambda(), nums({"0", "1/2", "4/3"}));

    EXPECT_EQ(code_of([] { generate({nums({"1", "2"})}); }), ErrorCode::BlockSumNonzero);
    EXPECT_EQ(code_of([] { generate({nums({"1", "0", "-1"})}); }), ErrorCode::ZeroMuTarget);
}

TEST(GenerateProperty, RandomSpectraAreValidAndDeterministic)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GenerateOptions opts;
        opts.complex_values = seed % 2 == 0;
        opts.shuffle = seed % 3 == 0;
        opts.exact_lattice = seed % 4 == 0;
        const auto g = generate_random({2, 3, 4}, seed, opts);
        GaussianRational sum;
        for (const auto& m : g.spectrum.mu())
            sum += m;
        EXPECT_TRUE(sum.is_zero());
        EXPECT_EQ(g.spectrum.degree(), 9);
        for (IndexSet b : g.blocks.blocks()) {
            GaussianRational block_sum;
            for (int i : b.elements())
                block_sum += g.spectrum.mu()[static_cast<std::size_t>(i)];
            EXPECT_TRUE(block_sum.is_zero());
        }
        // A single value class would force mu_1 = 0.
        EXPECT_GE(value_classes(g.spectrum).classes.size(), 2U);
        EXPECT_EQ(generate_random({2, 3, 4}, seed, opts).spectrum, g.spectrum);
        if (opts.exact_lattice) {
            EXPECT_TRUE(lattice_is_exact(g.spectrum, g.blocks));
        }
    }
}

TEST(Generate, RejectsSingletonBlocks)
{
    EXPECT_EQ(code_of([] { generate_random({1, 3}, 1); }), ErrorCode::BlockSumNonzero);
}
