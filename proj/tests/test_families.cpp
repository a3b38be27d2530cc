#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "iwasawa/families.hpp"
#include "iwasawa/linalg.hpp"
#include "iwasawa/rng.hpp"
#include "iwasawa/triangular.hpp"
#include "support/generators.hpp"

namespace iwasawa {
namespace {

using Op = StructureContext::Operator;
using testing::rel_diff;

const cplx I{0.0, 1.0};
const double kR = 1.0 / std::numbers::sqrt2;

std::vector<std::size_t> valid_dims(FamilyTag f) {
    if (f == FamilyTag::BII || f == FamilyTag::CII) return {4, 8, 12};
    return {2, 4, 6, 8};
}

std::string name_of(const ::testing::TestParamInfo<FamilyTag>& info) { return to_string(info.param); }

class EveryFamily : public ::testing::TestWithParam<FamilyTag> {};

INSTANTIATE_TEST_SUITE_P(Families, EveryFamily, ::testing::ValuesIn(kAllFamilies), name_of);

TEST(FamilyTags, ParseIsCaseInsensitive) {
    EXPECT_EQ(parse_family("ciI"), FamilyTag::CII);
    EXPECT_EQ(parse_family("a"), FamilyTag::A);
    EXPECT_EQ(parse_family("AIII"), FamilyTag::AIII);
    EXPECT_THROW(parse_family("D"), Error);
    for (FamilyTag f : kAllFamilies) EXPECT_EQ(parse_family(to_string(f)), f);
}

TEST(FamilyTags, DimensionConstraints) {
    EXPECT_FALSE(dimension_violation(FamilyTag::A, 3));
    EXPECT_TRUE(dimension_violation(FamilyTag::A, 1));
    EXPECT_EQ(*dimension_violation(FamilyTag::B, 5), "dimension must be even");
    EXPECT_EQ(*dimension_violation(FamilyTag::BII, 6), "dimension must be divisible by 4");
    EXPECT_EQ(*dimension_violation(FamilyTag::CII, 2), "dimension must be divisible by 4");
    EXPECT_FALSE(dimension_violation(FamilyTag::CII, 8));
    try {
        (void)structure_context(FamilyTag::BII, 6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadDimension);
    }
}

TEST(StructureContext, FamilyBAtDimensionTwo) {
    const StructureContext ctx = structure_context(FamilyTag::B, 2);
    const ComplexMatrix& b = ctx.adapted_basis;
    EXPECT_LT(std::abs(b(0, 0) - kR) + std::abs(b(1, 0) - I * kR), 1e-15);
    EXPECT_LT(std::abs(b(0, 1) - kR) + std::abs(b(1, 1) + I * kR), 1e-15);
    // J xi_1 = xi_{-1} and back
    const auto image = apply_operator(ctx, Op::J, b.column(0));
    EXPECT_LT(std::abs(image[0] - b(0, 1)) + std::abs(image[1] - b(1, 1)), 1e-15);
}

TEST(StructureContext, FamilyCAtDimensionTwo) {
    const StructureContext ctx = structure_context(FamilyTag::C, 2);
    ASSERT_TRUE(ctx.Jt);
    EXPECT_EQ(rel_diff(*ctx.Jt, ComplexMatrix{{0.0, -1.0}, {1.0, 0.0}}), 0.0);
    EXPECT_EQ(rel_diff(*ctx.Jt * *ctx.Jt, -ComplexMatrix::identity(2)), 0.0);
}

TEST(StructureContext, FamilyAIIIAtDimensionTwo) {
    const StructureContext ctx = structure_context(FamilyTag::AIII, 2);
    ASSERT_TRUE(ctx.V);
    EXPECT_EQ(rel_diff(*ctx.V, ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0})), 0.0);
    EXPECT_LT(rel_diff(ctx.adapted_basis, ComplexMatrix{{kR, kR}, {kR, -kR}}), 1e-16);
}

TEST_P(EveryFamily, ConstructionInvariantsHold) {
    for (std::size_t n : valid_dims(GetParam())) {
        const StructureContext ctx = structure_context(GetParam(), n);
        EXPECT_FALSE(ctx.invariants.empty());
        for (const auto& inv : ctx.invariants) EXPECT_LE(inv.value, 1e-12) << inv.name << " n=" << n;
        EXPECT_LE(unitarity_defect(ctx.adapted_basis), 1e-12);
    }
}

TEST_P(EveryFamily, AntilinearOperatorsSquareToPlusOrMinusOne) {
    const StructureContext ctx = structure_context(GetParam(), 8);
    Rng rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<cplx> v(8);
        for (auto& z : v) z = rng.complex_normal();
        if (ctx.J) {
            const auto twice = apply_operator(ctx, Op::J, apply_operator(ctx, Op::J, v));
            for (std::size_t i = 0; i < 8; ++i) EXPECT_LT(std::abs(twice[i] - v[i]), 1e-12);
        }
        if (ctx.Jt) {
            const auto twice = apply_operator(ctx, Op::Jt, apply_operator(ctx, Op::Jt, v));
            for (std::size_t i = 0; i < 8; ++i) EXPECT_LT(std::abs(twice[i] + v[i]), 1e-12);
        }
        // antilinearity: J(i v) = -i J(v)
        if (ctx.J) {
            std::vector<cplx> iv(v);
            for (auto& z : iv) z *= I;
            const auto a = apply_operator(ctx, Op::J, iv);
            const auto b = apply_operator(ctx, Op::J, v);
            for (std::size_t i = 0; i < 8; ++i) EXPECT_LT(std::abs(a[i] + I * b[i]), 1e-12);
        }
    }
}

TEST(Membership, AIIIOffDiagonalElement) {
    const StructureContext ctx = structure_context(FamilyTag::AIII, 2);
    const ComplexMatrix x = 1.7 * ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    const MembershipReport r = algebra_membership(ctx, x, 1e-15);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.residuals.at(0).value, 0.0);
}

TEST(Membership, AINonrealEntryResidualIsTwiceImaginaryPart) {
    const StructureContext ctx = structure_context(FamilyTag::AI, 3);
    ComplexMatrix x(3, 3);
    x(1, 2) = cplx(0.4, 0.3);
    const MembershipReport r = algebra_membership(ctx, x, 1e-10);
    EXPECT_FALSE(r.passed);
    EXPECT_NEAR(r.residuals.at(0).value, 2.0 * 0.3, 1e-15);
}

TEST(Membership, AIIIPositiveElementOfFBasis) {
    const StructureContext ctx = structure_context(FamilyTag::AIII, 2);
    const ComplexMatrix& b = ctx.adapted_basis;
    const ComplexMatrix g = b * ComplexMatrix::diagonal(std::vector<double>{2.0, 0.5}) * adjoint(b);
    // direct evaluation of g* V g = V
    EXPECT_LT(frobenius_norm(adjoint(g) * *ctx.V * g - *ctx.V), 1e-14);
    EXPECT_TRUE(group_membership(ctx, g, 1e-12).passed);
}

TEST(Membership, SizeMismatchThrows) {
    const StructureContext ctx = structure_context(FamilyTag::B, 4);
    EXPECT_THROW((void)algebra_membership(ctx, ComplexMatrix::identity(2), 1e-8), Error);
    EXPECT_THROW((void)group_membership(ctx, ComplexMatrix::identity(2), 1e-8), Error);
}

TEST_P(EveryFamily, IdentityIsInTheGroup) {
    const std::size_t n = valid_dims(GetParam()).front();
    const MembershipReport r = group_membership(structure_context(GetParam(), n), ComplexMatrix::identity(n), 1e-14);
    EXPECT_TRUE(r.passed);
    ASSERT_NE(r.find("||g - 1||_F"), nullptr);
    EXPECT_EQ(r.find("||g - 1||_F")->value, 0.0);
}

TEST_P(EveryFamily, AlgebraSamplesAreClosedUnderCommutator) {
    for (std::size_t n : valid_dims(GetParam())) {
        const StructureContext ctx = structure_context(GetParam(), n);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const ComplexMatrix x = sample_algebra(ctx, 2 * seed);
            const ComplexMatrix y = sample_algebra(ctx, 2 * seed + 1);
            EXPECT_TRUE(algebra_membership(ctx, x, 1e-12).passed);
            EXPECT_TRUE(algebra_membership(ctx, commutator(x, y), 1e-10).passed) << "n=" << n;
        }
    }
}

TEST_P(EveryFamily, ExponentialOfAlgebraSampleIsInGroup) {
    for (std::size_t n : valid_dims(GetParam())) {
        const StructureContext ctx = structure_context(GetParam(), n);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const ComplexMatrix g = matrix_exp(sample_algebra(ctx, seed));
            EXPECT_TRUE(group_membership(ctx, g, 1e-8).passed) << "n=" << n;
            EXPECT_TRUE(group_membership(ctx, sample_group(ctx, seed, 0.5), 1e-8).passed);
        }
    }
}

TEST_P(EveryFamily, SamplingIsDeterministic) {
    const StructureContext ctx = structure_context(GetParam(), 8);
    EXPECT_EQ(rel_diff(sample_algebra(ctx, 9), sample_algebra(ctx, 9)), 0.0);
    EXPECT_EQ(rel_diff(sample_group(ctx, 9, 0.3), sample_group(ctx, 9, 0.3)), 0.0);
}

TEST(Sampling, FamilyBSatisfiesOrthogonalRelationTightly) {
    const StructureContext ctx = structure_context(FamilyTag::B, 6);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix x = sample_algebra(ctx, seed);
        const ComplexMatrix& m = *ctx.J;
        EXPECT_LE(frobenius_norm(x + m * transpose(x) * transpose(m)), 1e-12);
    }
}

TEST(Sampling, FamilyCIIBothRelations) {
    const StructureContext ctx = structure_context(FamilyTag::CII, 8);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix x = sample_algebra(ctx, seed);
        const ComplexMatrix& m = *ctx.Jt;
        const ComplexMatrix& v = *ctx.V;
        EXPECT_LE(frobenius_norm(x + m * transpose(x) * transpose(m)), 1e-10);
        EXPECT_LE(frobenius_norm(adjoint(x) * v + v * x), 1e-10);
    }
}

TEST(Sampling, ScaleZeroGivesIdentityAndNegativeScaleThrows) {
    const StructureContext ctx = structure_context(FamilyTag::A, 5);
    EXPECT_EQ(rel_diff(sample_group(ctx, 1, 0.0), ComplexMatrix::identity(5)), 0.0);
    EXPECT_THROW((void)sample_group(ctx, 1, -1.0), Error);
}

TEST(Sampling, FamilyAGroupSampleIsInvertible) {
    const StructureContext ctx = structure_context(FamilyTag::A, 6);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const ComplexMatrix g = sample_group(ctx, seed, 1.0);
        EXPECT_LT(rel_diff(g * inverse(g), ComplexMatrix::identity(6)), 1e-12);
    }
}

TEST(Sampling, AIIIGroupPreservesSignature) {
    const StructureContext ctx = structure_context(FamilyTag::AIII, 6);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix g = sample_group(ctx, seed, 1.0);
        EXPECT_LE(frobenius_norm(adjoint(g) * *ctx.V * g - *ctx.V), 1e-8);
    }
}

TEST(RegularElement, FamilyBDimensionTwo) {
    const StructureContext ctx = structure_context(FamilyTag::B, 2);
    const ComplexMatrix x0 = regular_element(ctx, std::vector<double>{1.0});
    const HermitianEig e = hermitian_eig(x0);
    EXPECT_NEAR(e.values[0], 1.0, 1e-15);
    EXPECT_NEAR(e.values[1], -1.0, 1e-15);
    const ComplexMatrix& b = ctx.adapted_basis;
    const ComplexMatrix p1 = ComplexMatrix(2, 1, b.column(0)) * adjoint(ComplexMatrix(2, 1, b.column(0)));
    const ComplexMatrix p2 = ComplexMatrix(2, 1, b.column(1)) * adjoint(ComplexMatrix(2, 1, b.column(1)));
    EXPECT_LT(rel_diff(x0, p1 - p2), 1e-15);
}

TEST(RegularElement, FamilyAIIIDimensionTwo) {
    const StructureContext ctx = structure_context(FamilyTag::AIII, 2);
    const ComplexMatrix x0 = regular_element(ctx, std::vector<double>{2.5});
    EXPECT_LT(rel_diff(x0, 2.5 * ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}), 1e-15);
}

TEST(RegularElement, FamilyAIIDoublesEigenvalues) {
    const StructureContext ctx = structure_context(FamilyTag::AII, 4);
    const HermitianEig e = hermitian_eig(regular_element(ctx, std::vector<double>{2.0, 1.0}));
    const double want[] = {2.0, 2.0, 1.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e.values[i], want[i], 1e-14);
}

TEST_P(EveryFamily, DefaultElementIsInAlgebraWithExpectedRegularity) {
    const FamilyTag f = GetParam();
    const bool quaternionic = f == FamilyTag::AII || f == FamilyTag::BII || f == FamilyTag::CII;
    for (std::size_t n : valid_dims(f)) {
        const StructureContext ctx = structure_context(f, n);
        const ComplexMatrix x0 = regular_element(ctx, default_coefficients(ctx));
        EXPECT_LE(hermitian_defect(x0), 1e-14);
        EXPECT_TRUE(algebra_membership(ctx, x0, 1e-12).passed);
        const SpectralFrame frame = build_frame(x0);
        EXPECT_EQ(classify(frame), quaternionic ? RegularityClass::QuasiRegular : RegularityClass::Regular);
        if (quaternionic)
            for (const auto& c : frame.clusters()) EXPECT_EQ(c.multiplicity, 2u);
    }
}

TEST(RegularElement, ConstraintViolations) {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidInput;
    };
    const StructureContext a = structure_context(FamilyTag::A, 3);
    EXPECT_EQ(kind_of([&] { (void)regular_element(a, std::vector<double>{1.0, 1.0, 2.0}); }),
              ErrorKind::ConstraintViolation);
    EXPECT_EQ(kind_of([&] { (void)regular_element(a, std::vector<double>{1.0, 2.0}); }),
              ErrorKind::ConstraintViolation);
    const StructureContext b = structure_context(FamilyTag::B, 4);
    EXPECT_EQ(kind_of([&] { (void)regular_element(b, std::vector<double>{1.0, -1.0}); }),
              ErrorKind::ConstraintViolation);
    EXPECT_EQ(kind_of([&] { (void)regular_element(b, std::vector<double>{0.0, 1.0}); }),
              ErrorKind::ConstraintViolation);
    const StructureContext aiii = structure_context(FamilyTag::AIII, 2);
    EXPECT_EQ(kind_of([&] { (void)regular_element(aiii, std::vector<double>{0.0}); }),
              ErrorKind::ConstraintViolation);
}

// Independent pairing oracle: apply Z to each adapted column and locate the
// column it lands on by inner products.
struct Pairing {
    std::size_t to;
    double sign;
};

std::vector<Pairing> pairing_oracle(const StructureContext& ctx, Op z) {
    std::vector<Pairing> out;
    const ComplexMatrix& b = ctx.adapted_basis;
    for (std::size_t i = 0; i < ctx.dim; ++i) {
        const auto image = apply_operator(ctx, z, b.column(i));
        for (std::size_t j = 0; j < ctx.dim; ++j) {
            cplx ip{};
            for (std::size_t r = 0; r < ctx.dim; ++r) ip += std::conj(b(r, j)) * image[r];
            if (std::abs(ip) > 0.5) out.push_back({j, ip.real()});
        }
    }
    return out;
}

TEST(SignRule, Examples) {
    const StructureContext b = structure_context(FamilyTag::B, 4);
    EXPECT_TRUE(verify_sign_rule(b, regular_element(b, std::vector<double>{2.0, 1.0}), -1));
    const StructureContext aii = structure_context(FamilyTag::AII, 4);
    EXPECT_TRUE(verify_sign_rule(aii, regular_element(aii, std::vector<double>{2.0, 1.0}), 1));
    // one broken pair: alpha_{-1} = +alpha_1
    const std::vector<double> broken{2.0, 2.0, 1.0, -1.0};
    const ComplexMatrix x0 =
        b.adapted_basis * ComplexMatrix::diagonal(std::span<const double>(broken)) * adjoint(b.adapted_basis);
    EXPECT_FALSE(verify_sign_rule(b, x0, -1));
    EXPECT_THROW((void)sign_rule_operator(structure_context(FamilyTag::A, 2)), Error);
    EXPECT_THROW((void)sign_rule_operator(structure_context(FamilyTag::AI, 2)), Error);
}

TEST_P(EveryFamily, SignRuleMatrixAndCoefficientFormsAgree) {
    const FamilyTag f = GetParam();
    if (f == FamilyTag::A || f == FamilyTag::AI) GTEST_SKIP() << "no sign rule";
    const StructureContext ctx = structure_context(f, 8);
    const Op z = sign_rule_operator(ctx);
    const auto pairs = pairing_oracle(ctx, z);
    ASSERT_EQ(pairs.size(), ctx.dim);
    Rng rng(static_cast<std::uint64_t>(f) + 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> alpha;
        if (trial % 2 == 0) {
            std::vector<double> c(coefficient_count(ctx));
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(i + 1) + rng.uniform(0.0, 0.5);
            alpha = expand_coefficients(ctx, c);
            if (trial % 4 == 0) alpha[rng.next_u64() % alpha.size()] += 0.25;
        } else {
            for (std::size_t i = 0; i < ctx.dim; ++i) alpha.push_back(std::round(rng.uniform(-2.0, 2.0)));
        }
        const ComplexMatrix x0 = ctx.adapted_basis * ComplexMatrix::diagonal(std::span<const double>(alpha)) *
                                 adjoint(ctx.adapted_basis);
        for (int eps : {-1, 1}) {
            bool oracle = true;
            for (std::size_t i = 0; i < ctx.dim; ++i)
                if (std::abs(alpha[pairs[i].to] - eps * alpha[i]) > 1e-12) oracle = false;
            EXPECT_EQ(verify_sign_rule(ctx, x0, eps), oracle) << "trial " << trial << " eps " << eps;
        }
        if (trial % 2 == 0 && trial % 4 != 0) EXPECT_TRUE(verify_sign_rule(ctx, x0, sign_rule_epsilon(ctx)));
    }
}

// Hermitian AII elements commuting with X0 commute with each other.
TEST(QuaternionicRigidity, CommutingHermitianElementsCommute) {
    for (std::size_t n : {4u, 8u}) {
        const StructureContext ctx = structure_context(FamilyTag::AII, n);
        const SpectralFrame frame = build_frame(regular_element(ctx, default_coefficients(ctx)));
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto hermitian_commutant = [&](std::uint64_t s) {
                const ComplexMatrix x = sample_algebra(ctx, s);
                return diag_expectation(frame, 0.5 * (x + adjoint(x)));
            };
            const ComplexMatrix h1 = hermitian_commutant(2 * seed);
            const ComplexMatrix h2 = hermitian_commutant(2 * seed + 1);
            EXPECT_TRUE(algebra_membership(ctx, h1, 1e-12).passed);
            EXPECT_LE(frobenius_norm(commutator(h1, h2)), 1e-9);
        }
    }
}

}  // namespace
}  // namespace iwasawa
