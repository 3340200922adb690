#include <cmath>
#include <set>

#include "doctest.h"
#include "ncup/errors.hpp"
#include "ncup/extremizers.hpp"
#include "ncup/rng.hpp"

using namespace ncup;

namespace {

GroupPtr make(const std::string& spec) {
    return std::make_shared<const FiniteGroup>(builtin_group(spec));
}

Subgroup find_subgroup(GroupPtr g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    for (const auto& s : enumerate_subgroups(g))
        if (s.members == members) return s;
    FAIL("subgroup not found");
    return Subgroup{};
}

AlgebraElement random_in(const AlgebraPtr& alg, uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> c(alg->vec_dim());
    for (auto& v : c) v = rng.cgauss();
    return AlgebraElement::from_coords(alg, c);
}

}  // namespace

TEST_CASE("biprojections from subgroups") {
    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair pair = TwoBoxPair::group_model(c4);

    Biprojection triv = biprojection_from_subgroup(pair, find_subgroup(c4, {0}));
    CHECK((triv.element - pair.delta_function(0)).frob() == 0.0);
    CHECK((triv.tilde - AlgebraElement::identity(pair.minus)).frob() < 1e-14);

    Biprojection half = biprojection_from_subgroup(pair, find_subgroup(c4, {0, 2}));
    AlgebraElement fb = pair.fourier(half.element);
    // F(B) = (lambda(0) + lambda(2)) / 2, already a projection; tilde matches.
    CHECK((fb - half.tilde).frob() < 1e-13);
    CHECK((range_projection(fb) - half.tilde).frob() < 1e-10);

    Biprojection full = biprojection_from_subgroup(pair, find_subgroup(c4, {0, 1, 2, 3}));
    CHECK(trace2(full.tilde).real() == doctest::Approx(1.0));
    // S(B) * S(tilde) = delta^2.
    CHECK(support_size(half.element) * support_size(pair.fourier(half.element)) ==
          doctest::Approx(4.0));

    for (const auto& h : enumerate_subgroups(c4)) {
        Biprojection b = biprojection_from_subgroup(pair, h);
        CHECK(is_biprojection(pair, b.element).ok);
        CHECK((range_projection(pair.fourier(b.element)) - b.tilde).frob() < 1e-10);
    }
}

TEST_CASE("biprojection detector") {
    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair pair = TwoBoxPair::group_model(c4);

    // Non-subgroup support: F(delta_0 + delta_1) has non-flat singular values.
    AlgebraElement x = pair.delta_function(0) + pair.delta_function(1);
    CHECK_FALSE(is_biprojection(pair, x).ok);

    // delta_1 passes both detector clauses (projection, flat Fourier side);
    // it is a shift of the trivial biprojection rather than a subgroup box.
    CHECK(is_biprojection(pair, pair.delta_function(1)).ok);

    // Non-projection.
    CHECK_FALSE(is_biprojection(pair, cplx{2.0} * pair.delta_function(0)).ok);
}

TEST_CASE("shifts") {
    GroupPtr c6 = make("cyclic:6");
    TwoBoxPair pair = TwoBoxPair::group_model(c6);
    Subgroup h = find_subgroup(c6, {0, 3});
    Biprojection b = biprojection_from_subgroup(pair, h);

    // B itself is a left and right shift.
    CHECK(is_shift(pair, b.element, b, false).ok);
    CHECK(is_shift(pair, b.element, b, true).ok);

    AlgebraElement coset = pair.delta_function(1) + pair.delta_function(4);
    CHECK(is_shift(pair, coset, b, false).ok);

    AlgebraElement bad = pair.delta_function(1) + pair.delta_function(2);
    ShiftCheck chk = is_shift(pair, bad, b, false);
    CHECK_FALSE(chk.ok);
    CHECK(chk.coproduct_residual > 0.1);

    CHECK_THROWS_WITH_AS(is_shift(pair, cplx{0.7} * coset, b, false),
                         doctest::Contains("NotAProjection"), Error);

    ShiftEnumeration se = enumerate_shifts(pair, b);
    CHECK(se.plus_right.size() == 3);
    CHECK(se.minus_right.size() == 2);

    // Abelian: left and right shift lists coincide.
    for (const auto& cert : se.plus_right) CHECK(is_shift(pair, cert.shift, b, true).ok);

    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair p4 = TwoBoxPair::group_model(c4);
    Biprojection b4 = biprojection_from_subgroup(p4, find_subgroup(c4, {0, 2}));
    ShiftEnumeration se4 = enumerate_shifts(p4, b4);
    REQUIRE(se4.plus_right.size() == 2);
    CHECK((se4.plus_right[0].shift - (p4.delta_function(0) + p4.delta_function(2))).frob() <
          1e-14);
    CHECK((se4.plus_right[1].shift - (p4.delta_function(1) + p4.delta_function(3))).frob() <
          1e-14);

    GroupPtr s3 = make("symmetric:3");
    TwoBoxPair ps = TwoBoxPair::group_model(s3);
    Subgroup a3 = find_subgroup(s3, {0, 3, 4});
    CHECK(enumerate_shifts(ps, biprojection_from_subgroup(ps, a3)).plus_right.size() == 2);

    Biprojection btriv = biprojection_from_subgroup(p4, find_subgroup(c4, {0}));
    CHECK(enumerate_shifts(p4, btriv).plus_right.size() == 4);
}

TEST_CASE("group bi-shifts: the cyclic(4) worked example") {
    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair pair = TwoBoxPair::group_model(c4);
    Subgroup h = find_subgroup(c4, {0, 2});
    auto chars = one_dim_characters(h);
    REQUIRE(chars.size() == 2);
    const Character& sign = chars[1];  // chi(2) = -1
    CHECK(std::abs(sign.value(2) + cplx{1.0}) < 1e-14);

    BiShift bs = bishift_group(pair, h, sign, 1, cplx{1.0});
    CHECK((bs.element - (pair.lambda(1) - pair.lambda(3))).frob() < 1e-13);
    CHECK(support_size(bs.element) == doctest::Approx(2.0));
    CHECK(support_size(pair.fourier(bs.element)) == doctest::Approx(2.0));

    // F(x) = 2 delta_1 - 2 delta_3.
    AlgebraElement fx = pair.fourier(bs.element);
    CHECK(std::abs(fx.diag()[1] - cplx{2.0}) + std::abs(fx.diag()[3] + cplx{2.0}) < 1e-12);

    // Trivial subgroup: lambda(g) has S = |G|, S(F) = 1.
    Subgroup triv = find_subgroup(c4, {0});
    BiShift unit = bishift_group(pair, triv, one_dim_characters(triv)[0], 2, cplx{1.0});
    CHECK(support_size(unit.element) == doctest::Approx(4.0));
    CHECK(support_size(pair.fourier(unit.element)) == doctest::Approx(1.0));

    // Full subgroup with trivial character and c = 1/|G|: averaging projection.
    Subgroup full = find_subgroup(c4, {0, 1, 2, 3});
    BiShift avg = bishift_group(pair, full, one_dim_characters(full)[0], 0, cplx{0.25});
    CHECK(support_size(avg.element) == doctest::Approx(1.0));
    CHECK(support_size(pair.fourier(avg.element)) == doctest::Approx(4.0));
    CHECK(((avg.element * avg.element) - avg.element).frob() < 1e-13);
}

TEST_CASE("generic bi-shift constructor") {
    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair pair = TwoBoxPair::group_model(c4);
    Subgroup h = find_subgroup(c4, {0, 2});
    Biprojection b = biprojection_from_subgroup(pair, h);
    ShiftEnumeration se = enumerate_shifts(pair, b);

    // y = identity with the base shifts reproduces a multiple of B.
    auto x0 = bishift_generic(pair, se.plus_right[0], se.minus_right[0],
                              AlgebraElement::identity(pair.plus));
    REQUIRE(x0.has_value());
    double collin = (*x0 - cplx{p_norm(*x0, 2.0) / p_norm(b.element, 2.0)} * b.element).frob();
    CHECK(collin < 1e-10);

    // y = 0 degenerates.
    CHECK_FALSE(bishift_generic(pair, se.plus_right[0], se.minus_right[0],
                                AlgebraElement::zero(pair.plus))
                    .has_value());

    // Nontrivial character and coset: proportional to the plus-side twin.
    auto x1 = bishift_generic(pair, se.plus_right[1], se.minus_right[1],
                              pair.delta_function(1));
    REQUIRE(x1.has_value());
    BiShift twin = bishift_group_plus(pair, h, one_dim_characters(h)[1], 1, cplx{1.0});
    cplx num{};
    double den = 0;
    for (int i = 0; i < 4; ++i) {
        num += std::conj(twin.element.diag()[i]) * x1->diag()[i];
        den += std::norm(twin.element.diag()[i]);
    }
    AlgebraElement resid = *x1 - cplx{num / den} * twin.element;
    CHECK(resid.frob() < 1e-10);

    CHECK_THROWS_WITH_AS(
        (void)bishift_generic(pair, se.minus_right[0], se.minus_right[0],
                              AlgebraElement::identity(pair.plus)),
        doctest::Contains("ShiftSideMismatch"), Error);
}

TEST_CASE("extremality") {
    GroupPtr c2 = make("cyclic:2");
    TwoBoxPair pair = TwoBoxPair::group_model(c2);

    CHECK(is_extremal(pair, pair.delta_function(1)).ok);

    // Positive elements are extremal in irreducible models.
    for (uint64_t s = 0; s < 20; ++s) {
        AlgebraElement z = random_in(pair.minus, 40 + s);
        CHECK(is_extremal(pair, adjoint(z) * z).ok);
    }

    AlgebraElement x = pair.delta_function(0) + cplx{2.0} * pair.delta_function(1);
    CHECK(is_extremal(pair, x).ok);
    CHECK(p_norm(pair.fourier(x), kPInf) == doctest::Approx(3.0 / std::sqrt(2.0)));

    // Real sign patterns stay extremal on cyclic(2); a complex phase with
    // unequal magnitudes breaks the triangle-equality and with it extremality.
    AlgebraElement y = pair.delta_function(0) - cplx{0.0, 1.1} * pair.delta_function(1);
    CHECK_FALSE(is_extremal(pair, y).ok);
    CHECK(is_extremal(pair, y).gap > 1e-3);

    CHECK_THROWS_WITH_AS(is_extremal(pair, AlgebraElement::zero(pair.plus)),
                         doctest::Contains("ZeroElement"), Error);
}

TEST_CASE("bi-partial isometries") {
    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair pair = TwoBoxPair::group_model(c4);

    CHECK(is_bipartial_isometry(pair, pair.lambda(2)).ok);

    Subgroup h = find_subgroup(c4, {0, 2});
    BiShift bs = bishift_group(pair, h, one_dim_characters(h)[1], 1, cplx{0.5, 0.25});
    CHECK(is_bipartial_isometry(pair, bs.element).ok);

    AlgebraElement bad = pair.delta_function(0) + cplx{2.0} * pair.delta_function(1);
    CHECK_FALSE(is_bipartial_isometry(pair, bad).ok);
}

TEST_CASE("minimizer report: equivalence on witnesses, rejection on dense") {
    GroupPtr c6 = make("cyclic:6");
    TwoBoxPair pair = TwoBoxPair::group_model(c6);
    Subgroup h = find_subgroup(c6, {0, 3});
    auto chars = one_dim_characters(h);

    BiShift bs = bishift_group(pair, h, chars[1], 1, cplx{1.0});
    MinimizerReport r = minimizer_report(pair, bs.element);
    CHECK(r.ds_equal);
    CHECK(r.hb_equal);
    CHECK(r.extremal_bipartial);
    CHECK(r.partialiso_finv_extremal);
    CHECK(r.bishift);
    CHECK(r.consistent);
    CHECK(r.ds_product == doctest::Approx(6.0));

    MinimizerReport rd = minimizer_report(pair, pair.delta_function(2));
    CHECK(rd.consistent);
    CHECK(rd.ds_equal);

    for (uint64_t s = 0; s < 10; ++s) {
        AlgebraElement x = random_in(pair.plus, 70 + s);
        MinimizerReport g = minimizer_report(pair, x);
        CHECK_FALSE(g.ds_equal);
        CHECK_FALSE(g.hb_equal);
        CHECK_FALSE(g.extremal_bipartial);
        CHECK_FALSE(g.partialiso_finv_extremal);
        CHECK_FALSE(g.bishift);
        CHECK(g.consistent);
        CHECK(g.ds_gap >= 0.5);
    }
}

TEST_CASE("square relation") {
    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair pair = TwoBoxPair::group_model(c4);

    // w = lambda(g): scalar identity case.
    SquareRelationResiduals r1 = square_relation_check(pair, pair.lambda(1));
    CHECK(r1.identity_residual < 1e-10);
    CHECK(r1.flatness_residual < 1e-10);
    CHECK(r1.one_norm_residual < 1e-10);

    // w = biprojection.
    Subgroup h = find_subgroup(c4, {0, 2});
    Biprojection b = biprojection_from_subgroup(pair, h);
    SquareRelationResiduals r2 = square_relation_check(pair, b.element);
    CHECK(r2.identity_residual < 1e-10);

    // w = bishift normalized to a partial isometry.
    BiShift bs = bishift_group(pair, h, one_dim_characters(h)[1], 1, cplx{0.5});
    SquareRelationResiduals r3 = square_relation_check(pair, bs.element);
    CHECK(r3.identity_residual < 1e-10);
    CHECK(r3.flatness_residual < 1e-10);
    CHECK(r3.one_norm_residual < 1e-10);

    CHECK_THROWS_WITH_AS(
        square_relation_check(pair, pair.delta_function(0) + cplx{2.0} * pair.delta_function(1)),
        doctest::Contains("PreconditionFailed"), Error);
}

TEST_CASE("uniqueness space") {
    GroupPtr c4 = make("cyclic:4");
    TwoBoxPair pair = TwoBoxPair::group_model(c4);
    Subgroup h = find_subgroup(c4, {0, 2});
    Biprojection b = biprojection_from_subgroup(pair, h);
    ShiftEnumeration se = enumerate_shifts(pair, b);
    auto chars = one_dim_characters(h);

    for (size_t gi = 0; gi < se.plus_right.size(); ++gi)
        for (size_t ci = 0; ci < se.minus_right.size(); ++ci) {
            UniquenessResult u = uniqueness_space(pair, se.plus_right[gi], se.minus_right[ci]);
            REQUIRE(u.dimension == 1);
            BiShift twin = bishift_group_plus(pair, h, chars[ci],
                                              se.plus_right[gi].coset_rep, cplx{1.0});
            // Collinearity.
            cplx num{};
            double den = 0;
            for (int i = 0; i < 4; ++i) {
                num += std::conj(u.basis[0].diag()[i]) * twin.element.diag()[i];
                den += std::norm(u.basis[0].diag()[i]);
            }
            AlgebraElement resid = twin.element - cplx{num / den} * u.basis[0];
            CHECK(resid.frob() <= 1e-9 * twin.element.frob());
        }

    // Mismatched bases.
    GroupPtr c6 = make("cyclic:6");
    TwoBoxPair p6 = TwoBoxPair::group_model(c6);
    Biprojection b1 = biprojection_from_subgroup(p6, find_subgroup(c6, {0, 3}));
    Biprojection b2 = biprojection_from_subgroup(p6, find_subgroup(c6, {0, 2, 4}));
    ShiftEnumeration s1 = enumerate_shifts(p6, b1);
    ShiftEnumeration s2 = enumerate_shifts(p6, b2);
    CHECK_THROWS_WITH_AS((void)uniqueness_space(p6, s1.plus_right[0], s2.minus_right[0]),
                         doctest::Contains("MismatchedBiprojection"), Error);
}

TEST_CASE("subset indicators in the group algebra: cosets and subgroups") {
    // For x = sum_{g in S} lambda(g): extremality picks out exactly the right
    // cosets; positivity picks out exactly the subgroups. Unimodular twists
    // are minimizers exactly when the bi-shift reconstruction succeeds.
    for (const char* spec : {"cyclic:4", "symmetric:3"}) {
        GroupPtr g = make(spec);
        TwoBoxPair pair = TwoBoxPair::group_model(g);
        const int n = g->order();

        std::set<std::vector<int>> cosets;
        std::set<std::vector<int>> subgroups;
        for (const auto& h : enumerate_subgroups(g)) {
            subgroups.insert(h.members);
            for (const auto& c : right_cosets(h)) cosets.insert(c);
        }

        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<int> s;
            std::vector<cplx> a(n, cplx{});
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) {
                    s.push_back(i);
                    a[i] = 1.0;
                }
            AlgebraElement x = pair.minus_from_coeffs(a);
            CHECK(is_extremal(pair, x).ok == (cosets.count(s) == 1));

            bool positive = true;
            auto [vals, vecs] = hermitian_eig(cplx{0.5} * (x + adjoint(x)));
            (void)vecs;
            if ((x - adjoint(x)).frob() > 1e-10 * x.frob() || vals.back() < -1e-10)
                positive = false;
            CHECK(positive == (subgroups.count(s) == 1));
        }

        // Random unimodular coefficients on a coset and on a non-coset.
        Rng rng(2718);
        for (const auto& h : enumerate_subgroups(g)) {
            auto cs = right_cosets(h);
            std::vector<cplx> a(n, cplx{});
            for (int m : cs.back()) {
                double theta = 6.283185307179586 * rng.uniform();
                a[m] = cplx(std::cos(theta), std::sin(theta));
            }
            AlgebraElement x = pair.minus_from_coeffs(a);
            MinimizerReport r = minimizer_report(pair, x);
            CHECK(r.extremal_bipartial == r.bishift);  // (1) of the characterization
        }
    }
}

TEST_CASE("positive biprojection characterization") {
    GroupPtr c6 = make("cyclic:6");
    TwoBoxPair pair = TwoBoxPair::group_model(c6);
    Subgroup h = find_subgroup(c6, {0, 2, 4});
    Biprojection b = biprojection_from_subgroup(pair, h);

    Biprojection out = positive_biprojection_check(pair, b.element);
    CHECK((out.element - b.element).frob() < 1e-12);
    CHECK(out.subgroup.members == h.members);

    Biprojection out2 = positive_biprojection_check(pair, cplx{2.0} * b.element);
    CHECK((out2.element - b.element).frob() < 1e-12);

    AlgebraElement spoiled =
        b.element + cplx{0.1} * (pair.delta_function(1) + pair.delta_function(3) +
                                 pair.delta_function(5));
    CHECK_THROWS_WITH_AS(positive_biprojection_check(pair, spoiled),
                         doctest::Contains("PreconditionFailed"), Error);
}
