#include <cmath>

#include "doctest.h"
#include "ncup/errors.hpp"
#include "ncup/harness.hpp"
#include "ncup/serialize.hpp"

using namespace ncup;

namespace {

GroupPtr make(const std::string& spec) {
    return std::make_shared<const FiniteGroup>(builtin_group(spec));
}

}  // namespace

TEST_CASE("sampling is deterministic and class-correct") {
    TwoBoxPair pair = TwoBoxPair::group_model(make("symmetric:3"));
    for (int cls = 0; cls < 8; ++cls) {
        SampleSpec spec;
        spec.cls = static_cast<SampleSpec::Class>(cls);
        spec.minus_side = cls % 2 == 1;
        spec.sparse_k = 2;
        AlgebraElement a = sample_element(pair, spec, 123, 7, 5);
        AlgebraElement b = sample_element(pair, spec, 123, 7, 5);
        CHECK((a - b).frob() == 0.0);  // bit-for-bit
        AlgebraElement c = sample_element(pair, spec, 123, 7, 6);
        CHECK((a - c).frob() > 0.0);
    }

    SampleSpec pos{SampleSpec::Class::Positive, true, 1};
    for (uint64_t i = 0; i < 10; ++i) {
        AlgebraElement z = sample_element(pair, pos, 5, 1, i);
        auto [vals, vecs] = hermitian_eig(z);
        (void)vecs;
        CHECK(vals.back() >= -1e-12);
    }

    SampleSpec proj{SampleSpec::Class::Projection, true, 1};
    for (uint64_t i = 0; i < 10; ++i) {
        AlgebraElement p = sample_element(pair, proj, 5, 2, i);
        for (double s : singular_values(p))
            CHECK((s < 1e-10 || std::abs(s - 1.0) < 1e-10));
        CHECK((p * p - p).frob() < 1e-10);
    }

    SampleSpec pi{SampleSpec::Class::PartialIsometry, false, 1};
    for (uint64_t i = 0; i < 10; ++i) {
        AlgebraElement w = sample_element(pair, pi, 5, 3, i);
        for (double s : singular_values(w))
            CHECK((s < 1e-10 || std::abs(s - 1.0) < 1e-10));
    }

    SampleSpec uni{SampleSpec::Class::Unitary, true, 1};
    for (uint64_t i = 0; i < 5; ++i) {
        AlgebraElement u = sample_element(pair, uni, 5, 4, i);
        CHECK((adjoint(u) * u - AlgebraElement::identity(pair.minus)).frob() < 1e-10);
    }

    SampleSpec sp{SampleSpec::Class::Sparse, false, 2};
    for (uint64_t i = 0; i < 5; ++i) {
        AlgebraElement s = sample_element(pair, sp, 5, 5, i);
        int nonzero = 0;
        for (const auto& v : s.coords())
            if (std::abs(v) > 0) ++nonzero;
        CHECK(nonzero == 2);
    }
}

TEST_CASE("margin anchors: worked equality examples") {
    TwoBoxPair c2 = TwoBoxPair::group_model(make("cyclic:2"));

    // p = infinity on delta_0 - delta_1: both sides sqrt(2).
    AlgebraElement x = c2.delta_function(0) - c2.delta_function(1);
    double m = hausdorff_young_margins(c2, x, {kPInf})[0];
    CHECK(std::abs(m) < 1e-12);

    // Young at (1,1,1) on point masses of cyclic(3).
    TwoBoxPair c3 = TwoBoxPair::group_model(make("cyclic:3"));
    AlgebraElement d1 = c3.delta_function(1), d2 = c3.delta_function(2);
    double ym = young_margins(c3, d1, d2, {{1.0, 1.0, 1.0}})[0];
    CHECK(std::abs(ym) < 1e-12);

    CHECK_THROWS_WITH_AS(young_margins(c3, d1, d2, {{1.5, 3.0, 3.0}}),
                         doctest::Contains("InvalidExponents"), Error);

    // Donoho-Stark margins.
    CHECK(donoho_stark_margin(c3, c3.delta_function(0)) == doctest::Approx(0.0));
    AlgebraElement two = c3.delta_function(0) + c3.delta_function(1);
    CHECK(donoho_stark_margin(c3, two) == doctest::Approx(3.0));

    TwoBoxPair spin2 = TwoBoxPair::spin_model(2);
    CHECK(donoho_stark_margin(spin2, minimal_box(spin2)) == doctest::Approx(0.0));

    // Hirschman-Beckner equality witnesses.
    CHECK(std::abs(hirschman_beckner_margin(c3, c3.delta_function(1))) < 1e-12);
    AlgebraElement ones = AlgebraElement::from_diagonal(
        c3.plus, std::vector<cplx>(3, cplx{1.0}));
    CHECK(std::abs(hirschman_beckner_margin(c3, ones)) < 1e-12);
}

TEST_CASE("tao-type support sum probe") {
    TwoBoxPair c2 = TwoBoxPair::group_model(make("cyclic:2"));
    // Exhaustive over support patterns with random coefficients: min is 3.
    double best = 1e9;
    for (uint64_t i = 0; i < 200; ++i) {
        SampleSpec spec{SampleSpec::Class::Sparse, false, 1 + static_cast<int>(i % 2)};
        AlgebraElement x = sample_element(c2, spec, 11, 3, i);
        best = std::min(best, support_size(x) + support_size(c2.fourier(x)));
    }
    CHECK(best == doctest::Approx(3.0));

    TwoBoxPair c5 = TwoBoxPair::group_model(make("cyclic:5"));
    double best5 = 1e9;
    for (uint64_t i = 0; i < 2000; ++i) {
        SampleSpec spec{SampleSpec::Class::Sparse, false, 1 + static_cast<int>(i % 5)};
        AlgebraElement x = sample_element(c5, spec, 11, 4, i);
        best5 = std::min(best5, support_size(x) + support_size(c5.fourier(x)));
    }
    CHECK(best5 == doctest::Approx(6.0));  // p + 1
}

TEST_CASE("hadamard constant probe: identity certifies 1/n0 and refutes 1/n0^2") {
    auto c3 = make("cyclic:3");
    TwoBoxPair fp = TwoBoxPair::fixed_point_model(PermutationAction::regular(c3));
    AlgebraElement one = AlgebraElement::identity(fp.plus);
    // (p, q, r) = (2, 2, inf); I o I = I.
    double lhs = p_norm(one, kPInf);
    double n0 = 3;
    double rhs_n0 = (1.0 / n0) * p_norm(one, 2.0) * p_norm(one, 2.0);
    double rhs_n0sq = (1.0 / (n0 * n0)) * p_norm(one, 2.0) * p_norm(one, 2.0);
    CHECK(lhs == doctest::Approx(rhs_n0).epsilon(1e-12));
    CHECK(lhs / rhs_n0sq == doctest::Approx(3.0));
}

TEST_CASE("suite determinism and verdict semantics") {
    SuiteConfig cfg;
    cfg.models = {"group:cyclic:4"};
    cfg.samples = 30;
    cfg.tao_budget = 100;
    cfg.seed = 2024;

    auto r1 = run_suite(cfg);
    cfg.parallelism = 8;
    auto r2 = run_suite(cfg);
    REQUIRE(r1.size() == r2.size());
    for (size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].name == r2[i].name);
        CHECK(r1[i].min_margin == r2[i].min_margin);  // bit identical
        CHECK(r1[i].histogram == r2[i].histogram);
    }
    CHECK_FALSE(suite_failed(r1));

    // Tolerance zero makes Plancherel fail by float epsilon; probes never fail.
    SuiteConfig strict = cfg;
    strict.suites = {"hy"};
    strict.tol.inequality = 0.0;
    auto r3 = run_suite(strict);
    CHECK(suite_failed(r3));
    bool found_ce = false;
    TwoBoxPair pair = make_model(strict.models[0]);
    for (const auto& r : r3) {
        CHECK(r.counterexamples.size() <= 10);
        if (!r.pass && !r.counterexamples.empty()) {
            found_ce = true;
            // Witnesses re-ingest through the element literal format.
            const auto& ce = r.counterexamples.front();
            AlgebraElement back =
                element_from_json(pair, nlohmann::json::parse(ce.element_json));
            CHECK(back.frob() > 0);
            CHECK(ce.master_seed == strict.seed);
        }
    }
    CHECK(found_ce);

    SuiteConfig probes_only;
    probes_only.models = {"group:cyclic:5", "fixedpoint:cyclic:3-regular"};
    probes_only.samples = 20;
    probes_only.tao_budget = 50;
    probes_only.suites = {"probes"};
    auto r4 = run_suite(probes_only);
    CHECK_FALSE(suite_failed(r4));
    for (const auto& r : r4) CHECK(r.probe);
}

TEST_CASE("scalar invariance of the minimizer verdicts") {
    TwoBoxPair pair = TwoBoxPair::group_model(make("cyclic:6"));
    auto subs = enumerate_subgroups(pair.group);
    for (const auto& h : subs) {
        auto chars = one_dim_characters(h);
        BiShift bs = bishift_group(pair, h, chars.back(), 1 % pair.group->order(), cplx{1.0});
        MinimizerReport base = minimizer_report(pair, bs.element);
        MinimizerReport scaled = minimizer_report(pair, cplx{-2.5, 1.25} * bs.element);
        CHECK(base.ds_equal == scaled.ds_equal);
        CHECK(base.hb_equal == scaled.hb_equal);
        CHECK(base.extremal_bipartial == scaled.extremal_bipartial);
        CHECK(base.partialiso_finv_extremal == scaled.partialiso_finv_extremal);
        CHECK(base.bishift == scaled.bishift);
    }
}
