#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ncup/errors.hpp"
#include "ncup/group.hpp"

using namespace ncup;

namespace {

GroupPtr make(const std::string& spec) {
    return std::make_shared<const FiniteGroup>(builtin_group(spec));
}

// Oracle: subgroups as closures of every subset (|G| <= 8).
std::set<std::vector<int>> all_subset_closures(GroupPtr g) {
    std::set<std::vector<int>> out;
    int n = g->order();
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> gens;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) gens.push_back(i);
        out.insert(subgroup_closure(g, gens).members);
    }
    return out;
}

bool isomorphic_bruteforce(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return false;
    int n = a.order();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[a.identity()] != b.identity()) continue;
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y)
                ok = perm[a.mul(x, y)] == b.mul(perm[x], perm[y]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

TEST_CASE("build_group: trivial, Z2, and a broken table") {
    FiniteGroup t = FiniteGroup::from_table({{0}});
    CHECK(t.order() == 1);
    CHECK(t.identity() == 0);

    FiniteGroup z2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
    CHECK(z2.order() == 2);
    CHECK(z2.inv(1) == 1);

    CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}),
                         doctest::Contains("NotLatinSquare"), Error);

    // A proper loop: Latin square with identity and inverses, not associative.
    CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                                  {1, 0, 4, 2, 3},
                                                  {2, 3, 0, 4, 1},
                                                  {3, 4, 1, 0, 2},
                                                  {4, 2, 3, 1, 0}}),
                         doctest::Contains("NotAssociative"), Error);

    // Subtraction table mod 3: Latin but admits no two-sided identity.
    CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}),
                         doctest::Contains("NoIdentity"), Error);
}

TEST_CASE("builtin families") {
    FiniteGroup c4 = cyclic_group(4);
    CHECK(c4.order() == 4);
    CHECK(c4.inv(1) == 3);

    CHECK(isomorphic_bruteforce(dihedral_group(3), symmetric_group(3)));

    FiniteGroup s3 = symmetric_group(3);
    int order2 = 0;
    for (int x = 0; x < 6; ++x)
        if (s3.element_order(x) == 2) ++order2;
    CHECK(order2 == 3);

    FiniteGroup v4 = builtin_group("product:cyclic:2,cyclic:2");
    CHECK(v4.order() == 4);
    for (int x = 0; x < 4; ++x) CHECK(v4.mul(x, x) == v4.identity());

    CHECK_THROWS_WITH_AS(symmetric_group(6), doctest::Contains("UnsupportedSize"), Error);
}

TEST_CASE("subgroup enumeration matches the all-subsets oracle") {
    for (const char* spec : {"cyclic:6", "symmetric:3", "dihedral:4"}) {
        GroupPtr g = make(spec);
        auto subs = enumerate_subgroups(g);
        std::set<std::vector<int>> got;
        for (const auto& s : subs) got.insert(s.members);
        CHECK(got == all_subset_closures(g));
        // Lagrange + conjugation closure.
        for (const auto& s : subs) {
            CHECK(g->order() % s.order() == 0);
            for (int x = 0; x < g->order(); ++x) {
                std::vector<int> conj;
                for (int m : s.members) conj.push_back(g->mul(g->mul(x, m), g->inv(x)));
                std::sort(conj.begin(), conj.end());
                CHECK(got.count(conj) == 1);
            }
        }
    }

    CHECK(enumerate_subgroups(make("cyclic:6")).size() == 4);
    CHECK(enumerate_subgroups(make("symmetric:3")).size() == 6);
    CHECK(enumerate_subgroups(make("cyclic:1")).size() == 1);
    CHECK_THROWS_WITH_AS(enumerate_subgroups(make("cyclic:6"), 4),
                         doctest::Contains("GroupTooLarge"), Error);
}

TEST_CASE("commutator subgroups") {
    GroupPtr c6 = make("cyclic:6");
    Subgroup full{c6, {0, 1, 2, 3, 4, 5}};
    CHECK(commutator_subgroup(full).order() == 1);

    GroupPtr s3 = make("symmetric:3");
    auto subs = enumerate_subgroups(s3);
    Subgroup s3full = subs.back();
    Subgroup comm = commutator_subgroup(s3full);
    CHECK(comm.order() == 3);

    GroupPtr d4 = make("dihedral:4");
    Subgroup d4full = enumerate_subgroups(d4).back();
    Subgroup d4comm = commutator_subgroup(d4full);
    CHECK(d4comm.order() == 2);
    CHECK(d4comm.contains(2));  // r^2
}

TEST_CASE("one-dimensional characters") {
    GroupPtr c4 = make("cyclic:4");
    Subgroup trivial{c4, {0}};
    CHECK(one_dim_characters(trivial).size() == 1);

    Subgroup full{c4, {0, 1, 2, 3}};
    auto chars = one_dim_characters(full);
    REQUIRE(chars.size() == 4);
    CHECK(chars[0].is_trivial());
    for (const auto& chi : chars)
        for (int m : full.members) {
            cplx v = chi.value(m);
            // Powers of i.
            CHECK(std::min({std::abs(v - cplx{1, 0}), std::abs(v - cplx{-1, 0}),
                            std::abs(v - cplx{0, 1}), std::abs(v - cplx{0, -1})}) < 1e-14);
        }

    GroupPtr s3 = make("symmetric:3");
    Subgroup s3full = enumerate_subgroups(s3).back();
    auto s3chars = one_dim_characters(s3full);
    REQUIRE(s3chars.size() == 2);
    CHECK(s3chars[0].is_trivial());
    for (int m : s3full.members) {
        double v = s3chars[1].value(m).real();
        CHECK((std::abs(v - 1) < 1e-14 || std::abs(v + 1) < 1e-14));
    }
}

TEST_CASE("character properties: orthogonality, conjugation closure, multiplicativity") {
    for (const char* spec : {"cyclic:6", "symmetric:3", "dihedral:4", "cyclic:8"}) {
        GroupPtr g = make(spec);
        for (const auto& h : enumerate_subgroups(g)) {
            auto chars = one_dim_characters(h);
            Subgroup comm = commutator_subgroup(h);
            CHECK(static_cast<int>(chars.size()) == h.order() / comm.order());

            for (size_t i = 0; i < chars.size(); ++i) {
                // Multiplicative, unit modulus, trivial on commutators.
                for (int a : h.members)
                    for (int b : h.members) {
                        cplx lhs = chars[i].value(g->mul(a, b));
                        cplx rhs = chars[i].value(a) * chars[i].value(b);
                        CHECK(std::abs(lhs - rhs) < 1e-12);
                    }
                for (int k : comm.members) CHECK(std::abs(chars[i].value(k) - cplx{1.0}) < 1e-12);
                for (size_t j = 0; j < chars.size(); ++j) {
                    cplx acc{};
                    for (int m : h.members)
                        acc += chars[i].value(m) * std::conj(chars[j].value(m));
                    if (i == j)
                        CHECK(std::abs(acc - cplx{double(h.order())}) < 1e-12);
                    else
                        CHECK(std::abs(acc) < 1e-12);
                }
                // Conjugate appears in the list.
                bool found = false;
                for (const auto& other : chars) {
                    bool same = true;
                    for (int m : h.members)
                        if (std::abs(std::conj(chars[i].value(m)) - other.value(m)) > 1e-12)
                            same = false;
                    if (same) found = true;
                }
                CHECK(found);
            }

            // Cross-check against the DFS oracle.
            if (h.order() <= 16) {
                auto brute = one_dim_characters_bruteforce(h);
                REQUIRE(brute.size() == chars.size());
                for (const auto& chi : chars) {
                    bool found = false;
                    for (const auto& b : brute) {
                        bool same = true;
                        for (int m : h.members)
                            if (std::abs(chi.value(m) - b.value(m)) > 1e-12) same = false;
                        if (same) found = true;
                    }
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("cosets") {
    GroupPtr c6 = make("cyclic:6");
    Subgroup h{c6, {0, 3}};
    auto cosets = right_cosets(h);
    REQUIRE(cosets.size() == 3);
    CHECK(cosets[0] == std::vector<int>{0, 3});
    CHECK(cosets[1] == std::vector<int>{1, 4});
    CHECK(cosets[2] == std::vector<int>{2, 5});

    Subgroup full{c6, {0, 1, 2, 3, 4, 5}};
    CHECK(right_cosets(full).size() == 1);

    GroupPtr c3 = make("cyclic:3");
    Subgroup triv{c3, {0}};
    CHECK(right_cosets(triv).size() == 3);

    // Left and right cosets coincide for abelian groups.
    CHECK(left_cosets(h) == right_cosets(h));
}
