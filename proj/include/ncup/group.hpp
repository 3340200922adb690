#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncup/mat.hpp"

namespace ncup {

// Finite group presented by its Cayley table. Validated on construction:
// associativity, two-sided identity, inverses, Latin-square rows/columns.
class FiniteGroup {
public:
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                  std::vector<std::string> labels = {});

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int identity() const { return identity_; }
    int element_order(int a) const;
    const std::string& label(int a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    FiniteGroup() = default;
    int n_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Builtin families. Element orderings are part of the contract:
// cyclic: residues 0..n-1; dihedral: rotations r^0..r^{n-1} then reflections
// r^0 s..r^{n-1} s; symmetric: permutations of 0..n-1 in lexicographic order,
// composed as (s*t)(i) = s(t(i)); product: index g*|H| + h.
FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric_group(int n);  // n <= 5
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

// Parses "cyclic:6", "dihedral:4", "symmetric:3",
// "product:cyclic:2,cyclic:2" (product of two builtin specs).
FiniteGroup builtin_group(const std::string& spec);

struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;  // sorted, contains identity

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    bool same_as(const Subgroup& o) const { return members == o.members; }
};

Subgroup subgroup_closure(GroupPtr g, std::vector<int> generators);

// Every subgroup exactly once, sorted by size then lexicographically by
// member list. Throws GroupTooLarge above the bound.
std::vector<Subgroup> enumerate_subgroups(GroupPtr g, int bound = 24);

Subgroup commutator_subgroup(const Subgroup& h);

// Partition of the parent into right cosets Hg; the coset of the identity
// comes first, the rest ordered by minimal element.
std::vector<std::vector<int>> right_cosets(const Subgroup& h);
std::vector<std::vector<int>> left_cosets(const Subgroup& h);

// One-dimensional character of a subgroup; values are exact roots of unity
// kept as angle fractions (value = exp(2*pi*i*num/den)) plus the complex
// materialization.
struct Character {
    Subgroup subgroup;
    std::vector<long> num;  // per member of subgroup.members, reduced mod den
    long den = 1;

    cplx value(int element) const;  // element must belong to the subgroup
    bool is_trivial() const;
    cplx conj_value(int element) const { return std::conj(value(element)); }
};

// Exactly |H / [H,H]| characters, trivial character first, then ordered by
// exponent tuples; the list is closed under pointwise conjugation.
std::vector<Character> one_dim_characters(const Subgroup& h);

// Independent oracle: depth-first search over multiplicative unit-valued
// maps with constraint propagation. Intended for |H| <= 16.
std::vector<Character> one_dim_characters_bruteforce(const Subgroup& h);

}  // namespace ncup
