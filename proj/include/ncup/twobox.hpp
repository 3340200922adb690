#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncup/algebra.hpp"
#include "ncup/group.hpp"

namespace ncup {

// Group action on a finite point set; perms[g][i] is the image of point i.
struct PermutationAction {
    GroupPtr group;
    int points = 0;
    std::vector<std::vector<int>> perms;

    static PermutationAction regular(GroupPtr g);
    static PermutationAction trivial(GroupPtr g, int points);

    // Checks perm[identity] = id and perm[g] o perm[h] = perm[g h]; throws
    // Error("InvalidAction") otherwise.
    void validate() const;

    std::vector<std::vector<int>> orbits() const;       // on points
    std::vector<std::vector<int>> pair_orbits() const;  // on points x points (flattened i*n+j)
    int min_orbit_size() const;
};

// A paired 2-box space: plus/minus *-algebras, loop parameter delta, the
// uncertainty constant delta0 (= delta for group models), and the Fourier
// transform stored as an explicit linear map on coordinates in all four
// directions. Immutable after construction.
class TwoBoxPair {
public:
    enum class Model { Group, Spin, FixedPoint };

    Model model;
    AlgebraPtr plus, minus;
    double delta = 0, delta0 = 0;
    double delta0_sq = 0;  // exact (|G|, 1/n, n0^2/n): integer-valued where the model is
    GroupPtr group;            // Group model
    PermutationAction action;  // FixedPoint model
    int spin_points = 0;       // Spin / FixedPoint

    // Plus side: functions on G under counting measure; minus side: the group
    // algebra in its left regular representation. delta = sqrt(|G|).
    static TwoBoxPair group_model(GroupPtr g, int bound = 24);

    // Plus side: n x n matrices; minus side: functions on S x S with
    // tr(f) = (1/n) sum f_ij. delta = sqrt(n), delta0 = 1/sqrt(n).
    static TwoBoxPair spin_model(int n, int bound = 32);

    // Commutant of the action inside the spin model; delta0 = n0/sqrt(n)
    // with n0 the smallest orbit.
    static TwoBoxPair fixed_point_model(PermutationAction act);

    bool on_plus(const AlgebraElement& x) const { return x.algebra_ptr() == plus; }
    bool on_minus(const AlgebraElement& x) const { return x.algebra_ptr() == minus; }
    void require_side(const AlgebraElement& x) const;

    AlgebraElement fourier(const AlgebraElement& x) const;
    AlgebraElement fourier_inv(const AlgebraElement& x) const;
    AlgebraElement contragredient(const AlgebraElement& x) const;  // F^2

    // Coproduct a*b = F(F^-1(a) F^-1(b)) for same-side operands.
    AlgebraElement coproduct(const AlgebraElement& x, const AlgebraElement& y) const;

    // Model closed forms (group convolution / scaled Hadamard / the diagonal
    // rule on the group algebra side), used to cross-check the pullback.
    AlgebraElement coproduct_closed_form(const AlgebraElement& x, const AlgebraElement& y) const;

    // Honest Jones projections: trace-one idempotents.
    AlgebraElement jones_projection(bool plus_side) const;
    // The delta-scaled variant e with tr(e) = delta and F(e) = identity.
    AlgebraElement jones_scaled(bool plus_side) const;

    // Group-model basis helpers.
    AlgebraElement delta_function(int g) const;  // plus side point mass
    AlgebraElement lambda(int g) const;          // minus side lambda(g)
    AlgebraElement minus_from_coeffs(const std::vector<cplx>& a) const;  // sum a_g lambda(g)

    const Mat& fourier_matrix(bool from_plus) const {
        return from_plus ? f_plus_ : f_minus_;
    }

    std::string label() const;

private:
    Mat f_plus_, f_minus_;          // F on coordinates, from each side
    Mat f_inv_plus_, f_inv_minus_;  // F^-1 on coordinates, from each side
};

}  // namespace ncup
