#pragma once

#include <optional>
#include <vector>

#include "ncup/twobox.hpp"

namespace ncup {

// Projection B whose Fourier transform is flat; in the group model these are
// exactly the subgroup indicator functions. `tilde` is the range projection
// of F(B) on the opposite side.
struct Biprojection {
    AlgebraElement element;  // plus side
    Subgroup subgroup;       // group-model witness (empty members otherwise)
    AlgebraElement tilde;    // minus side
};

Biprojection biprojection_from_subgroup(const TwoBoxPair& pair, const Subgroup& h);

struct BiprojectionVerdict {
    bool ok = false;
    double projection_residual = 0;  // ||x^2 - x|| and ||x - x*|| folded
    double flat_residual = 0;        // deviation of F(x) singular values from {0, s}
};

// Contract: x is a projection and the singular values of F(x) lie in {0, s}.
BiprojectionVerdict is_biprojection(const TwoBoxPair& pair, const AlgebraElement& x,
                                    double tol = 1e-8);

struct ShiftCertificate {
    AlgebraElement shift;
    AlgebraElement base;        // B (same side as shift)
    AlgebraElement base_plus;   // plus-side B, identifies the biprojection pair
    bool minus_side = false;
    bool left = false;
    double trace_residual = 0;
    double coproduct_residual = 0;
    int coset_rep = -1;         // group model bookkeeping
    int character_index = -1;
};

struct ShiftCheck {
    bool ok = false;
    double trace_residual = 0;
    double coproduct_residual = 0;
    std::optional<ShiftCertificate> certificate;
};

// Certifies x as a left/right shift of B (of B~ when x sits on the minus
// side): equal trace and B * x = (tr(B)/delta) x. Throws
// Error("NotAProjection") when x is not a projection.
ShiftCheck is_shift(const TwoBoxPair& pair, const AlgebraElement& x, const Biprojection& b,
                    bool left);

struct ShiftEnumeration {
    std::vector<ShiftCertificate> plus_right;   // coset indicators
    std::vector<ShiftCertificate> minus_right;  // character projections
};

ShiftEnumeration enumerate_shifts(const TwoBoxPair& pair, const Biprojection& b);

struct BiShift {
    AlgebraElement element;
    Biprojection base;
    int coset_rep = 0;
    Character character;
    cplx constant{1.0};
    bool minus_side = true;
};

// Group-model constructors: c sum_h chi(h) lambda(h g) on the minus side and
// the twisted coset indicator c sum_h chi(h) delta_{h g} on the plus side.
BiShift bishift_group(const TwoBoxPair& pair, const Subgroup& h, const Character& chi, int g,
                      cplx c);
BiShift bishift_group_plus(const TwoBoxPair& pair, const Subgroup& h, const Character& chi,
                           int g, cplx c);

// Generic constructor x = F(Bh~) * (y Bg); empty optional when the coproduct
// annihilates y. The output is renormalized to ||x||_2 = ||Bg||_2.
std::optional<AlgebraElement> bishift_generic(const TwoBoxPair& pair,
                                              const ShiftCertificate& bg,
                                              const ShiftCertificate& bth,
                                              const AlgebraElement& y);

struct ExtremalVerdict {
    bool ok = false;
    double gap = 0;  // relative |  ||F(x)||_inf - ||x||_1/delta0 |
};

ExtremalVerdict is_extremal(const TwoBoxPair& pair, const AlgebraElement& x, double tol = 1e-8);

struct FlatVerdict {
    bool ok = false;
    double x_residual = 0;   // deviation of sigma(x) from {0, s}
    double fx_residual = 0;  // same for F(x)
};

FlatVerdict is_bipartial_isometry(const TwoBoxPair& pair, const AlgebraElement& x,
                                  double tol = 1e-8);

struct MinimizerReport {
    bool ds_equal = false;                  // S(x) S(F(x)) = delta0^2
    bool hb_equal = false;                  // entropy sum = 2 log delta0 (normalized)
    bool extremal_bipartial = false;        // flat on both sides + extremal
    bool partialiso_finv_extremal = false;  // x flat + F^-1(x) extremal
    bool bishift = false;                   // structural reconstruction
    bool consistent = false;                // all five agree
    double ds_product = 0, ds_gap = 0;
    double hb_sum = 0, hb_gap = 0;
    double extremal_gap = 0, x_flat = 0, fx_flat = 0;
};

MinimizerReport minimizer_report(const TwoBoxPair& pair, const AlgebraElement& x);

struct SquareRelationResiduals {
    double identity_residual = 0;  // (w^* * w~)(w * w~^*) vs (||w||_2^2/d)(w^*w)*(w~ w~^*)
    double flatness_residual = 0;  // (d/||w||_2^2) w * w~^* as a partial isometry
    double one_norm_residual = 0;  // ||w||_1 preservation
};

// Pre-conditions (w a partial isometry, F^-1(w) extremal) are checked and
// violations raise Error("PreconditionFailed") naming the predicate.
SquareRelationResiduals square_relation_check(const TwoBoxPair& pair, const AlgebraElement& w,
                                              double tol = 1e-8);

struct UniquenessResult {
    int dimension = 0;
    std::vector<AlgebraElement> basis;  // plus side
};

// Dimension of { x : x (1 - Bg) = 0 and (1 - Bh~) F^-1(x) = 0 } via a
// stacked null-space computation on plus-side coordinates.
UniquenessResult uniqueness_space(const TwoBoxPair& pair, const ShiftCertificate& bg,
                                  const ShiftCertificate& bth);

// For positive x with positive F(x) attaining Donoho-Stark equality, returns
// the normalized biprojection; throws Error("PreconditionFailed") otherwise.
Biprojection positive_biprojection_check(const TwoBoxPair& pair, const AlgebraElement& x);

}  // namespace ncup
