#include "ncup/extremizers.hpp"

#include <algorithm>
#include <cmath>

#include "ncup/errors.hpp"

namespace ncup {

namespace {

// Deviation of a singular spectrum from {0, s}, relative to s = sigma_max.
double flat_residual(const std::vector<double>& s) {
    if (s.empty() || s[0] <= 0) return 0.0;
    double top = s[0], worst = 0;
    for (double v : s) worst = std::max(worst, std::min(v, std::abs(v - top)) / top);
    return worst;
}

// Deviation from {0, 1} (partial isometry spectrum), absolute.
double partial_isometry_residual(const std::vector<double>& s) {
    double worst = 0;
    for (double v : s) worst = std::max(worst, std::min(v, std::abs(v - 1.0)));
    return worst;
}

double projection_residual(const AlgebraElement& x) {
    double scale = std::max(x.frob(), 1e-300);
    return std::max((x * x - x).frob(), (x - adjoint(x)).frob()) / scale;
}

double rounded_rank_units(const AlgebraElement& x, double rank_tol = 1e-6) {
    double s = support_size(x) / x.algebra().trace_scale;  // counts kept directions
    double r = std::round(s);
    return std::abs(s - r) <= rank_tol ? r : s;
}

double support_rounded(const AlgebraElement& x) {
    return x.algebra().trace_scale * rounded_rank_units(x);
}

}  // namespace

Biprojection biprojection_from_subgroup(const TwoBoxPair& pair, const Subgroup& h) {
    if (pair.model != TwoBoxPair::Model::Group) fail("ModelMismatch", "group model required");
    const auto& g = *pair.group;
    std::vector<cplx> d(g.order(), cplx{});
    for (int m : h.members) d[m] = 1.0;
    AlgebraElement b = AlgebraElement::from_diagonal(pair.plus, std::move(d));
    std::vector<cplx> a(g.order(), cplx{});
    for (int m : h.members) a[m] = 1.0 / static_cast<double>(h.order());
    AlgebraElement tilde = pair.minus_from_coeffs(a);
    return Biprojection{std::move(b), h, std::move(tilde)};
}

BiprojectionVerdict is_biprojection(const TwoBoxPair& pair, const AlgebraElement& x,
                                    double tol) {
    pair.require_side(x);
    BiprojectionVerdict v;
    v.projection_residual = projection_residual(x);
    v.flat_residual = flat_residual(singular_values(pair.fourier(x)));
    v.ok = v.projection_residual <= tol && v.flat_residual <= tol;
    return v;
}

ShiftCheck is_shift(const TwoBoxPair& pair, const AlgebraElement& x, const Biprojection& b,
                    bool left) {
    pair.require_side(x);
    if (projection_residual(x) > 1e-9)
        fail("NotAProjection", "shift candidate is not a projection");
    const AlgebraElement& base = pair.on_plus(x) ? b.element : b.tilde;
    ShiftCheck out;
    double trb = trace2(base).real();
    out.trace_residual = std::abs(trace2(x).real() - trb);
    AlgebraElement lhs = left ? pair.coproduct(x, base) : pair.coproduct(base, x);
    AlgebraElement residual = lhs - cplx{trb / pair.delta} * x;
    out.coproduct_residual = residual.frob() / std::max(x.frob(), 1e-300);
    out.ok = out.trace_residual <= 1e-9 * std::max(1.0, std::abs(trb)) &&
             out.coproduct_residual <= 1e-9;
    if (out.ok) {
        ShiftCertificate cert;
        cert.shift = x;
        cert.base = base;
        cert.base_plus = b.element;
        cert.minus_side = pair.on_minus(x);
        cert.left = left;
        cert.trace_residual = out.trace_residual;
        cert.coproduct_residual = out.coproduct_residual;
        out.certificate = std::move(cert);
    }
    return out;
}

ShiftEnumeration enumerate_shifts(const TwoBoxPair& pair, const Biprojection& b) {
    if (pair.model != TwoBoxPair::Model::Group) fail("ModelMismatch", "group model required");
    const auto& g = *pair.group;
    ShiftEnumeration out;
    for (const auto& coset : right_cosets(b.subgroup)) {
        std::vector<cplx> d(g.order(), cplx{});
        for (int m : coset) d[m] = 1.0;
        AlgebraElement x = AlgebraElement::from_diagonal(pair.plus, std::move(d));
        ShiftCheck chk = is_shift(pair, x, b, false);
        if (!chk.ok) fail("InternalError", "coset indicator failed the shift relation");
        chk.certificate->coset_rep = coset.front();
        out.plus_right.push_back(std::move(*chk.certificate));
    }
    auto chars = one_dim_characters(b.subgroup);
    for (size_t ci = 0; ci < chars.size(); ++ci) {
        std::vector<cplx> a(g.order(), cplx{});
        for (int m : b.subgroup.members)
            a[m] = chars[ci].value(m) / static_cast<double>(b.subgroup.order());
        AlgebraElement q = pair.minus_from_coeffs(a);
        ShiftCheck chk = is_shift(pair, q, b, false);
        if (!chk.ok) fail("InternalError", "character projection failed the shift relation");
        chk.certificate->character_index = static_cast<int>(ci);
        out.minus_right.push_back(std::move(*chk.certificate));
    }
    return out;
}

namespace {

void require_character_of(const Subgroup& h, const Character& chi) {
    if (chi.subgroup.members != h.members)
        fail("InvalidCharacter", "character does not belong to the subgroup");
}

}  // namespace

BiShift bishift_group(const TwoBoxPair& pair, const Subgroup& h, const Character& chi, int g,
                      cplx c) {
    if (pair.model != TwoBoxPair::Model::Group) fail("ModelMismatch", "group model required");
    require_character_of(h, chi);
    if (c == cplx{}) fail("InvalidCharacter", "constant must be nonzero");
    const auto& grp = *pair.group;
    std::vector<cplx> a(grp.order(), cplx{});
    for (int m : h.members) a[grp.mul(m, g)] += c * chi.value(m);
    BiShift out;
    out.element = pair.minus_from_coeffs(a);
    out.base = biprojection_from_subgroup(pair, h);
    out.coset_rep = g;
    out.character = chi;
    out.constant = c;
    out.minus_side = true;
    return out;
}

BiShift bishift_group_plus(const TwoBoxPair& pair, const Subgroup& h, const Character& chi,
                           int g, cplx c) {
    if (pair.model != TwoBoxPair::Model::Group) fail("ModelMismatch", "group model required");
    require_character_of(h, chi);
    if (c == cplx{}) fail("InvalidCharacter", "constant must be nonzero");
    const auto& grp = *pair.group;
    std::vector<cplx> d(grp.order(), cplx{});
    for (int m : h.members) d[grp.mul(m, g)] += c * chi.value(m);
    BiShift out;
    out.element = AlgebraElement::from_diagonal(pair.plus, std::move(d));
    out.base = biprojection_from_subgroup(pair, h);
    out.coset_rep = g;
    out.character = chi;
    out.constant = c;
    out.minus_side = false;
    return out;
}

std::optional<AlgebraElement> bishift_generic(const TwoBoxPair& pair,
                                              const ShiftCertificate& bg,
                                              const ShiftCertificate& bth,
                                              const AlgebraElement& y) {
    if (bg.minus_side || !bth.minus_side)
        fail("ShiftSideMismatch", "need a plus-side shift of B and a minus-side shift of B~");
    if (!pair.on_plus(y)) fail("SideMismatch", "y must live on the plus side");
    AlgebraElement x = pair.coproduct(pair.fourier(bth.shift), y * bg.shift);
    double nx = p_norm(x, 2.0);
    double bound = 1e-12 * p_norm(y, 2.0) * p_norm(bg.shift, 2.0);
    if (nx <= bound) return std::nullopt;
    return cplx{p_norm(bg.shift, 2.0) / nx} * x;
}

ExtremalVerdict is_extremal(const TwoBoxPair& pair, const AlgebraElement& x, double tol) {
    pair.require_side(x);
    if (x.is_zero(0.0)) fail("ZeroElement", "extremality is undefined at zero");
    double rhs = p_norm(x, 1.0) / pair.delta0;
    double lhs = p_norm(pair.fourier(x), kPInf);
    ExtremalVerdict v;
    v.gap = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
    v.ok = v.gap <= tol;
    return v;
}

FlatVerdict is_bipartial_isometry(const TwoBoxPair& pair, const AlgebraElement& x, double tol) {
    pair.require_side(x);
    if (x.is_zero(0.0)) fail("ZeroElement", "predicate undefined at zero");
    FlatVerdict v;
    v.x_residual = flat_residual(singular_values(x));
    v.fx_residual = flat_residual(singular_values(pair.fourier(x)));
    v.ok = v.x_residual <= tol && v.fx_residual <= tol;
    return v;
}

namespace {

// Least-squares proportionality: residual of lhs ~ c * ref with the optimal
// scalar c (also reported).
double proportionality_residual(const AlgebraElement& lhs, const AlgebraElement& ref,
                                cplx* c_out = nullptr) {
    Mat a = lhs.to_matrix(), r = ref.to_matrix();
    cplx num{};
    double den = 0;
    for (size_t k = 0; k < a.raw().size(); ++k) {
        num += std::conj(r.raw()[k]) * a.raw()[k];
        den += std::norm(r.raw()[k]);
    }
    cplx c = den > 0 ? num / den : cplx{};
    if (c_out) *c_out = c;
    Mat diff = a - c * r;
    return frob_norm(diff) / std::max(frob_norm(a), 1e-300);
}

// Structural bi-shift detection: normalize x to a partial isometry w, rebuild
// the biprojection B through the square relation, normalize it by its
// operator norm (self-calibrating the scale so reducible models are handled
// uniformly), then confirm the shift relations and the support constraints
// that pin x down.
bool detect_bishift(const TwoBoxPair& pair, const AlgebraElement& x, double tol) {
    std::vector<double> sx = singular_values(x);
    if (flat_residual(sx) > tol || sx.empty() || sx[0] <= 0) return false;
    AlgebraElement w = cplx{1.0 / sx[0]} * x;
    AlgebraElement wb = pair.contragredient(w);
    AlgebraElement wstar = adjoint(w), wbstar = adjoint(wb);

    AlgebraElement braw = pair.coproduct(wstar, wb) * pair.coproduct(w, wbstar);
    double bnorm = p_norm(braw, kPInf);
    if (bnorm <= 0) return false;
    AlgebraElement b = cplx{1.0 / bnorm} * braw;
    if (projection_residual(b) > tol) return false;
    if (flat_residual(singular_values(pair.fourier(b))) > tol) return false;

    // Bg = w^* w must be a trace-matching shift of B: B * Bg proportional to Bg.
    AlgebraElement bg = wstar * w;
    double trb = trace2(b).real();
    if (std::abs(trace2(bg).real() - trb) > tol * std::max(1.0, std::abs(trb))) return false;
    cplx c1{};
    if (proportionality_residual(pair.coproduct(b, bg), bg, &c1) > tol) return false;
    if (c1.real() <= 0) return false;

    // The Fourier-side shift Bh~ of B~ = R(F(b)).
    AlgebraElement u = pair.fourier_inv(wbstar);
    std::vector<double> su = singular_values(u);
    if (flat_residual(su) > tol || su[0] <= 0) return false;
    AlgebraElement upi = cplx{1.0 / su[0]} * u;
    AlgebraElement bth = adjoint(upi) * upi;
    if (projection_residual(bth) > tol) return false;
    AlgebraElement tilde = range_projection(pair.fourier(b));
    if (std::abs(trace2(bth).real() - trace2(tilde).real()) >
        tol * std::max(1.0, std::abs(trace2(tilde).real())))
        return false;
    cplx c2{};
    if (proportionality_residual(pair.coproduct(tilde, bth), bth, &c2) > tol) return false;
    if (c2.real() <= 0) return false;

    // Support constraints: x (1 - Bg) = 0 and (1 - Bh~) F^-1(x) = 0.
    AlgebraElement one_x = AlgebraElement::identity(x.algebra_ptr());
    if ((x * (one_x - bg)).frob() > tol * std::max(x.frob(), 1e-300)) return false;
    AlgebraElement fx = pair.fourier_inv(x);
    AlgebraElement one_f = AlgebraElement::identity(fx.algebra_ptr());
    if (((one_f - bth) * fx).frob() > tol * std::max(fx.frob(), 1e-300)) return false;
    return true;
}

}  // namespace

MinimizerReport minimizer_report(const TwoBoxPair& pair, const AlgebraElement& x) {
    pair.require_side(x);
    if (x.is_zero(0.0)) fail("ZeroElement", "report undefined at zero");
    MinimizerReport r;

    AlgebraElement fx = pair.fourier(x);
    double s1 = support_rounded(x), s2 = support_rounded(fx);
    r.ds_product = s1 * s2;
    r.ds_gap = r.ds_product - pair.delta0_sq;
    r.ds_equal = std::abs(r.ds_gap) <= 1e-6;

    AlgebraElement y = cplx{1.0 / p_norm(x, 2.0)} * x;
    r.hb_sum = entropy(y) + entropy(pair.fourier(y));
    r.hb_gap = r.hb_sum - 2.0 * std::log(pair.delta0);
    r.hb_equal = std::abs(r.hb_gap) <= 1e-8;

    FlatVerdict fv = is_bipartial_isometry(pair, x);
    ExtremalVerdict ev = is_extremal(pair, x);
    r.x_flat = fv.x_residual;
    r.fx_flat = fv.fx_residual;
    r.extremal_gap = ev.gap;
    r.extremal_bipartial = fv.ok && ev.ok;

    AlgebraElement finv = pair.fourier_inv(x);
    double rhs = p_norm(finv, 1.0) / pair.delta0;
    double lhs = p_norm(x, kPInf);
    bool finv_extremal = std::abs(lhs - rhs) <= 1e-8 * std::max(rhs, 1e-300);
    r.partialiso_finv_extremal = fv.x_residual <= 1e-8 && finv_extremal;

    r.bishift = detect_bishift(pair, x, 1e-6);

    r.consistent = (r.ds_equal == r.hb_equal) && (r.ds_equal == r.extremal_bipartial) &&
                   (r.ds_equal == r.partialiso_finv_extremal) && (r.ds_equal == r.bishift);
    return r;
}

SquareRelationResiduals square_relation_check(const TwoBoxPair& pair, const AlgebraElement& w,
                                              double tol) {
    pair.require_side(w);
    if (w.is_zero(0.0)) fail("ZeroElement", "square relation undefined at zero");
    if (partial_isometry_residual(singular_values(w)) > tol)
        fail("PreconditionFailed", "w is not a partial isometry");
    {
        AlgebraElement finv = pair.fourier_inv(w);
        double rhs = p_norm(finv, 1.0) / pair.delta0;
        double lhs = p_norm(w, kPInf);
        if (std::abs(lhs - rhs) > tol * std::max(rhs, 1e-300))
            fail("PreconditionFailed", "F^-1(w) is not extremal");
    }

    double w22 = p_norm(w, 2.0);
    w22 *= w22;
    AlgebraElement wb = pair.contragredient(w);
    AlgebraElement lhs = pair.coproduct(adjoint(w), wb) * pair.coproduct(w, adjoint(wb));
    AlgebraElement rhs =
        cplx{w22 / pair.delta0} * pair.coproduct(adjoint(w) * w, wb * adjoint(wb));
    SquareRelationResiduals out;
    out.identity_residual = (lhs - rhs).frob() / std::max(rhs.frob(), 1e-300);

    AlgebraElement t = cplx{pair.delta0 / w22} * pair.coproduct(w, adjoint(wb));
    out.flatness_residual = partial_isometry_residual(singular_values(t));
    double w1 = p_norm(w, 1.0);
    out.one_norm_residual = std::abs(w1 - p_norm(t, 1.0)) / std::max(w1, 1e-300);
    return out;
}

UniquenessResult uniqueness_space(const TwoBoxPair& pair, const ShiftCertificate& bg,
                                  const ShiftCertificate& bth) {
    if (bg.minus_side || !bth.minus_side)
        fail("ShiftSideMismatch", "need a plus-side shift and a minus-side shift");
    if ((bg.base_plus - bth.base_plus).frob() > 1e-8 * std::max(bg.base_plus.frob(), 1e-300))
        fail("MismatchedBiprojection", "the shifts come from different biprojections");

    const int m = pair.plus->vec_dim();
    const int d = pair.plus->dim;
    const int dm = pair.minus->dim;
    AlgebraElement one_p = AlgebraElement::identity(pair.plus);
    AlgebraElement one_m = AlgebraElement::identity(pair.minus);
    AlgebraElement comp_g = one_p - bg.shift;
    AlgebraElement comp_h = one_m - bth.shift;

    // Columns: constraints applied to each plus-side coordinate basis vector.
    const int rows = d * d + dm * dm;
    Mat c(rows, m);
    for (int k = 0; k < m; ++k) {
        std::vector<cplx> unit(m, cplx{});
        unit[k] = 1.0;
        AlgebraElement e = AlgebraElement::from_coords(pair.plus, unit);
        Mat r1 = (e * comp_g).to_matrix();
        Mat r2 = (comp_h * pair.fourier_inv(e)).to_matrix();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) c(i * d + j, k) = r1(i, j);
        for (int i = 0; i < dm; ++i)
            for (int j = 0; j < dm; ++j) c(d * d + i * dm + j, k) = r2(i, j);
    }
    SingularData sd = singular_data_mat(c);
    double top = sd.values.empty() ? 0.0 : sd.values[0];
    double cut = 1e-7 * std::max(top, 1.0);
    UniquenessResult out;
    for (int j = 0; j < m; ++j) {
        if (sd.values[j] > cut) continue;
        std::vector<cplx> coords(m);
        for (int i = 0; i < m; ++i) coords[i] = sd.right(i, j);
        out.basis.push_back(AlgebraElement::from_coords(pair.plus, coords));
        ++out.dimension;
    }
    if (out.dimension > 1)
        fail("UniquenessViolated", "null space dimension exceeds 1");
    return out;
}

Biprojection positive_biprojection_check(const TwoBoxPair& pair, const AlgebraElement& x) {
    pair.require_side(x);
    if (x.is_zero(0.0)) fail("ZeroElement", "empty input");
    auto positive = [&](const AlgebraElement& z) {
        if ((z - adjoint(z)).frob() > 1e-9 * std::max(z.frob(), 1e-300)) return false;
        auto [vals, vecs] = hermitian_eig(cplx{0.5} * (z + adjoint(z)));
        (void)vecs;
        double top = vals.empty() ? 0.0 : std::abs(vals[0]);
        return vals.empty() || vals.back() >= -1e-9 * std::max(top, 1.0);
    };
    AlgebraElement fx = pair.fourier(x);
    if (!positive(x)) fail("PreconditionFailed", "x is not positive");
    if (!positive(fx)) fail("PreconditionFailed", "F(x) is not positive");
    double prod = support_rounded(x) * support_rounded(fx);
    if (std::abs(prod - pair.delta0_sq) > 1e-6)
        fail("PreconditionFailed", "support product is off the uncertainty bound");

    AlgebraElement b = cplx{1.0 / p_norm(x, kPInf)} * x;
    BiprojectionVerdict v = is_biprojection(pair, b, 1e-6);
    if (!v.ok) fail("PreconditionFailed", "normalized element is not a biprojection");

    Biprojection out;
    out.element = b;
    out.tilde = range_projection(pair.fourier(b));
    if (pair.model == TwoBoxPair::Model::Group) {
        Subgroup h;
        h.parent = pair.group;
        for (int i = 0; i < pair.group->order(); ++i)
            if (std::abs(b.diag()[i]) > 0.5) h.members.push_back(i);
        out.subgroup = std::move(h);
    }
    return out;
}

}  // namespace ncup
