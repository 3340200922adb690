#include "ncup/twobox.hpp"

#include <algorithm>
#include <cmath>

#include "ncup/errors.hpp"

namespace ncup {

PermutationAction PermutationAction::regular(GroupPtr g) {
    PermutationAction a;
    a.points = g->order();
    a.perms.resize(g->order(), std::vector<int>(g->order()));
    for (int x = 0; x < g->order(); ++x)
        for (int i = 0; i < g->order(); ++i) a.perms[x][i] = g->mul(x, i);
    a.group = std::move(g);
    a.validate();
    return a;
}

PermutationAction PermutationAction::trivial(GroupPtr g, int points) {
    PermutationAction a;
    a.points = points;
    std::vector<int> id(points);
    for (int i = 0; i < points; ++i) id[i] = i;
    a.perms.assign(g->order(), id);
    a.group = std::move(g);
    return a;
}

void PermutationAction::validate() const {
    if (static_cast<int>(perms.size()) != group->order())
        fail("InvalidAction", "one permutation per group element required");
    for (const auto& p : perms) {
        if (static_cast<int>(p.size()) != points) fail("InvalidAction", "permutation length mismatch");
        std::vector<bool> seen(points, false);
        for (int v : p) {
            if (v < 0 || v >= points || seen[v]) fail("InvalidAction", "not a permutation");
            seen[v] = true;
        }
    }
    const auto& id = perms[group->identity()];
    for (int i = 0; i < points; ++i)
        if (id[i] != i) fail("InvalidAction", "identity does not act trivially");
    for (int g = 0; g < group->order(); ++g)
        for (int h = 0; h < group->order(); ++h) {
            int gh = group->mul(g, h);
            for (int i = 0; i < points; ++i)
                if (perms[g][perms[h][i]] != perms[gh][i])
                    fail("InvalidAction", "permutations are not a homomorphism");
        }
}

std::vector<std::vector<int>> PermutationAction::orbits() const {
    std::vector<int> owner(points, -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < points; ++i) {
        if (owner[i] >= 0) continue;
        std::vector<int> orb;
        int id = static_cast<int>(out.size());
        std::vector<int> stack{i};
        owner[i] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            orb.push_back(x);
            for (const auto& p : perms)
                if (owner[p[x]] < 0) {
                    owner[p[x]] = id;
                    stack.push_back(p[x]);
                }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<std::vector<int>> PermutationAction::pair_orbits() const {
    const int n = points;
    std::vector<int> owner(static_cast<size_t>(n) * n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n * n; ++s) {
        if (owner[s] >= 0) continue;
        std::vector<int> orb;
        int id = static_cast<int>(out.size());
        std::vector<int> stack{s};
        owner[s] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            orb.push_back(x);
            int i = x / n, j = x % n;
            for (const auto& p : perms) {
                int y = p[i] * n + p[j];
                if (owner[y] < 0) {
                    owner[y] = id;
                    stack.push_back(y);
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

int PermutationAction::min_orbit_size() const {
    int m = points;
    for (const auto& o : orbits()) m = std::min(m, static_cast<int>(o.size()));
    return m;
}

TwoBoxPair TwoBoxPair::group_model(GroupPtr g, int bound) {
    if (g->order() > bound)
        fail("GroupTooLarge", "group order " + std::to_string(g->order()) + " exceeds bound " +
                                  std::to_string(bound));
    const int n = g->order();
    TwoBoxPair p;
    p.model = Model::Group;
    p.group = g;
    p.delta = std::sqrt(static_cast<double>(n));
    p.delta0 = p.delta;
    p.delta0_sq = static_cast<double>(n);
    p.plus = StarAlgebra::diagonal(n, 1.0, "group_plus:" + std::to_string(n));

    // Minus side: span of lambda(g) = commutant of the right regular action
    // rho(x) e_h = e_{h x^{-1}}.
    std::vector<std::vector<int>> right_perms(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int h = 0; h < n; ++h) right_perms[x][h] = g->mul(h, g->inv(x));
    std::vector<StarAlgebra::BasisElem> basis(n);
    for (int x = 0; x < n; ++x) {
        for (int h = 0; h < n; ++h)
            basis[x].entries.emplace_back(g->mul(x, h), h, cplx{1.0});
    }
    p.minus = StarAlgebra::commutant(n, 1.0, std::move(right_perms), std::move(basis),
                                     "group_minus:" + std::to_string(n));

    const double rn = std::sqrt(static_cast<double>(n));
    p.f_plus_ = Mat(n, n);      // delta_g -> lambda(g^-1)/sqrt(n)
    p.f_minus_ = Mat(n, n);     // lambda(g) -> sqrt(n) delta_g
    p.f_inv_plus_ = Mat(n, n);  // delta_g -> lambda(g)/sqrt(n)
    p.f_inv_minus_ = Mat(n, n); // lambda(g) -> sqrt(n) delta_{g^-1}
    for (int x = 0; x < n; ++x) {
        p.f_plus_(g->inv(x), x) = 1.0 / rn;
        p.f_minus_(x, x) = rn;
        p.f_inv_plus_(x, x) = 1.0 / rn;
        p.f_inv_minus_(g->inv(x), x) = rn;
    }
    return p;
}

TwoBoxPair TwoBoxPair::spin_model(int n, int bound) {
    if (n < 1 || n > bound)
        fail("SizeTooLarge", "spin size " + std::to_string(n) + " outside 1.." +
                                 std::to_string(bound));
    TwoBoxPair p;
    p.model = Model::Spin;
    p.spin_points = n;
    p.delta = std::sqrt(static_cast<double>(n));
    p.delta0 = 1.0 / p.delta;  // single-point orbits
    p.delta0_sq = 1.0 / n;
    p.plus = StarAlgebra::full(n, 1.0, "spin_plus:" + std::to_string(n));
    p.minus = StarAlgebra::diagonal(n * n, 1.0 / n, "spin_minus:" + std::to_string(n));

    const double rn = std::sqrt(static_cast<double>(n));
    const int d = n * n;
    // Plus coordinates are matrix entries (i*n + j); minus coordinates are the
    // function slots (i*n + j).
    p.f_plus_ = Mat(d, d);      // E_ij -> sqrt(n) 1_{(i,j)}
    p.f_minus_ = Mat(d, d);     // 1_{(i,j)} -> E_ji / sqrt(n)
    p.f_inv_plus_ = Mat(d, d);  // E_ij -> sqrt(n) 1_{(j,i)}
    p.f_inv_minus_ = Mat(d, d); // 1_{(i,j)} -> E_ij / sqrt(n)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int ij = i * n + j, ji = j * n + i;
            p.f_plus_(ij, ij) = rn;
            p.f_minus_(ji, ij) = 1.0 / rn;
            p.f_inv_plus_(ji, ij) = rn;
            p.f_inv_minus_(ij, ij) = 1.0 / rn;
        }
    return p;
}

TwoBoxPair TwoBoxPair::fixed_point_model(PermutationAction act) {
    act.validate();
    const int n = act.points;
    TwoBoxPair p;
    p.model = Model::FixedPoint;
    p.spin_points = n;
    p.action = act;
    p.delta = std::sqrt(static_cast<double>(n));
    p.delta0 = static_cast<double>(act.min_orbit_size()) / std::sqrt(static_cast<double>(n));
    p.delta0_sq = static_cast<double>(act.min_orbit_size()) * act.min_orbit_size() / n;

    auto pairs = act.pair_orbits();
    const int m = static_cast<int>(pairs.size());
    std::vector<StarAlgebra::BasisElem> plus_basis(m), minus_basis(m);
    for (int k = 0; k < m; ++k)
        for (int s : pairs[k]) {
            plus_basis[k].entries.emplace_back(s / n, s % n, cplx{1.0});
            minus_basis[k].entries.emplace_back(s, s, cplx{1.0});
        }
    p.plus = StarAlgebra::commutant(n, 1.0, act.perms, std::move(plus_basis),
                                    "fixed_plus:" + std::to_string(n));
    p.minus = StarAlgebra::constrained_diagonal(n * n, 1.0 / n, std::move(minus_basis),
                                                "fixed_minus:" + std::to_string(n));

    // Orbit transposition: pair orbit k -> orbit of the swapped pairs.
    std::vector<int> owner(static_cast<size_t>(n) * n);
    for (int k = 0; k < m; ++k)
        for (int s : pairs[k]) owner[s] = k;
    std::vector<int> transp(m);
    for (int k = 0; k < m; ++k) {
        int s = pairs[k][0];
        transp[k] = owner[(s % n) * n + (s / n)];
    }

    const double rn = std::sqrt(static_cast<double>(n));
    p.f_plus_ = Mat(m, m);
    p.f_minus_ = Mat(m, m);
    p.f_inv_plus_ = Mat(m, m);
    p.f_inv_minus_ = Mat(m, m);
    for (int k = 0; k < m; ++k) {
        p.f_plus_(k, k) = rn;             // A_O -> sqrt(n) 1_O
        p.f_minus_(transp[k], k) = 1.0 / rn;  // 1_O -> A_{O^T}/sqrt(n)
        p.f_inv_plus_(transp[k], k) = rn;     // A_O -> sqrt(n) 1_{O^T}
        p.f_inv_minus_(k, k) = 1.0 / rn;      // 1_O -> A_O / sqrt(n)
    }
    return p;
}

void TwoBoxPair::require_side(const AlgebraElement& x) const {
    if (!on_plus(x) && !on_minus(x))
        fail("SideMismatch", "element does not belong to this pair");
}

namespace {

AlgebraElement apply_map(const Mat& f, const AlgebraElement& x, const AlgebraPtr& target) {
    std::vector<cplx> c = x.coords();
    std::vector<cplx> out(f.rows());
    for (int i = 0; i < f.rows(); ++i) {
        cplx acc{};
        for (int j = 0; j < f.cols(); ++j)
            if (f(i, j) != cplx{}) acc += f(i, j) * c[j];
        out[i] = acc;
    }
    return AlgebraElement::from_coords(target, out);
}

}  // namespace

AlgebraElement TwoBoxPair::fourier(const AlgebraElement& x) const {
    require_side(x);
    return on_plus(x) ? apply_map(f_plus_, x, minus) : apply_map(f_minus_, x, plus);
}

AlgebraElement TwoBoxPair::fourier_inv(const AlgebraElement& x) const {
    require_side(x);
    return on_plus(x) ? apply_map(f_inv_plus_, x, minus) : apply_map(f_inv_minus_, x, plus);
}

AlgebraElement TwoBoxPair::contragredient(const AlgebraElement& x) const {
    return fourier(fourier(x));
}

AlgebraElement TwoBoxPair::coproduct(const AlgebraElement& x, const AlgebraElement& y) const {
    require_side(x);
    require_side(y);
    if (on_plus(x) != on_plus(y)) fail("SideMismatch", "coproduct needs same-side operands");
    return fourier(fourier_inv(x) * fourier_inv(y));
}

AlgebraElement TwoBoxPair::coproduct_closed_form(const AlgebraElement& x,
                                                 const AlgebraElement& y) const {
    require_side(x);
    require_side(y);
    if (on_plus(x) != on_plus(y)) fail("SideMismatch", "coproduct needs same-side operands");
    if (model == Model::Group && on_plus(x)) {
        // (f1 * f2)(g0) = |G|^{-1/2} sum_g f1(g0 g^-1) f2(g)
        const auto& g = *group;
        const int n = g.order();
        std::vector<cplx> out(n);
        for (int g0 = 0; g0 < n; ++g0) {
            cplx acc{};
            for (int a = 0; a < n; ++a) acc += x.diag()[g.mul(g0, g.inv(a))] * y.diag()[a];
            out[g0] = acc / delta;
        }
        return AlgebraElement::from_diagonal(plus, std::move(out));
    }
    if (model == Model::Group && on_minus(x)) {
        // Diagonal in the lambda basis: sum_g delta * a_g b_g lambda(g) / delta ... =
        // sqrt(|G|) sum_g a_g b_g lambda(g).
        std::vector<cplx> a = x.coords(), b = y.coords();
        std::vector<cplx> out(a.size());
        for (size_t i = 0; i < a.size(); ++i) out[i] = delta * a[i] * b[i];
        return AlgebraElement::from_coords(minus, out);
    }
    if (model == Model::Spin && on_plus(x)) {
        // sqrt(n) * Hadamard product.
        const int n = spin_points;
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = delta * x.dense()(i, j) * y.dense()(i, j);
        return AlgebraElement::from_matrix(plus, m);
    }
    if (model == Model::FixedPoint && on_plus(x)) {
        const int n = spin_points;
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = delta * x.dense()(i, j) * y.dense()(i, j);
        return AlgebraElement::from_matrix(plus, m);
    }
    return coproduct(x, y);
}

AlgebraElement TwoBoxPair::jones_projection(bool plus_side) const {
    if (model == Model::Group) {
        if (plus_side) return delta_function(group->identity());
        std::vector<cplx> a(group->order(), cplx{1.0 / group->order()});
        return minus_from_coeffs(a);
    }
    const int n = spin_points;
    if (plus_side) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = 1.0 / n;
        return AlgebraElement::from_matrix(plus, m);
    }
    std::vector<cplx> f(static_cast<size_t>(n) * n, cplx{});
    for (int i = 0; i < n; ++i) f[static_cast<size_t>(i) * n + i] = 1.0;
    return AlgebraElement::from_diagonal(minus, std::move(f));
}

AlgebraElement TwoBoxPair::jones_scaled(bool plus_side) const {
    return cplx{delta} * jones_projection(plus_side);
}

AlgebraElement TwoBoxPair::delta_function(int g) const {
    if (model != Model::Group) fail("ModelMismatch", "group model required");
    std::vector<cplx> d(group->order(), cplx{});
    d[g] = 1.0;
    return AlgebraElement::from_diagonal(plus, std::move(d));
}

AlgebraElement TwoBoxPair::lambda(int g) const {
    if (model != Model::Group) fail("ModelMismatch", "group model required");
    std::vector<cplx> a(group->order(), cplx{});
    a[g] = 1.0;
    return minus_from_coeffs(a);
}

AlgebraElement TwoBoxPair::minus_from_coeffs(const std::vector<cplx>& a) const {
    if (model != Model::Group) fail("ModelMismatch", "group model required");
    return AlgebraElement::from_coords(minus, a);
}

std::string TwoBoxPair::label() const {
    switch (model) {
        case Model::Group:
            return "group[" + std::to_string(group->order()) + "]";
        case Model::Spin:
            return "spin[" + std::to_string(spin_points) + "]";
        case Model::FixedPoint:
            return "fixedpoint[" + std::to_string(spin_points) + "]";
    }
    return "?";
}

}  // namespace ncup
