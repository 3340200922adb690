#include "ncup/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "ncup/errors.hpp"

namespace ncup {

namespace {

double basis_norm2(const StarAlgebra::BasisElem& b) {
    double s = 0;
    for (const auto& [i, j, v] : b.entries) {
        (void)i;
        (void)j;
        s += std::norm(v);
    }
    return s;
}

}  // namespace

std::shared_ptr<const StarAlgebra> StarAlgebra::diagonal(int dim, double trace_scale,
                                                         std::string label) {
    auto a = std::make_shared<StarAlgebra>();
    a->kind = Kind::Diagonal;
    a->dim = dim;
    a->trace_scale = trace_scale;
    a->label = std::move(label);
    return a;
}

std::shared_ptr<const StarAlgebra> StarAlgebra::full(int dim, double trace_scale,
                                                     std::string label) {
    auto a = std::make_shared<StarAlgebra>();
    a->kind = Kind::Full;
    a->dim = dim;
    a->trace_scale = trace_scale;
    a->label = std::move(label);
    return a;
}

std::shared_ptr<const StarAlgebra> StarAlgebra::commutant(int dim, double trace_scale,
                                                          std::vector<std::vector<int>> perms,
                                                          std::vector<BasisElem> basis,
                                                          std::string label) {
    auto a = std::make_shared<StarAlgebra>();
    a->kind = Kind::Commutant;
    a->dim = dim;
    a->trace_scale = trace_scale;
    a->label = std::move(label);
    a->commuting_perms = std::move(perms);
    a->basis = std::move(basis);
    for (auto& b : a->basis) b.norm2 = basis_norm2(b);
    return a;
}

std::shared_ptr<const StarAlgebra> StarAlgebra::constrained_diagonal(
    int dim, double trace_scale, std::vector<BasisElem> basis, std::string label) {
    auto a = std::make_shared<StarAlgebra>();
    a->kind = Kind::Diagonal;
    a->dim = dim;
    a->trace_scale = trace_scale;
    a->label = std::move(label);
    a->basis = std::move(basis);
    for (auto& b : a->basis) b.norm2 = basis_norm2(b);
    return a;
}

int StarAlgebra::vec_dim() const {
    if (!basis.empty()) return static_cast<int>(basis.size());
    return kind == Kind::Full ? dim * dim : dim;
}

AlgebraElement AlgebraElement::zero(AlgebraPtr a) {
    AlgebraElement x;
    if (a->diagonal_storage())
        x.diag_.assign(a->dim, cplx{});
    else
        x.mat_ = Mat(a->dim, a->dim);
    x.alg_ = std::move(a);
    return x;
}

AlgebraElement AlgebraElement::identity(AlgebraPtr a) {
    AlgebraElement x = zero(a);
    if (x.diagonal_storage())
        std::fill(x.diag_.begin(), x.diag_.end(), cplx{1.0});
    else
        x.mat_ = Mat::identity(x.alg_->dim);
    return x;
}

AlgebraElement AlgebraElement::from_diagonal(AlgebraPtr a, std::vector<cplx> d) {
    if (!a->diagonal_storage()) fail("MembershipViolation", "algebra is not diagonal");
    if (static_cast<int>(d.size()) != a->dim)
        fail("MembershipViolation", "diagonal length mismatch");
    AlgebraElement x;
    x.alg_ = std::move(a);
    x.diag_ = std::move(d);
    if (!x.alg_->basis.empty()) {
        // Re-express through the span to validate the constraint.
        AlgebraElement y = from_matrix(x.alg_, x.to_matrix());
        return y;
    }
    return x;
}

AlgebraElement AlgebraElement::from_coords(AlgebraPtr a, const std::vector<cplx>& c) {
    if (static_cast<int>(c.size()) != a->vec_dim())
        fail("MembershipViolation", "coordinate length mismatch");
    AlgebraElement x = zero(a);
    const auto& alg = *x.alg_;
    if (!alg.basis.empty()) {
        for (size_t k = 0; k < alg.basis.size(); ++k) {
            if (c[k] == cplx{}) continue;
            for (const auto& [i, j, v] : alg.basis[k].entries) {
                if (alg.diagonal_storage())
                    x.diag_[i] += c[k] * v;
                else
                    x.mat_(i, j) += c[k] * v;
            }
        }
    } else if (alg.kind == StarAlgebra::Kind::Diagonal) {
        x.diag_ = c;
    } else {
        for (int i = 0; i < alg.dim; ++i)
            for (int j = 0; j < alg.dim; ++j) x.mat_(i, j) = c[static_cast<size_t>(i) * alg.dim + j];
    }
    return x;
}

AlgebraElement AlgebraElement::from_matrix(AlgebraPtr a, const Mat& m, double rel_tol) {
    if (m.rows() != a->dim || m.cols() != a->dim)
        fail("MembershipViolation", "matrix size mismatch");
    const double scale = std::max(frob_norm(m), 1e-300);

    if (a->kind == StarAlgebra::Kind::Commutant) {
        for (const auto& p : a->commuting_perms) {
            // residual of P X - X P where P e_i = e_{p[i]}: (PX)(p[i], j) = X(i, j),
            // (XP) (i, j) = X(i, p[j])  ... compare entrywise.
            double r = 0;
            for (int i = 0; i < a->dim; ++i)
                for (int j = 0; j < a->dim; ++j) r += std::norm(m(p[i], p[j]) - m(i, j));
            if (std::sqrt(r) > rel_tol * scale)
                fail("MembershipViolation", "element does not commute with the action");
        }
    }

    AlgebraElement x = zero(a);
    if (!a->basis.empty()) {
        std::vector<cplx> c(a->basis.size());
        for (size_t k = 0; k < a->basis.size(); ++k) {
            cplx acc{};
            for (const auto& [i, j, v] : a->basis[k].entries) acc += std::conj(v) * m(i, j);
            c[k] = acc / a->basis[k].norm2;
        }
        x = from_coords(a, c);
        Mat back = x.to_matrix();
        if (frob_norm(back - m) > rel_tol * scale)
            fail("MembershipViolation", "element is outside the algebra span");
        return x;
    }

    if (a->kind == StarAlgebra::Kind::Diagonal) {
        double off = 0;
        for (int i = 0; i < a->dim; ++i)
            for (int j = 0; j < a->dim; ++j)
                if (i != j) off += std::norm(m(i, j));
        if (std::sqrt(off) > rel_tol * scale)
            fail("MembershipViolation", "off-diagonal mass in a diagonal algebra");
        for (int i = 0; i < a->dim; ++i) x.diag_[i] = m(i, i);
        return x;
    }
    x.mat_ = m;
    return x;
}

Mat AlgebraElement::to_matrix() const {
    if (!diagonal_storage()) return mat_;
    Mat m(alg_->dim, alg_->dim);
    for (int i = 0; i < alg_->dim; ++i) m(i, i) = diag_[i];
    return m;
}

std::vector<cplx> AlgebraElement::coords() const {
    const auto& alg = *alg_;
    if (!alg.basis.empty()) {
        std::vector<cplx> c(alg.basis.size());
        for (size_t k = 0; k < alg.basis.size(); ++k) {
            cplx acc{};
            for (const auto& [i, j, v] : alg.basis[k].entries)
                acc += std::conj(v) * (diagonal_storage() ? (i == j ? diag_[i] : cplx{})
                                                          : mat_(i, j));
            c[k] = acc / alg.basis[k].norm2;
        }
        return c;
    }
    if (alg.kind == StarAlgebra::Kind::Diagonal) return diag_;
    return mat_.raw();
}

double AlgebraElement::frob() const {
    if (diagonal_storage()) {
        double s = 0;
        for (const auto& v : diag_) s += std::norm(v);
        return std::sqrt(s);
    }
    return frob_norm(mat_);
}

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.algebra_ptr() != y.algebra_ptr())
        fail("AlgebraMismatch", "operands belong to different algebras");
}

AlgebraElement project_into(AlgebraPtr a, const Mat& m) {
    if (!a->basis.empty()) {
        std::vector<cplx> c(a->basis.size());
        for (size_t k = 0; k < a->basis.size(); ++k) {
            cplx acc{};
            for (const auto& [i, j, v] : a->basis[k].entries) acc += std::conj(v) * m(i, j);
            c[k] = acc / a->basis[k].norm2;
        }
        return AlgebraElement::from_coords(a, c);
    }
    if (a->kind == StarAlgebra::Kind::Diagonal) {
        std::vector<cplx> d(a->dim);
        for (int i = 0; i < a->dim; ++i) d[i] = m(i, i);
        return AlgebraElement::from_diagonal(a, std::move(d));
    }
    return AlgebraElement::from_matrix(a, m);
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_algebra(x, y);
    AlgebraElement z = x;
    if (z.diagonal_storage())
        for (size_t i = 0; i < z.diag_.size(); ++i) z.diag_[i] += y.diag_[i];
    else
        z.mat_ += y.mat_;
    return z;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_algebra(x, y);
    AlgebraElement z = x;
    if (z.diagonal_storage())
        for (size_t i = 0; i < z.diag_.size(); ++i) z.diag_[i] -= y.diag_[i];
    else
        z.mat_ -= y.mat_;
    return z;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_algebra(x, y);
    AlgebraElement z = x;
    if (z.diagonal_storage())
        for (size_t i = 0; i < z.diag_.size(); ++i) z.diag_[i] *= y.diag_[i];
    else
        z.mat_ = x.mat_ * y.mat_;
    return z;
}

AlgebraElement operator*(cplx s, const AlgebraElement& x) {
    AlgebraElement z = x;
    if (z.diagonal_storage())
        for (auto& v : z.diag_) v *= s;
    else
        z.mat_ *= s;
    return z;
}

AlgebraElement adjoint(const AlgebraElement& x) {
    AlgebraElement z = x;
    if (z.diagonal_storage())
        for (auto& v : z.diag_) v = std::conj(v);
    else
        z.mat_ = adjoint(x.mat_);
    return z;
}

cplx trace2(const AlgebraElement& x) {
    cplx t{};
    if (x.diagonal_storage())
        for (const auto& v : x.diag()) t += v;
    else
        t = mat_trace(x.dense());
    return x.algebra().trace_scale * t;
}

std::vector<double> singular_values(const AlgebraElement& x) {
    std::vector<double> s;
    if (x.diagonal_storage()) {
        s.reserve(x.diag().size());
        for (const auto& v : x.diag()) s.push_back(std::abs(v));
        std::sort(s.begin(), s.end(), std::greater<>());
        return s;
    }
    return singular_data_mat(x.dense()).values;
}

std::pair<std::vector<double>, Mat> hermitian_eig(const AlgebraElement& x) {
    AlgebraElement d = x - adjoint(x);
    double nx = x.frob();
    if (d.frob() > 1e-10 * std::max(nx, 1e-300))
        fail("NotSelfAdjoint", "||x - x*|| exceeds 1e-10 ||x||");
    return [&] {
        HermitianEig e = hermitian_eig_mat(x.to_matrix());
        return std::pair<std::vector<double>, Mat>{std::move(e.values), std::move(e.vectors)};
    }();
}

AlgebraElement abs_element(const AlgebraElement& x) {
    if (x.diagonal_storage()) {
        std::vector<cplx> d = x.diag();
        for (auto& v : d) v = std::abs(v);
        return AlgebraElement::from_diagonal(x.algebra_ptr(), std::move(d));
    }
    SingularData sd = singular_data_mat(x.dense());
    const int n = x.algebra().dim;
    Mat m(n, n);
    for (int j = 0; j < n; ++j) {
        if (sd.values[j] <= 0) continue;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                m(i, k) += sd.values[j] * sd.right(i, j) * std::conj(sd.right(k, j));
    }
    return AlgebraElement::from_matrix(x.algebra_ptr(), m, 1e-6);
}

double p_norm(const AlgebraElement& x, double p) {
    if (!(p >= 1.0)) fail("InvalidExponent", "p-norm requires p >= 1");
    std::vector<double> s = singular_values(x);
    if (p == kPInf) return s.empty() ? 0.0 : s[0];
    double acc = 0;
    for (double v : s) acc += std::pow(v, p);
    return std::pow(x.algebra().trace_scale * acc, 1.0 / p);
}

namespace {

int numerical_rank(const std::vector<double>& s, double rel_tol) {
    if (s.empty() || s[0] <= 0) return 0;
    double cut = rel_tol * s[0];
    int r = 0;
    for (double v : s)
        if (v > cut) ++r;
    return r;
}

}  // namespace

AlgebraElement range_projection(const AlgebraElement& x, double rel_tol) {
    if (x.diagonal_storage()) {
        std::vector<double> s = singular_values(x);
        double cut = s.empty() ? 0.0 : rel_tol * s[0];
        std::vector<cplx> d(x.diag().size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = std::abs(x.diag()[i]) > cut ? 1.0 : 0.0;
        return AlgebraElement::from_diagonal(x.algebra_ptr(), std::move(d));
    }
    SingularData sd = singular_data_mat(x.dense());
    double cut = sd.values.empty() ? 0.0 : rel_tol * sd.values[0];
    const int n = x.algebra().dim;
    Mat p(n, n);
    for (int j = 0; j < n; ++j) {
        if (sd.values[j] <= cut || sd.values[j] <= 0) continue;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) p(i, k) += sd.left(i, j) * std::conj(sd.left(k, j));
    }
    return AlgebraElement::from_matrix(x.algebra_ptr(), p, 1e-6);
}

double support_size(const AlgebraElement& x, double rel_tol) {
    return x.algebra().trace_scale * numerical_rank(singular_values(x), rel_tol);
}

double entropy(const AlgebraElement& x) {
    double h = 0;
    for (double s : singular_values(x)) {
        double s2 = s * s;
        if (s2 > 0) h -= s2 * std::log(s2);
    }
    return x.algebra().trace_scale * h;
}

SpectralDecomposition spectral_decomposition(const AlgebraElement& x) {
    SpectralDecomposition out;
    if (x.diagonal_storage()) {
        const int n = x.algebra().dim;
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(x.diag()[a]) > std::abs(x.diag()[b]);
        });
        out.values.resize(n);
        out.left = Mat(n, n);
        out.right = Mat(n, n);
        for (int j = 0; j < n; ++j) {
            cplx v = x.diag()[order[j]];
            double a = std::abs(v);
            out.values[j] = a;
            out.right(order[j], j) = 1.0;
            out.left(order[j], j) = a > 0 ? v / a : cplx{1.0};
        }
    } else {
        SingularData sd = singular_data_mat(x.dense());
        out.values = std::move(sd.values);
        out.left = std::move(sd.left);
        out.right = std::move(sd.right);
    }
    out.group_of.resize(out.values.size());
    int grp = 0;
    double scale = out.values.empty() ? 0.0 : out.values[0];
    for (size_t j = 0; j < out.values.size(); ++j) {
        if (j > 0 && out.values[j - 1] - out.values[j] > 1e-9 * std::max(scale, 1.0)) ++grp;
        out.group_of[j] = grp;
    }
    return out;
}

}  // namespace ncup
