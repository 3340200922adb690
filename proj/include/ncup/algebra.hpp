#pragma once

#include <limits>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "ncup/eig.hpp"
#include "ncup/mat.hpp"

namespace ncup {

// Finite-dimensional *-algebra realized inside d x d complex matrices, with
// the algebra trace = trace_scale * matrix trace. Three storage/membership
// flavors cover every model here:
//   Diagonal  - diagonal matrices (elements store only the diagonal);
//   Full      - all of M_d;
//   Commutant - matrices commuting with a set of permutation matrices.
// When `basis` is nonempty the algebra is the span of those (pairwise
// HS-orthogonal, sparse) basis elements and coordinates run over them;
// Diagonal and Full use the implicit unit bases.
class StarAlgebra {
public:
    enum class Kind { Diagonal, Full, Commutant };

    struct BasisElem {
        std::vector<std::tuple<int, int, cplx>> entries;  // (row, col, value)
        double norm2 = 0;                                 // HS norm squared
    };

    Kind kind;
    int dim;
    double trace_scale;
    std::string label;
    std::vector<std::vector<int>> commuting_perms;  // perm[i] = image of i
    std::vector<BasisElem> basis;

    static std::shared_ptr<const StarAlgebra> diagonal(int dim, double trace_scale,
                                                       std::string label);
    static std::shared_ptr<const StarAlgebra> full(int dim, double trace_scale,
                                                   std::string label);
    static std::shared_ptr<const StarAlgebra> commutant(int dim, double trace_scale,
                                                        std::vector<std::vector<int>> perms,
                                                        std::vector<BasisElem> basis,
                                                        std::string label);
    static std::shared_ptr<const StarAlgebra> constrained_diagonal(int dim, double trace_scale,
                                                                   std::vector<BasisElem> basis,
                                                                   std::string label);

    int vec_dim() const;
    bool diagonal_storage() const { return kind == Kind::Diagonal; }
};

using AlgebraPtr = std::shared_ptr<const StarAlgebra>;

class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement zero(AlgebraPtr a);
    static AlgebraElement identity(AlgebraPtr a);
    static AlgebraElement from_diagonal(AlgebraPtr a, std::vector<cplx> d);
    // Validates membership (off-diagonal mass, commutation, span residual)
    // within rel_tol and throws Error("MembershipViolation") otherwise.
    static AlgebraElement from_matrix(AlgebraPtr a, const Mat& m, double rel_tol = 1e-8);
    static AlgebraElement from_coords(AlgebraPtr a, const std::vector<cplx>& c);

    const AlgebraPtr& algebra_ptr() const { return alg_; }
    const StarAlgebra& algebra() const { return *alg_; }
    bool diagonal_storage() const { return alg_->diagonal_storage(); }
    const std::vector<cplx>& diag() const { return diag_; }
    const Mat& dense() const { return mat_; }

    Mat to_matrix() const;  // materializes diagonal storage
    std::vector<cplx> coords() const;
    double frob() const;
    bool is_zero(double tol = 0.0) const { return frob() <= tol; }

    friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
    friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
    friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
    friend AlgebraElement operator*(cplx s, const AlgebraElement& x);
    friend AlgebraElement adjoint(const AlgebraElement& x);

private:
    AlgebraPtr alg_;
    std::vector<cplx> diag_;  // Diagonal kind
    Mat mat_;                 // other kinds
};

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y);

// Orthogonal projection of an arbitrary matrix into the algebra (basis
// projection / diagonal restriction); never throws on non-members.
AlgebraElement project_into(AlgebraPtr a, const Mat& m);

// Algebra trace tr = trace_scale * matrix trace.
cplx trace2(const AlgebraElement& x);

// Singular values of the matrix realization, descending.
std::vector<double> singular_values(const AlgebraElement& x);

// Eigenvalues/eigenvectors of a self-adjoint element; checks
// ||x - x*||_F <= 1e-10 ||x||_F and throws Error("NotSelfAdjoint") otherwise.
std::pair<std::vector<double>, Mat> hermitian_eig(const AlgebraElement& x);

AlgebraElement abs_element(const AlgebraElement& x);

// ||x||_p = (trace_scale * sum sigma_j^p)^(1/p); p = infinity gives the
// operator norm. Throws Error("InvalidExponent") for p < 1.
double p_norm(const AlgebraElement& x, double p);
inline constexpr double kPInf = std::numeric_limits<double>::infinity();

// Smallest projection P in the algebra with P x = x, at relative numerical
// rank threshold rel_tol * sigma_max. Zero element gives the zero projection.
AlgebraElement range_projection(const AlgebraElement& x, double rel_tol = 1e-9);

// trace2(range_projection(x)) without forming the projection.
double support_size(const AlgebraElement& x, double rel_tol = 1e-9);

// Von Neumann entropy H(|x|^2) = -tr(|x|^2 log |x|^2), natural log.
double entropy(const AlgebraElement& x);

struct SpectralDecomposition {
    std::vector<double> values;  // descending, > 0 entries meaningful
    Mat left, right;             // frames; x = sum values[j] left_j right_j^*
    std::vector<int> group_of;   // multiplicity grouping index per value
};

SpectralDecomposition spectral_decomposition(const AlgebraElement& x);

}  // namespace ncup
