#pragma once

#include <vector>

#include "ncup/mat.hpp"

namespace ncup {

struct HermitianEig {
    std::vector<double> values;  // descending
    Mat vectors;                 // columns, orthonormal
    int sweeps = 0;
};

// Cyclic Jacobi on the Hermitian part of `a`. Converges when the off-diagonal
// Frobenius mass drops below conv_tol * ||a||_F; throws Error("NoConvergence")
// past max_sweeps. Eigenvector phases are fixed deterministically (largest
// modulus entry made real positive).
HermitianEig hermitian_eig_mat(Mat a, double conv_tol = 1e-13, int max_sweeps = 100);

struct SingularData {
    std::vector<double> values;  // descending, >= 0
    Mat left;                    // columns u_j (zero column where sigma_j = 0)
    Mat right;                   // columns v_j, orthonormal
};

// x = sum_j values[j] * left_j * right_j^*, built from the eigendecomposition
// of x^* x. Right-vector phases fixed as in hermitian_eig_mat.
SingularData singular_data_mat(const Mat& x);

}  // namespace ncup
