#include "ncup/eig.hpp"

#include <algorithm>
#include <numeric>

#include "ncup/errors.hpp"

namespace ncup {

namespace {

double offdiag_norm(const Mat& a) {
    double s = 0;
    int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Make the largest-modulus entry of each column real positive. Ties within
// 1e-12 resolve to the first index so repeated runs agree bit for bit.
void fix_phases(Mat& v) {
    for (int j = 0; j < v.cols(); ++j) {
        int best = 0;
        double bestmag = 0;
        for (int i = 0; i < v.rows(); ++i) {
            double m = std::abs(v(i, j));
            if (m > bestmag * (1.0 + 1e-12)) {
                bestmag = m;
                best = i;
            }
        }
        if (bestmag == 0) continue;
        cplx phase = v(best, j) / bestmag;
        cplx corr = std::conj(phase);
        for (int i = 0; i < v.rows(); ++i) v(i, j) *= corr;
    }
}

}  // namespace

HermitianEig hermitian_eig_mat(Mat a, double conv_tol, int max_sweeps) {
    const int n = a.rows();
    if (n != a.cols()) fail("NotSelfAdjoint", "matrix is not square");

    // Work on the exact Hermitian part; callers check the pre-condition.
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            cplx h = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = h;
            a(j, i) = std::conj(h);
        }
        a(i, i) = cplx(a(i, i).real(), 0.0);
    }

    const double scale = frob_norm(a);
    Mat v = Mat::identity(n);
    int sweep = 0;
    if (scale > 0) {
        for (; sweep < max_sweeps; ++sweep) {
            if (offdiag_norm(a) <= conv_tol * scale) break;
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    cplx b = a(p, q);
                    double ab = std::abs(b);
                    if (ab == 0.0) continue;
                    cplx u = b / ab;  // phase of the pivot
                    double alpha = a(p, p).real();
                    double beta = a(q, q).real();
                    double tau = (beta - alpha) / (2.0 * ab);
                    double t = (tau >= 0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                          : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                    double c = 1.0 / std::sqrt(1.0 + t * t);
                    double s = t * c;
                    // Unitary U = diag(1, conj(u)) * Givens(c, s) acting on (p, q).
                    cplx up = std::conj(u);
                    for (int k = 0; k < n; ++k) {  // A <- A U
                        cplx akp = a(k, p), akq = a(k, q);
                        a(k, p) = c * akp - s * up * akq;
                        a(k, q) = s * akp + c * up * akq;
                    }
                    for (int k = 0; k < n; ++k) {  // A <- U^* A
                        cplx apk = a(p, k), aqk = a(q, k);
                        a(p, k) = c * apk - s * u * aqk;
                        a(q, k) = s * apk + c * u * aqk;
                    }
                    a(p, p) = cplx(alpha - t * ab, 0.0);
                    a(q, q) = cplx(beta + t * ab, 0.0);
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    for (int k = 0; k < n; ++k) {  // V <- V U
                        cplx vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp - s * up * vkq;
                        v(k, q) = s * vkp + c * up * vkq;
                    }
                }
            }
        }
        if (offdiag_norm(a) > conv_tol * scale && sweep >= max_sweeps)
            fail("NoConvergence", "Jacobi sweep cap exceeded");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return diag[i] > diag[j]; });

    HermitianEig out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = diag[order[j]];
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    fix_phases(out.vectors);
    return out;
}

SingularData singular_data_mat(const Mat& x) {
    const int n = x.rows();
    const int m = x.cols();
    Mat gram = adjoint(x) * x;
    HermitianEig eig = hermitian_eig_mat(std::move(gram));

    // Refine each singular value as ||x v_j||: sqrt of the Gram eigenvalue
    // loses half the significant digits near zero, which is too coarse for
    // rank decisions at 1e-9 relative.
    Mat img(n, m);
    std::vector<double> sval(m);
    for (int j = 0; j < m; ++j) {
        double s2 = 0;
        for (int i = 0; i < n; ++i) {
            cplx acc{};
            for (int k = 0; k < m; ++k) acc += x(i, k) * eig.vectors(k, j);
            img(i, j) = acc;
            s2 += std::norm(acc);
        }
        sval[j] = std::sqrt(s2);
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sval[a] > sval[b]; });

    SingularData out;
    out.values.resize(m);
    out.right = Mat(m, m);
    out.left = Mat(n, m);
    double top = sval.empty() ? 0.0 : sval[order.empty() ? 0 : order[0]];
    double cut = top * 1e-14;
    for (int j = 0; j < m; ++j) {
        int src = order[j];
        double s = sval[src];
        out.values[j] = s;
        for (int k = 0; k < m; ++k) out.right(k, j) = eig.vectors(k, src);
        if (s > cut && s > 0)
            for (int i = 0; i < n; ++i) out.left(i, j) = img(i, src) / s;
    }
    return out;
}

}  // namespace ncup
