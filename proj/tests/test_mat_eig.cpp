#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ncup/eig.hpp"
#include "ncup/errors.hpp"
#include "ncup/rng.hpp"

using namespace ncup;

namespace {

Mat random_hermitian(int n, uint64_t seed) {
    Rng rng(seed);
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = rng.gaussian();
        for (int j = i + 1; j < n; ++j) {
            cplx v = rng.cgauss();
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

// Faddeev-LeVerrier characteristic polynomial coefficients: det(tI - A) =
// t^n + c[1] t^{n-1} + ... + c[n]. Independent of any eigensolver.
std::vector<double> char_poly(const Mat& a) {
    int n = a.rows();
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    Mat m(n, n);
    for (int k = 1; k <= n; ++k) {
        m = a * m;
        for (int i = 0; i < n; ++i) m(i, i) += c[k - 1];
        c[k] = -mat_trace(a * m).real() / k;
    }
    return c;
}

double eval_poly(const std::vector<double>& c, double t) {
    double acc = 0;
    for (double ck : c) acc = acc * t + ck;
    return acc;
}

}  // namespace

TEST_CASE("jacobi: identity and pauli-x") {
    auto e = hermitian_eig_mat(Mat::identity(3));
    for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    Mat x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    auto p = hermitian_eig_mat(x);
    CHECK(p.values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.values[1] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("jacobi: residuals, orthonormality, char-poly oracle on random 6x6") {
    for (uint64_t seed : {11ull, 22ull, 33ull}) {
        Mat a = random_hermitian(6, seed);
        double scale = frob_norm(a);
        auto e = hermitian_eig_mat(a);

        for (int j = 0; j < 6; ++j) {
            double res = 0;
            for (int i = 0; i < 6; ++i) {
                cplx acc{};
                for (int k = 0; k < 6; ++k) acc += a(i, k) * e.vectors(k, j);
                res += std::norm(acc - e.values[j] * e.vectors(i, j));
            }
            CHECK(std::sqrt(res) <= 1e-10 * scale);
        }

        Mat gram = adjoint(e.vectors) * e.vectors;
        CHECK(frob_norm(gram - Mat::identity(6)) <= 1e-10);

        auto cp = char_poly(a);
        // Derivative bound so the root check is scale-aware.
        for (double v : e.values) {
            CHECK(std::abs(eval_poly(cp, v)) <= 1e-8 * std::pow(std::max(scale, 1.0), 6.0));
        }
        CHECK(std::is_sorted(e.values.begin(), e.values.end(), std::greater<>()));
    }
}

TEST_CASE("jacobi: diagonal input converges immediately") {
    Mat d(4, 4);
    d(0, 0) = 3;
    d(1, 1) = -1;
    d(2, 2) = 7;
    d(3, 3) = 0.5;
    auto e = hermitian_eig_mat(d);
    CHECK(e.sweeps == 0);
    CHECK(e.values[0] == doctest::Approx(7.0));
    CHECK(e.values[3] == doctest::Approx(-1.0));
}

TEST_CASE("singular data reconstructs the matrix") {
    Rng rng(99);
    Mat x(5, 5);
    for (auto& v : x.raw()) v = rng.cgauss();
    SingularData sd = singular_data_mat(x);
    Mat rec(5, 5);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k)
                rec(i, k) += sd.values[j] * sd.left(i, j) * std::conj(sd.right(k, j));
    CHECK(frob_norm(rec - x) <= 1e-10 * frob_norm(x));
    CHECK(std::is_sorted(sd.values.begin(), sd.values.end(), std::greater<>()));
}

TEST_CASE("sweep cap raises NoConvergence") {
    Mat x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    CHECK_THROWS_WITH_AS(hermitian_eig_mat(x, 1e-13, 0), doctest::Contains("NoConvergence"),
                         Error);
}

TEST_CASE("deterministic output across repeated runs") {
    Mat a = random_hermitian(5, 1234);
    auto e1 = hermitian_eig_mat(a);
    auto e2 = hermitian_eig_mat(a);
    CHECK(e1.values == e2.values);
    for (size_t k = 0; k < e1.vectors.raw().size(); ++k)
        CHECK(e1.vectors.raw()[k] == e2.vectors.raw()[k]);
}
