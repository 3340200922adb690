#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

namespace ncup {

using cplx = std::complex<double>;

// Dense row-major complex matrix, value semantics. Everything in this
// project is desk scale (d <= ~1024), so there is no view machinery and
// no attempt at blocking.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    std::vector<cplx>& raw() { return a_; }
    const std::vector<cplx>& raw() const { return a_; }

    Mat& operator+=(const Mat& o) {
        assert(r_ == o.r_ && c_ == o.c_);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        assert(r_ == o.r_ && c_ == o.c_);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<cplx> a_;
};

inline Mat operator+(Mat a, const Mat& b) { return a += b; }
inline Mat operator-(Mat a, const Mat& b) { return a -= b; }
inline Mat operator*(cplx s, Mat a) { return a *= s; }

inline Mat operator*(const Mat& a, const Mat& b) {
    assert(a.cols() == b.rows());
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline Mat adjoint(const Mat& a) {
    Mat b(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) b(j, i) = std::conj(a(i, j));
    return b;
}

inline cplx mat_trace(const Mat& a) {
    assert(a.rows() == a.cols());
    cplx t{};
    for (int i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

inline double frob_norm(const Mat& a) {
    double s = 0;
    for (const auto& v : a.raw()) s += std::norm(v);
    return std::sqrt(s);
}

inline double max_abs(const Mat& a) {
    double m = 0;
    for (const auto& v : a.raw()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace ncup
