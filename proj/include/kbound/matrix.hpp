#pragma once

#include "kbound/ints.hpp"

#include <cassert>
#include <sstream>
#include <vector>

namespace kbound {

// Minimal dense matrix over an exact scalar type.  Only what the project
// needs; sizes are desk scale throughout.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), d_(size_t(rows) * size_t(cols)) {}
    Mat(int rows, int cols, std::vector<T> data) : rows_(rows), cols_(cols), d_(std::move(data)) {
        assert(d_.size() == size_t(rows) * size_t(cols));
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return d_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return d_[size_t(i) * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r(rows_, cols_);
        for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i] + o.d_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r(rows_, cols_);
        for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i] - o.d_[i];
        return r;
    }

    Mat operator*(const T& s) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < d_.size(); ++i) r.d_[i] = d_[i] * s;
        return r;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        for (const T& v : d_)
            if (v != 0) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        for (int i = 0; i < rows_; ++i) {
            os << (i == 0 ? "[" : " ");
            os << "[";
            for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
            os << "]" << (i + 1 == rows_ ? "]" : "\n");
        }
        return os.str();
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> d_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

inline QMat to_rational(const IMat& m) {
    QMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

inline IMat kron(const IMat& a, const IMat& b) {
    IMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

// Symmetric elimination over the rationals.  A symmetric matrix is positive
// semidefinite iff every pivot is nonnegative and a vanishing pivot forces its
// whole row to vanish.
inline bool is_psd(const IMat& m) {
    if (!m.is_symmetric()) return false;
    int n = m.rows();
    QMat a = to_rational(m);
    std::vector<int> live;
    for (int i = 0; i < n; ++i) live.push_back(i);
    while (!live.empty()) {
        int k = live.front();
        if (a(k, k) < 0) return false;
        if (a(k, k) == 0) {
            for (int j : live)
                if (a(k, j) != 0) return false;
            live.erase(live.begin());
            continue;
        }
        Rat piv = a(k, k);
        live.erase(live.begin());
        for (size_t x = 0; x < live.size(); ++x)
            for (size_t y = x; y < live.size(); ++y) {
                int i = live[x], j = live[y];
                a(i, j) -= a(k, i) * a(k, j) / piv;
                a(j, i) = a(i, j);
            }
    }
    return true;
}

inline bool is_positive_definite(const IMat& m) {
    if (!m.is_symmetric()) return false;
    int n = m.rows();
    QMat a = to_rational(m);
    for (int k = 0; k < n; ++k) {
        if (a(k, k) <= 0) return false;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a(i, j) -= a(k, i) * a(k, j) / a(k, k);
    }
    return true;
}

// Exact inverse of a unimodular integer matrix via rational elimination.
IMat unimodular_inverse(const IMat& s);

// Fraction-free determinant (Bareiss).  Exact for integer input.
inline Int det_bareiss(IMat a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { swap = i; break; }
            if (swap < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

} // namespace kbound
