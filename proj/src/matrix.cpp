#include "kbound/matrix.hpp"

namespace kbound {

IMat unimodular_inverse(const IMat& s) {
    int n = s.rows();
    if (n != s.cols()) throw std::domain_error("unimodular_inverse: square matrix required");
    Int d = det_bareiss(s);
    if (d != 1 && d != -1) throw std::domain_error("unimodular_inverse: determinant not +-1");
    // Gauss-Jordan over the rationals; the result is integral because det = +-1.
    QMat w(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w(i, j) = Rat(s(i, j));
        w(i, n + i) = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (w(i, col) != 0) { piv = i; break; }
        if (piv < 0) throw std::logic_error("unimodular_inverse: singular");
        for (int j = 0; j < 2 * n; ++j) std::swap(w(col, j), w(piv, j));
        Rat pv = w(col, col);
        for (int j = 0; j < 2 * n; ++j) w(col, j) /= pv;
        for (int i = 0; i < n; ++i) {
            if (i == col || w(i, col) == 0) continue;
            Rat f = w(i, col);
            for (int j = 0; j < 2 * n; ++j) w(i, j) -= f * w(col, j);
        }
    }
    IMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rat& v = w(i, n + j);
            if (boost::multiprecision::denominator(v) != 1)
                throw std::logic_error("unimodular_inverse: non-integral inverse");
            inv(i, j) = boost::multiprecision::numerator(v);
        }
    return inv;
}

} // namespace kbound
