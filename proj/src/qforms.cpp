#include "kbound/qforms.hpp"

#include "kbound/errors.hpp"

#include <numeric>

namespace kbound::qforms {

namespace {

Int gcd_int(Int a, Int b) {
    return boost::multiprecision::gcd(a, b);
}

bool check_integral(const IMat& num, const Int& den) {
    for (int i = 0; i < num.rows(); ++i)
        for (int j = 0; j < num.cols(); ++j) {
            Int c = i == j ? num(i, j) : 2 * num(i, j);
            if (c % den != 0) return false;
        }
    return true;
}

QuadraticForm normalize(IMat num, Int den) {
    if (den <= 0) throw std::domain_error("QuadraticForm: denominator must be positive");
    if (!num.is_symmetric()) throw std::domain_error("QuadraticForm: Gram matrix must be symmetric");
    Int g = den;
    for (int i = 0; i < num.rows() && g > 1; ++i)
        for (int j = 0; j < num.cols() && g > 1; ++j) g = gcd_int(g, num(i, j));
    if (g > 1) {
        den /= g;
        for (int i = 0; i < num.rows(); ++i)
            for (int j = 0; j < num.cols(); ++j) num(i, j) /= g;
    }
    QuadraticForm q;
    q.rank = num.rows();
    q.integral = check_integral(num, den);
    q.num = std::move(num);
    q.den = std::move(den);
    return q;
}

} // namespace

Rat QuadraticForm::coeff(int i, int j) const {
    if (i == j) return Rat(num(i, i), den);
    return Rat(2 * num(i, j), den);
}

QuadraticForm from_doubled_gram(const IMat& doubled) {
    return normalize(doubled, 2);
}

QuadraticForm from_scaled_gram(const IMat& num, const Int& den) {
    return normalize(num, den);
}

QuadraticForm dynkin_a(int t) {
    if (t < 1) throw std::domain_error("dynkin_a: rank must be >= 1");
    IMat dg(t, t);
    for (int i = 0; i < t; ++i) {
        dg(i, i) = 2;
        if (i + 1 < t) {
            dg(i, i + 1) = -1;
            dg(i + 1, i) = -1;
        }
    }
    return from_doubled_gram(dg);
}

QuadraticForm tensor(const QuadraticForm& a, const QuadraticForm& b) {
    return normalize(kron(a.num, b.num), a.den * b.den);
}

bool positive_definite(const QuadraticForm& q) {
    return is_positive_definite(q.num);
}

Rat evaluate(const QuadraticForm& q, const std::vector<Int>& x) {
    if (static_cast<int>(x.size()) != q.rank) throw std::domain_error("evaluate: wrong length");
    Int acc = 0;
    for (int i = 0; i < q.rank; ++i) {
        if (x[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < q.rank; ++j)
            acc += x[static_cast<size_t>(i)] * q.num(i, j) * x[static_cast<size_t>(j)];
    }
    return Rat(acc, q.den);
}

namespace {

// Exact Lagrange decomposition q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
struct Ldl {
    std::vector<Rat> d;
    QMat u;
};

Ldl decompose(const QuadraticForm& q) {
    int n = q.rank;
    QMat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Rat(q.num(i, j), q.den);
    Ldl out;
    out.d.resize(static_cast<size_t>(n));
    out.u = QMat(n, n);
    for (int k = 0; k < n; ++k) {
        if (a(k, k) <= 0) throw std::domain_error("minimum_at_least_one: form not positive definite");
        out.d[static_cast<size_t>(k)] = a(k, k);
        for (int j = k + 1; j < n; ++j) out.u(k, j) = a(k, j) / a(k, k);
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a(i, j) -= a(k, i) * a(k, j) / a(k, k);
    }
    return out;
}

// Depth-first walk over all integer points with q(x) < 1; returns true if a
// nonzero one exists.  Coordinates are fixed from the last down to the first,
// so the center of each layer is known exactly.
bool search_below_one(const Ldl& ldl, std::vector<Int>& x, int level, const Rat& used) {
    int n = static_cast<int>(x.size());
    if (level < 0) {
        for (const Int& v : x)
            if (v != 0) return true;
        return false;
    }
    Rat c = 0;
    for (int j = level + 1; j < n; ++j) c += ldl.u(level, j) * Rat(x[static_cast<size_t>(j)]);
    Rat room = 1 - used;
    const Rat& d = ldl.d[static_cast<size_t>(level)];
    // d*(t + c)^2 < room, scanning outward from the center -c.
    Int t0 = floor_rat(-c);
    for (Int t = t0;; --t) {
        Rat term = d * (Rat(t) + c) * (Rat(t) + c);
        if (term >= room) break;
        x[static_cast<size_t>(level)] = t;
        if (search_below_one(ldl, x, level - 1, used + term)) return true;
    }
    for (Int t = t0 + 1;; ++t) {
        Rat term = d * (Rat(t) + c) * (Rat(t) + c);
        if (term >= room) break;
        x[static_cast<size_t>(level)] = t;
        if (search_below_one(ldl, x, level - 1, used + term)) return true;
    }
    x[static_cast<size_t>(level)] = 0;
    return false;
}

} // namespace

bool minimum_at_least_one(const QuadraticForm& q, int rank_cap) {
    if (q.rank > rank_cap) throw CapExceeded("minimum_at_least_one: rank cap exceeded");
    Ldl ldl = decompose(q); // also verifies positive definiteness
    std::vector<Int> x(static_cast<size_t>(q.rank), Int(0));
    return !search_below_one(ldl, x, q.rank - 1, Rat(0));
}

Rat weighted_sum(const QuadraticForm& q, const IMat& m) {
    if (m.rows() != q.rank || m.cols() != q.rank)
        throw std::domain_error("weighted_sum: size mismatch");
    Int acc = 0;
    for (int i = 0; i < q.rank; ++i)
        for (int j = 0; j < q.rank; ++j) acc += q.num(i, j) * m(i, j);
    return Rat(acc, q.den);
}

namespace {

Int integral_scaled_sum(const QuadraticForm& q, const IMat& cartan_bar, const Int& factor,
                        const char* who) {
    if (!q.integral) throw std::domain_error(std::string(who) + ": form must be integral");
    Rat v = weighted_sum(q, cartan_bar) * Rat(factor);
    if (boost::multiprecision::denominator(v) != 1)
        throw std::logic_error(std::string(who) + ": non-integral bound from integral form");
    return boost::multiprecision::numerator(v);
}

} // namespace

Int bound_outer(const QuadraticForm& q, const IMat& cartan_bar, const Int& u_order) {
    return integral_scaled_sum(q, cartan_bar, u_order, "bound_outer");
}

Int bound_stable(const QuadraticForm& q, const IMat& cartan_bar, const Int& k0) {
    return integral_scaled_sum(q, cartan_bar, k0, "bound_stable");
}

IMat change_basic_set(const IMat& cartan, const IMat& s) {
    if (cartan.rows() != cartan.cols() || s.rows() != s.cols() || s.rows() != cartan.rows())
        throw std::domain_error("change_basic_set: size mismatch");
    Int d = det_bareiss(s);
    if (d != 1 && d != -1) throw std::domain_error("change_basic_set: S is not unimodular");
    IMat out = s * cartan * s.transpose();
    if (!is_positive_definite(out))
        throw std::logic_error("change_basic_set: congruence lost positive definiteness");
    return out;
}

QuadraticForm contragredient(const QuadraticForm& q, const IMat& s) {
    IMat si = unimodular_inverse(s);
    return from_scaled_gram(si.transpose() * q.num * si, q.den);
}

} // namespace kbound::qforms
