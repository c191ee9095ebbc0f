#include "kbound/lattice.hpp"

#include "kbound/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

namespace kbound::lattice {

namespace {

// Row echelon form over Z by unimodular row operations; returns the transform
// v with v * a = echelon (zero rows at the bottom) and the rank.
std::pair<IMat, int> integer_row_echelon(IMat a) {
    int rows = a.rows(), cols = a.cols();
    IMat v = IMat::identity(rows);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        for (;;) {
            int piv = -1;
            Int best = 0;
            for (int i = row; i < rows; ++i) {
                if (a(i, col) == 0) continue;
                Int mag = a(i, col) < 0 ? Int(-a(i, col)) : a(i, col);
                if (piv < 0 || mag < best) {
                    piv = i;
                    best = mag;
                }
            }
            if (piv < 0) break;
            if (piv != row) {
                for (int j = 0; j < cols; ++j) std::swap(a(row, j), a(piv, j));
                for (int j = 0; j < rows; ++j) std::swap(v(row, j), v(piv, j));
            }
            bool clean = true;
            for (int i = row + 1; i < rows; ++i) {
                if (a(i, col) == 0) continue;
                Int q = floor_div(a(i, col), a(row, col));
                if (q != 0) {
                    for (int j = 0; j < cols; ++j) a(i, j) -= q * a(row, j);
                    for (int j = 0; j < rows; ++j) v(i, j) -= q * v(row, j);
                }
                if (a(i, col) != 0) clean = false;
            }
            if (clean) {
                if (a(row, col) < 0) {
                    for (int j = 0; j < cols; ++j) a(row, j) = -a(row, j);
                    for (int j = 0; j < rows; ++j) v(row, j) = -v(row, j);
                }
                ++row;
                break;
            }
        }
    }
    return {v, row};
}

struct Gso {
    std::vector<Rat> b;
    QMat mu;
};

Gso gram_schmidt(const IMat& g) {
    int n = g.rows();
    Gso out;
    out.b.resize(static_cast<size_t>(n));
    out.mu = QMat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            Rat acc = Rat(g(i, j));
            for (int k = 0; k < j; ++k)
                acc -= out.mu(j, k) * out.mu(i, k) * out.b[static_cast<size_t>(k)];
            if (out.b[static_cast<size_t>(j)] == 0)
                throw std::domain_error("lll: matrix not positive definite");
            out.mu(i, j) = acc / out.b[static_cast<size_t>(j)];
        }
        Rat bi = Rat(g(i, i));
        for (int k = 0; k < i; ++k)
            bi -= out.mu(i, k) * out.mu(i, k) * out.b[static_cast<size_t>(k)];
        if (bi <= 0) throw std::domain_error("lll: matrix not positive definite");
        out.b[static_cast<size_t>(i)] = bi;
    }
    return out;
}

void row_col_sub(IMat& g, int k, int j, const Int& q) {
    int n = g.rows();
    for (int c = 0; c < n; ++c) g(k, c) -= q * g(j, c);
    for (int r = 0; r < n; ++r) g(r, k) -= q * g(r, j);
}

void row_col_swap(IMat& g, int k) {
    int n = g.rows();
    for (int c = 0; c < n; ++c) std::swap(g(k, c), g(k - 1, c));
    for (int r = 0; r < n; ++r) std::swap(g(r, k), g(r, k - 1));
}

} // namespace

ReductionResult lll(const GramMatrix& m, const Rat& delta) {
    if (delta <= Rat(1, 4) || delta > 1) throw std::domain_error("lll: delta outside (1/4, 1]");
    int n = m.size();
    if (n == 0) return {GramMatrix(IMat(0, 0), false), IMat(0, 0), {}};
    IMat g = m.m;
    IMat w = IMat::identity(n);

    int k = 1;
    Gso gso = gram_schmidt(g); // also the positive definiteness gate
    auto size_reduce = [&](int kk, int j) {
        Int q = round_rat(gso.mu(kk, j));
        if (q != 0) {
            row_col_sub(g, kk, j, q);
            for (int c = 0; c < n; ++c) w(kk, c) -= q * w(j, c);
            gso = gram_schmidt(g);
        }
    };
    while (k < n) {
        size_reduce(k, k - 1);
        Rat lhs = gso.b[static_cast<size_t>(k)];
        Rat rhs = (delta - gso.mu(k, k - 1) * gso.mu(k, k - 1)) * gso.b[static_cast<size_t>(k - 1)];
        if (lhs < rhs) {
            row_col_swap(g, k);
            for (int c = 0; c < n; ++c) std::swap(w(k, c), w(k - 1, c));
            gso = gram_schmidt(g);
            k = std::max(k - 1, 1);
        } else {
            for (int j = k - 2; j >= 0; --j) size_reduce(k, j);
            ++k;
        }
    }

    // Both reduction conditions must hold on the result.
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            Rat a = gso.mu(i, j) < 0 ? Rat(-gso.mu(i, j)) : gso.mu(i, j);
            if (a > Rat(1, 2)) throw std::logic_error("lll: size reduction failed");
        }
        Rat lhs = gso.b[static_cast<size_t>(i)];
        Rat rhs = (delta - gso.mu(i, i - 1) * gso.mu(i, i - 1)) * gso.b[static_cast<size_t>(i - 1)];
        if (lhs < rhs) throw std::logic_error("lll: Lovasz condition failed");
    }

    ReductionResult out;
    out.reduced = GramMatrix(g, false);
    out.transform = unimodular_inverse(w);
    if (out.transform * g * out.transform.transpose() != m.m)
        throw std::logic_error("lll: transform does not reproduce the input");
    return out;
}

ReductionResult prune(const GramMatrix& m, const Rat& delta) {
    int n = m.size();
    std::vector<int> keep, dropped;
    for (int i = 0; i < n; ++i) {
        bool zero = true;
        for (int j = 0; j < n && zero; ++j)
            if (m.m(i, j) != 0) zero = false;
        (zero ? dropped : keep).push_back(i);
    }
    int n1 = static_cast<int>(keep.size());
    IMat m1(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) m1(i, j) = m.m(keep[static_cast<size_t>(i)], keep[static_cast<size_t>(j)]);

    // Unimodular change of generators putting the kernel last: v*m1 has its
    // zero rows at the bottom, so v m1 v^T ends in zero rows AND columns.
    auto [v, rank] = integer_row_echelon(m1);
    IMat g_full = v * m1 * v.transpose();
    IMat g(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = g_full(i, j);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            if ((i >= rank || j >= rank) && g_full(i, j) != 0)
                throw std::logic_error("prune: kernel block not annihilated");

    // Coordinates of the original generators over the new basis: the first
    // `rank` columns of v^(-1).
    IMat vi = unimodular_inverse(v);
    IMat coords(n1, rank);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < rank; ++j) coords(i, j) = vi(i, j);

    ReductionResult red = rank > 0 ? lll(GramMatrix(g, false), delta)
                                   : ReductionResult{GramMatrix(IMat(0, 0), false), IMat(0, 0), {}};
    IMat coords_red = coords * red.transform;

    ReductionResult out;
    out.reduced = red.reduced;
    out.dropped_rows = dropped;
    out.transform = IMat(n, rank);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < rank; ++j) out.transform(keep[static_cast<size_t>(i)], j) = coords_red(i, j);
    if (out.transform * out.reduced.m * out.transform.transpose() != m.m)
        throw std::logic_error("prune: transform does not reproduce the input");
    return out;
}

std::vector<std::pair<std::vector<Int>, Int>> vectors_up_to_norm(const IMat& a, const Int& bound) {
    int n = a.rows();
    if (!is_positive_definite(a)) throw std::domain_error("vectors_up_to_norm: not positive definite");
    // Lagrange data d_i, u_ij with x^T a x = sum d_i (x_i + sum_{j>i} u_ij x_j)^2.
    QMat w = to_rational(a);
    std::vector<Rat> d(static_cast<size_t>(n));
    QMat u(n, n);
    for (int k = 0; k < n; ++k) {
        d[static_cast<size_t>(k)] = w(k, k);
        for (int j = k + 1; j < n; ++j) u(k, j) = w(k, j) / w(k, k);
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) w(i, j) -= w(k, i) * w(k, j) / w(k, k);
    }

    std::vector<std::pair<std::vector<Int>, Int>> out;
    std::vector<Int> x(static_cast<size_t>(n), Int(0));
    Rat cap = Rat(bound);

    auto norm_of = [&](const std::vector<Int>& vec) {
        Int acc = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += vec[static_cast<size_t>(i)] * a(i, j) * vec[static_cast<size_t>(j)];
        return acc;
    };

    std::function<void(int, Rat)> walk = [&](int level, Rat used) {
        if (level < 0) {
            int lead = -1;
            for (int i = 0; i < n; ++i)
                if (x[static_cast<size_t>(i)] != 0) { lead = i; break; }
            if (lead < 0) return;                      // zero vector
            if (x[static_cast<size_t>(lead)] < 0) return; // sign representative only
            out.emplace_back(x, norm_of(x));
            return;
        }
        Rat c = 0;
        for (int j = level + 1; j < n; ++j) c += u(level, j) * Rat(x[static_cast<size_t>(j)]);
        const Rat& dk = d[static_cast<size_t>(level)];
        Int t0 = floor_rat(-c);
        for (Int t = t0;; --t) {
            Rat term = dk * (Rat(t) + c) * (Rat(t) + c);
            if (used + term > cap) break;
            x[static_cast<size_t>(level)] = t;
            walk(level - 1, used + term);
        }
        for (Int t = t0 + 1;; ++t) {
            Rat term = dk * (Rat(t) + c) * (Rat(t) + c);
            if (used + term > cap) break;
            x[static_cast<size_t>(level)] = t;
            walk(level - 1, used + term);
        }
        x[static_cast<size_t>(level)] = 0;
    };
    if (n > 0 && bound >= 0) walk(n - 1, Rat(0));
    std::sort(out.begin(), out.end());
    return out;
}

bool congruent(const GramMatrix& a, const GramMatrix& b, int size_cap) {
    if (a.size() != b.size()) return false;
    int n = a.size();
    if (n > size_cap) throw CapExceeded("congruent: size cap exceeded");
    if (n == 0) return true;
    if (!is_positive_definite(a.m) || !is_positive_definite(b.m))
        throw std::domain_error("congruent: positive definite matrices required");
    if (det_bareiss(a.m) != det_bareiss(b.m)) return false;

    Int max_diag = 0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, b.m(i, i));
    auto shorts = vectors_up_to_norm(a.m, max_diag);
    std::map<Int, std::vector<std::vector<Int>>> by_norm;
    for (auto& [vec, norm] : shorts) by_norm[norm].push_back(vec);

    auto inner = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        Int acc = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += x[static_cast<size_t>(i)] * a.m(i, j) * y[static_cast<size_t>(j)];
        return acc;
    };

    std::vector<std::vector<Int>> chosen;
    std::function<bool(int)> place = [&](int i) {
        if (i == n) return true;
        auto it = by_norm.find(b.m(i, i));
        if (it == by_norm.end()) return false;
        for (const auto& cand : it->second)
            for (int sign = 0; sign < 2; ++sign) {
                std::vector<Int> v = cand;
                if (sign) for (Int& t : v) t = -t;
                bool ok = true;
                for (int j = 0; j < i && ok; ++j)
                    if (inner(v, chosen[static_cast<size_t>(j)]) != b.m(i, j)) ok = false;
                if (!ok) continue;
                chosen.push_back(std::move(v));
                if (place(i + 1)) return true;
                chosen.pop_back();
            }
        return false;
    };
    return place(0);
}

std::vector<Int> smith_normal_form(IMat m) {
    int rows = m.rows(), cols = m.cols();
    int t = 0;
    int limit = std::min(rows, cols);
    std::vector<Int> divisors;

    while (t < limit) {
        // Pivot: nonzero entry of smallest magnitude in the remaining block.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m(i, j) == 0) continue;
                Int mag = m(i, j) < 0 ? Int(-m(i, j)) : m(i, j);
                if (pi < 0 || mag < best) {
                    pi = i;
                    pj = j;
                    best = mag;
                }
            }
        if (pi < 0) break;
        for (int j = 0; j < cols; ++j) std::swap(m(t, j), m(pi, j));
        for (int i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pj));

        bool settled = false;
        while (!settled) {
            settled = true;
            for (int i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                Int q = floor_div(m(i, t), m(t, t));
                for (int j = 0; j < cols; ++j) m(i, j) -= q * m(t, j);
                if (m(i, t) != 0) {
                    for (int j = 0; j < cols; ++j) std::swap(m(t, j), m(i, j));
                    settled = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                Int q = floor_div(m(t, j), m(t, t));
                for (int i = 0; i < rows; ++i) m(i, j) -= q * m(i, t);
                if (m(t, j) != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(m(i, t), m(i, j));
                    settled = false;
                }
            }
            if (settled) {
                // Divisibility: fold in any offending entry and restart the
                // clearing loop.
                for (int i = t + 1; i < rows && settled; ++i)
                    for (int j = t + 1; j < cols && settled; ++j)
                        if (m(i, j) % m(t, t) != 0) {
                            for (int c = 0; c < cols; ++c) m(t, c) += m(i, c);
                            settled = false;
                        }
            }
        }
        if (m(t, t) < 0)
            for (int j = 0; j < cols; ++j) m(t, j) = -m(t, j);
        divisors.push_back(m(t, t));
        ++t;
    }
    while (static_cast<int>(divisors.size()) < limit) divisors.push_back(0);
    return divisors;
}

} // namespace kbound::lattice
