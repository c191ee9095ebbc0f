#include "kbound/gram_search.hpp"

#include "kbound/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace kbound::gram_search {

namespace {

using I128 = __int128;

// Residuals stay bounded by the starting diagonal, so one guard computed from
// m covers every positive semidefiniteness test of the search.
bool fast_psd_safe(const std::vector<long>& m, int t) {
    long e = 1;
    for (const long v : m) e = std::max(e, std::abs(v));
    Int bound = 2 * pow_int(Int(e) * e * std::max(t, 1), static_cast<unsigned long>(t));
    return bound < (Int(1) << 126);
}

// Symmetric fraction-free elimination.  A zero pivot forces its whole row to
// vanish (else not psd); nonzero pivots must be positive.
bool psd_fast(std::vector<I128>& a, int t) {
    I128 prev = 1;
    for (int k = 0; k < t; ++k) {
        I128 d = a[size_t(k) * t + k];
        if (d < 0) return false;
        if (d == 0) {
            for (int j = k + 1; j < t; ++j)
                if (a[size_t(k) * t + j] != 0) return false;
            continue;
        }
        for (int i = k + 1; i < t; ++i)
            for (int j = i; j < t; ++j)
                a[size_t(i) * t + j] =
                    (a[size_t(i) * t + j] * d - a[size_t(k) * t + i] * a[size_t(k) * t + j]) / prev;
        prev = d;
    }
    return true;
}

long isqrt_long(long v) {
    long r = 0;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

class Searcher {
public:
    Searcher(const GramMatrix& gm, long long budget) : budget_(budget) {
        t_ = gm.size();
        m_.resize(size_t(t_) * t_);
        for (int i = 0; i < t_; ++i)
            for (int j = 0; j < t_; ++j) {
                const Int& v = gm.m(i, j);
                if (!fits_long(v) || v > 1000000 || v < -1000000)
                    throw CapExceeded("gram search: entries above desk scale");
                m_[size_t(i) * t_ + j] = static_cast<long>(to_long(v));
            }
        fast_ = fast_psd_safe(m_, t_);
        build_candidates();
    }

    SearchResult find_max() {
        best_ = 0;
        best_rows_.clear();
        mode_all_ = false;
        stack_.clear();
        dfs(m_, 0, 0);
        SearchResult r;
        r.k = best_;
        r.witness.rows = best_rows_;
        r.optimal = !truncated_;
        r.nodes = nodes_;
        return r;
    }

    Enumeration enumerate(long k) {
        mode_all_ = true;
        target_ = k;
        all_.clear();
        stack_.clear();
        dfs(m_, 0, 0);
        Enumeration e;
        e.decompositions = std::move(all_);
        e.complete = !truncated_;
        e.nodes = nodes_;
        return e;
    }

private:
    void build_candidates() {
        std::vector<long> bound(t_);
        Int count = 1;
        for (int i = 0; i < t_; ++i) {
            bound[i] = isqrt_long(m_[size_t(i) * t_ + i]);
            count *= 2 * bound[i] + 1;
            if (count > 4000000) throw CapExceeded("gram search: candidate space too large");
        }
        std::vector<long> v(t_);
        for (int first = 0; first < t_; ++first) {
            std::fill(v.begin(), v.end(), 0);
            gen(first, first, bound, v);
        }
        std::sort(cands_.begin(), cands_.end(),
                  [](const auto& a, const auto& b) { return a > b; });
    }

    void gen(int pos, int first, const std::vector<long>& bound, std::vector<long>& v) {
        if (pos == t_) {
            if (residual_psd(m_, v)) cands_.push_back(v);
            return;
        }
        long lo = pos == first ? 1 : -bound[pos];
        if (pos < first) lo = 0;
        long hi = pos < first ? 0 : bound[pos];
        for (long x = lo; x <= hi; ++x) {
            v[pos] = x;
            gen(pos + 1, first, bound, v);
        }
        v[pos] = 0;
    }

    bool residual_psd(const std::vector<long>& r, const std::vector<long>& v) {
        for (int i = 0; i < t_; ++i)
            if (v[i] * v[i] > r[size_t(i) * t_ + i]) return false;
        if (fast_) {
            std::vector<I128> a(size_t(t_) * t_);
            for (int i = 0; i < t_; ++i)
                for (int j = i; j < t_; ++j)
                    a[size_t(i) * t_ + j] = I128(r[size_t(i) * t_ + j]) - I128(v[i]) * v[j];
            return psd_fast(a, t_);
        }
        IMat a(t_, t_);
        for (int i = 0; i < t_; ++i)
            for (int j = 0; j < t_; ++j) a(i, j) = Int(r[size_t(i) * t_ + j]) - Int(v[i]) * v[j];
        return is_psd(a);
    }

    static bool is_zero(const std::vector<long>& r) {
        return std::all_of(r.begin(), r.end(), [](long v) { return v == 0; });
    }

    long trace(const std::vector<long>& r) const {
        long tr = 0;
        for (int i = 0; i < t_; ++i) tr += r[size_t(i) * t_ + i];
        return tr;
    }

    void dfs(const std::vector<long>& r, int start, int depth) {
        if (truncated_) return;
        if (is_zero(r)) {
            if (mode_all_) {
                if (depth == target_) {
                    Decomposition d;
                    d.rows = stack_;
                    all_.push_back(std::move(d));
                }
            } else if (depth > best_) {
                best_ = depth;
                best_rows_ = stack_;
            }
            return;
        }
        long tr = trace(r);
        if (mode_all_) {
            if (depth >= target_ || depth + tr < target_) return;
        } else if (depth + tr <= best_) {
            return;
        }
        for (int idx = start; idx < static_cast<int>(cands_.size()); ++idx) {
            if (++nodes_ > budget_) {
                truncated_ = true;
                return;
            }
            const std::vector<long>& v = cands_[idx];
            if (!residual_psd(r, v)) continue;
            std::vector<long> r2(r);
            for (int i = 0; i < t_; ++i)
                for (int j = 0; j < t_; ++j) r2[size_t(i) * t_ + j] -= v[i] * v[j];
            stack_.push_back(v);
            dfs(r2, idx, depth + 1);
            stack_.pop_back();
            if (truncated_) return;
        }
    }

    int t_ = 0;
    std::vector<long> m_;
    std::vector<std::vector<long>> cands_;
    bool fast_ = false;
    long long budget_ = 0, nodes_ = 0;
    bool truncated_ = false;
    bool mode_all_ = false;
    long best_ = 0, target_ = 0;
    std::vector<std::vector<long>> stack_, best_rows_;
    std::vector<Decomposition> all_;
};

std::vector<long> apply_map(const std::vector<int>& map, const std::vector<long>& v) {
    std::vector<long> w(v.size(), 0);
    for (size_t i = 0; i < v.size(); ++i) {
        int img = map[i];
        int col = std::abs(img) - 1;
        w[col] = (img > 0 ? v[i] : -v[i]);
    }
    return w;
}

void sign_normalize(std::vector<long>& v) {
    for (long x : v) {
        if (x > 0) return;
        if (x < 0) {
            for (long& y : v) y = -y;
            return;
        }
    }
}

} // namespace

SearchResult max_k(const GramMatrix& m, long long budget) {
    if (m.size() == 0) return SearchResult{};
    Searcher s(m, budget);
    return s.find_max();
}

Enumeration all_max_decompositions(const GramMatrix& m, long k, long long budget) {
    if (m.size() == 0) {
        Enumeration e;
        if (k == 0) e.decompositions.push_back(Decomposition{});
        return e;
    }
    Searcher s(m, budget);
    return s.enumerate(k);
}

long max_k_reference(const GramMatrix& gm) {
    int t = gm.size();
    Int tr = 0;
    for (int i = 0; i < t; ++i) tr += gm.m(i, i);
    if (t > 4 || tr > 16) throw CapExceeded("max_k_reference: tiny inputs only");

    long best = 0;
    // Plain recursion, no positive semidefiniteness pruning: residuals only
    // need nonnegative diagonals to go on, and count when hitting zero.
    auto rec = [&](auto&& self, const IMat& r, const std::vector<long>& prev, long depth) -> void {
        if (r.is_zero()) {
            best = std::max(best, depth);
            return;
        }
        std::vector<long> bound(t);
        for (int i = 0; i < t; ++i) {
            if (r(i, i) < 0) return;
            bound[i] = static_cast<long>(to_long(isqrt(r(i, i))));
        }
        std::vector<long> v(t, 0);
        auto gen = [&](auto&& g, int pos, int first) -> void {
            if (pos == t) {
                if (!prev.empty() && v > prev) return;
                IMat r2(t, t);
                for (int i = 0; i < t; ++i)
                    for (int j = 0; j < t; ++j) r2(i, j) = r(i, j) - Int(v[i]) * v[j];
                self(self, r2, v, depth + 1);
                return;
            }
            long lo = pos == first ? 1 : (pos < first ? 0 : -bound[pos]);
            long hi = pos < first ? 0 : bound[pos];
            for (long x = lo; x <= hi; ++x) {
                v[pos] = x;
                g(g, pos + 1, first);
            }
            v[pos] = 0;
        };
        for (int first = 0; first < t; ++first) gen(gen, first, first);
    };
    rec(rec, gm.m, {}, 0);
    return best;
}

Int quick_upper_bound(const GramMatrix& m, const qforms::QuadraticForm& q) {
    if (q.num.rows() != m.size())
        throw std::domain_error("quick_upper_bound: form rank must match the matrix");
    if (!qforms::positive_definite(q) || !qforms::minimum_at_least_one(q))
        throw std::domain_error("quick_upper_bound: form minimum below one");
    return floor_rat(qforms::weighted_sum(q, m.m));
}

std::vector<std::vector<int>> signed_automorphisms(const GramMatrix& gm) {
    int t = gm.size();
    std::vector<std::vector<int>> out;
    std::vector<int> map(t, 0);
    std::vector<char> used(t, 0);
    auto consistent = [&](int i, int img) {
        int col = std::abs(img) - 1;
        long si = img > 0 ? 1 : -1;
        if (gm.m(i, i) != gm.m(col, col)) return false;
        for (int i2 = 0; i2 < i; ++i2) {
            int col2 = std::abs(map[i2]) - 1;
            long s2 = map[i2] > 0 ? 1 : -1;
            if (gm.m(i2, i) * (si * s2) != gm.m(col2, col)) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int i) -> void {
        if (i == t) {
            out.push_back(map);
            return;
        }
        for (int col = 0; col < t; ++col) {
            if (used[col]) continue;
            for (int sign = 1; sign >= -1; sign -= 2) {
                int img = sign * (col + 1);
                if (!consistent(i, img)) continue;
                map[i] = img;
                used[col] = 1;
                self(self, i + 1);
                used[col] = 0;
            }
        }
        map[i] = 0;
    };
    rec(rec, 0);
    return out;
}

long equivalence_classes(const GramMatrix& m, const std::vector<Decomposition>& ds) {
    auto autos = signed_automorphisms(m);
    std::set<std::vector<std::vector<long>>> canon;
    for (const Decomposition& d : ds) {
        std::vector<std::vector<long>> least;
        bool have = false;
        for (const auto& a : autos) {
            std::vector<std::vector<long>> rows;
            for (const auto& row : d.rows) {
                std::vector<long> w = apply_map(a, row);
                sign_normalize(w);
                rows.push_back(std::move(w));
            }
            std::sort(rows.begin(), rows.end(), std::greater<>());
            if (!have || rows < least) {
                least = std::move(rows);
                have = true;
            }
        }
        canon.insert(least);
    }
    return static_cast<long>(canon.size());
}

} // namespace kbound::gram_search
