#include "kbound/intbasis.hpp"

#include "kbound/errors.hpp"

#include <algorithm>
#include <numeric>

namespace kbound::intbasis {

std::vector<std::vector<long>> build_s_sets(const PrimePowerModulus& mod,
                                            const UnitSubgroup& subgroup,
                                            int up_to_level) {
    if (subgroup.mod != mod) throw std::domain_error("build_s_sets: modulus mismatch");
    UnitSubgroup h = subgroup.p_prime_part();
    std::vector<std::vector<long>> s_sets;
    for (int i = 1; i <= up_to_level; ++i) {
        auto orbits = cyclo::orbits_on_residues(h, i);
        std::vector<long> reps;
        for (const auto& orbit : orbits) {
            // The p'-part acts semiregularly on residues coprime to p.
            if (static_cast<long>(orbit.size()) != h.r)
                throw std::logic_error("build_s_sets: orbit size != r");
            reps.push_back(orbit.front());
        }
        std::sort(reps.begin(), reps.end());
        s_sets.push_back(std::move(reps));
    }
    return s_sets;
}

std::vector<TExponent> build_t_tagged(const PrimePowerModulus& mod,
                                      const UnitSubgroup& subgroup,
                                      int level) {
    if (level < 1 || level > mod.n)
        throw std::domain_error("build_t_tagged: level out of range");
    auto s_sets = build_s_sets(mod, subgroup, level);
    std::vector<TExponent> t;
    for (long v : s_sets[0]) t.push_back({v, 1, v, 0});
    long pim1 = 1; // p^(i-1)
    for (int i = 2; i <= level; ++i) {
        pim1 *= mod.p;
        for (TExponent& e : t) e.exponent *= mod.p;
        for (long base : s_sets[static_cast<size_t>(i - 2)])
            for (int j = 0; j <= static_cast<int>(mod.p) - 2; ++j)
                t.push_back({base + j * pim1, i, base, j});
    }
    return t;
}

std::vector<long> build_t_sets(const PrimePowerModulus& mod,
                               const UnitSubgroup& subgroup,
                               int level) {
    std::vector<long> t;
    for (const TExponent& e : build_t_tagged(mod, subgroup, level)) t.push_back(e.exponent);
    std::sort(t.begin(), t.end());
    return t;
}

FixedFieldBasis build_basis(const PrimePowerModulus& mod, const UnitSubgroup& subgroup) {
    if (mod.p == 2) throw std::domain_error("build_basis: odd p required");
    if (subgroup.mod != mod) throw std::domain_error("build_basis: modulus mismatch");
    int s = subgroup.s;
    long ps = 1;
    for (int i = 0; i < s; ++i) ps *= mod.p;
    UnitSubgroup h = subgroup.p_prime_part();

    auto tagged = build_t_tagged(mod, subgroup, mod.n - s);
    for (TExponent& e : tagged) e.exponent *= ps;
    std::sort(tagged.begin(), tagged.end(),
              [](const TExponent& a, const TExponent& b) { return a.exponent < b.exponent; });

    FixedFieldBasis basis;
    basis.mod = mod;
    basis.subgroup = subgroup;
    basis.tags = tagged;
    for (const TExponent& e : tagged) {
        basis.t_indices.push_back(e.exponent);
        basis.elems.push_back(cyclo::trace_over(h, cyclo::reduce_power(mod, e.exponent)));
    }

    long expect = (mod.pn / ps / mod.p) * (mod.p - 1) / h.r;
    if (static_cast<long>(basis.elems.size()) != expect)
        throw std::logic_error("build_basis: cardinality mismatch");
    return basis;
}

std::vector<int> grouped_order(const FixedFieldBasis& basis) {
    std::vector<int> idx(basis.tags.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const TExponent& x = basis.tags[static_cast<size_t>(a)];
        const TExponent& y = basis.tags[static_cast<size_t>(b)];
        if (x.born != y.born) return x.born < y.born;
        if (x.base != y.base) return x.base < y.base;
        return x.j < y.j;
    });
    return idx;
}

std::optional<std::vector<Rat>> solve_rational(const QMat& a, const std::vector<Rat>& rhs) {
    int m = a.rows(), n = a.cols();
    QMat w(m, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) w(i, j) = a(i, j);
        w(i, n) = rhs[static_cast<size_t>(i)];
    }
    std::vector<int> pivot_row(static_cast<size_t>(n), -1);
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int p = -1;
        for (int i = row; i < m; ++i)
            if (w(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        for (int j = 0; j <= n; ++j) std::swap(w(row, j), w(p, j));
        Rat piv = w(row, col);
        for (int j = col; j <= n; ++j) w(row, j) /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == row || w(i, col) == 0) continue;
            Rat f = w(i, col);
            for (int j = col; j <= n; ++j) w(i, j) -= f * w(row, j);
        }
        pivot_row[static_cast<size_t>(col)] = row;
        ++row;
    }
    for (int i = row; i < m; ++i)
        if (w(i, n) != 0) return std::nullopt; // inconsistent
    for (int col = 0; col < n; ++col)
        if (pivot_row[static_cast<size_t>(col)] < 0)
            return std::nullopt; // rank deficient: no unique solution
    std::vector<Rat> x(static_cast<size_t>(n));
    for (int col = 0; col < n; ++col) x[static_cast<size_t>(col)] = w(pivot_row[static_cast<size_t>(col)], n);
    return x;
}

std::vector<Int> express(const CycInt& a, const FixedFieldBasis& basis) {
    if (a.mod != basis.mod) throw std::domain_error("express: modulus mismatch");
    int m = static_cast<int>(basis.mod.m);
    int b = basis.size();
    QMat mat(m, b);
    for (int j = 0; j < b; ++j)
        for (int i = 0; i < m; ++i)
            mat(i, j) = Rat(basis.elems[static_cast<size_t>(j)].c[static_cast<size_t>(i)]);
    std::vector<Rat> rhs(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) rhs[static_cast<size_t>(i)] = Rat(a.c[static_cast<size_t>(i)]);
    auto sol = solve_rational(mat, rhs);
    if (!sol) throw NotInFixedRing("express: element outside the span of the basis");
    std::vector<Int> out;
    out.reserve(sol->size());
    for (const Rat& v : *sol) {
        if (boost::multiprecision::denominator(v) != 1)
            throw NotInFixedRing("express: non-integral coordinate");
        out.push_back(boost::multiprecision::numerator(v));
    }
    return out;
}

bool verify_basis(const FixedFieldBasis& basis, long cap) {
    const PrimePowerModulus& mod = basis.mod;
    if (mod.pn > cap) throw CapExceeded("verify_basis: p^n above cap");

    int s = basis.subgroup.s;
    long ps = 1;
    for (int i = 0; i < s; ++i) ps *= mod.p;
    UnitSubgroup h = basis.subgroup.p_prime_part();

    // Cardinality of a genuine basis of the fixed subring.
    long expect = (mod.pn / ps / mod.p) * (mod.p - 1) / h.r;
    if (static_cast<long>(basis.elems.size()) != expect) return false;

    // Independence: the coordinate matrix must have full column rank.
    {
        int m = static_cast<int>(mod.m);
        int b = basis.size();
        QMat mat(m, b);
        for (int j = 0; j < b; ++j)
            for (int i = 0; i < m; ++i)
                mat(i, j) = Rat(basis.elems[static_cast<size_t>(j)].c[static_cast<size_t>(i)]);
        int rank = 0;
        int row = 0;
        for (int col = 0; col < b && row < m; ++col) {
            int p = -1;
            for (int i = row; i < m; ++i)
                if (mat(i, col) != 0) { p = i; break; }
            if (p < 0) continue;
            for (int j = 0; j < b; ++j) std::swap(mat(row, j), mat(p, j));
            for (int i = row + 1; i < m; ++i) {
                if (mat(i, col) == 0) continue;
                Rat f = mat(i, col) / mat(row, col);
                for (int j = col; j < b; ++j) mat(i, j) -= f * mat(row, j);
            }
            ++rank;
            ++row;
        }
        if (rank != b) return false;
    }

    // Stability under N.
    for (const CycInt& e : basis.elems)
        for (long g : basis.subgroup.elements)
            if (cyclo::galois_apply(g, e) != e) return false;

    // Every generating trace of the fixed subring must be an integral
    // combination.
    for (long u = 0; u < mod.pn / ps; ++u) {
        CycInt t = cyclo::trace_over(h, cyclo::reduce_power(mod, ps * u));
        try {
            express(t, basis);
        } catch (const NotInFixedRing&) {
            return false;
        }
    }
    return true;
}

} // namespace kbound::intbasis
