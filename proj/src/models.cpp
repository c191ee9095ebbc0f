#include "kbound/models.hpp"

#include "kbound/errors.hpp"
#include "kbound/qforms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace kbound::models {

namespace {

constexpr long kGroupOrderCap = 100000;

long pow_long(long base, long e, const char* who) {
    long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > kGroupOrderCap * 100) throw CapExceeded(std::string(who) + ": power too large");
        r *= base;
    }
    return r;
}

// Orbits of multiplication by g on {lo, ..., modulus-1}; each orbit sorted,
// orbit list sorted by smallest element.
std::vector<std::vector<long>> mult_orbits(long modulus, long g, long lo) {
    std::vector<char> seen(modulus, 0);
    std::vector<std::vector<long>> out;
    for (long a = lo; a < modulus; ++a) {
        if (seen[a]) continue;
        std::vector<long> orbit;
        long b = a;
        while (!seen[b]) {
            seen[b] = 1;
            orbit.push_back(b);
            b = (b * g) % modulus;
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

} // namespace

long k0_semidirect(long p, int n, long r, int s) {
    if (p < 3 || n < 1 || r < 1 || s < 0) throw std::domain_error("k0_semidirect: bad parameters");
    if ((p - 1) % r != 0) throw std::domain_error("k0_semidirect: r must divide p-1");
    if (s > n - 1) throw std::domain_error("k0_semidirect: p-part cannot exceed p^(n-1)");
    long pn = pow_long(p, n, "k0_semidirect");
    long ps = pow_long(p, s, "k0_semidirect");
    long num = pn + ps * (r * r - 1);
    if (num % r != 0) throw std::logic_error("k0_semidirect: non-integral value");
    return num / r;
}

long k0_semidirect_2(int n, long gamma) {
    cyclo::PrimePowerModulus mod(2, n);
    cyclo::UnitSubgroup h = cyclo::subgroup_from_generator(mod, gamma);
    // -5^a runs over one of the two cosets of <5> in the units of Z/2^n; the
    // subgroup meets it iff some member matches.
    long ord5 = n <= 2 ? 1 : pow_long(2, n - 2, "k0_semidirect_2");
    long t = mod.pn - 1; // -1 mod 2^n
    for (long a = 0; a < ord5; ++a) {
        if (h.contains(t)) return 2 * h.order();
        t = (t * 5) % mod.pn;
    }
    return mod.pn;
}

std::pair<long, long> conjugacy_count(long p, int n, long gamma) {
    cyclo::PrimePowerModulus mod(p, n);
    long e = cyclo::order_of_unit(mod, gamma);
    gamma = ((gamma % mod.pn) + mod.pn) % mod.pn;
    long pn = mod.pn;
    if (pn > kGroupOrderCap / e) throw CapExceeded("conjugacy_count: group order above 100000");
    long size = pn * e;

    std::vector<long> pow_g(e);
    pow_g[0] = 1;
    for (long b = 1; b < e; ++b) pow_g[b] = (pow_g[b - 1] * gamma) % pn;

    auto mul = [&](long a1, long b1, long a2, long b2) {
        return std::pair<long, long>{(a1 + pow_g[b1] * a2) % pn, (b1 + b2) % e};
    };
    auto inv = [&](long a, long b) {
        long bi = (e - b) % e;
        long ai = (pn - (pow_g[bi] * a) % pn) % pn;
        return std::pair<long, long>{ai, bi};
    };
    auto conj = [&](long ga, long gb, long ha, long hb) {
        auto [x, y] = mul(ga, gb, ha, hb);
        auto [ia, ib] = inv(ga, gb);
        return mul(x, y, ia, ib);
    };

    // Two generators suffice: conjugation orbits are closed under the group
    // they generate.
    std::vector<char> seen(size, 0);
    long k = 0;
    std::vector<long> stack;
    for (long start = 0; start < size; ++start) {
        if (seen[start]) continue;
        ++k;
        seen[start] = 1;
        stack.assign(1, start);
        while (!stack.empty()) {
            long id = stack.back();
            stack.pop_back();
            long ha = id / e, hb = id % e;
            for (int g = 0; g < 2; ++g) {
                auto [ca, cb] = g == 0 ? conj(1, 0, ha, hb) : conj(0, 1, ha, hb);
                long cid = ca * e + cb;
                if (!seen[cid]) {
                    seen[cid] = 1;
                    stack.push_back(cid);
                }
            }
        }
    }

    // Characters sit e/t per orbit of <gamma> on the residues, t the orbit
    // size; height zero exactly when p does not divide t.
    long k0 = 0;
    for (const auto& orbit : mult_orbits(pn, gamma, 0)) {
        long t = static_cast<long>(orbit.size());
        if (t % p != 0) k0 += e / t;
    }
    return {k, k0};
}

SemidirectModel semidirect_model(long p, int n, long gamma) {
    SemidirectModel model;
    model.mod = cyclo::PrimePowerModulus(p, n);
    if (p == 2) throw std::domain_error("semidirect_model: p must be odd");
    cyclo::UnitSubgroup h = cyclo::subgroup_from_generator(model.mod, gamma);
    model.gamma = ((gamma % model.mod.pn) + model.mod.pn) % model.mod.pn;
    model.s = h.s;
    model.r = h.r;
    long ps = pow_long(p, h.s, "semidirect_model");
    long e = ps * h.r;

    long k = 0, k0 = 0;
    for (const auto& orbit : mult_orbits(model.mod.pn, model.gamma, 0)) {
        long t = static_cast<long>(orbit.size());
        if (e % t != 0) throw std::logic_error("semidirect_model: orbit size must divide order");
        k += e / t;
        if (t % p != 0) k0 += e / t;
    }
    if (k0 != k0_semidirect(p, n, h.r, h.s))
        throw std::logic_error("semidirect_model: height-zero count mismatch");
    model.k = k;
    model.k0 = k0;

    model.rows.emplace_back(cyclo::CycInt::one(model.mod), ps * h.r);

    // One trace row per orbit on the nonzero residues at level n-s; the p-part
    // of <gamma> acts trivially there, so stepping by gamma gives exactly the
    // orbits of the p'-part and every orbit has size r.
    long level_mod = model.mod.pn / ps;
    std::vector<long> prime_part = h.p_prime_part().elements;
    if (level_mod > 1) {
        for (const auto& orbit : mult_orbits(level_mod, model.gamma % level_mod, 1)) {
            if (static_cast<long>(orbit.size()) != h.r)
                throw std::logic_error("semidirect_model: level orbit size must be r");
            cyclo::CycInt val =
                cyclo::trace_over(prime_part, cyclo::reduce_power(model.mod, ps * orbit[0]));
            model.rows.emplace_back(std::move(val), ps);
        }
    }
    long nonzero = ps * h.r + ps * ((level_mod - 1) / h.r);
    if (nonzero != k0) throw std::logic_error("semidirect_model: row count mismatch");
    if (k > k0) model.rows.emplace_back(cyclo::CycInt::zero(model.mod), k - k0);
    return model;
}

IMat semidirect_coefficients(const SemidirectModel& model,
                             const intbasis::FixedFieldBasis& basis) {
    if (basis.mod != model.mod)
        throw std::domain_error("semidirect_coefficients: modulus mismatch");
    cyclo::UnitSubgroup h = cyclo::subgroup_from_generator(model.mod, model.gamma);
    if (basis.subgroup.elements != h.elements)
        throw std::domain_error("semidirect_coefficients: basis not fixed by <gamma>");

    int t = basis.size();
    std::vector<int> grouped = intbasis::grouped_order(basis);
    IMat a(static_cast<int>(model.k), t);
    int row = 0;
    for (const auto& [value, mult] : model.rows) {
        std::vector<Int> coords = intbasis::express(value, basis);
        for (long c = 0; c < mult; ++c, ++row)
            for (int j = 0; j < t; ++j) a(row, j) = coords[grouped[j]];
    }
    if (row != model.k) throw std::logic_error("semidirect_coefficients: multiplicity sum");

    // The column Gram must match its block-diagonal closed form: one block of
    // p^s (r + delta) for the (p-1)/r fully ramified basis elements, then
    // blocks of p^s (1 + delta) of size p-1.
    long p = model.mod.p;
    long ps = pow_long(p, model.s, "semidirect_coefficients");
    int b0 = static_cast<int>((p - 1) / model.r);
    IMat expected(t, t);
    for (int i = 0; i < b0; ++i)
        for (int j = 0; j < b0; ++j) expected(i, j) = ps * (model.r + (i == j ? 1 : 0));
    for (int base = b0; base < t; base += static_cast<int>(p - 1))
        for (int i = 0; i < p - 1; ++i)
            for (int j = 0; j < p - 1; ++j)
                expected(base + i, base + j) = ps * (1 + (i == j ? 1 : 0));
    if (a.transpose() * a != expected)
        throw std::logic_error("semidirect_coefficients: Gram deviates from closed form");
    return a;
}

bool semidirect_gram_sum_check(const SemidirectModel& model,
                               const intbasis::FixedFieldBasis& basis) {
    IMat a = semidirect_coefficients(model, basis);
    IMat gram = a.transpose() * a;
    Rat ws = qforms::weighted_sum(qforms::dynkin_a(gram.rows()), gram);
    return ws == Rat(model.k0);
}

MetacyclicModel metacyclic_model(long p, int n1, int n2, long l1, long l2, long d,
                                 long gamma1, long gamma2) {
    MetacyclicModel model;
    model.p = p;
    model.n1 = n1;
    model.n2 = n2;
    model.l1 = l1;
    model.l2 = l2;
    model.d = d;
    model.gamma1 = gamma1;
    model.gamma2 = gamma2;

    cyclo::PrimePowerModulus mod1(p, n1);
    cyclo::PrimePowerModulus mod2(p, n2);
    if (p == 2) throw std::domain_error("metacyclic_model: p must be odd");
    if (l1 < 1 || l2 < 1 || (p - 1) % l1 != 0 || (p - 1) % l2 != 0)
        throw std::domain_error("metacyclic_model: l1 and l2 must divide p-1");
    if (d < 1 || l1 % d != 0 || l2 % d != 0)
        throw std::domain_error("metacyclic_model: d must divide gcd(l1, l2)");
    if (cyclo::order_of_unit(mod1, gamma1) != l1)
        throw std::domain_error("metacyclic_model: gamma1 must have order l1");
    if (cyclo::order_of_unit(mod2, gamma2) != l2)
        throw std::domain_error("metacyclic_model: gamma2 must have order l2");

    long pn1 = mod1.pn;
    std::vector<long> pow_g1(l1);
    pow_g1[0] = 1;
    for (long i = 1; i < l1; ++i) pow_g1[i] = (pow_g1[i - 1] * gamma1) % pn1;
    auto g1p = [&](long i) { return pow_g1[((i % l1) + l1) % l1]; };

    // Trace of zeta^a over <gamma1^d>, and over all of <gamma1>.
    auto tr_d = [&](long a) {
        cyclo::CycInt sum = cyclo::CycInt::zero(mod1);
        for (long j = 1; j <= l1 / d; ++j)
            sum = cyclo::add(sum, cyclo::reduce_power(mod1, a * g1p(j * d)));
        return sum;
    };
    auto tr_full = [&](long a) {
        cyclo::CycInt sum = cyclo::CycInt::zero(mod1);
        for (long j = 1; j <= l1; ++j)
            sum = cyclo::add(sum, cyclo::reduce_power(mod1, a * g1p(j)));
        return sum;
    };

    // Orbit representatives for the nontrivial p^n1-th roots; all orbits have
    // size l1.  Less primitive roots come first.
    std::vector<std::pair<long, long>> tagged; // (valuation, smallest exponent)
    for (const auto& orbit : mult_orbits(pn1, gamma1 % pn1, 1)) {
        if (static_cast<long>(orbit.size()) != l1)
            throw std::logic_error("metacyclic_model: orbit size must be l1");
        long v = 0, x = orbit[0];
        while (x % p == 0) {
            ++v;
            x /= p;
        }
        tagged.emplace_back(v, orbit[0]);
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) {
                  return a.first != b.first ? a.first > b.first : a.second < b.second;
              });
    for (const auto& [v, rep] : tagged) model.zeta_reps.push_back(rep);

    long t2 = (pow_long(p, n2, "metacyclic_model") - 1) / l2;
    long groups = l2 / d;
    cyclo::CycInt zero = cyclo::CycInt::zero(mod1);
    cyclo::CycInt one = cyclo::CycInt::one(mod1);

    // Column support picks out one group of d adjacent columns.
    for (long g = 0; g < groups; ++g) {
        std::vector<cyclo::CycInt> row(l2, zero);
        for (long j = 0; j < d; ++j) row[g * d + j] = one;
        model.rows.emplace_back(std::move(row), l1 / d);
    }
    for (long g = 0; g < groups; ++g)
        for (long c = 0; c < d; ++c)
            for (long rep : model.zeta_reps) {
                std::vector<cyclo::CycInt> row(l2, zero);
                for (long j = 0; j < d; ++j) row[g * d + j] = tr_d(rep * g1p(j + 1 + c));
                model.rows.emplace_back(std::move(row), 1);
            }
    {
        std::vector<cyclo::CycInt> row(l2, one);
        model.rows.emplace_back(std::move(row), l1 * t2);
    }
    for (long rep : model.zeta_reps) {
        std::vector<cyclo::CycInt> row(l2, tr_full(rep));
        model.rows.emplace_back(std::move(row), t2);
    }

    if (Int(metacyclic_row_count(model)) != metacyclic_row_bound(p, n1, n2, l1, l2, d))
        throw std::logic_error("metacyclic_model: row count mismatch");
    return model;
}

long metacyclic_row_count(const MetacyclicModel& model) {
    long total = 0;
    for (const auto& [row, mult] : model.rows) total += mult;
    return total;
}

bool verify_orthogonality(const MetacyclicModel& model) {
    cyclo::PrimePowerModulus mod1(model.p, model.n1);
    long pn1 = mod1.pn;
    long t2 = (pow_long(model.p, model.n2, "verify_orthogonality") - 1) / model.l2;
    int l2 = static_cast<int>(model.l2);
    for (int s = 0; s < l2; ++s)
        for (int t = s; t < l2; ++t) {
            cyclo::CycInt sum = cyclo::CycInt::zero(mod1);
            for (const auto& [row, mult] : model.rows) {
                cyclo::CycInt term = cyclo::mul(row[s], cyclo::conj(row[t]));
                sum = cyclo::add(sum, cyclo::mul_scalar(term, Int(mult)));
            }
            cyclo::CycInt expected =
                cyclo::mul_scalar(cyclo::CycInt::one(mod1), Int(pn1) * (t2 + (s == t ? 1 : 0)));
            if (sum != expected) return false;
        }
    return true;
}

IMat metacyclic_coefficient_gram(const MetacyclicModel& model) {
    cyclo::PrimePowerModulus mod1(model.p, model.n1);
    long gd = cyclo::mod_pow(model.gamma1, model.d, mod1.pn);
    cyclo::UnitSubgroup sub = cyclo::subgroup_from_generator(mod1, gd);
    intbasis::FixedFieldBasis basis = intbasis::build_basis(mod1, sub);
    int t = basis.size();

    // Coefficient matrix of one representative column per group, rows expanded
    // by multiplicity.
    long groups = model.l2 / model.d;
    long rows = metacyclic_row_count(model);
    std::vector<IMat> cols;
    for (long g = 0; g < groups; ++g) {
        IMat a(static_cast<int>(rows), t);
        int r = 0;
        for (const auto& [row, mult] : model.rows) {
            std::vector<Int> coords = intbasis::express(row[g * model.d], basis);
            for (long c = 0; c < mult; ++c, ++r)
                for (int j = 0; j < t; ++j) a(r, j) = coords[j];
        }
        cols.push_back(std::move(a));
    }

    IMat diag = cols[0].transpose() * cols[0];
    IMat off = groups > 1 ? cols[0].transpose() * cols[1] : IMat(t, t);
    for (long g = 0; g < groups; ++g)
        for (long h = 0; h < groups; ++h) {
            IMat block = cols[g].transpose() * cols[h];
            if (block != (g == h ? diag : off))
                throw std::logic_error("metacyclic_coefficient_gram: block pattern broken");
        }

    int n = static_cast<int>(groups) * t;
    IMat gram(n, n);
    for (long g = 0; g < groups; ++g)
        for (long h = 0; h < groups; ++h)
            for (int i = 0; i < t; ++i)
                for (int j = 0; j < t; ++j)
                    gram(static_cast<int>(g) * t + i, static_cast<int>(h) * t + j) =
                        g == h ? diag(i, j) : off(i, j);
    if (!gram.is_symmetric() || !is_psd(gram))
        throw std::logic_error("metacyclic_coefficient_gram: not a Gram matrix");
    return gram;
}

Int metacyclic_row_bound(long p, int n1, int n2, long l1, long l2, long d) {
    if (l1 < 1 || l2 < 1 || d < 1 || l1 % d != 0 || l2 % d != 0)
        throw std::domain_error("metacyclic_row_bound: d must divide gcd(l1, l2)");
    Int a1 = pow_int(Int(p), n1) - 1;
    Int a2 = pow_int(Int(p), n2) - 1;
    if (a1 % l1 != 0 || a2 % l2 != 0)
        throw std::domain_error("metacyclic_row_bound: l1, l2 must divide p^n - 1");
    return (a1 / l1) * (a2 / l2) + l1 * (a2 / l2) + l2 * (a1 / l1) + (l1 / d) * (l2 / d);
}

long metacyclic_class_count(long p, int n1, int n2, long l1, long l2, long d,
                            long gamma1, long gamma2) {
    cyclo::PrimePowerModulus mod1(p, n1);
    cyclo::PrimePowerModulus mod2(p, n2);
    if (l1 < 1 || l2 < 1 || d < 1 || l1 % d != 0 || l2 % d != 0)
        throw std::domain_error("metacyclic_class_count: d must divide gcd(l1, l2)");
    if (cyclo::order_of_unit(mod1, gamma1) != l1)
        throw std::domain_error("metacyclic_class_count: gamma1 must have order l1");
    if (cyclo::order_of_unit(mod2, gamma2) != l2)
        throw std::domain_error("metacyclic_class_count: gamma2 must have order l2");

    long p1 = mod1.pn, p2 = mod2.pn;
    long xo = d * l1; // order of x
    Int order_check = Int(p1) * p2 * xo * l2;
    if (order_check > kGroupOrderCap)
        throw CapExceeded("metacyclic_class_count: group order above 100000");
    long size = p1 * p2 * xo * l2;

    std::vector<long> pg1(l1), pg2(l2), pt(l2); // gamma1^i, gamma2^j, (1+l1)^j mod xo
    pg1[0] = pg2[0] = 1;
    pt[0] = 1 % xo;
    for (long i = 1; i < l1; ++i) pg1[i] = (pg1[i - 1] * gamma1) % p1;
    for (long j = 1; j < l2; ++j) pg2[j] = (pg2[j - 1] * gamma2) % p2;
    for (long j = 1; j < l2; ++j) pt[j] = (pt[j - 1] * (1 + l1)) % xo;
    if ((pt[l2 - 1] * (1 + l1)) % xo != 1 % xo)
        throw std::logic_error("metacyclic_class_count: inconsistent presentation");

    struct El {
        long a, b, i, j;
    };
    auto encode = [&](const El& g) { return ((g.a * p2 + g.b) * xo + g.i) * l2 + g.j; };
    auto mul = [&](const El& x, const El& y) {
        return El{(x.a + pg1[x.i % l1] * y.a) % p1, (x.b + pg2[x.j] * y.b) % p2,
                  (x.i + y.i * pt[x.j]) % xo, (x.j + y.j) % l2};
    };
    auto inv = [&](const El& x) {
        long j = (l2 - x.j) % l2;
        long i = (xo - (x.i * pt[j]) % xo) % xo;
        long a = (p1 - (pg1[(l1 - x.i % l1) % l1] * x.a) % p1) % p1;
        long b = (p2 - (pg2[j] * x.b) % p2) % p2;
        return El{a, b, i, j};
    };

    const El gens[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    std::vector<char> seen(size, 0);
    long k = 0;
    std::vector<El> stack;
    for (long start = 0; start < size; ++start) {
        if (seen[start]) continue;
        ++k;
        seen[start] = 1;
        long rest = start;
        El first{0, 0, 0, 0};
        first.j = rest % l2;
        rest /= l2;
        first.i = rest % xo;
        rest /= xo;
        first.b = rest % p2;
        first.a = rest / p2;
        stack.assign(1, first);
        while (!stack.empty()) {
            El h = stack.back();
            stack.pop_back();
            for (const El& g : gens) {
                El c = mul(mul(g, h), inv(g));
                long id = encode(c);
                if (!seen[id]) {
                    seen[id] = 1;
                    stack.push_back(c);
                }
            }
        }
    }
    return k;
}

Int brauer_diff(long p, int n, int m, long l1, long l2) {
    if (l1 < 1 || l2 < 1) throw std::domain_error("brauer_diff: l1, l2 must be positive");
    Int a = pow_int(Int(p), n) - 1;
    Int b = pow_int(Int(p), m) - 1;
    if (a % l1 != 0 || b % l2 != 0)
        throw std::domain_error("brauer_diff: l1, l2 must divide p^n - 1, p^m - 1");
    return (a / l1) * (b / l2) + l1 * (b / l2) + l2 * (a / l1);
}

Int l2_major_bound(const Int& pn, long r, const Int& c11, const Int& c12, const Int& c22) {
    if (r < 1) throw std::domain_error("l2_major_bound: r must be positive");
    if ((pn - 1) % r != 0) throw std::domain_error("l2_major_bound: r must divide p^n - 1");
    return ((pn - 1) / r + r) * (c11 + c22 - c12);
}

bool quotient_count_check(const Int& u_order, long l, const Int& v_order,
                          const Int& quotient_order, const Int& inter_order) {
    if (l < 1) throw std::domain_error("quotient_count_check: l must be positive");
    Rat lhs = (Rat(u_order - 1, l) + l) * Rat(v_order);
    Rat rhs = (Rat(quotient_order - 1, l) + l) * Rat(inter_order);
    return lhs <= rhs;
}

GramMatrix cyclic_cartan(const Int& defect_order, long l) {
    if (l < 1) throw std::domain_error("cyclic_cartan: l must be positive");
    if (defect_order < 1 || (defect_order - 1) % l != 0)
        throw std::domain_error("cyclic_cartan: l must divide defect_order - 1");
    Int m = (defect_order - 1) / l;
    IMat c(static_cast<int>(l), static_cast<int>(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) c(i, j) = m + (i == j ? 1 : 0);
    return GramMatrix(c);
}

} // namespace kbound::models
