#include "kbound/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kbound::cyclo {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long normalize_residue(long g, long pn) {
    long r = g % pn;
    if (r < 0) r += pn;
    return r;
}

void require_odd(const PrimePowerModulus& mod, const char* op) {
    if (mod.p == 2)
        throw std::domain_error(std::string(op) + ": ring arithmetic needs an odd prime");
}

void require_same(const CycInt& a, const CycInt& b, const char* op) {
    if (a.mod != b.mod)
        throw std::domain_error(std::string(op) + ": operands over different moduli");
}

} // namespace

PrimePowerModulus::PrimePowerModulus(long p_, int n_) : p(p_), n(n_) {
    if (!is_prime(p)) throw std::domain_error("PrimePowerModulus: p must be prime");
    if (n < 1) throw std::domain_error("PrimePowerModulus: n must be >= 1");
    Int v = pow_int(Int(p), static_cast<unsigned long>(n));
    if (!fits_long(v)) throw CapExceeded("PrimePowerModulus: p^n too large");
    pn = static_cast<long>(to_long(v));
    m = pn / p * (p - 1);
}

CycInt CycInt::zero(const PrimePowerModulus& mod) {
    require_odd(mod, "CycInt");
    CycInt a;
    a.mod = mod;
    a.c.assign(static_cast<size_t>(mod.m), Int(0));
    return a;
}

CycInt CycInt::one(const PrimePowerModulus& mod) {
    CycInt a = zero(mod);
    a.c[0] = 1;
    return a;
}

bool CycInt::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Int& v) { return v == 0; });
}

bool CycInt::operator==(const CycInt& o) const {
    return mod == o.mod && c == o.c;
}

std::string CycInt::str() const {
    std::ostringstream os;
    bool first = true;
    for (long e = mod.m - 1; e >= 0; --e) {
        const Int& v = c[static_cast<size_t>(e)];
        if (v == 0) continue;
        Int av = v < 0 ? Int(-v) : v;
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        if (av != 1 || e == 0) os << av;
        if (e > 0) {
            os << "z";
            if (e > 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    return os.str();
}

CycInt reduce_power(const PrimePowerModulus& mod, long e) {
    CycInt a = CycInt::zero(mod);
    e = normalize_residue(e, mod.pn);
    if (e < mod.m) {
        a.c[static_cast<size_t>(e)] = 1;
        return a;
    }
    // e = m + t with 0 <= t < p^(n-1): zeta^e = -sum_j zeta^(t + j p^(n-1)).
    long pn1 = mod.pn / mod.p;
    long t = e - mod.m;
    for (long j = 0; j <= mod.p - 2; ++j) a.c[static_cast<size_t>(t + j * pn1)] = -1;
    return a;
}

CycInt add(const CycInt& a, const CycInt& b) {
    require_same(a, b, "add");
    CycInt r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

CycInt sub(const CycInt& a, const CycInt& b) {
    require_same(a, b, "sub");
    CycInt r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

CycInt neg(const CycInt& a) {
    CycInt r = a;
    for (Int& v : r.c) v = -v;
    return r;
}

CycInt mul_scalar(const CycInt& a, const Int& s) {
    CycInt r = a;
    for (Int& v : r.c) v *= s;
    return r;
}

CycInt mul(const CycInt& a, const CycInt& b) {
    require_same(a, b, "mul");
    // Convolve exponent-wise mod p^n, then push every power through the
    // basis reduction.  Degrees are desk scale, no need for anything clever.
    std::vector<Int> by_exp(static_cast<size_t>(a.mod.pn), Int(0));
    for (long i = 0; i < a.mod.m; ++i) {
        if (a.c[static_cast<size_t>(i)] == 0) continue;
        for (long j = 0; j < a.mod.m; ++j) {
            if (b.c[static_cast<size_t>(j)] == 0) continue;
            by_exp[static_cast<size_t>((i + j) % a.mod.pn)] +=
                a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
        }
    }
    CycInt r = CycInt::zero(a.mod);
    for (long e = 0; e < a.mod.pn; ++e) {
        if (by_exp[static_cast<size_t>(e)] == 0) continue;
        CycInt t = reduce_power(a.mod, e);
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += by_exp[static_cast<size_t>(e)] * t.c[i];
    }
    return r;
}

CycInt galois_apply(long g, const CycInt& a) {
    g = normalize_residue(g, a.mod.pn);
    if (g % a.mod.p == 0)
        throw std::domain_error("galois_apply: exponent not coprime to p");
    CycInt r = CycInt::zero(a.mod);
    for (long e = 0; e < a.mod.m; ++e) {
        if (a.c[static_cast<size_t>(e)] == 0) continue;
        CycInt t = reduce_power(a.mod, (g * e) % a.mod.pn);
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += a.c[static_cast<size_t>(e)] * t.c[i];
    }
    return r;
}

CycInt conj(const CycInt& a) {
    return galois_apply(a.mod.pn - 1, a);
}

long mod_pow(long base, long exp, long modulus) {
    long r = 1 % modulus;
    base = normalize_residue(base, modulus);
    while (exp > 0) {
        if (exp & 1) r = (r * base) % modulus;
        base = (base * base) % modulus;
        exp >>= 1;
    }
    return r;
}

long order_of_unit(const PrimePowerModulus& mod, long g) {
    g = normalize_residue(g, mod.pn);
    if (g == 0 || std::gcd(g, mod.pn) != 1)
        throw std::domain_error("order_of_unit: not a unit");
    long x = g, ord = 1;
    while (x != 1) {
        x = (x * g) % mod.pn;
        ++ord;
    }
    return ord;
}

bool UnitSubgroup::contains(long g) const {
    g = normalize_residue(g, mod.pn);
    return std::binary_search(elements.begin(), elements.end(), g);
}

UnitSubgroup UnitSubgroup::p_prime_part() const {
    // Elements of order prime to p; a subgroup since the whole subgroup is
    // abelian.
    std::vector<long> kept;
    for (long g : elements) {
        long ord = order_of_unit(mod, g);
        if (ord % mod.p != 0) kept.push_back(g);
    }
    UnitSubgroup h;
    h.mod = mod;
    h.elements = kept;
    h.s = 0;
    h.r = static_cast<long>(kept.size());
    return h;
}

UnitSubgroup trivial_subgroup(const PrimePowerModulus& mod) {
    UnitSubgroup h;
    h.mod = mod;
    h.elements = {1};
    h.s = 0;
    h.r = 1;
    return h;
}

namespace {

UnitSubgroup finish_subgroup(const PrimePowerModulus& mod, std::set<long> els) {
    UnitSubgroup h;
    h.mod = mod;
    h.elements.assign(els.begin(), els.end());
    long ord = h.order();
    int s = 0;
    while (ord % mod.p == 0) {
        ord /= mod.p;
        ++s;
    }
    h.s = s;
    h.r = ord;
    return h;
}

} // namespace

UnitSubgroup subgroup_from_generator(const PrimePowerModulus& mod, long g) {
    return subgroup_from_generators(mod, {g});
}

UnitSubgroup subgroup_from_generators(const PrimePowerModulus& mod, const std::vector<long>& gens) {
    std::set<long> els = {1};
    std::vector<long> frontier = {1};
    std::vector<long> ngens;
    for (long g : gens) {
        long r = normalize_residue(g, mod.pn);
        if (r == 0 || std::gcd(r, mod.pn) != 1)
            throw std::domain_error("subgroup_from_generators: generator not a unit");
        ngens.push_back(r);
    }
    while (!frontier.empty()) {
        std::vector<long> next;
        for (long x : frontier)
            for (long g : ngens) {
                long y = (x * g) % mod.pn;
                if (els.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return finish_subgroup(mod, std::move(els));
}

long cyclic_generator(const UnitSubgroup& h) {
    long target = h.order();
    for (long g : h.elements)
        if (order_of_unit(h.mod, g) == target) return g;
    throw std::domain_error("cyclic_generator: subgroup is not cyclic");
}

std::vector<std::vector<long>> orbits_on_residues(const UnitSubgroup& h, int level) {
    if (level < 1 || level > h.mod.n)
        throw std::domain_error("orbits_on_residues: level out of range");
    long pl = 1;
    for (int i = 0; i < level; ++i) pl *= h.mod.p;
    std::set<long> images;
    for (long g : h.elements) images.insert(g % pl);

    std::vector<std::vector<long>> orbits;
    std::vector<char> seen(static_cast<size_t>(pl), 0);
    for (long j = 1; j < pl; ++j) {
        if (j % h.mod.p == 0 || seen[static_cast<size_t>(j)]) continue;
        std::vector<long> orbit;
        for (long g : images) {
            long x = (g * j) % pl;
            if (!seen[static_cast<size_t>(x)]) {
                seen[static_cast<size_t>(x)] = 1;
                orbit.push_back(x);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

std::vector<long> stabilizer_of_residue(const UnitSubgroup& h, long j, int level) {
    long pl = 1;
    for (int i = 0; i < level; ++i) pl *= h.mod.p;
    std::vector<long> stab;
    for (long g : h.elements)
        if ((g % pl) * (j % pl) % pl == normalize_residue(j, pl)) stab.push_back(g);
    return stab;
}

CycInt trace_over(const std::vector<long>& residues, const CycInt& a) {
    CycInt r = CycInt::zero(a.mod);
    for (long g : residues) r = add(r, galois_apply(g, a));
    return r;
}

CycInt trace_over(const UnitSubgroup& h, const CycInt& a) {
    if (h.mod != a.mod) throw std::domain_error("trace_over: modulus mismatch");
    return trace_over(h.elements, a);
}

Int full_unit_sum(const PrimePowerModulus& mod, long e) {
    long r = normalize_residue(e, mod.pn);
    if (r == 0) return Int(mod.m);
    long pn1 = mod.pn / mod.p;
    if (r % pn1 != 0) return Int(0);
    return Int(-pn1);
}

} // namespace kbound::cyclo
