#include "kbound/ortho.hpp"

#include "kbound/errors.hpp"
#include "kbound/intbasis.hpp"
#include "kbound/models.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kbound::ortho {

namespace {

bool is_perm(const std::vector<int>& v, int l) {
    if (static_cast<int>(v.size()) != l) return false;
    std::vector<char> hit(l, 0);
    for (int x : v) {
        if (x < 0 || x >= l || hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(g.size());
    for (size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
    return h;
}

int index_of(const std::vector<long>& elements, long residue) {
    auto it = std::lower_bound(elements.begin(), elements.end(), residue);
    if (it == elements.end() || *it != residue)
        throw std::domain_error("SubsectionSpec: residue not in the subgroup");
    return static_cast<int>(it - elements.begin());
}

} // namespace

const std::vector<int>& SubsectionSpec::perm(long residue) const {
    return action[index_of(subgroup.elements, residue % mod.pn)];
}

std::vector<std::vector<int>> make_action(
    const cyclo::UnitSubgroup& subgroup,
    const std::vector<std::pair<long, std::vector<int>>>& generator_images) {
    if (generator_images.empty()) throw std::domain_error("make_action: no generator images");
    int l = static_cast<int>(generator_images.front().second.size());
    for (const auto& [g, img] : generator_images) {
        if (!subgroup.contains(g % subgroup.mod.pn))
            throw std::domain_error("make_action: generator outside the subgroup");
        if (!is_perm(img, l)) throw std::domain_error("make_action: image is not a permutation");
    }

    std::map<long, std::vector<int>> table;
    std::vector<int> id(l);
    for (int i = 0; i < l; ++i) id[i] = i;
    table[1] = id;
    std::vector<long> frontier = {1};
    while (!frontier.empty()) {
        long a = frontier.back();
        frontier.pop_back();
        for (const auto& [g, img] : generator_images) {
            long b = (a * (g % subgroup.mod.pn)) % subgroup.mod.pn;
            std::vector<int> pb = compose(img, table[a]);
            auto it = table.find(b);
            if (it == table.end()) {
                table[b] = pb;
                frontier.push_back(b);
            } else if (it->second != pb) {
                throw std::domain_error("make_action: images are not consistent");
            }
        }
    }
    if (table.size() != subgroup.elements.size())
        throw std::domain_error("make_action: images do not cover the subgroup");

    std::vector<std::vector<int>> action;
    for (long g : subgroup.elements) action.push_back(table.at(g));

    // Closure reached every element, but cross relations g*h = h*g still need
    // the full homomorphism check.
    for (long g : subgroup.elements)
        for (long h : subgroup.elements) {
            long gh = (g * h) % subgroup.mod.pn;
            if (action[index_of(subgroup.elements, gh)] !=
                compose(action[index_of(subgroup.elements, g)],
                        action[index_of(subgroup.elements, h)]))
                throw std::domain_error("make_action: images are not a homomorphism");
        }
    return action;
}

std::vector<std::vector<int>> trivial_action(const cyclo::UnitSubgroup& subgroup, int l) {
    std::vector<int> id(l);
    for (int i = 0; i < l; ++i) id[i] = i;
    return std::vector<std::vector<int>>(subgroup.elements.size(), id);
}

std::vector<std::string> validate(const SubsectionSpec& spec) {
    if (spec.l < 1) throw std::domain_error("validate: need at least one character");
    if (spec.cartan_bar.rows() != spec.l || spec.cartan_bar.cols() != spec.l)
        throw std::domain_error("validate: Cartan matrix has the wrong shape");
    if (!spec.cartan_bar.is_symmetric())
        throw std::domain_error("validate: Cartan matrix must be symmetric");
    if (!is_positive_definite(spec.cartan_bar))
        throw std::domain_error("validate: Cartan matrix must be positive definite");
    if (spec.subgroup.mod != spec.mod) throw std::domain_error("validate: subgroup modulus mismatch");
    if (spec.action.size() != spec.subgroup.elements.size())
        throw std::domain_error("validate: one permutation per subgroup element required");
    for (const auto& img : spec.action)
        if (!is_perm(img, spec.l)) throw std::domain_error("validate: action entry not a permutation");

    const auto& els = spec.subgroup.elements;
    for (size_t gi = 0; gi < els.size(); ++gi)
        for (size_t hi = 0; hi < els.size(); ++hi) {
            long gh = (els[gi] * els[hi]) % spec.mod.pn;
            if (spec.action[index_of(els, gh)] != compose(spec.action[gi], spec.action[hi]))
                throw std::domain_error("validate: action is not a homomorphism");
        }

    for (size_t gi = 0; gi < els.size(); ++gi) {
        const auto& img = spec.action[gi];
        for (int s = 0; s < spec.l; ++s)
            for (int t = 0; t < spec.l; ++t)
                if (spec.cartan_bar(s, t) != spec.cartan_bar(img[s], img[t]))
                    throw ActionCartanMismatch("validate: Cartan not invariant under the action");
    }

    std::vector<std::string> warnings;
    Int det = det_bareiss(spec.cartan_bar);
    Int d = det;
    while (d > 1 && d % spec.mod.p == 0) d /= spec.mod.p;
    if (d != 1)
        warnings.push_back("cartan determinant " + det.str() + " is not a power of " +
                           std::to_string(spec.mod.p));
    return warnings;
}

long neg_residue(long i, const cyclo::PrimePowerModulus& mod) {
    long q = mod.pn / mod.p; // p^(n-1)
    long r = ((-i) % q + q) % q;
    return r == 0 ? q : r;
}

long w_count(long i, long j, int tau, long gamma, const SubsectionSpec& spec) {
    long pn = spec.mod.pn;
    long ip = neg_residue(i, spec.mod);
    long jp = neg_residue(j, spec.mod);
    long w = 0;
    for (long delta : spec.subgroup.elements) {
        if (spec.perm(delta)[tau] != tau) continue;
        long gd = (gamma * delta) % pn;
        if ((i - j * gd) % pn == 0) ++w;
        if ((i + jp * gd) % pn == 0) --w;
        if ((ip - jp * gd) % pn == 0) ++w;
        if ((ip + j * gd) % pn == 0) --w;
    }
    return w;
}

GramMatrix build_m(const SubsectionSpec& spec) {
    if (spec.mod.p == 2) throw std::domain_error("build_m: p = 2 unsupported");
    validate(spec);
    int l = spec.l;
    int m = static_cast<int>(spec.mod.m);
    IMat big(l * m, l * m);

    for (int tau = 0; tau < l; ++tau) {
        // Transversal of the stabilizer: one residue per image of tau.
        std::vector<long> transversal;
        std::vector<char> covered(l, 0);
        for (long g : spec.subgroup.elements) {
            int img = spec.perm(g)[tau];
            if (!covered[img]) {
                covered[img] = 1;
                transversal.push_back(g);
            }
        }
        for (long g : transversal) {
            IMat w(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) w(i, j) = w_count(i, j, tau, g, spec);
            int gtau = spec.perm(g)[tau];
            for (int sigma = 0; sigma < l; ++sigma) {
                const Int& c = spec.cartan_bar(sigma, gtau);
                if (c == 0) continue;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) big(sigma * m + i, tau * m + j) += c * w(i, j);
            }
        }
    }
    return GramMatrix(big); // checks symmetry and positive semidefiniteness
}

GramMatrix build_m_stable(const SubsectionSpec& spec) {
    if (spec.mod.p == 2) throw std::domain_error("build_m_stable: p = 2 unsupported");
    validate(spec);
    for (const auto& img : spec.action)
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] != static_cast<int>(i))
                throw std::domain_error("build_m_stable: action must be trivial");

    long gamma = cyclo::cyclic_generator(spec.subgroup);
    models::SemidirectModel model = models::semidirect_model(spec.mod.p, spec.mod.n, gamma);
    intbasis::FixedFieldBasis basis = intbasis::build_basis(spec.mod, spec.subgroup);
    IMat a = models::semidirect_coefficients(model, basis);
    IMat t = a.transpose() * a;
    return GramMatrix(kron(spec.cartan_bar, t));
}

} // namespace kbound::ortho
