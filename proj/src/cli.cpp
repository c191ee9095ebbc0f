#include "kbound/cli.hpp"

#include "kbound/cyclotomic.hpp"
#include "kbound/errors.hpp"
#include "kbound/gram.hpp"
#include "kbound/gram_search.hpp"
#include "kbound/intbasis.hpp"
#include "kbound/lattice.hpp"
#include "kbound/models.hpp"
#include "kbound/ortho.hpp"
#include "kbound/qforms.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace kbound::cli {

namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

Int parse_big(const std::string& t, const std::string& where) {
    size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i == t.size()) throw ParseError(where + ": expected an integer, got '" + t + "'");
    for (size_t j = i; j < t.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(t[j])))
            throw ParseError(where + ": expected an integer, got '" + t + "'");
    return Int(t);
}

long parse_long(const std::string& t, const std::string& where) {
    Int v = parse_big(t, where);
    if (!fits_long(v)) throw ParseError(where + ": value out of range");
    return static_cast<long>(to_long(v));
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

IMat parse_matrix(const std::string& value, const std::string& where) {
    std::vector<std::vector<Int>> rows;
    std::string piece;
    std::istringstream is(value);
    while (std::getline(is, piece, ';')) {
        std::vector<Int> row;
        for (const std::string& t : tokens(piece)) row.push_back(parse_big(t, where));
        if (row.empty()) throw ParseError(where + ": empty matrix row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(where + ": empty matrix");
    size_t w = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != w) throw ParseError(where + ": ragged matrix rows");
    IMat m(static_cast<int>(rows.size()), static_cast<int>(w));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::vector<long> parse_long_list(const std::string& value, const std::string& where) {
    std::vector<long> out;
    for (const std::string& t : tokens(value)) out.push_back(parse_long(t, where));
    if (out.empty()) throw ParseError(where + ": expected at least one value");
    return out;
}

} // namespace

SpecFile parse_spec(std::istream& in) {
    SpecFile s;
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = "line " + std::to_string(lineno);
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError(where + ": expected 'key = value'");
        if (!kv.emplace(key, value).second) throw ParseError(where + ": duplicate key '" + key + "'");
        s.entries.emplace_back(key, value);
    }

    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto need = [&](const std::string& key) {
        auto v = take(key);
        if (!v) throw ParseError("missing key '" + key + "'");
        return *v;
    };

    s.kind = need("kind");
    if (s.kind != "subsection" && s.kind != "semidirect" && s.kind != "metacyclic")
        throw ParseError("kind must be subsection, semidirect or metacyclic");

    if (s.kind == "subsection") {
        s.p = parse_long(need("p"), "p");
        if (auto v = take("n")) s.n = static_cast<int>(parse_long(*v, "n"));
        s.l = static_cast<int>(parse_long(need("l"), "l"));
        if (s.l < 1) throw ParseError("l must be positive");
        if (auto v = take("mode")) {
            s.mode = *v;
            if (s.mode != "major" && s.mode != "non-major")
                throw ParseError("mode must be major or non-major");
        }
        s.cartan = parse_matrix(need("cartan"), "cartan");
        if (s.cartan.rows() != s.l || s.cartan.cols() != s.l)
            throw ParseError("cartan must be an l x l matrix");
        s.subgroup_generators = parse_long_list(need("subgroup_generators"), "subgroup_generators");
        // action keys look like "action 2"; images are 1-based characters.
        for (auto it = kv.begin(); it != kv.end();) {
            if (it->first.rfind("action ", 0) == 0) {
                long res = parse_long(trim(it->first.substr(7)), it->first);
                std::vector<int> img;
                for (long x : parse_long_list(it->second, it->first)) {
                    if (x < 1 || x > s.l)
                        throw ParseError(it->first + ": images must lie in 1.." +
                                         std::to_string(s.l));
                    img.push_back(static_cast<int>(x - 1));
                }
                if (static_cast<int>(img.size()) != s.l)
                    throw ParseError(it->first + ": expected " + std::to_string(s.l) + " images");
                s.action.emplace_back(res, std::move(img));
                it = kv.erase(it);
            } else {
                ++it;
            }
        }
    } else if (s.kind == "semidirect") {
        s.p = parse_long(need("p"), "p");
        s.n = static_cast<int>(parse_long(need("n"), "n"));
        s.gamma = parse_long(need("gamma"), "gamma");
    } else {
        s.p = parse_long(need("p"), "p");
        s.n1 = static_cast<int>(parse_long(need("n1"), "n1"));
        s.n2 = static_cast<int>(parse_long(need("n2"), "n2"));
        s.l1 = parse_long(need("l1"), "l1");
        s.l2 = parse_long(need("l2"), "l2");
        s.d = parse_long(need("d"), "d");
        s.gamma1 = parse_long(need("gamma1"), "gamma1");
        s.gamma2 = parse_long(need("gamma2"), "gamma2");
    }

    if (auto v = take("form_den")) {
        s.form_den = parse_big(*v, "form_den");
        s.form_num = parse_matrix(need("form"), "form");
        if (s.form_num.rows() != s.form_num.cols()) throw ParseError("form must be square");
    } else if (kv.count("form")) {
        throw ParseError("form needs form_den");
    }

    if (!kv.empty()) throw ParseError("unknown key '" + kv.begin()->first + "'");
    return s;
}

SpecFile parse_spec_string(const std::string& text) {
    std::istringstream is(text);
    return parse_spec(is);
}

namespace {

std::vector<std::vector<std::string>> mat_strings(const IMat& m) {
    std::vector<std::vector<std::string>> out;
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json pairs_json(const std::vector<std::pair<std::string, std::string>>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& [k, val] : v) a.push_back(ordered_json::array({k, val}));
    return a;
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const ordered_json& a) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : a) out.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    return out;
}

} // namespace

std::string emit(const Report& r) {
    ordered_json j;
    j["command"] = r.command;
    j["kind"] = r.kind;
    j["echo"] = pairs_json(r.echo);
    j["warnings"] = r.warnings;
    j["matrix"] = r.matrix;
    j["reduced"] = r.reduced;
    j["elementary_divisors"] = r.elementary_divisors;
    j["bounds"] = pairs_json(r.bounds);
    j["search"] = ordered_json{{"ran", r.search.ran},
                               {"k", r.search.k},
                               {"optimal", r.search.optimal},
                               {"nodes", r.search.nodes},
                               {"witness", r.search.witness},
                               {"classes", r.search.classes}};
    j["model_rows"] = r.model_rows;
    j["checks"] = pairs_json(r.checks);
    j["interpretation"] = r.interpretation;
    return j.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    Report r;
    r.command = j.at("command").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.echo = pairs_from_json(j.at("echo"));
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.matrix = j.at("matrix").get<std::vector<std::vector<std::string>>>();
    r.reduced = j.at("reduced").get<std::vector<std::vector<std::string>>>();
    r.elementary_divisors = j.at("elementary_divisors").get<std::vector<std::string>>();
    r.bounds = pairs_from_json(j.at("bounds"));
    const auto& s = j.at("search");
    r.search.ran = s.at("ran").get<bool>();
    r.search.k = s.at("k").get<long>();
    r.search.optimal = s.at("optimal").get<bool>();
    r.search.nodes = s.at("nodes").get<long long>();
    r.search.witness = s.at("witness").get<std::vector<std::vector<long>>>();
    r.search.classes = s.at("classes").get<long>();
    r.model_rows = j.at("model_rows").get<std::vector<std::string>>();
    r.checks = pairs_from_json(j.at("checks"));
    r.interpretation = j.at("interpretation").get<std::string>();
    return r;
}

namespace {

ortho::SubsectionSpec to_subsection(const SpecFile& s) {
    ortho::SubsectionSpec sub;
    sub.mod = cyclo::PrimePowerModulus(s.p, s.n);
    sub.l = s.l;
    sub.cartan_bar = s.cartan;
    sub.subgroup = cyclo::subgroup_from_generators(sub.mod, s.subgroup_generators);
    sub.action = s.action.empty() ? ortho::trivial_action(sub.subgroup, s.l)
                                  : ortho::make_action(sub.subgroup, s.action);
    return sub;
}

qforms::QuadraticForm select_form(const SpecFile& s, const Options& o, int rank) {
    if (o.form == "a") return qforms::dynkin_a(rank);
    if (s.form_den == 0)
        throw ParseError("custom form requested but the spec file carries none");
    qforms::QuadraticForm q = qforms::from_scaled_gram(s.form_num, s.form_den);
    if (q.num.rows() != rank)
        throw std::domain_error("custom form rank does not match the character count");
    return q;
}

bool action_is_trivial(const ortho::SubsectionSpec& sub) {
    for (const auto& img : sub.action)
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] != static_cast<int>(i)) return false;
    return true;
}

void run_search(const GramMatrix& g, const Options& o, Report& r) {
    lattice::ReductionResult red = lattice::prune(g, o.delta);
    r.reduced = mat_strings(red.reduced.m);
    gram_search::SearchResult res = gram_search::max_k(red.reduced, o.budget);
    r.search.ran = true;
    r.search.k = res.k;
    r.search.optimal = res.optimal;
    r.search.nodes = res.nodes;
    r.search.witness = res.witness.rows;
    if (o.classes && res.optimal) {
        gram_search::Enumeration all =
            gram_search::all_max_decompositions(red.reduced, res.k, o.budget);
        if (all.complete)
            r.search.classes = gram_search::equivalence_classes(red.reduced, all.decompositions);
    }
}

std::optional<Int> min_bound(const std::vector<std::optional<Int>>& vals) {
    std::optional<Int> best;
    for (const auto& v : vals)
        if (v && (!best || *v < *best)) best = v;
    return best;
}

Report cmd_build(const SpecFile& s, const Options& o) {
    if (s.kind != "subsection")
        throw std::domain_error("build needs a subsection spec");
    Report r;
    r.command = "build";
    r.kind = s.kind;
    r.echo = s.entries;
    ortho::SubsectionSpec sub = to_subsection(s);
    r.warnings = ortho::validate(sub);
    GramMatrix m = ortho::build_m(sub);
    r.matrix = mat_strings(m.m);
    lattice::ReductionResult red = lattice::prune(m, o.delta);
    r.reduced = mat_strings(red.reduced.m);
    for (const Int& d : lattice::smith_normal_form(m.m))
        r.elementary_divisors.push_back(d.str());
    r.checks.emplace_back("reduced_rank", std::to_string(red.reduced.size()));
    r.checks.emplace_back("dropped_zero_rows", std::to_string(red.dropped_rows.size()));
    r.interpretation = "contribution matrix of order " + std::to_string(m.size()) +
                       ", lattice rank " + std::to_string(red.reduced.size());
    return r;
}

Report cmd_bound(const SpecFile& s, const Options& o) {
    Report r;
    r.command = "bound";
    r.kind = s.kind;
    r.echo = s.entries;

    if (s.kind == "subsection") {
        ortho::SubsectionSpec sub = to_subsection(s);
        r.warnings = ortho::validate(sub);
        GramMatrix m = ortho::build_m(sub);
        r.matrix = mat_strings(m.m);
        qforms::QuadraticForm ql = select_form(s, o, s.l);

        std::optional<Int> outer, stable_total, stable_h0, pairing;
        outer = qforms::bound_outer(ql, s.cartan, Int(sub.mod.pn));
        r.bounds.emplace_back("outer", outer->str());
        if (action_is_trivial(sub)) {
            long gamma = cyclo::cyclic_generator(sub.subgroup);
            models::SemidirectModel model =
                models::semidirect_model(sub.mod.p, sub.mod.n, gamma);
            stable_h0 = qforms::bound_stable(ql, s.cartan, Int(model.k0));
            r.bounds.emplace_back("stable_height_zero", stable_h0->str());
            if (s.mode == "major") {
                stable_total = qforms::bound_stable(ql, s.cartan, Int(model.k));
                r.bounds.emplace_back("stable_total", stable_total->str());
            }
        }
        qforms::QuadraticForm big =
            qforms::tensor(ql, qforms::dynkin_a(static_cast<int>(sub.mod.m)));
        pairing = gram_search::quick_upper_bound(m, big);
        r.bounds.emplace_back("pairing", pairing->str());
        if (o.search) run_search(m, o, r);

        std::optional<Int> searched;
        if (r.search.ran && r.search.optimal) searched = Int(r.search.k);
        std::optional<Int> best =
            s.mode == "major" ? min_bound({outer, stable_total, pairing, searched})
                              : min_bound({outer, stable_h0, pairing, searched});
        r.interpretation = (s.mode == "major" ? "k(B) <= " : "k0(B) <= ") +
                           (best ? best->str() : std::string("?"));
        return r;
    }

    if (s.kind == "semidirect") {
        if (s.p == 2) {
            long k0 = models::k0_semidirect_2(s.n, s.gamma);
            r.bounds.emplace_back("height_zero_closed_form", std::to_string(k0));
            cyclo::PrimePowerModulus mod(2, s.n);
            long e = cyclo::order_of_unit(mod, s.gamma);
            if (mod.pn <= 100000 / e) {
                auto [k, k0b] = models::conjugacy_count(2, s.n, s.gamma);
                r.checks.emplace_back("class_count", std::to_string(k));
                r.checks.emplace_back("closed_form_matches_count", k0 == k0b ? "pass" : "fail");
            }
            r.interpretation = "k0 = " + std::to_string(k0);
            return r;
        }
        models::SemidirectModel model = models::semidirect_model(s.p, s.n, s.gamma);
        r.bounds.emplace_back("height_zero", std::to_string(model.k0));
        r.bounds.emplace_back("class_count", std::to_string(model.k));
        cyclo::PrimePowerModulus mod(s.p, s.n);
        long e = cyclo::order_of_unit(mod, s.gamma);
        if (mod.pn <= 100000 / e) {
            auto [k, k0] = models::conjugacy_count(s.p, s.n, s.gamma);
            r.checks.emplace_back("count_matches_model",
                                  (k == model.k && k0 == model.k0) ? "pass" : "fail");
        }
        r.interpretation =
            "k = " + std::to_string(model.k) + ", k0 = " + std::to_string(model.k0);
        return r;
    }

    models::MetacyclicModel model =
        models::metacyclic_model(s.p, s.n1, s.n2, s.l1, s.l2, s.d, s.gamma1, s.gamma2);
    Int rows = models::metacyclic_row_bound(s.p, s.n1, s.n2, s.l1, s.l2, s.d);
    r.bounds.emplace_back("row_model", rows.str());
    r.bounds.emplace_back("inertial_quotient_part",
                          models::brauer_diff(s.p, s.n1, s.n2, s.l1, s.l2).str());
    if (o.search) {
        IMat g = models::metacyclic_coefficient_gram(model);
        run_search(GramMatrix(g), o, r);
    }
    std::optional<Int> searched;
    if (r.search.ran && r.search.optimal) searched = Int(r.search.k);
    std::optional<Int> best = min_bound({std::optional<Int>(rows), searched});
    r.interpretation = "k(B) <= " + best->str();
    return r;
}

Report cmd_model(const SpecFile& s, const Options& o) {
    Report r;
    r.command = "model";
    r.kind = s.kind;
    r.echo = s.entries;

    if (s.kind == "semidirect") {
        models::SemidirectModel model = models::semidirect_model(s.p, s.n, s.gamma);
        for (const auto& [value, mult] : model.rows)
            r.model_rows.push_back(std::to_string(mult) + " x " + value.str());
        intbasis::FixedFieldBasis basis = intbasis::build_basis(
            model.mod, cyclo::subgroup_from_generator(model.mod, model.gamma));
        IMat a = models::semidirect_coefficients(model, basis);
        r.matrix = mat_strings(a.transpose() * a);
        r.checks.emplace_back("basis_size", std::to_string(basis.size()));
        r.checks.emplace_back("pairing_recovers_height_zero",
                              models::semidirect_gram_sum_check(model, basis) ? "pass" : "fail");
        long e = static_cast<long>(
            cyclo::subgroup_from_generator(model.mod, model.gamma).elements.size());
        if (model.mod.pn <= 100000 / e) {
            auto [k, k0] = models::conjugacy_count(s.p, s.n, s.gamma);
            r.checks.emplace_back("count_matches_model",
                                  (k == model.k && k0 == model.k0) ? "pass" : "fail");
        }
        r.interpretation =
            "k = " + std::to_string(model.k) + ", k0 = " + std::to_string(model.k0);
        return r;
    }

    if (s.kind == "metacyclic") {
        models::MetacyclicModel model =
            models::metacyclic_model(s.p, s.n1, s.n2, s.l1, s.l2, s.d, s.gamma1, s.gamma2);
        for (const auto& [row, mult] : model.rows) {
            std::string line = std::to_string(mult) + " x [";
            for (size_t i = 0; i < row.size(); ++i)
                line += (i ? ", " : "") + row[i].str();
            r.model_rows.push_back(line + "]");
        }
        r.matrix = mat_strings(models::metacyclic_coefficient_gram(model));
        long rows = models::metacyclic_row_count(model);
        r.checks.emplace_back("orthogonality",
                              models::verify_orthogonality(model) ? "pass" : "fail");
        Int order = pow_int(Int(s.p), s.n1) * pow_int(Int(s.p), s.n2) * s.d * s.l1 * s.l2;
        if (s.d <= 2 && order <= 100000) {
            long kg = models::metacyclic_class_count(s.p, s.n1, s.n2, s.l1, s.l2, s.d,
                                                     s.gamma1, s.gamma2);
            long kb = s.d == 1 ? kg
                               : kg - models::metacyclic_class_count(s.p, s.n1, s.n2, s.l1,
                                                                     s.l2, 1, s.gamma1, s.gamma2);
            r.checks.emplace_back("rows_match_class_count", kb == rows ? "pass" : "fail");
        }
        r.interpretation = "k(B) = " + std::to_string(rows);
        return r;
    }

    (void)o;
    throw std::domain_error("model needs a semidirect or metacyclic spec");
}

Report cmd_verify(const SpecFile& s, const Options& o, bool& ok) {
    Report r;
    r.command = "verify";
    r.kind = s.kind;
    r.echo = s.entries;
    auto check = [&](const std::string& name, bool pass) {
        r.checks.emplace_back(name, pass ? "pass" : "fail");
        ok = ok && pass;
    };

    if (s.kind == "subsection") {
        ortho::SubsectionSpec sub = to_subsection(s);
        r.warnings = ortho::validate(sub);
        check("spec_valid", true);
        GramMatrix m = ortho::build_m(sub);
        check("matrix_psd", true); // the constructor above enforces it
        int mm = static_cast<int>(sub.mod.m);

        bool blocks_ok = true;
        for (int st = 0; st < s.l && blocks_ok; ++st)
            for (int tt = 0; tt < s.l && blocks_ok; ++tt)
                for (long g : sub.subgroup.elements) {
                    int gs = sub.perm(g)[st], gt = sub.perm(g)[tt];
                    for (int i = 0; i < mm; ++i)
                        for (int j = 0; j < mm; ++j)
                            if (m.m(st * mm + i, tt * mm + j) != m.m(gs * mm + i, gt * mm + j)) {
                                blocks_ok = false;
                                break;
                            }
                }
        check("blocks_respect_action", blocks_ok);

        GramMatrix m2 = ortho::build_m(sub);
        check("deterministic_rebuild", m.m == m2.m);

        lattice::ReductionResult red = lattice::prune(m, o.delta);
        IMat back = red.transform * red.reduced.m * red.transform.transpose();
        check("reduction_reproduces", back == m.m);
        r.reduced = mat_strings(red.reduced.m);

        std::vector<Int> snf = lattice::smith_normal_form(m.m);
        bool chain = true;
        for (size_t i = 0; i + 1 < snf.size(); ++i) {
            const Int &a = snf[i], &b = snf[i + 1];
            if (a == 0 && b != 0) chain = false;
            if (a != 0 && b % a != 0) chain = false;
        }
        for (const Int& d : snf) r.elementary_divisors.push_back(d.str());
        check("divisor_chain", chain);

        if (o.search) {
            gram_search::SearchResult res = gram_search::max_k(red.reduced, o.budget);
            r.search.ran = true;
            r.search.k = res.k;
            r.search.optimal = res.optimal;
            r.search.nodes = res.nodes;
            r.search.witness = res.witness.rows;
            qforms::QuadraticForm big = qforms::tensor(qforms::dynkin_a(s.l),
                                                       qforms::dynkin_a(mm));
            Int pairing = gram_search::quick_upper_bound(m, big);
            if (res.optimal) check("search_within_pairing", Int(res.k) <= pairing);
        }
        r.interpretation = ok ? "all invariants hold" : "invariant violated";
        return r;
    }

    if (s.kind == "semidirect") {
        if (s.p == 2) {
            long k0 = models::k0_semidirect_2(s.n, s.gamma);
            auto [k, k0b] = models::conjugacy_count(2, s.n, s.gamma);
            check("closed_form_matches_count", k0 == k0b);
            r.checks.emplace_back("class_count", std::to_string(k));
            r.interpretation = ok ? "all invariants hold" : "invariant violated";
            return r;
        }
        models::SemidirectModel model = models::semidirect_model(s.p, s.n, s.gamma);
        cyclo::UnitSubgroup h = cyclo::subgroup_from_generator(model.mod, model.gamma);
        intbasis::FixedFieldBasis basis = intbasis::build_basis(model.mod, h);
        check("basis_spans_fixed_ring", intbasis::verify_basis(basis));
        check("pairing_recovers_height_zero",
              models::semidirect_gram_sum_check(model, basis));
        if (model.mod.pn <= 100000 / h.order()) {
            auto [k, k0] = models::conjugacy_count(s.p, s.n, s.gamma);
            check("count_matches_model", k == model.k && k0 == model.k0);
        }
        r.interpretation = ok ? "all invariants hold" : "invariant violated";
        return r;
    }

    models::MetacyclicModel model =
        models::metacyclic_model(s.p, s.n1, s.n2, s.l1, s.l2, s.d, s.gamma1, s.gamma2);
    check("orthogonality", models::verify_orthogonality(model));
    IMat g = models::metacyclic_coefficient_gram(model);
    check("coefficient_gram_psd", is_psd(g));
    check("row_count_matches_bound",
          Int(models::metacyclic_row_count(model)) ==
              models::metacyclic_row_bound(s.p, s.n1, s.n2, s.l1, s.l2, s.d));
    Int order = pow_int(Int(s.p), s.n1) * pow_int(Int(s.p), s.n2) * s.d * s.l1 * s.l2;
    if (s.d <= 2 && order <= 100000) {
        long kg = models::metacyclic_class_count(s.p, s.n1, s.n2, s.l1, s.l2, s.d,
                                                 s.gamma1, s.gamma2);
        long kb = s.d == 1 ? kg
                           : kg - models::metacyclic_class_count(s.p, s.n1, s.n2, s.l1, s.l2,
                                                                 1, s.gamma1, s.gamma2);
        check("rows_match_class_count", kb == models::metacyclic_row_count(model));
    }
    r.interpretation = ok ? "all invariants hold" : "invariant violated";
    return r;
}

void render(const Report& r, std::ostream& out) {
    out << "command: " << r.command << "\n";
    out << "kind: " << r.kind << "\n";
    for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
    auto print_matrix = [&](const char* name, const std::vector<std::vector<std::string>>& m) {
        if (m.empty()) return;
        out << name << " (" << m.size() << " x " << m.front().size() << "):\n";
        for (const auto& row : m) {
            out << "  [";
            for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
            out << "]\n";
        }
    };
    print_matrix("matrix", r.matrix);
    print_matrix("reduced", r.reduced);
    if (!r.elementary_divisors.empty()) {
        out << "elementary divisors:";
        for (const auto& d : r.elementary_divisors) out << " " << d;
        out << "\n";
    }
    if (!r.model_rows.empty()) {
        out << "rows:\n";
        for (const auto& m : r.model_rows) out << "  " << m << "\n";
    }
    for (const auto& [name, value] : r.bounds) out << "bound " << name << " = " << value << "\n";
    if (r.search.ran) {
        out << "search: k = " << r.search.k
            << (r.search.optimal ? " (exhaustive, " : " (budget-limited, ") << r.search.nodes
            << " nodes)\n";
        if (r.search.classes >= 0) out << "search classes: " << r.search.classes << "\n";
    }
    for (const auto& [name, value] : r.checks) out << "check " << name << ": " << value << "\n";
    if (!r.interpretation.empty()) out << r.interpretation << "\n";
}

Rat parse_delta(const std::string& v) {
    size_t slash = v.find('/');
    if (slash == std::string::npos) return Rat(parse_big(v, "--delta"));
    Int num = parse_big(v.substr(0, slash), "--delta");
    Int den = parse_big(v.substr(slash + 1), "--delta");
    if (den == 0) throw ParseError("--delta: zero denominator");
    return Rat(num, den);
}

const char* kUsage =
    "usage: kbound <build|bound|model|verify> <specfile> [options]\n"
    "  --budget N       search node budget (default 100000000)\n"
    "  --delta A/B      lattice reduction parameter in (1/4, 1] (default 3/4)\n"
    "  --cap N          congruence backtracking size cap (default 6)\n"
    "  --form a|custom  weighting form: Dynkin A or the spec file's form\n"
    "  --search on|off  toggle the decomposition search (default on)\n"
    "  --classes        also count decomposition classes at the maximum\n"
    "  --json PATH      write the machine-readable report to PATH ('-' = stdout)\n";

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty()) {
            err << kUsage;
            return 2;
        }
        const std::string& cmd = args[0];
        if (cmd != "build" && cmd != "bound" && cmd != "model" && cmd != "verify")
            throw ParseError("unknown command '" + cmd + "'");
        if (args.size() < 2) throw ParseError("missing spec file");
        const std::string& path = args[1];

        Options o;
        for (size_t i = 2; i < args.size(); ++i) {
            const std::string& a = args[i];
            auto need = [&](const char* name) -> const std::string& {
                if (i + 1 >= args.size()) throw ParseError(std::string(name) + " needs a value");
                return args[++i];
            };
            if (a == "--budget") {
                Int v = parse_big(need("--budget"), "--budget");
                if (v < 1 || !fits_long(v)) throw ParseError("--budget: positive integer required");
                o.budget = to_long(v);
            } else if (a == "--delta") {
                o.delta = parse_delta(need("--delta"));
            } else if (a == "--cap") {
                o.cap = static_cast<int>(parse_long(need("--cap"), "--cap"));
            } else if (a == "--form") {
                o.form = need("--form");
                if (o.form != "a" && o.form != "custom")
                    throw ParseError("--form must be a or custom");
            } else if (a == "--search") {
                const std::string& v = need("--search");
                if (v != "on" && v != "off") throw ParseError("--search must be on or off");
                o.search = v == "on";
            } else if (a == "--classes") {
                o.classes = true;
            } else if (a == "--json") {
                o.json_path = need("--json");
            } else {
                throw ParseError("unknown flag '" + a + "'");
            }
        }

        std::ifstream f(path);
        if (!f) throw ParseError("cannot open '" + path + "'");
        SpecFile s = parse_spec(f);

        bool ok = true;
        Report r;
        if (cmd == "build") r = cmd_build(s, o);
        else if (cmd == "bound") r = cmd_bound(s, o);
        else if (cmd == "model") r = cmd_model(s, o);
        else r = cmd_verify(s, o, ok);

        // "--json -" owns stdout: the human render would corrupt the document
        if (o.json_path == "-") {
            out << emit(r);
        } else {
            render(r, out);
            if (!o.json_path.empty()) {
                std::ofstream jf(o.json_path);
                if (!jf) throw ParseError("cannot write '" + o.json_path + "'");
                jf << emit(r);
            }
        }
        return ok ? 0 : 3;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return 4;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace kbound::cli
