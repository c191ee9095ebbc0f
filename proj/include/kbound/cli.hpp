#pragma once

#include "kbound/ints.hpp"
#include "kbound/matrix.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kbound::cli {

// Malformed input file or command line; distinct from semantic failures so
// the exit codes can tell them apart (2 vs 3).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// One parsed input file.  Raw entries keep the file order for echoing.
struct SpecFile {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string kind; // subsection | semidirect | metacyclic
    std::string mode = "major";
    long p = 0;
    int n = 1;
    int l = 0;
    IMat cartan;
    std::vector<long> subgroup_generators;
    std::vector<std::pair<long, std::vector<int>>> action; // residue -> 0-based images
    long gamma = 0;                                        // semidirect
    int n1 = 0, n2 = 0;                                    // metacyclic
    long l1 = 0, l2 = 0, d = 0, gamma1 = 0, gamma2 = 0;
    IMat form_num; // optional custom form (doubled-Gram style numerator)
    Int form_den = 0;
};

SpecFile parse_spec(std::istream& in);
SpecFile parse_spec_string(const std::string& text);

struct SearchReport {
    bool ran = false;
    long k = 0;
    bool optimal = false;
    long long nodes = 0;
    std::vector<std::vector<long>> witness;
    long classes = -1; // -1 = not computed
    bool operator==(const SearchReport&) const = default;
};

// Machine-readable result.  All big integers travel as decimal strings, so
// emit and parse_report are exact inverses.
struct Report {
    std::string command;
    std::string kind;
    std::vector<std::pair<std::string, std::string>> echo;
    std::vector<std::string> warnings;
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::vector<std::string>> reduced;
    std::vector<std::string> elementary_divisors;
    std::vector<std::pair<std::string, std::string>> bounds;
    SearchReport search;
    std::vector<std::string> model_rows;
    std::vector<std::pair<std::string, std::string>> checks;
    std::string interpretation;
    bool operator==(const Report&) const = default;
};

std::string emit(const Report& r);
Report parse_report(const std::string& text);

struct Options {
    long long budget = 100000000;
    Rat delta = Rat(3, 4);
    int cap = 6;            // congruence backtracking cap
    std::string form = "a"; // a | custom
    bool search = true;
    bool classes = false;   // also count decomposition classes at the maximum
    std::string json_path;  // empty = no machine output, "-" = stream to out
};

// Full command driver: run({"build", "spec.txt", "--json", "-"}, out, err).
// Returns the process exit code: 0 success, 2 parse error, 3 semantic error,
// 4 cap exceeded, 1 unexpected.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kbound::cli
