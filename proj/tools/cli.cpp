#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "copos/census.hpp"
#include "copos/condition_v.hpp"
#include "copos/conditions.hpp"
#include "copos/errors.hpp"
#include "copos/irred.hpp"
#include "copos/matgen.hpp"
#include "copos/zeros.hpp"

namespace copos::cli {

using nlohmann::json;

int default_jobs() {
    if (const char* env = std::getenv("COPOS_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct Config {
    std::string format = "text";
    int jobs = 0;
    double tau = kDefaultTolerance;
    std::string backend = "exact";
    bool no_prune = false;
    bool allow_long = false;
    bool strict_chain = false;
    std::uint64_t node_budget = 0;

    std::string matrix;
    std::string vector;
    std::string family;
    int n = 0;
    std::string conditions;
    int which = 2;
    std::vector<std::string> gen_args;

    [[nodiscard]] bool json() const { return format == "json"; }
    [[nodiscard]] ChainMode chain() const { return strict_chain ? ChainMode::Strict : ChainMode::NonStrict; }
    [[nodiscard]] CensusOptions census() const {
        CensusOptions o;
        o.prune = !no_prune;
        o.jobs = jobs > 0 ? jobs : default_jobs();
        o.allow_long = allow_long;
        o.chain = chain();
        o.node_budget = node_budget;
        return o;
    }
};

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string read_matrix_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return read_file(path);
}

/// `(1,2,1/2)`, `1,2,1/2` or whitespace separated.
std::vector<Rational> parse_vector(const std::string& text) {
    std::vector<Rational> v;
    std::string token;
    int start = 0;
    auto flush = [&](int col) {
        if (token.empty()) return;
        try {
            v.push_back(Rational::parse(token));
        } catch (const std::exception&) {
            throw ParseError("invalid vector entry '" + token + "'", 1, start + 1);
        }
        token.clear();
        (void)col;
    };
    for (int i = 0; i < static_cast<int>(text.size()); ++i) {
        const char c = text[i];
        if (c == ',' || c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
            flush(i);
            continue;
        }
        if (token.empty()) start = i;
        token += c;
    }
    flush(static_cast<int>(text.size()));
    if (v.empty()) throw ParseError("empty vector", 1, 1);
    return v;
}

/// `0.3`, `pi`, `pi/10`, `3pi/10`, `3*pi/10`.
double parse_angle(const std::string& text) {
    const auto p = text.find("pi");
    if (p == std::string::npos) {
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (text.empty() || *end != '\0') throw ParseError("invalid angle '" + text + "'", 1, 1);
        return v;
    }
    std::string coef = text.substr(0, p);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double scale = 1.0;
    if (!coef.empty()) {
        char* end = nullptr;
        scale = std::strtod(coef.c_str(), &end);
        if (*end != '\0') throw ParseError("invalid angle '" + text + "'", 1, 1);
    }
    std::string rest = text.substr(p + 2);
    double den = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw ParseError("invalid angle '" + text + "'", 1, static_cast<int>(p) + 3);
        char* end = nullptr;
        den = std::strtod(rest.c_str() + 1, &end);
        if (rest.size() == 1 || *end != '\0' || den == 0.0) throw ParseError("invalid angle '" + text + "'", 1, static_cast<int>(p) + 4);
    }
    return scale * std::numbers::pi / den;
}

template <typename T>
json vector_json(const Vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) {
        if constexpr (std::is_same_v<T, Rational>) {
            a.push_back(x.to_string());
        } else {
            a.push_back(x);
        }
    }
    return a;
}

template <typename T>
std::string vector_text(const Vector<T>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += ",";
        if constexpr (std::is_same_v<T, Rational>) {
            s += v[i].to_string();
        } else {
            s += fmt_double(v[i]);
        }
    }
    return s + ")";
}

json set_json(IndexSet s) {
    json a = json::array();
    for (int i : s.elements()) a.push_back(i + 1);
    return a;
}

template <typename T>
json zeros_json(const BasicMinimalZeroSet<T>& mz) {
    json a = json::array();
    for (const auto& z : mz.zeros) a.push_back({{"support", set_json(z.support)}, {"vector", vector_json(z.vector)}});
    return a;
}

template <typename T>
void zeros_text(std::ostream& out, const BasicMinimalZeroSet<T>& mz) {
    out << "minimal zeros: " << mz.zeros.size() << "\n";
    for (const auto& z : mz.zeros) out << "  " << z.support.to_string() << "  " << vector_text(z.vector) << "\n";
}

template <typename M>
int analyze_matrix(const Config& cfg, const M& a, bool zeros_only, std::ostream& out) {
    const auto mz = [&] {
        if constexpr (std::is_same_v<M, SymmetricRationalMatrix>) {
            return find_minimal_zeros(a);
        } else {
            return find_minimal_zeros(a, cfg.tau);
        }
    }();
    const bool exact = std::is_same_v<M, SymmetricRationalMatrix>;
    if (zeros_only) {
        if (cfg.json()) {
            out << json{{"n", a.dim()}, {"backend", exact ? "exact" : "float"}, {"minimal_zeros", zeros_json(mz)}}.dump(2) << "\n";
        } else {
            zeros_text(out, mz);
        }
        return kOk;
    }
    const auto nn = [&] {
        if constexpr (std::is_same_v<M, SymmetricRationalMatrix>) {
            return irreducible_wrt_nonnegative(a, mz);
        } else {
            return irreducible_wrt_nonnegative(a, mz, cfg.tau);
        }
    }();
    const auto psd = [&] {
        if constexpr (std::is_same_v<M, SymmetricRationalMatrix>) {
            return irreducible_wrt_psd(a, mz);
        } else {
            return irreducible_wrt_psd(a, mz, cfg.tau);
        }
    }();
    std::optional<RelationReport> rel;
    std::string rel_error;
    try {
        rel = lin_rel_check(a, mz.supports(), cfg.tau);
    } catch (const OutOfRange& e) {
        rel_error = e.what();
    }

    if (cfg.json()) {
        json witnesses = json::array();
        for (const auto& w : nn.witnesses) {
            witnesses.push_back({{"pair", {w.i + 1, w.j + 1}}, {"zero", set_json(mz.zeros[w.zero_index].support)}});
        }
        json uncovered = json::array();
        for (auto [i, j] : nn.uncovered) uncovered.push_back({i + 1, j + 1});
        json j{{"n", a.dim()},
               {"backend", exact ? "exact" : "float"},
               {"minimal_zeros", zeros_json(mz)},
               {"supports", mz.supports().to_json()},
               {"irreducible_nonnegative", {{"value", nn.irreducible}, {"witnesses", witnesses}, {"uncovered", uncovered}}},
               {"irreducible_psd", {{"value", psd.irreducible}, {"span_rank", psd.span_rank}}}};
        j["relations"] = rel ? rel->to_json() : json{{"error", rel_error}};
        out << j.dump(2) << "\n";
        return kOk;
    }

    zeros_text(out, mz);
    out << "\nirreducible w.r.t. nonnegative matrices: " << (nn.irreducible ? "yes" : "no") << "\n";
    for (const auto& w : nn.witnesses) {
        out << "  pair (" << w.i + 1 << "," << w.j + 1 << "): zero on " << mz.zeros[w.zero_index].support.to_string() << "\n";
    }
    for (auto [i, j] : nn.uncovered) out << "  pair (" << i + 1 << "," << j + 1 << "): no witness\n";
    out << "\nirreducible w.r.t. positive semidefinite matrices: " << (psd.irreducible ? "yes" : "no") << " (span rank "
        << psd.span_rank << " of " << a.dim() << ")\n";
    out << "\nalpha relations:";
    if (!rel) {
        out << " not applicable (" << rel_error << ")\n";
        return kOk;
    }
    out << "\n";
    for (char r = 'a'; r <= 'h'; ++r) {
        int instances = 0;
        int skipped = 0;
        for (const auto& c : rel->checks) {
            if (c.relation != r) continue;
            c.evaluated ? ++instances : ++skipped;
        }
        out << "  (" << r << ") " << (rel->holds(r) ? "holds" : "fails") << ", " << instances << " instances";
        if (skipped > 0) out << ", " << skipped << " not evaluated";
        out << "\n";
        for (const auto& c : rel->checks) {
            if (c.relation != r || !c.evaluated || c.pass) continue;
            out << "    violated on {";
            for (std::size_t k = 0; k < c.indices.size(); ++k) out << (k ? "," : "") << c.indices[k] + 1;
            out << "}: lhs " << fmt_double(c.lhs) << ", rhs " << fmt_double(c.rhs) << "\n";
        }
    }
    return kOk;
}

int cmd_analyze(const Config& cfg, bool zeros_only, std::ostream& out) {
    const std::string text = read_matrix_text(cfg.matrix);
    if (cfg.backend == "float") return analyze_matrix(cfg, parse_float_matrix(text), zeros_only, out);
    return analyze_matrix(cfg, parse_matrix(text), zeros_only, out);
}

int cmd_decompose(const Config& cfg, std::ostream& out) {
    const auto a = parse_matrix(read_matrix_text(cfg.matrix));
    const auto u = parse_vector(cfg.vector);
    if (static_cast<int>(u.size()) != a.dim()) throw DimensionMismatch("vector length does not match the matrix dimension");
    const auto parts = decompose_zero(a, u);
    if (cfg.json()) {
        json terms = json::array();
        for (const auto& [z, c] : parts) {
            terms.push_back({{"coefficient", c.to_string()}, {"support", set_json(z.support)}, {"vector", vector_json(z.vector)}});
        }
        out << json{{"vector", vector_json(u)}, {"terms", terms}}.dump(2) << "\n";
        return kOk;
    }
    out << vector_text(u) << " =\n";
    for (const auto& [z, c] : parts) out << "  " << c.to_string() << " * " << vector_text(z.vector) << "  " << z.support.to_string() << "\n";
    return kOk;
}

int cmd_check_family(const Config& cfg, std::ostream& out) {
    if (cfg.n < 1 || cfg.n > 32) throw PreconditionViolation("--n must be in 1..32");
    const SupportFamily f = parse_family(cfg.n, cfg.family);
    const ConditionReport report = check_family(f, cfg.chain());
    const bool ok = report.all_pass();
    if (cfg.json()) {
        out << json{{"n", cfg.n}, {"family", f.to_json()}, {"conditions", report.to_json()}, {"all_pass", ok}}.dump(2) << "\n";
    } else {
        static const char* names[] = {"i", "ii", "iii", "iv", "v"};
        out << "family " << f.to_string() << " (n = " << cfg.n << ")\n";
        for (int k = 1; k <= 5; ++k) {
            const auto& c = report.get(k);
            out << "  (" << names[k - 1] << ") " << to_string(c.verdict);
            if (!c.detail.empty()) out << ": " << c.detail;
            if (c.verdict == Verdict::Fail && !c.witness.is_null()) out << "\n      witness " << c.witness.dump();
            out << "\n";
        }
        out << (ok ? "all conditions hold" : "some condition does not hold") << "\n";
    }
    return ok ? kOk : kMismatch;
}

int cmd_enumerate(const Config& cfg, std::ostream& out) {
    const ConditionSet conds = ConditionSet::parse(cfg.conditions);
    const CensusResult r = enumerate_classes(cfg.n, conds, cfg.census());
    if (cfg.json()) {
        out << r.to_json().dump(2) << "\n";
        return kOk;
    }
    std::string names;
    for (const auto& s : r.conditions.names()) names += (names.empty() ? "" : ",") + s;
    out << "# n = " << r.n << ", conditions " << names << "\n";
    out << format_classes(r.classes);
    out << r.count << " classes\n";
    return kOk;
}

int cmd_tables(const Config& cfg, std::ostream& out) {
    TableReport report;
    if (cfg.which == 1) {
        if (cfg.n != 0 && cfg.n != 6) throw PreconditionViolation("table 1 is the n = 6 census");
        report = reproduce_table1(cfg.census());
    } else if (cfg.which == 2) {
        std::vector<int> sizes{4, 5, 6};
        if (cfg.n != 0) sizes = {cfg.n};
        report = reproduce_table2(sizes, cfg.census());
    } else {
        throw PreconditionViolation("--which must be 1 or 2");
    }
    out << (cfg.json() ? report.to_json().dump(2) + "\n" : report.to_text());
    return report.ok() ? kOk : kMismatch;
}

int cmd_gen(const Config& cfg, std::ostream& out) {
    if (cfg.gen_args.empty()) throw PreconditionViolation("gen needs 'horn' or 'tmat'");
    const std::string& kind = cfg.gen_args.front();
    AnyMatrix m;
    if (kind == "horn") {
        if (cfg.gen_args.size() != 1) throw PreconditionViolation("gen horn takes no arguments");
        m = gen_horn();
    } else if (kind == "tmat") {
        if (cfg.gen_args.size() != 6) throw PreconditionViolation("gen tmat needs five angles");
        std::array<double, 5> theta{};
        for (int i = 0; i < 5; ++i) theta[i] = parse_angle(cfg.gen_args[i + 1]);
        m = gen_tmat(theta);
    } else {
        throw PreconditionViolation("unknown generator '" + kind + "'");
    }
    if (!cfg.json()) {
        out << std::visit([](const auto& x) { return serialize_matrix(x); }, m);
        return kOk;
    }
    json rows = json::array();
    std::visit(
        [&](const auto& x) {
            for (int i = 0; i < x.dim(); ++i) {
                json row = json::array();
                for (int j = 0; j < x.dim(); ++j) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, SymmetricRationalMatrix>) {
                        row.push_back(x(i, j).to_string());
                    } else {
                        row.push_back(x(i, j));
                    }
                }
                rows.push_back(std::move(row));
            }
        },
        m);
    out << json{{"n", 5}, {"exact", m.index() == 0}, {"entries", rows}}.dump(2) << "\n";
    return kOk;
}

void add_format(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

void add_census(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--jobs", cfg.jobs, "worker threads (default $COPOS_JOBS or all cores)")->check(CLI::Range(1, 1024));
    cmd->add_flag("--no-prune{true},--prune{false}", cfg.no_prune, "toggle (iii) pruning during generation");
    cmd->add_flag("--allow-long", cfg.allow_long, "permit the n = 7 runs");
    cmd->add_flag("--strict-chain", cfg.strict_chain, "read the (iii) chain as strictly increasing");
    cmd->add_option("--node-budget", cfg.node_budget, "stop after this many canonical families (0 = unlimited)");
}

void add_numeric(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--tau", cfg.tau, "float backend tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--backend", cfg.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Minimal zeros of copositive matrices and census of support families", "copos"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "minimal zeros, irreducibility and alpha relations of a matrix");
    analyze->add_option("matrix", cfg.matrix, "matrix file, '-' for stdin")->required();
    add_format(analyze, cfg);
    add_numeric(analyze, cfg);

    auto* zeros = app.add_subcommand("minimal-zeros", "minimal zeros of a matrix");
    zeros->add_option("matrix", cfg.matrix, "matrix file, '-' for stdin")->required();
    add_format(zeros, cfg);
    add_numeric(zeros, cfg);

    auto* decompose = app.add_subcommand("decompose", "write a zero as a positive sum of minimal zeros");
    decompose->add_option("matrix", cfg.matrix, "matrix file, '-' for stdin")->required();
    decompose->add_option("vector", cfg.vector, "e.g. \"1,2,1,0,0\"")->required();
    add_format(decompose, cfg);

    auto* check = app.add_subcommand("check-family", "conditions (i)-(v) for one support family");
    check->add_option("--n", cfg.n, "ground set size")->required();
    check->add_option("family", cfg.family, "e.g. \"{1,2},{2,3}\"")->required();
    check->add_flag("--strict-chain", cfg.strict_chain, "read the (iii) chain as strictly increasing");
    add_format(check, cfg);

    auto* enumerate = app.add_subcommand("enumerate", "classes of support families satisfying given conditions");
    enumerate->add_option("--n", cfg.n, "ground set size")->required();
    enumerate->add_option("--conditions", cfg.conditions, "e.g. i,ii,iv or all")->required();
    add_format(enumerate, cfg);
    add_census(enumerate, cfg);

    auto* tables = app.add_subcommand("tables", "recompute the reference tables and compare");
    tables->add_option("--which", cfg.which, "1 (n = 6 classes) or 2 (counts)")->check(CLI::IsMember({1, 2}));
    tables->add_option("--n", cfg.n, "restrict table 2 to one size (4..7)");
    add_format(tables, cfg);
    add_census(tables, cfg);

    auto* gen = app.add_subcommand("gen", "print a generated matrix: 'horn' or 'tmat t1 t2 t3 t4 t5'");
    gen->add_option("args", cfg.gen_args, "generator and angles (e.g. pi/10)")->required();
    add_format(gen, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cfg, false, out);
        if (zeros->parsed()) return cmd_analyze(cfg, true, out);
        if (decompose->parsed()) return cmd_decompose(cfg, out);
        if (check->parsed()) return cmd_check_family(cfg, out);
        if (enumerate->parsed()) return cmd_enumerate(cfg, out);
        if (tables->parsed()) return cmd_tables(cfg, out);
        if (gen->parsed()) return cmd_gen(cfg, out);
    } catch (const NotCopositiveEvidence& e) {
        err << "error: " << e.what() << "; witness " << vector_text(e.witness()) << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace copos::cli
