#include "copos/matgen.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "copos/errors.hpp"

namespace copos {

SymmetricRationalMatrix gen_horn() {
    SymmetricRationalMatrix h(5);
    for (int i = 0; i < 5; ++i) {
        h(i, i) = 1;
        h(i, (i + 1) % 5) = -1;
        h(i, (i + 2) % 5) = 1;
    }
    return h;
}

SymmetricFloatMatrix gen_tmat(const std::array<double, 5>& theta) {
    double sum = 0.0;
    for (double t : theta) {
        if (!(t >= 0.0)) throw DomainError("T-matrix angles must be nonnegative");
        sum += t;
    }
    if (!(sum < std::numbers::pi)) throw DomainError("T-matrix angles must sum to less than pi");
    SymmetricFloatMatrix m(5);
    for (int i = 0; i < 5; ++i) {
        m(i, i) = 1.0;
        m(i, (i + 1) % 5) = -std::cos(theta[i]);
        m(i, (i + 2) % 5) = std::cos(theta[i] + theta[(i + 1) % 5]);
    }
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AnyMatrix load_matrix(const MatrixSource& source) {
    switch (source.kind) {
        case MatrixSource::Kind::Horn: return gen_horn();
        case MatrixSource::Kind::TMatrix: return gen_tmat(source.theta);
        case MatrixSource::Kind::File: return parse_matrix(read_file(source.path));
        case MatrixSource::Kind::Inline: return parse_matrix(source.text);
    }
    return gen_horn();
}

namespace {

struct Token {
    std::string text;
    int line = 0;
    int column = 0;
};

// Splits into n rows of n tokens, with positions for error messages.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        std::vector<Token> row;
        std::size_t k = 0;
        while (k < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[k]))) {
                ++k;
                continue;
            }
            if (line[k] == '#' && row.empty()) break;
            std::size_t start = k;
            while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
            row.push_back({std::string(line.substr(start, k - start)), line_no, static_cast<int>(start) + 1});
        }
        if (!row.empty()) lines.push_back(std::move(row));
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (lines.empty()) throw ParseError("empty matrix text", 1, 1);
    const auto& head = lines.front();
    if (head.size() != 1) throw ParseError("first line must hold only the dimension", head[1].line, head[1].column);
    const Token& dim = head.front();
    int n = 0;
    for (char c : dim.text) {
        if (!std::isdigit(static_cast<unsigned char>(c)) || n > 1000) throw ParseError("bad dimension '" + dim.text + "'", dim.line, dim.column);
        n = n * 10 + (c - '0');
    }
    if (n < 1) throw ParseError("dimension must be at least 1", dim.line, dim.column);
    std::vector<std::vector<Token>> rows(lines.begin() + 1, lines.end());
    if (static_cast<int>(rows.size()) < n) {
        const int last = rows.empty() ? dim.line : rows.back().front().line;
        throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()), last + 1, 1);
    }
    if (static_cast<int>(rows.size()) > n) {
        const Token& t = rows[n].front();
        throw ParseError("unexpected row after the matrix", t.line, t.column);
    }
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) > n) {
            throw ParseError("row has more than " + std::to_string(n) + " entries", row[n].line, row[n].column);
        }
        if (static_cast<int>(row.size()) < n) {
            const Token& t = row.back();
            throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n), t.line,
                             t.column + static_cast<int>(t.text.size()));
        }
    }
    return rows;
}

Rational rational_entry(const Token& t) {
    try {
        return Rational::parse(t.text);
    } catch (const std::exception&) {
        throw ParseError("invalid entry '" + t.text + "'", t.line, t.column);
    }
}

double float_entry(const Token& t) {
    if (t.text.find('/') != std::string::npos) return rational_entry(t).to_double();
    rational_entry(t);  // grammar check
    return std::strtod(t.text.c_str(), nullptr);
}

template <typename T, typename F>
SymmetricMatrix<T> build(std::string_view text, F&& entry) {
    const auto rows = tokenize(text);
    const int n = static_cast<int>(rows.size());
    std::vector<std::vector<T>> full(n, std::vector<T>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) full[i][j] = entry(rows[i][j]);
    }
    SymmetricMatrix<T> m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (full[i][j] != full[j][i]) throw AsymmetryError(i + 1, j + 1);
            m(i, j) = full[i][j];
        }
    }
    return m;
}

}  // namespace

SymmetricRationalMatrix parse_matrix(std::string_view text) { return build<Rational>(text, rational_entry); }

SymmetricFloatMatrix parse_float_matrix(std::string_view text) { return build<double>(text, float_entry); }

std::string serialize_matrix(const SymmetricRationalMatrix& m) {
    std::string out = std::to_string(m.dim()) + "\n";
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j > 0) out += ' ';
            out += m(i, j).to_string();
        }
        out += '\n';
    }
    return out;
}

std::string serialize_matrix(const SymmetricFloatMatrix& m) {
    std::string out = std::to_string(m.dim()) + "\n";
    char buf[40];
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j > 0) out += ' ';
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace copos
