#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "copos/matrix.hpp"
#include "copos/rational.hpp"

namespace copos {

/// The 5x5 Horn matrix: -1 on the cyclic band (i, i+1), +1 on (i, i+2), unit diagonal.
SymmetricRationalMatrix gen_horn();

/**
 * The 5x5 T-matrix for angles theta_1..theta_5:
 *   (i, i+1) = -cos theta_i,  (i, i+2) = cos(theta_i + theta_{i+1}),  indices mod 5.
 * Throws DomainError unless every theta_i >= 0 and sum theta_i < pi.
 */
SymmetricFloatMatrix gen_tmat(const std::array<double, 5>& theta);

struct MatrixSource {
    enum class Kind { Horn, TMatrix, File, Inline };
    Kind kind = Kind::Inline;
    std::array<double, 5> theta{};
    std::string path;  ///< File
    std::string text;  ///< Inline
};

using AnyMatrix = std::variant<SymmetricRationalMatrix, SymmetricFloatMatrix>;

/// Horn, File and Inline give exact matrices, TMatrix a float one.
AnyMatrix load_matrix(const MatrixSource& source);

/**
 * Matrix text: first line n, then n lines of n entries separated by
 * whitespace. An entry is an integer, `p/q` or a decimal (read exactly).
 * Blank lines and lines starting with '#' are skipped.
 * Throws ParseError (1-based line/column) or AsymmetryError.
 */
SymmetricRationalMatrix parse_matrix(std::string_view text);

/// Same grammar; decimals go through strtod, so 17-digit output round-trips.
SymmetricFloatMatrix parse_float_matrix(std::string_view text);

/// Rationals as `p` or `p/q`.
std::string serialize_matrix(const SymmetricRationalMatrix& m);
/// Doubles with 17 significant digits.
std::string serialize_matrix(const SymmetricFloatMatrix& m);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace copos
