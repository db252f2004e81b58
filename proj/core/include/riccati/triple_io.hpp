#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "riccati/popov.hpp"

namespace riccati {

/// File missing or unreadable.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed document; the message carries the offending field / location.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TripleDocument {
    PopovTriple triple;
    std::optional<Tolerance> tol;  // per-file override
};

/// Loads a triple from a JSON document with fields A, B, Q, R, optional S
/// (defaults to zero) and optional tol { rel, abs_residual }. Shape or
/// validation problems raise ParseError with the field name.
TripleDocument load_triple(const std::string& path, const Tolerance& tol = {});
TripleDocument parse_triple(std::istream& in, const std::string& origin,
                            const Tolerance& tol = {});

/// Loads a symmetric matrix from a JSON document { "X": [[...]] } or a bare
/// nested array.
Matrix load_matrix(const std::string& path);

/// Serializes with enough digits to round-trip bit-identically.
std::string matrix_to_json(const Matrix& m);
void save_triple(const PopovTriple& sigma, const std::string& path);

}  // namespace riccati
