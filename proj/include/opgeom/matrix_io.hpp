#pragma once

#include <string>

#include "opgeom/types.hpp"

namespace opgeom {

/// Shared matrix file formats.
///
/// JSON: {"n": <int>, "entries": [[[re, im], ...], ...]} with row-major
/// nesting. CSV: one matrix row per line, entries interleaved as re,im.
/// Both parsers reject non-square or non-finite input.
ComplexMatrix parse_matrix_json(const std::string& text);
ComplexMatrix parse_matrix_csv(const std::string& text);

std::string matrix_to_json(const ComplexMatrix& m);
std::string matrix_to_csv(const ComplexMatrix& m);

/// Dispatches on the file extension (.json or .csv).
ComplexMatrix load_matrix(const std::string& path);

void save_matrix_json(const ComplexMatrix& m, const std::string& path);

}  // namespace opgeom
