#pragma once

#include <string>

#include "minnorm/types.hpp"

namespace minnorm {

/// Read a dense complex Matrix Market file
/// (header "%%MatrixMarket matrix array complex general", column-major,
/// one "real imag" pair per entry). Throws ParseError with a 1-based
/// line/column location on malformed input.
CMatrix read_matrix_market(const std::string& path);

/// Read a single-column matrix as a vector; DimensionError otherwise.
CVector read_vector_market(const std::string& path);

/// Write in the same format at 17 significant digits, so equal values
/// round-trip to byte-identical files.
void write_matrix_market(const std::string& path, const CMatrix& A);
void write_matrix_market(const std::string& path, const CVector& v);

} // namespace minnorm
