#pragma once

#include <iosfwd>
#include <string>

#include "spca/core.hpp"

namespace spca {

/// Dense matrix from CSV: one row per line, comma-separated, '.' decimal.
Matrix read_matrix_csv(std::istream& in);

/// MatrixMarket real matrix, coordinate or array format, general or
/// symmetric storage.
Matrix read_matrix_market(std::istream& in);

/// Dispatches on the %%MatrixMarket banner, otherwise CSV.
Matrix read_matrix_file(const std::string& path);

void write_matrix_csv(std::ostream& out, const Matrix& m);

}  // namespace spca
