#include "spca/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace spca {

namespace {

std::string trimmed(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& tok, const char* context) {
  size_t pos = 0;
  double val;
  try {
    val = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ValidationError(std::string("cannot parse number '") + tok + "' in " +
                          context);
  }
  if (pos != tok.size()) {
    throw ValidationError(std::string("trailing characters in number '") + tok +
                          "' in " + context);
  }
  return val;
}

}  // namespace

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trimmed(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      row.push_back(parse_number(trimmed(tok), "CSV"));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError("ragged CSV: rows have different lengths");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("empty CSV matrix");
  Matrix m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix read_matrix_market(std::istream& in) {
  std::string banner;
  if (!std::getline(in, banner)) throw ValidationError("empty MatrixMarket file");
  std::stringstream bs(banner);
  std::string tag, object, format, field, symmetry;
  bs >> tag >> object >> format >> field >> symmetry;
  std::transform(format.begin(), format.end(), format.begin(), ::tolower);
  std::transform(field.begin(), field.end(), field.begin(), ::tolower);
  std::transform(symmetry.begin(), symmetry.end(), symmetry.begin(), ::tolower);
  if (tag != "%%MatrixMarket" || object != "matrix") {
    throw ValidationError("not a MatrixMarket matrix file");
  }
  if (field != "real" && field != "integer") {
    throw ValidationError("unsupported MatrixMarket field: " + field);
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw ValidationError("unsupported MatrixMarket symmetry: " + symmetry);
  }

  std::string line;
  auto next_data_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      const std::string t = trimmed(line);
      if (!t.empty() && t[0] != '%') return t;
    }
    throw ValidationError("truncated MatrixMarket file");
  };

  std::stringstream sizes(next_data_line());
  long long nr = 0, nc = 0, nnz = 0;
  if (format == "coordinate") {
    sizes >> nr >> nc >> nnz;
  } else if (format == "array") {
    sizes >> nr >> nc;
  } else {
    throw ValidationError("unsupported MatrixMarket format: " + format);
  }
  if (sizes.fail() || nr <= 0 || nc <= 0) {
    throw ValidationError("bad MatrixMarket size line");
  }

  Matrix m = Matrix::Zero(nr, nc);
  if (format == "coordinate") {
    for (long long e = 0; e < nnz; ++e) {
      std::stringstream es(next_data_line());
      long long i, j;
      double val;
      es >> i >> j >> val;
      if (es.fail() || i < 1 || i > nr || j < 1 || j > nc) {
        throw ValidationError("bad MatrixMarket entry");
      }
      m(i - 1, j - 1) = val;
      if (symmetric) m(j - 1, i - 1) = val;
    }
  } else {
    // column-major values; symmetric stores the lower triangle
    for (long long j = 0; j < nc; ++j) {
      for (long long i = symmetric ? j : 0; i < nr; ++i) {
        std::stringstream es(next_data_line());
        double val;
        es >> val;
        if (es.fail()) throw ValidationError("bad MatrixMarket value");
        m(i, j) = val;
        if (symmetric) m(j, i) = val;
      }
    }
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::string first;
  std::getline(in, first);
  in.clear();
  in.seekg(0);
  if (first.rfind("%%MatrixMarket", 0) == 0) return read_matrix_market(in);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

}  // namespace spca
