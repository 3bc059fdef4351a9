#include "nrange/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nrange {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("matrix document: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double finite_number(const json& v) {
  if (!v.is_number()) throw InvalidInput("matrix document: entry component is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput("matrix document: non-finite entry");
  return x;
}

complexd parse_entry(const json& e) {
  if (!e.is_array() || e.size() != 2) throw InvalidInput("matrix document: entry must be [re, im]");
  return {finite_number(e[0]), finite_number(e[1])};
}

int parse_dimension(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("matrix document: expected a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw InvalidInput("matrix document: missing integer n");
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 1 || n > 4096) throw InvalidInput("matrix document: n out of range");
  return static_cast<int>(n);
}

ComplexVector parse_vector(const json& v, int n) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    throw InvalidInput("vector document: each vector must have n entries");
  }
  ComplexVector out(n);
  for (int i = 0; i < n; ++i) out(i) = parse_entry(v[static_cast<std::size_t>(i)]);
  return out;
}

json entry_json(complexd z) { return json::array({z.real(), z.imag()}); }

} // namespace

ComplexMatrix parse_matrix(const std::string& text) {
  const json doc = parse_document(text);
  const int n = parse_dimension(doc);
  if (!doc.contains("data") || !doc["data"].is_array()) throw InvalidInput("matrix document: missing data");
  const json& data = doc["data"];
  if (static_cast<int>(data.size()) != n) throw InvalidInput("matrix document: data must have n rows");
  ComplexMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw InvalidInput("matrix document: data is not square (row " + std::to_string(i) + ")");
    }
    for (int j = 0; j < n; ++j) A(i, j) = parse_entry(row[static_cast<std::size_t>(j)]);
  }
  return A;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) { return parse_matrix(read_text(path)); }

std::string format_matrix(const ComplexMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidInput("format_matrix: matrix is not square");
  json data = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(entry_json(A(i, j)));
    data.push_back(std::move(row));
  }
  json doc = {{"n", A.rows()}, {"data", std::move(data)}};
  return doc.dump() + "\n";
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& A) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << format_matrix(A);
}

VectorTriple parse_vector_triple(const std::string& text) {
  const json doc = parse_document(text);
  const int n = parse_dimension(doc);
  if (!doc.contains("vectors") || !doc["vectors"].is_array() || doc["vectors"].size() != 3) {
    throw InvalidInput("vector document: expected vectors = [x, e, y]");
  }
  const json& v = doc["vectors"];
  return {parse_vector(v[0], n), parse_vector(v[1], n), parse_vector(v[2], n)};
}

VectorTriple read_vector_triple_file(const std::filesystem::path& path) {
  return parse_vector_triple(read_text(path));
}

} // namespace nrange
