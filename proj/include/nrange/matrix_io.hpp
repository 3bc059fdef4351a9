#pragma once

// Matrix documents are JSON objects
//
//   {"n": 2, "data": [[[0, 0], [2, 0]],
//                     [[0, 0], [0, 0]]]}
//
// with `data` holding n rows of n [re, im] pairs, row-major. Vector triples
// (for the Buzano check) use {"n": k, "vectors": [x, e, y]} with each vector a
// list of k [re, im] pairs.

#include <filesystem>
#include <string>

#include "nrange/linalg.hpp"
#include "nrange/sampling.hpp"

namespace nrange {

/// Throws InvalidInput on malformed JSON, non-square data, n mismatch or non-finite values.
ComplexMatrix parse_matrix(const std::string& text);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

std::string format_matrix(const ComplexMatrix& A);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& A);

VectorTriple parse_vector_triple(const std::string& text);
VectorTriple read_vector_triple_file(const std::filesystem::path& path);

} // namespace nrange
