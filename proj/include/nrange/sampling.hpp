#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nrange/linalg.hpp"

namespace nrange {

enum class EnsembleClass {
  ginibre,
  hermitian,
  psd,
  positive_definite,
  normal,
  unitary,
  nilpotent,
  skew_hermitian,
  diagonal_real,
};

const std::vector<EnsembleClass>& all_ensemble_classes();
std::string_view to_string(EnsembleClass cls);
/// Throws InvalidInput for names outside the enumeration.
EnsembleClass parse_ensemble_class(std::string_view name);

struct GeneratorConfig {
  EnsembleClass cls = EnsembleClass::ginibre;
  int n = 4;
  std::uint64_t seed = 1;
  std::int64_t count = 1;

  void validate() const;
};

/// Per-sample random engine. Streams are keyed on (seed, class, n, index, slot)
/// so any sample can be produced independently of the others.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                          std::uint64_t d);

/// Standard complex Gaussian: (x + iy)/sqrt(2), E|z|^2 = 1.
complexd complex_gaussian(std::mt19937_64& rng);
ComplexMatrix ginibre_matrix(std::mt19937_64& rng, int n);
ComplexVector gaussian_vector(std::mt19937_64& rng, int n);
/// Complex Gaussian vector normalized to unit length (uniform on the sphere).
ComplexVector random_unit_vector(std::mt19937_64& rng, int n);

/// Q factor of a Ginibre sample with R's diagonal rotated to be positive real.
ComplexMatrix haar_unitary(std::mt19937_64& rng, int n);

/// Sample `index` of the ensemble. Deterministic in (class, n, seed, index).
ComplexMatrix generate(const GeneratorConfig& cfg, std::int64_t index);

/// Independent companion draw for pair inputs; slot 0 is `generate` itself.
ComplexMatrix generate_slot(const GeneratorConfig& cfg, std::int64_t index, int slot);

struct VectorTriple {
  ComplexVector x;
  ComplexVector e; ///< unit norm
  ComplexVector y;
};

VectorTriple generate_vector_triple(const GeneratorConfig& cfg, std::int64_t index);

} // namespace nrange
