#include "nrange/sampling.hpp"

#include <array>
#include <cmath>

namespace nrange {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::array<std::string_view, 9> class_names = {
    "ginibre", "hermitian", "psd", "positive_definite", "normal",
    "unitary", "nilpotent", "skew_hermitian", "diagonal_real",
};

ComplexMatrix hermitize(const ComplexMatrix& M) { return (M + M.adjoint()) / 2.0; }

} // namespace

const std::vector<EnsembleClass>& all_ensemble_classes() {
  static const std::vector<EnsembleClass> classes = {
      EnsembleClass::ginibre,   EnsembleClass::hermitian, EnsembleClass::psd,
      EnsembleClass::positive_definite, EnsembleClass::normal, EnsembleClass::unitary,
      EnsembleClass::nilpotent, EnsembleClass::skew_hermitian, EnsembleClass::diagonal_real,
  };
  return classes;
}

std::string_view to_string(EnsembleClass cls) { return class_names[static_cast<std::size_t>(cls)]; }

EnsembleClass parse_ensemble_class(std::string_view name) {
  for (std::size_t i = 0; i < class_names.size(); ++i) {
    if (class_names[i] == name) return static_cast<EnsembleClass>(i);
  }
  throw InvalidInput("unknown ensemble class: " + std::string(name));
}

void GeneratorConfig::validate() const {
  if (n < 1) throw InvalidInput("generator: n must be >= 1");
  if (count < 1) throw InvalidInput("generator: count must be >= 1");
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                          std::uint64_t d) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t v : {a, b, c, d}) h = splitmix64(h ^ splitmix64(v));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

complexd complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return complexd(re, im) / std::sqrt(2.0);
}

ComplexMatrix ginibre_matrix(std::mt19937_64& rng, int n) {
  ComplexMatrix G(n, n);
  // Row-major fill so the stream order reads naturally.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = complex_gaussian(rng);
  return G;
}

ComplexVector gaussian_vector(std::mt19937_64& rng, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_gaussian(rng);
  return v;
}

ComplexVector random_unit_vector(std::mt19937_64& rng, int n) {
  for (;;) {
    ComplexVector v = gaussian_vector(rng, n);
    const double norm = v.norm();
    if (norm > 0.0) return v / norm;
  }
}

ComplexMatrix haar_unitary(std::mt19937_64& rng, int n) {
  const ComplexMatrix G = ginibre_matrix(rng, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(R(j, j));
    if (mag > 0.0) Q.col(j) *= R(j, j) / mag;
  }
  return Q;
}

ComplexMatrix generate_slot(const GeneratorConfig& cfg, std::int64_t index, int slot) {
  cfg.validate();
  if (index < 0 || index >= cfg.count) {
    throw IndexOutOfRange("generate: index " + std::to_string(index) + " outside [0, " +
                          std::to_string(cfg.count) + ")");
  }
  auto rng = substream(cfg.seed, static_cast<std::uint64_t>(cfg.cls), static_cast<std::uint64_t>(cfg.n),
                       static_cast<std::uint64_t>(index), static_cast<std::uint64_t>(slot));
  const int n = cfg.n;
  switch (cfg.cls) {
  case EnsembleClass::ginibre:
    return ginibre_matrix(rng, n);
  case EnsembleClass::hermitian:
    return hermitize(ginibre_matrix(rng, n));
  case EnsembleClass::psd: {
    const ComplexMatrix G = ginibre_matrix(rng, n);
    return hermitize(G.adjoint() * G);
  }
  case EnsembleClass::positive_definite: {
    const ComplexMatrix G = ginibre_matrix(rng, n);
    const ComplexMatrix P = hermitize(G.adjoint() * G);
    const double eps = 1e-3 * operator_norm(P);
    return P + eps * ComplexMatrix::Identity(n, n);
  }
  case EnsembleClass::normal: {
    const ComplexMatrix U = haar_unitary(rng, n);
    const ComplexVector d = gaussian_vector(rng, n);
    return U * d.asDiagonal() * U.adjoint();
  }
  case EnsembleClass::unitary:
    return haar_unitary(rng, n);
  case EnsembleClass::nilpotent:
    return ginibre_matrix(rng, n).triangularView<Eigen::StrictlyUpper>();
  case EnsembleClass::skew_hermitian: {
    const ComplexMatrix G = ginibre_matrix(rng, n);
    return (G - G.adjoint()) / 2.0;
  }
  case EnsembleClass::diagonal_real: {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix D = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = normal(rng);
    return D;
  }
  }
  throw InvalidInput("generate: unhandled ensemble class");
}

ComplexMatrix generate(const GeneratorConfig& cfg, std::int64_t index) { return generate_slot(cfg, index, 0); }

VectorTriple generate_vector_triple(const GeneratorConfig& cfg, std::int64_t index) {
  cfg.validate();
  if (index < 0 || index >= cfg.count) throw IndexOutOfRange("generate_vector_triple: index out of range");
  auto rng = substream(cfg.seed, static_cast<std::uint64_t>(cfg.cls), static_cast<std::uint64_t>(cfg.n),
                       static_cast<std::uint64_t>(index), 0x7e17ULL);
  VectorTriple t;
  t.x = gaussian_vector(rng, cfg.n);
  t.e = random_unit_vector(rng, cfg.n);
  t.y = gaussian_vector(rng, cfg.n);
  return t;
}

} // namespace nrange
