#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jscheme/graph.hpp"

namespace jscheme {

/// The five smallest primes above 2^62. Changing this list changes every
/// certificate, so it is versioned.
inline constexpr std::array<std::uint64_t, 5> default_primes = {
    4611686018427388039ULL, 4611686018427388073ULL, 4611686018427388081ULL,
    4611686018427388091ULL, 4611686018427388093ULL,
};
inline constexpr int prime_list_version = 1;

/// Largest graph the dense modular pipeline accepts.
inline constexpr std::size_t default_dense_budget = 2000;

/// Coefficients of det(xI − A) mod p, lowest degree first (size |V| + 1).
/// Hessenberg reduction over GF(p) followed by the Hessenberg recurrence.
/// Throws std::invalid_argument if p is not a prime in (|V|², 2^63) and
/// budget_exceeded past `dense_budget` vertices.
std::vector<std::uint64_t> char_poly_mod(const Graph& g, std::uint64_t p,
                                         std::size_t dense_budget = default_dense_budget);

/// Same, for an arbitrary square integer matrix given row-major.
std::vector<std::uint64_t> char_poly_mod(std::span<const std::int64_t> matrix, std::size_t n, std::uint64_t p);

struct SpectralCertificate {
  std::vector<std::uint64_t> primes;
  std::vector<std::vector<std::uint64_t>> residues;  // residues[i]: char poly mod primes[i]

  friend bool operator==(const SpectralCertificate&, const SpectralCertificate&) = default;
};

/// One char poly per prime, computed in parallel.
SpectralCertificate spectral_certificate(const Graph& g, std::span<const std::uint64_t> primes = default_primes,
                                         std::size_t workers = 0, std::size_t dense_budget = default_dense_budget);

enum class CospectralVerdict { cospectral_mod_primes, not_cospectral };

const char* to_string(CospectralVerdict v);

/// NOT_COSPECTRAL is a proof. COSPECTRAL_MOD_PRIMES means the characteristic
/// polynomials agree modulo every prime in the list; a false positive needs a
/// simultaneous collision modulo all of them. Throws for differing sizes.
CospectralVerdict cospectral(const Graph& g, const Graph& h, std::span<const std::uint64_t> primes = default_primes,
                             std::size_t workers = 0);
CospectralVerdict compare_certificates(const SpectralCertificate& a, const SpectralCertificate& b);

/// Floating-point adjacency eigenvalues, ascending. For inspection only;
/// never used in verdicts.
std::vector<double> eigenvalues(const Graph& g);

}  // namespace jscheme
