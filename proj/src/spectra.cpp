#include "jscheme/spectra.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "jscheme/errors.hpp"
#include "jscheme/modular.hpp"
#include "jscheme/parallel.hpp"

namespace jscheme {

namespace modp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace modp

namespace {

void check_prime(std::uint64_t p, std::size_t n) {
  if (p >= (std::uint64_t{1} << 63)) throw std::invalid_argument("prime must be below 2^63");
  if (static_cast<unsigned __int128>(p) <= static_cast<unsigned __int128>(n) * n)
    throw std::invalid_argument("prime must exceed |V|^2");
  if (!modp::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

// Dense n x n matrix over GF(p), row-major; reduced in place.
std::vector<std::uint64_t> hessenberg_char_poly(std::vector<std::uint64_t> h, std::size_t n, std::uint64_t p) {
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return h[i * n + j]; };

  // Similarity transforms to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t pivot = m;
    while (pivot < n && at(pivot, m - 1) == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(pivot, j), at(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(at(i, pivot), at(i, m));
    }
    const std::uint64_t inv_pivot = modp::inv(at(m, m - 1), p);
    for (std::size_t i = m + 1; i < n; ++i) {
      if (at(i, m - 1) == 0) continue;
      const std::uint64_t u = modp::mul(at(i, m - 1), inv_pivot, p);
      // row_i -= u * row_m
      for (std::size_t j = m - 1; j < n; ++j) at(i, j) = modp::sub(at(i, j), modp::mul(u, at(m, j), p), p);
      // col_m += u * col_i
      for (std::size_t r = 0; r < n; ++r) at(r, m) = modp::add(at(r, m), modp::mul(u, at(r, i), p), p);
    }
  }

  // polys[m] = char poly of the leading m x m block, lowest degree first.
  std::vector<std::vector<std::uint64_t>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    auto& cur = polys[m];
    cur.assign(m + 1, 0);
    const auto& prev = polys[m - 1];
    const std::uint64_t diag = at(m - 1, m - 1);
    for (std::size_t d = 0; d < prev.size(); ++d) {
      cur[d + 1] = modp::add(cur[d + 1], prev[d], p);
      cur[d] = modp::sub(cur[d], modp::mul(diag, prev[d], p), p);
    }
    std::uint64_t t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = modp::mul(t, at(m - i, m - i - 1), p);
      if (t == 0) break;
      const std::uint64_t coef = modp::mul(t, at(m - i - 1, m - 1), p);
      if (coef == 0) continue;
      const auto& older = polys[m - i - 1];
      for (std::size_t d = 0; d < older.size(); ++d) cur[d] = modp::sub(cur[d], modp::mul(coef, older[d], p), p);
    }
  }
  return polys[n];
}

}  // namespace

std::vector<std::uint64_t> char_poly_mod(const Graph& g, std::uint64_t p, std::size_t dense_budget) {
  const std::size_t n = g.vertex_count();
  if (n > dense_budget)
    throw budget_exceeded("graph has " + std::to_string(n) + " vertices, over the dense-matrix budget of " +
                          std::to_string(dense_budget));
  check_prime(p, n);
  std::vector<std::uint64_t> a(n * n, 0);
  for (Vertex u = 0; u < n; ++u) bits::for_each_set(g.row(u), [&](std::size_t v) { a[u * n + v] = 1; });
  return hessenberg_char_poly(std::move(a), n, p);
}

std::vector<std::uint64_t> char_poly_mod(std::span<const std::int64_t> matrix, std::size_t n, std::uint64_t p) {
  if (matrix.size() != n * n) throw std::invalid_argument("matrix is not n x n");
  check_prime(p, n);
  std::vector<std::uint64_t> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = modp::from_signed(matrix[i], p);
  return hessenberg_char_poly(std::move(a), n, p);
}

SpectralCertificate spectral_certificate(const Graph& g, std::span<const std::uint64_t> primes, std::size_t workers,
                                         std::size_t dense_budget) {
  SpectralCertificate cert;
  cert.primes.assign(primes.begin(), primes.end());
  cert.residues.resize(primes.size());
  parallel_for(primes.size(), workers == 0 ? default_workers() : workers,
               [&](std::size_t i) { cert.residues[i] = char_poly_mod(g, primes[i], dense_budget); });
  return cert;
}

const char* to_string(CospectralVerdict v) {
  return v == CospectralVerdict::cospectral_mod_primes ? "COSPECTRAL_MOD_PRIMES" : "NOT_COSPECTRAL";
}

CospectralVerdict compare_certificates(const SpectralCertificate& a, const SpectralCertificate& b) {
  if (a.primes != b.primes) throw std::invalid_argument("certificates use different prime lists");
  return a.residues == b.residues ? CospectralVerdict::cospectral_mod_primes : CospectralVerdict::not_cospectral;
}

CospectralVerdict cospectral(const Graph& g, const Graph& h, std::span<const std::uint64_t> primes,
                             std::size_t workers) {
  if (g.vertex_count() != h.vertex_count()) throw std::invalid_argument("graphs have different vertex counts");
  // Edge count is the x^{n-2} coefficient; a mismatch already decides.
  if (g.edge_count() != h.edge_count()) return CospectralVerdict::not_cospectral;
  return compare_certificates(spectral_certificate(g, primes, workers), spectral_certificate(h, primes, workers));
}

std::vector<double> eigenvalues(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    bits::for_each_set(g.row(u), [&](std::size_t v) { a(u, static_cast<Eigen::Index>(v)) = 1.0; });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace jscheme
