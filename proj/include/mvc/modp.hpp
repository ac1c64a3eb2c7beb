#pragma once

// Exact linear algebra over Z/pZ for word-sized primes p < 2^32.

#include <cstdint>
#include <vector>

namespace mvc::modp {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

/// Row-major dense matrix with entries already reduced mod p.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> data;

  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::uint64_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Rank by Gaussian elimination; consumes its argument.
std::size_t rank(Matrix m, std::uint64_t p);

}  // namespace mvc::modp
