#include "mvc/modp.hpp"

#include <utility>

namespace mvc::modp {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::size_t rank(Matrix m, std::uint64_t p) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank) {
      for (std::size_t j = col; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    const std::uint64_t inv = inverse(m.at(rank, col), p);
    for (std::size_t j = col; j < m.cols; ++j) m.at(rank, j) = m.at(rank, j) * inv % p;
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      const std::uint64_t factor = m.at(i, col);
      if (factor == 0) continue;
      // Entries are < p < 2^32, so products fit in 64 bits.
      for (std::size_t j = col; j < m.cols; ++j) {
        m.at(i, j) = (m.at(i, j) + (p - factor) * m.at(rank, j)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace mvc::modp
