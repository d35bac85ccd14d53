#include "affrig/prime_field.hpp"

#include <array>
#include <string>
#include <utility>

#include "affrig/errors.hpp"

namespace affrig {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

constexpr std::array<std::uint64_t, 16> kSixtyBitPrimes = {
    1152921504606846883ULL, 1152921504606846869ULL, 1152921504606846803ULL,
    1152921504606846797ULL, 1152921504606846719ULL, 1152921504606846697ULL,
    1152921504606846607ULL, 1152921504606846581ULL, 1152921504606846577ULL,
    1152921504606846523ULL, 1152921504606846419ULL, 1152921504606846397ULL,
    1152921504606846347ULL, 1152921504606846307ULL, 1152921504606846281ULL,
    1152921504606846269ULL,
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::span<const std::uint64_t> sixty_bit_primes() { return kSixtyBitPrimes; }

PrimeField::PrimeField(std::uint64_t modulus) : q_(modulus) {
  if (modulus >= (std::uint64_t{1} << 63) || !is_prime(modulus))
    throw InvalidInput("modulus " + std::to_string(modulus) + " is not a prime below 2^63");
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exp) const {
  return powmod(base, exp, q_);
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % q_ == 0) throw InvalidInput("inverse of zero in prime field");
  return powmod(a, q_ - 2, q_);
}

std::uint64_t PrimeField::from_int(std::int64_t x) const {
  const auto q = static_cast<std::int64_t>(q_);
  std::int64_t r = x % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

PrimeFieldMatrix::PrimeFieldMatrix(int rows, int cols, std::uint64_t modulus)
    : rows_(rows), cols_(cols), field_(modulus),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
  if (rows < 0 || cols < 0) throw InvalidInput("negative matrix dimension");
}

void PrimeFieldMatrix::append_rows(const PrimeFieldMatrix& other) {
  if (other.cols_ != cols_ || other.modulus() != modulus())
    throw InvalidInput("append_rows: shape or modulus mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

namespace {

// Reduces m in place to reduced row echelon form; returns pivot columns.
std::vector<int> row_reduce(PrimeFieldMatrix& m) {
  const PrimeField& f = m.field();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
    const std::uint64_t scale = f.inv(m.at(row, col));
    for (int c = col; c < m.cols(); ++c) m.at(row, c) = f.mul(m.at(row, c), scale);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const std::uint64_t factor = m.at(r, col);
      if (factor == 0) continue;
      for (int c = col; c < m.cols(); ++c)
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int prime_field_rank(PrimeFieldMatrix m) {
  return static_cast<int>(row_reduce(m).size());
}

PrimeFieldMatrix prime_field_nullspace(PrimeFieldMatrix m) {
  const std::vector<int> pivots = row_reduce(m);
  const PrimeField& f = m.field();

  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  const int nullity = m.cols() - static_cast<int>(pivots.size());
  PrimeFieldMatrix basis(nullity, m.cols(), m.modulus());
  int b = 0;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.at(b, free) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis.at(b, pivots[r]) = f.neg(m.at(static_cast<int>(r), free));
    ++b;
  }
  return basis;
}

}  // namespace affrig
