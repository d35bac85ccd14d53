#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace affrig {

/// Arithmetic in Z/qZ for a prime q < 2^63.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const { return q_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + q_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;
  std::uint64_t inv(std::uint64_t a) const;

  /// Canonical residue of a signed integer.
  std::uint64_t from_int(std::int64_t x) const;

 private:
  std::uint64_t q_;
};

/// 2^61 - 1.
inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t n);

/// Precomputed primes in [2^59, 2^60), the largest sixteen below 2^60.
std::span<const std::uint64_t> sixty_bit_primes();

/// Dense row-major matrix over a prime field.
class PrimeFieldMatrix {
 public:
  PrimeFieldMatrix(int rows, int cols, std::uint64_t modulus);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint64_t modulus() const { return field_.modulus(); }
  const PrimeField& field() const { return field_; }

  std::uint64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  /// Stores value mod q.
  void set(int r, int c, std::uint64_t value) {
    data_[static_cast<std::size_t>(r) * cols_ + c] = value % field_.modulus();
  }

  /// Direct access; the caller keeps entries reduced.
  std::uint64_t& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  /// Appends the rows of `other` (same column count and modulus).
  void append_rows(const PrimeFieldMatrix& other);

 private:
  int rows_;
  int cols_;
  PrimeField field_;
  std::vector<std::uint64_t> data_;
};

/// Exact rank over F_q by row reduction.
int prime_field_rank(PrimeFieldMatrix m);

/// Basis of {x : M x = 0} over F_q, one basis vector per row of the result.
PrimeFieldMatrix prime_field_nullspace(PrimeFieldMatrix m);

}  // namespace affrig
