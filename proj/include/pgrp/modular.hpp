#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pgrp::modular {

bool is_prime(std::uint64_t n);

/// Arithmetic in the prime field of order q < 2^32.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + q_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % q_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t reduce(std::int64_t a) const;

 private:
  std::uint64_t q_;
};

/// Dense polynomials, coefficients low to high, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

Poly poly_rem(const PrimeField& f, Poly a, const Poly& m);
Poly poly_divexact(const PrimeField& f, Poly a, const Poly& m);
Poly poly_mulmod(const PrimeField& f, const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m);
Poly poly_gcd(const PrimeField& f, Poly a, Poly b);
/// Distinct roots in F_q of a nonzero polynomial, ascending.
std::vector<std::uint64_t> distinct_roots(const PrimeField& f, const Poly& p);

/// Row-major dense matrix over F_q.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::uint64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<std::uint64_t> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const std::uint64_t> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Reduces to reduced row echelon form in place; returns pivot columns.
/// Pivot search takes the first row with a nonzero entry in the current column.
std::vector<std::size_t> rref(const PrimeField& f, Matrix& m);
std::size_t rank(const PrimeField& f, Matrix m);
/// Basis of {x : m x = 0}, one row per basis vector.
Matrix nullspace(const PrimeField& f, Matrix m);

/// Eigenvalues of a diagonalizable matrix acting on row vectors (v -> vA),
/// from Krylov minimal polynomials of deterministic pseudo-random vectors
/// until the eigenspace dimensions add up. Returns (eigenvalue, left
/// eigenspace basis) pairs in ascending eigenvalue order. Throws
/// std::runtime_error if the matrix is not diagonalizable over F_q.
struct Eigenspace {
  std::uint64_t eigenvalue;
  Matrix basis;
};
std::vector<Eigenspace> left_eigenspaces(const PrimeField& f, const Matrix& a);

}  // namespace pgrp::modular
