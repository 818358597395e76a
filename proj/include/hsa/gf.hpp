/* Copyright 2026 The HSA Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Exact arithmetic and dense linear algebra over a prime field GF(q).
//
// Everything here is integer-only. Elements are stored as their canonical
// residue in [0, q) and q is bounded below 2^31, so a product of two residues
// always fits in 64 bits before reduction.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsa/error.hpp"

namespace hsa {

using Symbol = std::uint32_t;

// Deterministic Miller-Rabin; the base set below is exact for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (a %= n; e; e >>= 1) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class FieldElement;

class PrimeField {
 public:
  static constexpr std::uint64_t kModulusBound = 1ull << 31;

  explicit PrimeField(std::uint64_t q) : q_(static_cast<std::uint32_t>(q)) {
    if (q >= kModulusBound) {
      throw Error(ErrorCode::kInvalidParams, "modulus " + std::to_string(q) + " must be below 2^31");
    }
    if (!is_prime(q)) {
      throw Error(ErrorCode::kNotPrime, "modulus " + std::to_string(q) + " is not prime");
    }
  }

  std::uint64_t modulus() const noexcept { return q_; }

  Symbol reduce(std::int64_t v) const noexcept {
    const auto q = static_cast<std::int64_t>(q_);
    auto r = v % q;
    return static_cast<Symbol>(r < 0 ? r + q : r);
  }

  Symbol add(Symbol a, Symbol b) const noexcept {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Symbol>(s >= q_ ? s - q_ : s);
  }
  Symbol sub(Symbol a, Symbol b) const noexcept { return a >= b ? a - b : static_cast<Symbol>(std::uint64_t{a} + q_ - b); }
  Symbol neg(Symbol a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Symbol mul(Symbol a, Symbol b) const noexcept { return static_cast<Symbol>(std::uint64_t{a} * b % q_); }

  Symbol pow(Symbol a, std::uint64_t e) const noexcept {
    Symbol r = 1 % q_;
    for (; e; e >>= 1) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }

  Symbol inv(Symbol a) const {
    if (a % q_ == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
    // Fermat: a^(q-2) is the inverse for prime q.
    return pow(a, q_ - 2);
  }

  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

  FieldElement element(std::int64_t v) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

class FieldElement {
 public:
  FieldElement(PrimeField field, std::int64_t v) : field_(field), value_(field.reduce(v)) {}

  Symbol value() const noexcept { return value_; }
  const PrimeField& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return with(field_.add(value_, o.value_)); }
  FieldElement operator-(const FieldElement& o) const { return with(field_.sub(value_, o.value_)); }
  FieldElement operator*(const FieldElement& o) const { return with(field_.mul(value_, o.value_)); }
  FieldElement operator/(const FieldElement& o) const { return with(field_.div(value_, o.value_)); }
  FieldElement operator-() const { return with(field_.neg(value_)); }
  FieldElement inverse() const { return with(field_.inv(value_)); }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldElement with(Symbol v) const { return FieldElement(field_, v); }

  PrimeField field_;
  Symbol value_;
};

inline FieldElement PrimeField::element(std::int64_t v) const { return FieldElement(*this, v); }

// Multiplicative inverse; throws DivisionByZero for a == 0.
inline FieldElement ff_inv(const FieldElement& a) { return a.inverse(); }

// Dense row-major matrix over GF(q).
class Matrix {
 public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  Matrix(PrimeField field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::kSizeMismatch, "ragged matrix literal");
      for (auto v : r) data_.push_back(field_.reduce(v));
    }
  }

  static Matrix identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Symbol get(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }
  FieldElement at(std::size_t r, std::size_t c) const { return FieldElement(field_, get(r, c)); }

  std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = get(r, c);
    return t;
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(idx[i] * cols_), cols_,
                  m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
    return m;
  }

  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix m(field_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < idx.size(); ++j) m.data_[r * idx.size() + j] = get(r, idx[j]);
    return m;
  }

  // [this | other]
  Matrix hconcat(const Matrix& other) const {
    check_same_field(other);
    if (other.rows_ != rows_) throw Error(ErrorCode::kSizeMismatch, "hconcat row count");
    Matrix m(field_, rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) m.data_[r * m.cols_ + c] = get(r, c);
      for (std::size_t c = 0; c < other.cols_; ++c) m.data_[r * m.cols_ + cols_ + c] = other.get(r, c);
    }
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Symbol v) { return v == 0; });
  }

  Matrix operator*(const Matrix& o) const {
    check_same_field(o);
    if (cols_ != o.rows_) throw Error(ErrorCode::kSizeMismatch, "matrix product dimensions");
    Matrix m(field_, rows_, o.cols_);
    const std::uint64_t q = field_.modulus();
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < o.cols_; ++c) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < cols_; ++k) acc = (acc + std::uint64_t{get(r, k)} * o.get(k, c)) % q;
        m.data_[r * o.cols_ + c] = static_cast<Symbol>(acc);
      }
    }
    return m;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::kSizeMismatch, "matrix sum dimensions");
    Matrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = field_.add(data_[i], o.data_[i]);
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_same_field(const Matrix& o) const {
    if (!(field_ == o.field_)) throw Error(ErrorCode::kSizeMismatch, "matrices over different fields");
  }

  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> data_;
};

namespace detail {

// Reduced row echelon form in place with first-nonzero pivoting. Returns the
// pivot column of each nonzero row, in order; its size is the rank.
inline std::vector<std::size_t> rref(Matrix& m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
    std::size_t sel = pr;
    while (sel < m.rows() && m.get(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pr) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Symbol t = m.get(pr, j);
        m.set(pr, j, m.get(sel, j));
        m.set(sel, j, t);
      }
    }
    const Symbol inv = f.inv(m.get(pr, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.set(pr, j, f.mul(m.get(pr, j), inv));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pr) continue;
      const Symbol factor = m.get(r, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m.set(r, j, f.sub(m.get(r, j), f.mul(factor, m.get(pr, j))));
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t mat_rank(const Matrix& m) {
  Matrix work = m;
  return detail::rref(work).size();
}

inline Matrix mat_inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kSizeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug = m.hconcat(Matrix::identity(m.field(), n));
  const auto pivots = detail::rref(aug);
  std::size_t rank = 0;
  while (rank < pivots.size() && pivots[rank] < n) ++rank;
  if (rank < n) throw SingularError(rank, "matrix is not invertible");
  std::vector<std::size_t> right(n);
  std::iota(right.begin(), right.end(), n);
  return aug.select_cols(right);
}

// Basis of {x : M x = 0}, one vector per column.
inline Matrix mat_nullspace(const Matrix& m) {
  Matrix work = m;
  const auto pivots = detail::rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  const auto& f = m.field();
  Matrix basis(f, m.cols(), m.cols() - pivots.size());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.set(free, out, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis.set(pivots[r], out, f.neg(work.get(r, free)));
    ++out;
  }
  return basis;
}

// Entry (i, j) = points[i]^j, j in [0, ncols).
inline Matrix vandermonde(const PrimeField& field, std::span<const Symbol> points, std::size_t ncols) {
  std::vector<Symbol> sorted(points.begin(), points.end());
  for (auto& p : sorted) p = field.reduce(p);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kDuplicatePoints, "vandermonde points must be distinct");
  }
  Matrix v(field, points.size(), ncols);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Symbol p = 1;
    const Symbol x = field.reduce(points[i]);
    for (std::size_t j = 0; j < ncols; ++j) {
      v.set(i, j, p);
      p = field.mul(p, x);
    }
  }
  return v;
}

inline Matrix vandermonde(std::span<const FieldElement> points, std::size_t ncols) {
  if (points.empty()) throw Error(ErrorCode::kInvalidParams, "vandermonde needs at least one point");
  std::vector<Symbol> raw;
  raw.reserve(points.size());
  for (const auto& p : points) raw.push_back(p.value());
  return vandermonde(points.front().field(), raw, ncols);
}

// Dense univariate polynomial; coefficient j multiplies x^j. Stored trimmed so
// the last coefficient is nonzero (the zero polynomial has no coefficients).
class Polynomial {
 public:
  explicit Polynomial(PrimeField field) : field_(field) {}

  Polynomial(PrimeField field, std::vector<std::int64_t> coeffs) : field_(field) {
    coeffs_.reserve(coeffs.size());
    for (auto c : coeffs) coeffs_.push_back(field_.reduce(c));
    trim();
  }

  static Polynomial constant(PrimeField field, std::int64_t c) { return Polynomial(field, {c}); }

  // x - a
  static Polynomial linear_root(PrimeField field, Symbol a) {
    return Polynomial(field, {static_cast<std::int64_t>(field.neg(a)), 1});
  }

  const PrimeField& field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const Symbol> coeffs() const noexcept { return coeffs_; }
  Symbol coefficient(std::size_t j) const noexcept { return j < coeffs_.size() ? coeffs_[j] : 0; }

  Symbol evaluate(Symbol x) const {
    Symbol acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
  }

  Polynomial times_x() const {
    Polynomial p(field_);
    if (is_zero()) return p;
    p.coeffs_.reserve(coeffs_.size() + 1);
    p.coeffs_.push_back(0);
    p.coeffs_.insert(p.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return p;
  }

  Polynomial scaled(Symbol s) const {
    Polynomial p(field_);
    p.coeffs_.reserve(coeffs_.size());
    for (auto c : coeffs_) p.coeffs_.push_back(field_.mul(c, s));
    p.trim();
    return p;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial p(field_);
    p.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t j = 0; j < p.coeffs_.size(); ++j) p.coeffs_[j] = field_.add(coefficient(j), o.coefficient(j));
    p.trim();
    return p;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + o.scaled(field_.neg(1)); }

  Polynomial operator*(const Polynomial& o) const {
    Polynomial p(field_);
    if (is_zero() || o.is_zero()) return p;
    p.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        p.coeffs_[i + j] = field_.add(p.coeffs_[i + j], field_.mul(coeffs_[i], o.coeffs_[j]));
    p.trim();
    return p;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  PrimeField field_;
  std::vector<Symbol> coeffs_;
};

}  // namespace hsa
