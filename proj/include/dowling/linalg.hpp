#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace dowling {

using Rational = mpq_class;

/// Parses "p/q", "p" or an integer literal; throws InputError otherwise.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Dense exact rational matrix, row-major.
class RMatrix {
public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols);
  static RMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RMatrix operator*(const RMatrix& rhs) const;
  RMatrix operator-(const RMatrix& rhs) const;
  bool operator==(const RMatrix& rhs) const;

  /// Reduced row-echelon form with zero rows dropped.
  RMatrix rref() const;
  std::size_t rank() const { return rref().rows(); }

  std::vector<Rational> row(std::size_t r) const;
  void append_row(const std::vector<Rational>& row);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// A linear subspace of Q^d, stored by the reduced row-echelon form of a basis.
/// Two subspaces are equal iff their bases are identical.
class Subspace {
public:
  Subspace() = default;
  /// Span of the given rows (need not be independent).
  static Subspace span(std::size_t ambient_dim, const RMatrix& rows);
  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t codim() const { return ambient_ - basis_.rows(); }
  const RMatrix& basis() const { return basis_; }
  /// Pivot column of each basis row.
  std::vector<std::size_t> pivots() const;

  bool contains_vector(const std::vector<Rational>& v) const;
  /// Vectors w with <w, a> = 0 for every a in this subspace.
  Subspace annihilator() const;

  bool operator==(const Subspace& other) const { return ambient_ == other.ambient_ && basis_ == other.basis_; }
  bool operator<(const Subspace& other) const;
  std::size_t hash() const;

private:
  std::size_t ambient_ = 0;
  RMatrix basis_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

/// All v with M v = 0.
Subspace kernel(const RMatrix& m);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// true iff b is a subset of a.
bool contains(const Subspace& a, const Subspace& b);
inline std::size_t dim(const Subspace& a) { return a.dim(); }
/// { M v : v in a }.
Subspace image(const RMatrix& m, const Subspace& a);

}  // namespace dowling
