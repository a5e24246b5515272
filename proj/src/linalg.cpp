#include "dowling/linalg.hpp"

#include "dowling/errors.hpp"

#include <algorithm>
#include <functional>

namespace dowling {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  const auto ok = std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '/';
  });
  if (!ok) throw InputError("invalid rational literal '" + text + "'");
  Rational q;
  std::string body = text[0] == '+' ? text.substr(1) : text;
  if (q.set_str(body, 10) != 0) throw InputError("invalid rational literal '" + text + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

RMatrix::RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::operator*(const RMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw AmbientMismatch("matrix product dimension mismatch");
  RMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

RMatrix RMatrix::operator-(const RMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw AmbientMismatch("matrix difference dimension mismatch");
  RMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

bool RMatrix::operator==(const RMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

RMatrix RMatrix::rref() const {
  RMatrix m = *this;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
    std::size_t p = lead_row;
    while (p < rows_ && m(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != lead_row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(lead_row, j));
    const Rational pivot = m(lead_row, c);
    for (std::size_t j = c; j < cols_; ++j) m(lead_row, j) /= pivot;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = c; j < cols_; ++j) m(r, j) -= f * m(lead_row, j);
    }
    ++lead_row;
  }
  RMatrix out(lead_row, cols_);
  std::copy(m.data_.begin(), m.data_.begin() + static_cast<std::ptrdiff_t>(lead_row * cols_), out.data_.begin());
  return out;
}

std::vector<Rational> RMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void RMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw AmbientMismatch("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Subspace Subspace::span(std::size_t ambient_dim, const RMatrix& rows) {
  if (rows.rows() > 0 && rows.cols() != ambient_dim) throw AmbientMismatch("spanning vectors have wrong length");
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = rows.rows() == 0 ? RMatrix(0, ambient_dim) : rows.rref();
  return s;
}

Subspace Subspace::zero(std::size_t ambient_dim) { return span(ambient_dim, RMatrix(0, ambient_dim)); }

Subspace Subspace::full(std::size_t ambient_dim) { return span(ambient_dim, RMatrix::identity(ambient_dim)); }

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    std::size_t c = 0;
    while (basis_(r, c) == 0) ++c;
    out.push_back(c);
  }
  return out;
}

bool Subspace::contains_vector(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) throw AmbientMismatch("vector length does not match ambient dimension");
  std::vector<Rational> w = v;
  const auto piv = pivots();
  for (std::size_t r = 0; r < piv.size(); ++r) {
    const Rational f = w[piv[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * basis_(r, j);
  }
  return std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; });
}

Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(ambient_);
  return kernel(basis_);
}

bool Subspace::operator<(const Subspace& other) const {
  if (ambient_ != other.ambient_) return ambient_ < other.ambient_;
  if (dim() != other.dim()) return dim() < other.dim();
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < ambient_; ++c) {
      const int cmpv = cmp(basis_(r, c), other.basis_(r, c));
      if (cmpv != 0) return cmpv < 0;
    }
  return false;
}

std::size_t Subspace::hash() const {
  std::size_t h = std::hash<std::size_t>{}(ambient_) ^ (dim() * 0x9e3779b97f4a7c15ULL);
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < ambient_; ++c) {
      const Rational& q = basis_(r, c);
      const std::size_t v = static_cast<std::size_t>(mpz_get_si(q.get_num_mpz_t())) * 31 +
                            static_cast<std::size_t>(mpz_get_ui(q.get_den_mpz_t()));
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  return h;
}

Subspace kernel(const RMatrix& m) {
  const std::size_t n = m.cols();
  const RMatrix r = m.rref();
  std::vector<long> pivot_of_col(n, -1);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (r(i, c) == 0) ++c;
    pivot_of_col[c] = static_cast<long>(i);
  }
  RMatrix basis(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<Rational> v(n);
    v[free] = 1;
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -r(static_cast<std::size_t>(pivot_of_col[c]), free);
    basis.append_row(v);
  }
  return Subspace::span(n, basis);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw AmbientMismatch("sum of subspaces with different ambient dimension");
  RMatrix rows(0, a.ambient_dim());
  for (std::size_t r = 0; r < a.dim(); ++r) rows.append_row(a.basis().row(r));
  for (std::size_t r = 0; r < b.dim(); ++r) rows.append_row(b.basis().row(r));
  return Subspace::span(a.ambient_dim(), rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw AmbientMismatch("intersection of subspaces with different ambient dimension");
  }
  if (contains(a, b)) return b;
  if (contains(b, a)) return a;
  const Subspace ann = sum(a.annihilator(), b.annihilator());
  return kernel(ann.basis());
}

bool contains(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw AmbientMismatch("containment test with different ambient dimension");
  if (b.dim() > a.dim()) return false;
  for (std::size_t r = 0; r < b.dim(); ++r)
    if (!a.contains_vector(b.basis().row(r))) return false;
  return true;
}

Subspace image(const RMatrix& m, const Subspace& a) {
  if (m.cols() != a.ambient_dim()) throw AmbientMismatch("image: matrix does not act on subspace");
  RMatrix rows(0, m.rows());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    std::vector<Rational> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v[i] += m(i, j) * a.basis()(r, j);
    rows.append_row(v);
  }
  return Subspace::span(m.rows(), rows);
}

}  // namespace dowling
