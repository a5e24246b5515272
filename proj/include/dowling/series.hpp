#pragma once

#include "dowling/linalg.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dowling {

struct Variable {
  std::string name;
  bool graded = true;  // counts towards the truncation degree

  bool operator==(const Variable&) const = default;
};

/// Truncated power series in a fixed list of variables with rational
/// coefficients. Terms whose total degree in the graded variables exceeds the
/// truncation are never stored. Coefficients are those of plain monomials, so
/// the exponential-generating count of t^n/n! is coefficient * n!.
class MultiSeries {
public:
  using Exponents = std::vector<int>;

  MultiSeries(std::vector<Variable> vars, int truncation);

  static MultiSeries constant(std::vector<Variable> vars, int truncation, const Rational& c);
  static MultiSeries variable(std::vector<Variable> vars, int truncation, std::size_t index);

  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t variable_index(const std::string& name) const;
  int truncation() const { return truncation_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Exponents& e) const;
  void set(const Exponents& e, const Rational& c);
  void add_term(const Exponents& e, const Rational& c);
  int graded_degree(const Exponents& e) const;
  /// Smallest graded degree of a stored term (truncation + 1 for zero).
  int valuation() const;
  /// Part of graded degree 0.
  MultiSeries degree_zero_part() const;
  /// Part of graded degree exactly d.
  MultiSeries graded_part(int d) const;

  MultiSeries operator+(const MultiSeries& o) const;
  MultiSeries operator-(const MultiSeries& o) const;
  MultiSeries operator-() const;
  MultiSeries operator*(const MultiSeries& o) const;
  MultiSeries scaled(const Rational& c) const;
  MultiSeries& operator+=(const MultiSeries& o);

  /// d/dx. For a graded x the top-degree part of the result is only as exact
  /// as the input allows (it would need degree truncation+1 input).
  MultiSeries derive(std::size_t var) const;
  enum class Overflow { Drop, Throw };
  /// Antiderivative with zero constant. With Overflow::Throw a nonzero term
  /// pushed past the truncation raises TruncationUnderflow.
  MultiSeries integrate(std::size_t var, Overflow policy = Overflow::Drop) const;
  /// Replaces x by c * x.
  MultiSeries rescale_variable(std::size_t var, const Rational& c) const;

  /// Moves every variable i to target[i] in `vars`, or evaluates it at 1 when
  /// target[i] is npos. Exponents landing on the same target add up.
  MultiSeries remap(std::vector<Variable> vars, int truncation, const std::vector<std::size_t>& target) const;

  bool operator==(const MultiSeries& o) const = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  void require_same_space(const MultiSeries& o) const;

  std::vector<Variable> vars_;
  int truncation_;
  std::map<Exponents, Rational> terms_;
};

/// exp(A) for A with vanishing graded-degree-0 part.
MultiSeries series_exp(const MultiSeries& a);
/// 1/A for A whose graded-degree-0 part is a nonzero rational constant.
MultiSeries series_inverse(const MultiSeries& a);
MultiSeries series_pow(const MultiSeries& a, int k);

/// x_0 + d/dx_1 + ... : optional multiplication by one variable plus a sum of
/// first-order derivatives in distinct variables.
struct OperatorSum {
  std::size_t multiplier = MultiSeries::npos;  // npos when there is no multiplication summand
  std::vector<std::size_t> derivatives;

  MultiSeries apply(const MultiSeries& a) const;
};

/// exp(op * lambda) applied to a, where lambda is a series in variables that
/// op neither multiplies by nor differentiates: sum_m lambda^m/m! op^m a.
MultiSeries apply_operator_exp(const OperatorSum& op, const MultiSeries& lambda, const MultiSeries& a);

/// Same operator, one summand at a time in the given order of summand
/// positions (0 = multiplier, i = derivatives[i-1]). Equal to
/// apply_operator_exp because the summands commute.
MultiSeries apply_operator_exp_split(const OperatorSum& op, const MultiSeries& lambda, const MultiSeries& a,
                                     const std::vector<std::size_t>& order);

}  // namespace dowling
