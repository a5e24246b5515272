#include "dowling/series.hpp"

#include "dowling/errors.hpp"

#include <algorithm>

namespace dowling {

MultiSeries::MultiSeries(std::vector<Variable> vars, int truncation) : vars_(std::move(vars)), truncation_(truncation) {
  if (truncation < 0) throw InputError("series truncation must be nonnegative");
}

MultiSeries MultiSeries::constant(std::vector<Variable> vars, int truncation, const Rational& c) {
  MultiSeries out(std::move(vars), truncation);
  out.add_term(Exponents(out.vars_.size(), 0), c);
  return out;
}

MultiSeries MultiSeries::variable(std::vector<Variable> vars, int truncation, std::size_t index) {
  MultiSeries out(std::move(vars), truncation);
  if (index >= out.vars_.size()) throw InputError("series variable index out of range");
  Exponents e(out.vars_.size(), 0);
  e[index] = 1;
  out.add_term(e, 1);
  return out;
}

std::size_t MultiSeries::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  throw InputError("unknown series variable '" + name + "'");
}

Rational MultiSeries::coeff(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiSeries::graded_degree(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].graded) d += e[i];
  return d;
}

void MultiSeries::set(const Exponents& e, const Rational& c) {
  if (e.size() != vars_.size()) throw InputError("exponent vector has the wrong length");
  if (graded_degree(e) > truncation_) return;
  if (c == 0) {
    terms_.erase(e);
  } else {
    terms_[e] = c;
  }
}

void MultiSeries::add_term(const Exponents& e, const Rational& c) {
  if (c == 0 || graded_degree(e) > truncation_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int MultiSeries::valuation() const {
  int v = truncation_ + 1;
  for (const auto& [e, c] : terms_) v = std::min(v, graded_degree(e));
  return v;
}

MultiSeries MultiSeries::degree_zero_part() const { return graded_part(0); }

MultiSeries MultiSeries::graded_part(int d) const {
  MultiSeries out(vars_, truncation_);
  for (const auto& [e, c] : terms_)
    if (graded_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

void MultiSeries::require_same_space(const MultiSeries& o) const {
  if (vars_ != o.vars_ || truncation_ != o.truncation_) throw InputError("series live in different spaces");
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& o) {
  require_same_space(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
  MultiSeries out = *this;
  out += o;
  return out;
}

MultiSeries MultiSeries::operator-() const { return scaled(-1); }

MultiSeries MultiSeries::operator-(const MultiSeries& o) const { return *this + (-o); }

MultiSeries MultiSeries::scaled(const Rational& c) const {
  MultiSeries out(vars_, truncation_);
  if (c == 0) return out;
  for (const auto& [e, x] : terms_) out.terms_.emplace(e, x * c);
  return out;
}

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
  require_same_space(o);
  MultiSeries out(vars_, truncation_);
  Exponents e(vars_.size());
  for (const auto& [ea, ca] : terms_) {
    const int da = graded_degree(ea);
    for (const auto& [eb, cb] : o.terms_) {
      if (da + graded_degree(eb) > truncation_) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiSeries MultiSeries::derive(std::size_t var) const {
  MultiSeries out(vars_, truncation_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    out.add_term(f, c * e[var]);
  }
  return out;
}

MultiSeries MultiSeries::integrate(std::size_t var, Overflow policy) const {
  MultiSeries out(vars_, truncation_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    ++f[var];
    if (graded_degree(f) > truncation_) {
      if (policy == Overflow::Throw) {
        throw TruncationUnderflow("integrating in " + vars_[var].name + " exceeds truncation degree " +
                                  std::to_string(truncation_));
      }
      continue;
    }
    out.add_term(f, c / f[var]);
  }
  return out;
}

MultiSeries MultiSeries::rescale_variable(std::size_t var, const Rational& c) const {
  MultiSeries out(vars_, truncation_);
  for (const auto& [e, x] : terms_) {
    Rational f = x;
    for (int k = 0; k < e[var]; ++k) f *= c;
    out.add_term(e, f);
  }
  return out;
}

MultiSeries MultiSeries::remap(std::vector<Variable> vars, int truncation, const std::vector<std::size_t>& target) const {
  if (target.size() != vars_.size()) throw InputError("remap target list has the wrong length");
  MultiSeries out(std::move(vars), truncation);
  for (std::size_t t : target)
    if (t != npos && t >= out.vars_.size()) throw InputError("remap target out of range");
  for (const auto& [e, c] : terms_) {
    Exponents f(out.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (target[i] != npos) f[target[i]] += e[i];
    out.add_term(f, c);
  }
  return out;
}

MultiSeries series_exp(const MultiSeries& a) {
  if (!a.degree_zero_part().is_zero()) {
    throw InputError("exp needs a series without graded-degree-0 part");
  }
  MultiSeries out = MultiSeries::constant(a.variables(), a.truncation(), 1);
  MultiSeries power = out;
  for (int m = 1; m <= a.truncation(); ++m) {
    power = (power * a).scaled(Rational(1, m));
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

MultiSeries series_inverse(const MultiSeries& a) {
  const MultiSeries c0 = a.degree_zero_part();
  const MultiSeries::Exponents zero(a.variables().size(), 0);
  if (c0.terms().size() != 1 || !c0.terms().contains(zero)) {
    throw NonInvertibleConstantTerm("series constant term is not a nonzero rational");
  }
  const Rational inv = 1 / c0.coeff(zero);
  // 1/(c(1+u)) = (1/c) sum (-u)^k
  const MultiSeries u = (a - c0).scaled(-inv);
  MultiSeries out = MultiSeries::constant(a.variables(), a.truncation(), 1);
  MultiSeries power = out;
  for (int k = 1; k <= a.truncation(); ++k) {
    power = power * u;
    if (power.is_zero()) break;
    out += power;
  }
  return out.scaled(inv);
}

MultiSeries series_pow(const MultiSeries& a, int k) {
  if (k < 0) throw InputError("negative series power");
  MultiSeries out = MultiSeries::constant(a.variables(), a.truncation(), 1);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

MultiSeries OperatorSum::apply(const MultiSeries& a) const {
  MultiSeries out(a.variables(), a.truncation());
  if (multiplier != MultiSeries::npos) {
    out += a * MultiSeries::variable(a.variables(), a.truncation(), multiplier);
  }
  for (std::size_t d : derivatives) out += a.derive(d);
  return out;
}

namespace {

void check_operator(const OperatorSum& op, const MultiSeries& lambda) {
  const int val = lambda.valuation();
  if (val < 1) throw InputError("operator exponential needs a series of positive valuation");
  for (const auto& [e, c] : lambda.terms()) {
    if (op.multiplier != MultiSeries::npos && e[op.multiplier] != 0) {
      throw InputError("operator summands do not commute with the series");
    }
    for (std::size_t d : op.derivatives)
      if (e[d] != 0) throw InputError("operator summands do not commute with the series");
  }
}

}  // namespace

MultiSeries apply_operator_exp(const OperatorSum& op, const MultiSeries& lambda, const MultiSeries& a) {
  check_operator(op, lambda);
  // op^m a is exact through degree N - m and lambda^m starts at degree m
  MultiSeries out = a;
  MultiSeries lam_power = MultiSeries::constant(a.variables(), a.truncation(), 1);
  MultiSeries op_power = a;
  for (int m = 1; m <= a.truncation(); ++m) {
    lam_power = (lam_power * lambda).scaled(Rational(1, m));
    if (lam_power.is_zero()) break;
    op_power = op.apply(op_power);
    out += lam_power * op_power;
  }
  return out;
}

MultiSeries apply_operator_exp_split(const OperatorSum& op, const MultiSeries& lambda, const MultiSeries& a,
                                     const std::vector<std::size_t>& order) {
  MultiSeries out = a;
  for (std::size_t pos : order) {
    OperatorSum single;
    if (pos == 0) {
      single.multiplier = op.multiplier;
      if (single.multiplier == MultiSeries::npos) continue;
    } else {
      single.derivatives.push_back(op.derivatives.at(pos - 1));
    }
    out = apply_operator_exp(single, lambda, out);
  }
  return out;
}

}  // namespace dowling
