#include "dowling/egf.hpp"

#include "dowling/errors.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace dowling {

namespace {

std::vector<Variable> t_only() { return {Variable{"t", true}}; }

void require_abelian(const ProblemInstance& inst) {
  if (!inst.group().is_abelian()) throw AbelianOnly();
}

mpz_class binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

mpz_class factorial(int n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

MultiSeries lambda_bar(int r, int truncation) {
  if (r < 1) throw InputError("lambda_bar needs r >= 1");
  const auto vars = t_only();
  const MultiSeries t = MultiSeries::variable(vars, truncation, 0);
  MultiSeries lam(vars, truncation);
  // each pass fixes one more degree
  for (int pass = 0; pass <= truncation; ++pass) {
    const MultiSeries x = (t + lam).scaled(r);
    lam = (series_exp(x) - MultiSeries::constant(vars, truncation, 1) - x).scaled(Rational(1, r));
  }
  return lam;
}

mpz_class partition_oracle(int n, int k, int r) {
  if (n < 0 || k < 0 || r < 1) throw InputError("partition_oracle needs n, k >= 0 and r >= 1");
  static std::map<std::tuple<int, int, int>, mpz_class> memo;
  if (n == 0) return k == 0 ? 1 : 0;
  if (k == 0) return 0;
  const auto key = std::make_tuple(n, k, r);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  // block containing the first element has size b
  mpz_class total = 0;
  for (int b = 2; b <= n; ++b) {
    mpz_class w;
    mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(b - 1));
    total += binomial(n - 1, b - 1) * w * partition_oracle(n - b, k - 1, r);
  }
  memo.emplace(key, total);
  return total;
}

MultiSeries lambda_bar_from_partitions(int r, int truncation) {
  MultiSeries out(t_only(), truncation);
  for (int l = 2; l <= truncation; ++l) {
    mpz_class sum = 0;
    for (int k = 1; k < l; ++k) sum += partition_oracle(l + k - 1, k, r);
    out.add_term({l}, Rational(sum) / Rational(factorial(l)));
  }
  return out;
}

MultiSeries operator_product_formula(int r, const Rational& c, bool one_leaf_tree, int truncation) {
  // trees with l leaves use partitions of up to 2l - 2 elements
  const int big = std::max(2 * truncation, 2);
  const std::vector<Variable> vars{{"t", true}, {"z", false}};
  MultiSeries sum(vars, big);
  Rational ct_pow = c;
  Rational fact = 1;
  for (int i = 1; i <= big; ++i) {
    if (i > 1) {
      ct_pow *= c;
      fact *= i;
    }
    if (i >= 2) sum.add_term({i, 1}, ct_pow / (fact * r));
  }
  const MultiSeries p = series_exp(sum) - MultiSeries::constant(vars, big, 1);
  MultiSeries out(t_only(), truncation);
  if (one_leaf_tree && truncation >= 1) out.add_term({1}, 1);
  // z^k t^n -> d^k/dt^k t^n, then integrate once
  for (const auto& [e, coef] : p.terms()) {
    const int n = e[0];
    const int k = e[1];
    const int l = n - k + 1;
    if (k < 1 || l < 1 || l > truncation) continue;
    out.add_term({l}, coef * Rational(factorial(n)) / Rational(factorial(l)));
  }
  return out;
}

MultiSeries lambda_h(const ProblemInstance& inst, std::size_t closed_index, int truncation) {
  require_abelian(inst);
  if (closed_index >= inst.closed_count()) throw InputError("closed subgroup index out of range");
  if (closed_index == inst.whole_index()) throw InputError("lambda_H is defined for closed H != G");
  const int g = inst.group().order();
  const int h = static_cast<int>(inst.closed_subgroup(closed_index).order());
  const int r = g / h;
  if (closed_index == inst.trivial_index()) return lambda_bar(r, truncation);
  MultiSeries out = lambda_bar(r, truncation).rescale_variable(0, 2);
  out.add_term({1}, 1);
  return out;
}

std::vector<std::size_t> proper_closed(const ProblemInstance& inst) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k + 1 < inst.closed_count(); ++k) out.push_back(k);
  return out;
}

std::vector<Variable> forest_variables(const ProblemInstance& inst) {
  std::vector<Variable> vars{{"s", false}, {"t", true}};
  for (std::size_t k : proper_closed(inst)) vars.push_back({"t_" + inst.closed_name(k), true});
  return vars;
}

std::vector<Variable> st_variables() { return {{"s", false}, {"t", true}}; }

MultiSeries gamma_tilde(const ProblemInstance& inst, int truncation, const std::optional<std::vector<std::size_t>>& order) {
  require_abelian(inst);
  const auto hs = proper_closed(inst);
  std::vector<std::size_t> seq;
  if (order) {
    seq = *order;
    auto sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != hs) throw InputError("processing order must list every closed subgroup other than G once");
  } else {
    seq.assign(hs.rbegin(), hs.rend());
  }
  auto strictly_below = [&](std::size_t a, std::size_t b) {
    return a != b && inst.closed_subgroup(a).is_subset_of(inst.closed_subgroup(b));
  };
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (strictly_below(seq[i], seq[j])) {
        throw InputError("processing order puts " + inst.closed_name(seq[i]) + " before the larger " +
                         inst.closed_name(seq[j]));
      }

  const auto vars = forest_variables(inst);
  auto var_of = [&](std::size_t k) { return static_cast<std::size_t>(2 + k); };  // proper closed are 0..m-1
  MultiSeries acc = MultiSeries::constant(vars, truncation, 1);
  for (std::size_t h : seq) {
    OperatorSum op;
    op.multiplier = 0;
    for (std::size_t k : hs)
      if (strictly_below(h, k)) op.derivatives.push_back(var_of(k));
    std::vector<std::size_t> target{var_of(h)};
    const MultiSeries lam = lambda_h(inst, h, truncation).remap(vars, truncation, target);
    acc = apply_operator_exp(op, lam, acc);
  }
  return acc;
}

MultiSeries gamma_bar(const ProblemInstance& inst, const MultiSeries& gt) {
  const auto& vars = gt.variables();
  const int n = gt.truncation();
  const MultiSeries st = MultiSeries::variable(vars, n, 0) * MultiSeries::variable(vars, n, 1);
  (void)inst;
  return series_exp(st) * (gt - MultiSeries::constant(vars, n, 1));
}

MultiSeries gamma_bar(const ProblemInstance& inst, int truncation) {
  return gamma_bar(inst, gamma_tilde(inst, truncation));
}

MultiSeries substitute_all_th(const ProblemInstance& inst, const MultiSeries& a) {
  if (a.variables() != forest_variables(inst)) throw InputError("series is not over s, t, t_H");
  std::vector<std::size_t> target(a.variables().size(), 1);
  target[0] = 0;
  return a.remap(st_variables(), a.truncation(), target);
}

MultiSeries at_s_equal_one(const MultiSeries& a) {
  std::vector<std::size_t> target(a.variables().size());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = i;
  target[0] = MultiSeries::npos;
  return a.remap(a.variables(), a.truncation(), target);
}

MultiSeries big_g(const ProblemInstance& inst, int truncation) {
  const MultiSeries gt = gamma_tilde(inst, truncation);
  const MultiSeries gb = substitute_all_th(inst, gamma_bar(inst, gt));
  const auto vars = st_variables();
  const MultiSeries s = MultiSeries::variable(vars, truncation, 0);
  const MultiSeries t = MultiSeries::variable(vars, truncation, 1);
  const MultiSeries one = MultiSeries::constant(vars, truncation, 1);
  const MultiSeries gamma = series_exp(s * t) * substitute_all_th(inst, gt);
  const MultiSeries phi = series_inverse(one.scaled(2) - at_s_equal_one(gamma)) - one;
  return s * phi * gamma + gb;
}

mpz_class egf_nested_count(const ProblemInstance& inst) {
  const int n = inst.n();
  const MultiSeries g1 = at_s_equal_one(big_g(inst, n));
  const Rational c = g1.coeff({0, n});
  const Rational count = c * Rational(factorial(n));
  if (count.get_den() != 1) throw CrossCheckFailure("EGF coefficient times n! is not an integer");
  return count.get_num();
}

}  // namespace dowling
