#pragma once

#include "dowling/instance.hpp"
#include "dowling/series.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace dowling {

/// Trees with leaves labelled 1..n, internal vertices of arity >= 2 and a
/// vertex with c children carrying r^(c-1) edge labellings. One variable "t".
MultiSeries lambda_bar(int r, int truncation);

/// Partitions of an n-set into k blocks of size >= 2, weighted by prod r^(|B|-1).
mpz_class partition_oracle(int n, int k, int r);

/// Same series read off the partition counts: coefficient of t^l/l! is
/// sum_k partition_oracle(l+k-1, k, r).
MultiSeries lambda_bar_from_partitions(int r, int truncation);

/// int[prod_{i>=2} exp((d/dt / r) (c t)^i / i!) - 1] with the derivative
/// acting after the powers of t, plus t when `one_leaf_tree`. With c = r this
/// is the partition route to lambda_bar. c = 2r with the one-leaf tree is the
/// closed form sometimes quoted for H != {e}; it only agrees with lambda_h up
/// to two leaves.
MultiSeries operator_product_formula(int r, const Rational& c, bool one_leaf_tree, int truncation);

/// Series of H-trees for a closed H != G in an abelian instance. Variable "t".
MultiSeries lambda_h(const ProblemInstance& inst, std::size_t closed_index, int truncation);

/// Closed subgroups other than G (indices into inst.closed()).
std::vector<std::size_t> proper_closed(const ProblemInstance& inst);

/// Variables s, t, then t_H for each proper closed subgroup in index order.
std::vector<Variable> forest_variables(const ProblemInstance& inst);
/// Variables s, t.
std::vector<Variable> st_variables();

/// Product over proper closed H of exp(s_H lambda_H(t_H)), applied as
/// operators to 1 in `order` (default: larger subgroups first). Throws
/// InputError if some K strictly containing H comes after H.
MultiSeries gamma_tilde(const ProblemInstance& inst, int truncation,
                        const std::optional<std::vector<std::size_t>>& order = std::nullopt);
/// exp(st) (gamma_tilde - 1).
MultiSeries gamma_bar(const ProblemInstance& inst, int truncation);
MultiSeries gamma_bar(const ProblemInstance& inst, const MultiSeries& gamma_tilde_series);

/// Sets every t_H to t; result in (s, t).
MultiSeries substitute_all_th(const ProblemInstance& inst, const MultiSeries& a);
/// Sets s to 1; result in (s, t) with no s terms.
MultiSeries at_s_equal_one(const MultiSeries& a);

/// s (1/(2 - Gamma(1,t)) - 1) Gamma(s,t) + gamma_bar(s,t) with Gamma = exp(st) gamma_tilde.
MultiSeries big_g(const ProblemInstance& inst, int truncation);

/// n! [t^n] big_g(1, t): the number of nonempty nested sets.
mpz_class egf_nested_count(const ProblemInstance& inst);

mpz_class factorial(int n);

}  // namespace dowling
