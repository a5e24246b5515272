#include "dowling/representation.hpp"

#include "dowling/errors.hpp"

#include <map>
#include <numeric>
#include <set>

namespace dowling {

namespace {

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division of polynomials with integer coefficients by a monic divisor.
std::vector<long> poly_div_monic(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

// Companion matrix of a monic polynomial: multiplication by x on 1, x, ..., x^{k-1}.
RMatrix companion(const std::vector<long>& poly) {
  const std::size_t k = poly.size() - 1;
  RMatrix m(k, k);
  for (std::size_t i = 1; i < k; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < k; ++i) m(i, k - 1) = -poly[i];
  return m;
}

RMatrix matrix_power(const RMatrix& m, int e) {
  RMatrix out = RMatrix::identity(m.rows());
  for (int i = 0; i < e; ++i) out = out * m;
  return out;
}

}  // namespace

std::vector<long> cyclotomic_polynomial(int m) {
  std::vector<long> xm(static_cast<std::size_t>(m) + 1, 0);
  xm[0] = -1;
  xm[static_cast<std::size_t>(m)] = 1;
  std::vector<long> den{1};
  for (int d = 1; d < m; ++d)
    if (m % d == 0) den = poly_mul(den, cyclotomic_polynomial(d));
  return poly_div_monic(xm, den);
}

Representation Representation::from_matrices(const FiniteGroup& group,
                                             const std::vector<std::pair<ElementId, RMatrix>>& generators) {
  if (generators.empty()) throw InputError("representation needs at least one generator matrix");
  const std::size_t d = generators.front().second.rows();
  if (d == 0) throw InputError("representation has dimension 0");
  for (const auto& [g, m] : generators) {
    if (g < 0 || g >= group.order()) throw InputError("generator element id " + std::to_string(g) + " out of range");
    if (m.rows() != d || m.cols() != d) throw InputError("generator matrices must all be square of the same size");
  }
  Representation rep;
  rep.matrices_.assign(static_cast<std::size_t>(group.order()), RMatrix());
  std::vector<char> known(static_cast<std::size_t>(group.order()), 0);
  rep.matrices_[0] = RMatrix::identity(d);
  known[0] = 1;
  std::vector<ElementId> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const ElementId x = queue[i];
    for (const auto& [s, m] : generators) {
      const ElementId y = group.mul(x, s);
      const RMatrix my = rep.matrices_[static_cast<std::size_t>(x)] * m;
      if (!known[static_cast<std::size_t>(y)]) {
        known[static_cast<std::size_t>(y)] = 1;
        rep.matrices_[static_cast<std::size_t>(y)] = my;
        queue.push_back(y);
      } else if (!(rep.matrices_[static_cast<std::size_t>(y)] == my)) {
        throw InputError("representation is not a homomorphism (generator relations violated)");
      }
    }
  }
  if (queue.size() != static_cast<std::size_t>(group.order())) {
    throw InputError("generator elements do not generate the group");
  }
  rep.coord_character_.resize(d);
  std::iota(rep.coord_character_.begin(), rep.coord_character_.end(), 0);
  rep.character_weight_.assign(d, 1);
  rep.complex_dim_ = d;
  rep.validate(group);
  return rep;
}

Representation Representation::from_characters(const FiniteGroup& group,
                                               const std::vector<std::vector<int>>& characters) {
  if (!group.invariant_factors()) throw InputError("character input needs a group given by invariant factors");
  const auto& factors = *group.invariant_factors();
  if (characters.empty()) throw InputError("representation has dimension 0");
  Representation rep;
  rep.characters_ = characters;
  rep.complex_dim_ = characters.size();
  std::vector<std::pair<std::size_t, std::vector<long>>> blocks;  // (order, cyclotomic poly)
  for (std::size_t j = 0; j < characters.size(); ++j) {
    const auto& c = characters[j];
    if (c.size() != factors.size()) {
      throw InputError("character " + std::to_string(j) + " must have " + std::to_string(factors.size()) +
                       " entries");
    }
    // order of the character = lcm over factors of d_i / gcd(d_i, c_i)
    long order = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const long di = factors[i];
      const long ci = ((c[i] % di) + di) % di;
      order = std::lcm(order, di / std::gcd(di, ci == 0 ? di : ci));
    }
    auto poly = cyclotomic_polynomial(static_cast<int>(order));
    const std::size_t w = poly.size() - 1;
    for (std::size_t k = 0; k < w; ++k) rep.coord_character_.push_back(j);
    rep.character_weight_.push_back(w);
    blocks.emplace_back(static_cast<std::size_t>(order), std::move(poly));
  }
  const std::size_t dd = rep.coord_character_.size();
  rep.matrices_.reserve(static_cast<std::size_t>(group.order()));
  for (ElementId g = 0; g < group.order(); ++g) {
    const auto t = group.element_tuple(g);
    RMatrix m(dd, dd);
    std::size_t offset = 0;
    for (std::size_t j = 0; j < characters.size(); ++j) {
      const auto& [order, poly] = blocks[j];
      // exponent k with chi_j(g) = zeta_order^k: sum_i c_i t_i / d_i = k / order (mod 1)
      long lcm_all = 1;
      for (int di : factors) lcm_all = std::lcm(lcm_all, static_cast<long>(di));
      long kl = 0;
      for (std::size_t i = 0; i < factors.size(); ++i)
        kl += static_cast<long>(characters[j][i]) * t[i] * (lcm_all / factors[i]);
      kl = ((kl % lcm_all) + lcm_all) % lcm_all;
      const long k = kl * static_cast<long>(order) / lcm_all;
      const RMatrix block = matrix_power(companion(poly), static_cast<int>(k));
      for (std::size_t a = 0; a < block.rows(); ++a)
        for (std::size_t b = 0; b < block.cols(); ++b) m(offset + a, offset + b) = block(a, b);
      offset += block.rows();
    }
    rep.matrices_.push_back(std::move(m));
  }
  rep.validate(group);
  return rep;
}

void Representation::validate(const FiniteGroup& group) const {
  const auto n = static_cast<std::size_t>(group.order());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!(matrices_[a] * matrices_[b] ==
            matrices_[static_cast<std::size_t>(group.mul(static_cast<ElementId>(a), static_cast<ElementId>(b)))])) {
        throw InputError("representation is not a homomorphism");
      }
  std::set<std::string> seen;
  for (std::size_t a = 0; a < n; ++a) {
    std::string key;
    for (std::size_t r = 0; r < matrices_[a].rows(); ++r)
      for (std::size_t c = 0; c < matrices_[a].cols(); ++c) key += matrices_[a](r, c).get_str() + ",";
    if (!seen.insert(key).second) throw InputError("representation not faithful");
  }
  if (fix(group, group.whole()).dim() != 0) {
    throw InputError("representation contains the trivial representation (Fix(G) != 0)");
  }
}

bool Representation::character_trivial(std::size_t character, const FiniteGroup& group, ElementId g) const {
  const auto& factors = *group.invariant_factors();
  const auto t = group.element_tuple(g);
  // sum_i c_i t_i / d_i is an integer
  long num = 0;
  long den = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) den = std::lcm(den, static_cast<long>(factors[i]));
  for (std::size_t i = 0; i < factors.size(); ++i)
    num += static_cast<long>(characters_[character][i]) * t[i] * (den / factors[i]);
  return num % den == 0;
}

Subspace Representation::fix(const FiniteGroup& group, const Subgroup& h) const {
  const std::size_t dd = realized_dim();
  if (is_character()) {
    RMatrix rows(0, dd);
    for (std::size_t c = 0; c < dd; ++c) {
      const std::size_t j = coord_character_[c];
      bool trivial = true;
      for (ElementId x : h.elements())
        if (!character_trivial(j, group, x)) {
          trivial = false;
          break;
        }
      if (trivial) {
        std::vector<Rational> e(dd);
        e[c] = 1;
        rows.append_row(e);
      }
    }
    return Subspace::span(dd, rows);
  }
  Subspace out = Subspace::full(dd);
  for (ElementId x : group.generators_of(h)) out = intersect(out, kernel(matrix(x) - RMatrix::identity(dd)));
  return out;
}

Subspace Representation::fix_by_kernels(const Subgroup& h) const {
  const std::size_t dd = realized_dim();
  Subspace out = Subspace::full(dd);
  for (ElementId x : h.elements()) out = intersect(out, kernel(matrix(x) - RMatrix::identity(dd)));
  return out;
}

std::size_t Representation::complex_dim(const Subspace& s) const {
  const std::size_t dd = realized_dim();
  std::map<std::size_t, std::size_t> rows_per_character;
  for (std::size_t p : s.pivots()) ++rows_per_character[coord_character_[p % dd]];
  std::size_t total = 0;
  for (const auto& [j, count] : rows_per_character) {
    if (count % character_weight_[j] != 0) {
      throw InputError("subspace is not defined over the character field (internal error)");
    }
    total += count / character_weight_[j];
  }
  return total;
}

}  // namespace dowling
