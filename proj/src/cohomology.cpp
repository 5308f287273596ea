#include "gradalg/cohomology.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "gradalg/errors.hpp"

namespace gradalg {

// ---------------------------------------------------------------- cochains

ExpCocycle::ExpCocycle(Subgroup domain, std::int64_t modulus, std::vector<std::int64_t> exponents)
    : domain_(std::move(domain)), m_(modulus), r_(std::move(exponents)) {
  if (m_ < 1) throw Error(ErrorKind::ValidationError, "cocycle modulus must be positive");
  const std::size_t m = static_cast<std::size_t>(domain_.order());
  if (r_.size() != m * m) throw Error(ErrorKind::LengthMismatch, "exponent matrix has wrong size");
  for (auto& x : r_) x = mod_norm(x, m_);
}

ExpCocycle ExpCocycle::trivial(Subgroup domain, std::int64_t modulus) {
  const std::size_t m = static_cast<std::size_t>(domain.order());
  return ExpCocycle(std::move(domain), modulus, std::vector<std::int64_t>(m * m, 0));
}

ExpCocycle ExpCocycle::from_matrix(Subgroup domain, std::int64_t modulus,
                                   const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::int64_t> flat;
  const std::size_t m = static_cast<std::size_t>(domain.order());
  if (rows.size() != m) throw Error(ErrorKind::LengthMismatch, "exponent matrix has wrong size");
  for (const auto& row : rows) {
    if (row.size() != m) throw Error(ErrorKind::LengthMismatch, "exponent matrix has wrong size");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ExpCocycle(std::move(domain), modulus, std::move(flat));
}

std::vector<std::vector<std::int64_t>> ExpCocycle::matrix() const {
  const int m = size();
  std::vector<std::vector<std::int64_t>> out(m, std::vector<std::int64_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[i][j] = at(i, j);
  return out;
}

ExpCocycle ExpCocycle::lifted(std::int64_t new_modulus) const {
  if (new_modulus % m_ != 0) {
    throw Error(ErrorKind::ValidationError, "cannot lift modulus " + std::to_string(m_) + " to " +
                                                std::to_string(new_modulus));
  }
  auto r = r_;
  for (auto& x : r) x *= new_modulus / m_;
  return ExpCocycle(domain_, new_modulus, std::move(r));
}

ExpCocycle ExpCocycle::scaled(std::int64_t k) const {
  auto r = r_;
  for (auto& x : r) x = mod_norm(x * mod_norm(k, m_), m_);
  return ExpCocycle(domain_, m_, std::move(r));
}

bool ExpCocycle::is_zero() const {
  return std::all_of(r_.begin(), r_.end(), [](std::int64_t x) { return x == 0; });
}

bool ExpFunction::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](std::int64_t x) { return x == 0; });
}

// ------------------------------------------------------------------ basics

bool is_cocycle(const ExpCocycle& sigma) {
  const auto& h = sigma.domain();
  const auto& g = *h.parent();
  const int m = h.order();
  const std::int64_t mod = sigma.modulus();
  for (int i = 0; i < m; ++i) {
    const Elem a = h.member(i);
    for (int j = 0; j < m; ++j) {
      const Elem b = h.member(j);
      const int ij = h.index_of(g.mul(a, b));
      for (int k = 0; k < m; ++k) {
        const int jk = h.index_of(g.mul(b, h.member(k)));
        const std::int64_t lhs = sigma.at(i, j) + sigma.at(ij, k);
        const std::int64_t rhs = sigma.at(j, k) + sigma.at(i, jk);
        if (mod_norm(lhs - rhs, mod) != 0) return false;
      }
    }
  }
  return true;
}

ExpCocycle coboundary_from(const ExpFunction& f) {
  const auto& h = f.domain;
  const auto& g = *h.parent();
  const int m = h.order();
  std::vector<std::int64_t> r(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int ij = h.index_of(g.mul(h.member(i), h.member(j)));
      r[static_cast<std::size_t>(i) * m + j] = f.values[i] + f.values[j] - f.values[ij];
    }
  return ExpCocycle(h, f.modulus, std::move(r));
}

namespace {

void require_cocycle(const ExpCocycle& sigma) {
  if (!is_cocycle(sigma)) throw Error(ErrorKind::NotACocycle, "input fails the cocycle identity");
}

ExpCocycle difference(const ExpCocycle& a, const ExpCocycle& b) {
  auto r = a.exponents();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.exponents()[i];
  return ExpCocycle(a.domain(), a.modulus(), std::move(r));
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

}  // namespace

NormalizeResult normalize(const ExpCocycle& sigma) {
  require_cocycle(sigma);
  const std::int64_t c = sigma.at(0, 0);
  ExpFunction f{sigma.domain(), sigma.modulus(), std::vector<std::int64_t>(sigma.size(), c)};
  return NormalizeResult{difference(sigma, coboundary_from(f)), std::move(f)};
}

ExpCocycle restrict_to(const ExpCocycle& sigma, const Subgroup& h) {
  if (!h.is_subset_of(sigma.domain())) {
    throw Error(ErrorKind::NotASubgroup, "restriction target is not contained in the cocycle domain");
  }
  const int m = h.order();
  std::vector<std::int64_t> r(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r[static_cast<std::size_t>(i) * m + j] = sigma.value(h.member(i), h.member(j));
  return ExpCocycle(h, sigma.modulus(), std::move(r));
}

ExpCocycle conjugate_class(const ExpCocycle& sigma, Elem x) {
  require_cocycle(sigma);
  const auto& h = sigma.domain();
  const auto& g = *h.parent();
  if (!g.contains(x)) throw Error(ErrorKind::IndexOutOfRange, "conjugating element out of range");
  Subgroup target = conjugate_subgroup(h, x);
  const int m = h.order();
  std::vector<std::int64_t> r(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    const int ti = target.index_of(g.conj(h.member(i), x));
    for (int j = 0; j < m; ++j) {
      const int tj = target.index_of(g.conj(h.member(j), x));
      r[static_cast<std::size_t>(ti) * m + tj] = sigma.at(i, j);
    }
  }
  return ExpCocycle(std::move(target), sigma.modulus(), std::move(r));
}

ExpCocycle root_representative(const ExpCocycle& sigma, std::int64_t lambda) {
  require_cocycle(sigma);
  if (lambda < 1) throw Error(ErrorKind::ValidationError, "root degree must be positive");
  // zeta_{lambda M}^r is a lambda-th root of zeta_M^r.
  return ExpCocycle(sigma.domain(), sigma.modulus() * lambda, sigma.exponents());
}

// ------------------------------------------------------------ cocycle space

namespace {

struct SpaceKey {
  std::vector<std::vector<Elem>> table;
  std::int64_t modulus;
  bool operator<(const SpaceKey& o) const {
    return modulus != o.modulus ? modulus < o.modulus : table < o.table;
  }
};

CocycleSpace compute_space(const FiniteGroup& g, std::int64_t n, Exec exec) {
  const int order = g.order();
  const int k = order - 1;
  CocycleSpace space;
  space.group_order = order;
  space.modulus = n;
  if (k == 0) return space;
  const int unknowns = k * k;
  auto pos = [k](Elem a, Elem b) { return (a - 1) * k + (b - 1); };
  ModMatrix sys(0, unknowns, n);
  std::vector<std::int64_t> row(unknowns);
  // r(a,b) + r(ab,c) - r(b,c) - r(a,bc) = 0 over non-neutral triples; any
  // term touching e vanishes for normalized cochains.
  for (Elem a = 1; a < order; ++a)
    for (Elem b = 1; b < order; ++b)
      for (Elem c = 1; c < order; ++c) {
        std::fill(row.begin(), row.end(), 0);
        const Elem ab = g.mul(a, b), bc = g.mul(b, c);
        row[pos(a, b)] += 1;
        if (ab != 0) row[pos(ab, c)] += 1;
        row[pos(b, c)] -= 1;
        if (bc != 0) row[pos(a, bc)] -= 1;
        if (std::any_of(row.begin(), row.end(), [n](std::int64_t v) { return mod_norm(v, n) != 0; })) {
          sys.append_row(row);
        }
      }
  auto sol = kernel_mod(std::move(sys), exec);
  space.gens = std::move(sol.kernel_gens);
  space.orders = std::move(sol.kernel_orders);
  return space;
}

ExpCocycle expand_normalized(const Subgroup& domain, std::int64_t modulus, const std::vector<std::int64_t>& coords) {
  const int m = domain.order();
  const int k = m - 1;
  std::vector<std::int64_t> r(static_cast<std::size_t>(m) * m, 0);
  for (int a = 1; a < m; ++a)
    for (int b = 1; b < m; ++b) r[static_cast<std::size_t>(a) * m + b] = coords[(a - 1) * k + (b - 1)];
  return ExpCocycle(domain, modulus, std::move(r));
}

}  // namespace

const CocycleSpace& cocycle_space(const GroupPtr& group, std::int64_t modulus, Exec exec) {
  static std::mutex mu;
  static std::map<SpaceKey, std::unique_ptr<CocycleSpace>> cache;
  SpaceKey key{group->table(), modulus};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto space = std::make_unique<CocycleSpace>(compute_space(*group, modulus, exec));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::move(key), std::move(space));
  return *it->second;
}

// --------------------------------------------------------------------- H^2

H2Description h2_over_Fstar(const Subgroup& h, Exec exec) {
  const GroupPtr g = h.as_group();
  const int n = g->order();
  H2Description out;
  out.group = h.parent();
  out.base_modulus = n;
  out.working_modulus = static_cast<std::int64_t>(n) * g->exponent();
  if (n == 1) return out;

  const std::int64_t m = n;
  const std::int64_t e = g->exponent();
  const std::int64_t me = m * e;
  const int k = n - 1;
  const int u = k * k;
  const auto& space = cocycle_space(g, m, exec);
  const int p = static_cast<int>(space.gens.size());

  // Unknowns (y_1..y_p, f_1..f_{n-1}); rows: e * (W y)(a,b) - df(a,b) = 0 mod Me.
  ModMatrix sys(u, p + k, me);
  for (Elem a = 1; a < n; ++a)
    for (Elem b = 1; b < n; ++b) {
      const int r = (a - 1) * k + (b - 1);
      for (int j = 0; j < p; ++j) sys.at(r, j) = mod_norm(e * space.gens[j][r], me);
      sys.add(r, p + (a - 1), -1);
      sys.add(r, p + (b - 1), -1);
      const Elem ab = g->mul(a, b);
      if (ab != 0) sys.add(r, p + (ab - 1), 1);
    }
  auto ker = kernel_mod(std::move(sys), exec);

  std::vector<std::vector<mpz_class>> relations;
  for (const auto& gen : ker.kernel_gens) {
    std::vector<mpz_class> rel(p);
    bool nonzero = false;
    for (int j = 0; j < p; ++j) {
      rel[j] = static_cast<long>(gen[j]);
      nonzero |= gen[j] != 0;
    }
    if (nonzero) relations.push_back(std::move(rel));
  }
  for (int j = 0; j < p; ++j) {
    std::vector<mpz_class> rel(p, 0);
    rel[j] = static_cast<long>(space.orders[j]);
    relations.push_back(std::move(rel));
  }
  const auto smith = smith_relations(relations, p);

  for (int i = 0; i < p; ++i) {
    const mpz_class& d = smith.factors[i];
    if (d == 1) continue;
    if (d == 0) throw Error(ErrorKind::ValidationError, "cohomology quotient is not finite");
    std::vector<std::int64_t> coords(u, 0);
    for (int j = 0; j < p; ++j) {
      mpz_class c = smith.basis[i][j] % m;
      const std::int64_t cj = mod_norm(c.get_si(), m);
      if (cj == 0) continue;
      for (int r = 0; r < u; ++r) coords[r] = mod_norm(coords[r] + cj * space.gens[j][r], m);
    }
    out.invariant_factors.push_back(d.get_si());
    out.representatives.push_back(expand_normalized(h, m, coords));
    out.order *= d.get_si();
  }
  return out;
}

H2Description h2_over_Fstar(const GroupPtr& group, Exec exec) {
  return h2_over_Fstar(Subgroup::whole(group), exec);
}

std::vector<ExpCocycle> all_classes(const Subgroup& h, Exec exec) {
  const auto d = h2_over_Fstar(h, exec);
  const std::int64_t m = h.order();
  std::vector<ExpCocycle> out;
  std::vector<std::int64_t> digits(d.invariant_factors.size(), 0);
  for (std::int64_t c = 0; c < d.order; ++c) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(m) * m, 0);
    for (std::size_t i = 0; i < digits.size(); ++i)
      for (std::size_t x = 0; x < r.size(); ++x) r[x] = mod_norm(r[x] + digits[i] * d.representatives[i].exponents()[x], m);
    out.emplace_back(h, m, std::move(r));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < d.invariant_factors[i]) break;
      digits[i] = 0;
    }
  }
  return out;
}

// ------------------------------------------------------- equivalence etc.

std::optional<ExpFunction> classes_equivalent(const ExpCocycle& sigma, const ExpCocycle& rho,
                                              const CohomologyOptions& opts) {
  if (!(sigma.domain() == rho.domain())) {
    throw Error(ErrorKind::DomainMismatch, "cocycles live on different subgroups");
  }
  const auto& h = sigma.domain();
  const auto& g = *h.parent();
  const std::int64_t l = std::lcm(sigma.modulus(), rho.modulus());
  const std::int64_t n = opts.modulus_override.value_or(l * h.as_group()->exponent());
  if (n % l != 0) {
    throw Error(ErrorKind::ValidationError, "working modulus " + std::to_string(n) +
                                                " is not a multiple of the cocycle modulus " + std::to_string(l));
  }
  const int m = h.order();
  const auto a = sigma.lifted(n), b = rho.lifted(n);
  ModMatrix sys(m * m, m, n);
  std::vector<std::int64_t> rhs(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int r = i * m + j;
      sys.add(r, i, 1);
      sys.add(r, j, 1);
      sys.add(r, h.index_of(g.mul(h.member(i), h.member(j))), -1);
      rhs[r] = a.at(i, j) - b.at(i, j);
    }
  auto sol = solve_mod(std::move(sys), rhs, opts.exec);
  if (!sol.particular) return std::nullopt;
  return ExpFunction{h, n, std::move(*sol.particular)};
}

std::optional<ExpCocycle> extend_class(const ExpCocycle& sigma, const Subgroup& target,
                                       const CohomologyOptions& opts) {
  require_cocycle(sigma);
  const auto& h = sigma.domain();
  if (!h.is_subset_of(target)) {
    throw Error(ErrorKind::NotASubgroup, "cocycle domain is not contained in the extension target");
  }
  const GroupPtr tg = target.as_group();
  const std::int64_t l = std::lcm(sigma.modulus(), static_cast<std::int64_t>(target.order()));
  const std::int64_t n = opts.modulus_override.value_or(l * tg->exponent());
  if (n % sigma.modulus() != 0) {
    throw Error(ErrorKind::ValidationError, "working modulus is not a multiple of the cocycle modulus");
  }
  const int t = target.order();
  const int k = t - 1;
  const int hm = h.order();
  if (t == 1) return ExpCocycle::trivial(target, n);

  const auto& space = cocycle_space(tg, n, opts.exec);
  const int p = static_cast<int>(space.gens.size());
  const auto lifted = sigma.lifted(n);
  const auto& g = *h.parent();

  // Unknowns (c_1..c_p, F over H): sum_j c_j W_j(a,b) - dF(a,b) = sigma(a,b).
  ModMatrix sys(hm * hm, p + hm, n);
  std::vector<std::int64_t> rhs(static_cast<std::size_t>(hm) * hm);
  for (int i = 0; i < hm; ++i)
    for (int j = 0; j < hm; ++j) {
      const int r = i * hm + j;
      const int ta = target.index_of(h.member(i));
      const int tb = target.index_of(h.member(j));
      if (ta != 0 && tb != 0) {
        const int coord = (ta - 1) * k + (tb - 1);
        for (int c = 0; c < p; ++c) sys.at(r, c) = space.gens[c][coord];
      }
      sys.add(r, p + i, -1);
      sys.add(r, p + j, -1);
      sys.add(r, p + h.index_of(g.mul(h.member(i), h.member(j))), 1);
      rhs[r] = lifted.at(i, j);
    }
  auto sol = solve_mod(std::move(sys), rhs, opts.exec);
  if (!sol.particular) return std::nullopt;
  std::vector<std::int64_t> coords(static_cast<std::size_t>(k) * k, 0);
  for (int c = 0; c < p; ++c) {
    const std::int64_t cc = (*sol.particular)[c];
    if (cc == 0) continue;
    for (std::size_t r = 0; r < coords.size(); ++r) coords[r] = mod_norm(coords[r] + cc * space.gens[c][r], n);
  }
  return expand_normalized(target, n, coords);
}

std::optional<ExpCocycle> extend_class(const ExpCocycle& sigma, const GroupPtr& group,
                                       const CohomologyOptions& opts) {
  if (!(*sigma.domain().parent() == *group)) {
    throw Error(ErrorKind::NotASubgroup, "cocycle domain is not a subgroup of the target group");
  }
  return extend_class(sigma, Subgroup::whole(sigma.domain().parent()), opts);
}

std::int64_t class_order(const ExpCocycle& sigma, const CohomologyOptions& opts) {
  require_cocycle(sigma);
  const auto trivial = ExpCocycle::trivial(sigma.domain(), sigma.modulus());
  for (std::int64_t k : divisors(sigma.domain().order())) {
    if (classes_equivalent(sigma.scaled(k), trivial, opts)) return k;
  }
  throw Error(ErrorKind::ValidationError, "class order does not divide |H|; working modulus too small?");
}

std::optional<ExpFunction> pair_leq(const ExpCocycle& sigma1, const ExpCocycle& sigma2,
                                    const CohomologyOptions& opts) {
  if (!(*sigma1.domain().parent() == *sigma2.domain().parent())) return std::nullopt;
  if (!sigma1.domain().is_subset_of(sigma2.domain())) return std::nullopt;
  return classes_equivalent(sigma1, restrict_to(sigma2, sigma1.domain()), opts);
}

}  // namespace gradalg
