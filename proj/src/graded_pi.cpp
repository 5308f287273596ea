#include "gradalg/graded_pi.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "gradalg/errors.hpp"

namespace gradalg {

const std::vector<std::vector<int>>& permutations(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 0);
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return cache.emplace(n, std::move(out)).first->second;
}

std::string GradedMultilinearPoly::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : coeffs) {
    std::string mono;
    for (int v : w) mono += "x" + std::to_string(v + 1);
    const bool one = c.is_one(), minus_one = (-c).is_one();
    if (first) {
      os << (one ? "" : minus_one ? "-" : "(" + c.to_string() + ")") << mono;
    } else {
      os << (one ? " + " : minus_one ? " - " : " + (" + c.to_string() + ")") << mono;
    }
    first = false;
  }
  return os.str();
}

namespace {

void check_assignment(const GradedAlgebra& a, const DegreeAssignment& d, int cap) {
  if (d.n() < 1) throw Error(ErrorKind::ValidationError, "degree assignment must have at least one variable");
  if (d.n() > cap) {
    throw Error(ErrorKind::DegreeCapExceeded, "degree " + std::to_string(d.n()) + " exceeds the cap " + std::to_string(cap));
  }
  for (Elem g : d.degs)
    if (!a.ambient()->contains(g)) throw Error(ErrorKind::IndexOutOfRange, "degree is not a group element");
}

// A row of the evaluation matrix: root-of-unity exponents at modulus s over
// the words, -1 where the word contributes nothing. Normalized so the first
// entry present is 0 (rows differing by a root of unity are redundant).
struct Pattern {
  std::int64_t s;
  std::vector<long> e;
  bool operator<(const Pattern& o) const { return s != o.s ? s < o.s : e < o.e; }
};

// Returns false when some substituted component is zero.
bool collect_patterns(const GradedAlgebra& a, const DegreeAssignment& d, std::set<Pattern>& out) {
  const int n = d.n();
  std::vector<std::vector<int>> comps(n);
  for (int i = 0; i < n; ++i) {
    comps[i] = a.component(d.degs[i]);
    if (comps[i].empty()) return false;
  }
  const auto& words = permutations(n);
  const int m = static_cast<int>(words.size());
  const std::int64_t s = a.structure_modulus();
  std::vector<int> pick(n, 0);
  std::map<int, std::vector<long>> rows;
  while (true) {
    rows.clear();
    for (int p = 0; p < m; ++p) {
      const auto& w = words[p];
      int idx = comps[w[0]][pick[w[0]]];
      std::int64_t ex = 0;
      bool zero = false;
      for (int t = 1; t < n && !zero; ++t) {
        auto prod = a.basis_product(idx, comps[w[t]][pick[w[t]]]);
        if (!prod) {
          zero = true;
        } else {
          idx = prod->index;
          ex += prod->exponent;
        }
      }
      if (zero) continue;
      auto& row = rows.try_emplace(idx, std::vector<long>(m, -1)).first->second;
      row[p] = static_cast<long>(((ex % s) + s) % s);
    }
    for (auto& [idx, row] : rows) {
      long base = -1;
      for (long& x : row) {
        if (x < 0) continue;
        if (base < 0) base = x;
        x = static_cast<long>(((x - base) % s + s) % s);
      }
      out.insert(Pattern{s, row});
    }
    int i = 0;
    while (i < n && ++pick[i] == static_cast<int>(comps[i].size())) pick[i++] = 0;
    if (i == n) break;
  }
  return true;
}

// Reduced row echelon form maintained incrementally.
struct Rref {
  FieldPtr f;
  int cols;
  std::vector<std::vector<CycloNumber>> rows;  // sorted by pivot
  std::vector<int> pivots;

  bool add(std::vector<CycloNumber> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const CycloNumber c = v[pivots[r]];
      if (c.is_zero()) continue;
      for (int j = 0; j < cols; ++j)
        if (!rows[r][j].is_zero()) v[j] -= c * rows[r][j];
    }
    int piv = 0;
    while (piv < cols && v[piv].is_zero()) ++piv;
    if (piv == cols) return false;
    const CycloNumber inv = v[piv].inv();
    for (auto& x : v)
      if (!x.is_zero()) x = x * inv;
    for (auto& row : rows) {
      const CycloNumber c = row[piv];
      if (c.is_zero()) continue;
      for (int j = 0; j < cols; ++j)
        if (!v[j].is_zero()) row[j] -= c * v[j];
    }
    auto pos = std::lower_bound(pivots.begin(), pivots.end(), piv) - pivots.begin();
    pivots.insert(pivots.begin() + pos, piv);
    rows.insert(rows.begin() + pos, std::move(v));
    return true;
  }
  int rank() const { return static_cast<int>(rows.size()); }
};

FieldPtr field_for(const std::set<Pattern>& pats, FieldPtr f) {
  for (const auto& p : pats) f = common_field(f, CycloField::get(static_cast<int>(p.s)));
  return f;
}

Rref reduce_patterns(const std::set<Pattern>& pats, int cols, const FieldPtr& f) {
  Rref r{f, cols, {}, {}};
  for (const auto& p : pats) {
    if (r.rank() == cols) break;
    std::vector<CycloNumber> v(cols, CycloNumber::zero(f));
    const long step = f->modulus() / p.s;
    for (int j = 0; j < cols; ++j)
      if (p.e[j] >= 0) v[j] = CycloNumber::root_of_unity(f, p.e[j] * step);
    r.add(std::move(v));
  }
  return r;
}

std::vector<GradedMultilinearPoly> kernel_basis(const Rref& r, const DegreeAssignment& d) {
  const auto& words = permutations(d.n());
  const int cols = r.cols;
  std::vector<bool> is_pivot(cols, false);
  for (int p : r.pivots) is_pivot[p] = true;
  Rref ker{r.f, cols, {}, {}};
  for (int fcol = 0; fcol < cols; ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<CycloNumber> v(cols, CycloNumber::zero(r.f));
    v[fcol] = CycloNumber::one(r.f);
    for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][fcol];
    ker.add(std::move(v));
  }
  std::vector<GradedMultilinearPoly> out;
  for (const auto& row : ker.rows) {
    GradedMultilinearPoly p{d, {}};
    for (int j = 0; j < cols; ++j)
      if (!row[j].is_zero()) p.coeffs.emplace(words[j], row[j]);
    out.push_back(std::move(p));
  }
  return out;
}

// Does p vanish against every row of r?
bool annihilates(const GradedMultilinearPoly& p, const Rref& r) {
  const auto& words = permutations(p.assignment.n());
  std::vector<int> col_of;
  std::vector<const CycloNumber*> coef;
  for (const auto& [w, c] : p.coeffs) {
    col_of.push_back(static_cast<int>(std::lower_bound(words.begin(), words.end(), w) - words.begin()));
    coef.push_back(&c);
  }
  FieldPtr f = r.f;
  for (const auto* c : coef) f = common_field(f, c->field());
  for (const auto& row : r.rows) {
    CycloNumber acc = CycloNumber::zero(f);
    for (std::size_t t = 0; t < col_of.size(); ++t) {
      const auto& x = row[col_of[t]];
      if (!x.is_zero()) acc += x.lifted(f) * coef[t]->lifted(f);
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

IdentitySpace space_from(const std::vector<const GradedAlgebra*>& algs, const DegreeAssignment& d) {
  const int cols = static_cast<int>(permutations(d.n()).size());
  std::set<Pattern> pats;
  FieldPtr f = CycloField::get(1);
  IdentitySpace out;
  out.assignment = d;
  out.monomials = cols;
  for (const auto* a : algs) {
    out.algebras.push_back(a->describe());
    collect_patterns(*a, d, pats);
  }
  const Rref r = reduce_patterns(pats, cols, field_for(pats, f));
  out.rank = r.rank();
  out.basis = kernel_basis(r, d);
  return out;
}

std::int64_t work_estimate(const GradedAlgebra& a, const DegreeAssignment& d) {
  std::int64_t w = static_cast<std::int64_t>(permutations(d.n()).size());
  for (Elem g : d.degs) w *= std::max<std::int64_t>(1, static_cast<std::int64_t>(a.component(g).size()));
  return w;
}

}  // namespace

Element evaluate(const GradedMultilinearPoly& p, const GradedAlgebra& a, const std::vector<Element>& subst) {
  const int n = p.assignment.n();
  if (static_cast<int>(subst.size()) != n) throw Error(ErrorKind::LengthMismatch, "substitution length differs from n");
  for (int i = 0; i < n; ++i) {
    if (!subst[i].algebra() || subst[i].algebra()->id() != a.id()) {
      throw Error(ErrorKind::AlgebraMismatch, "substitution from another algebra");
    }
    if (subst[i].is_zero()) continue;
    auto d = subst[i].homogeneous_degree();
    if (!d || *d != p.assignment.degs[i]) {
      throw Error(ErrorKind::DegreeMismatch, "substitution " + std::to_string(i + 1) + " has the wrong degree");
    }
  }
  Element out = a.zero();
  for (const auto& [w, c] : p.coeffs) {
    Element term = subst[w[0]];
    for (int t = 1; t < n; ++t) term = term * subst[w[t]];
    out = out + term.scaled(c);
  }
  return out;
}

IdentitySpace identity_space(const GradedAlgebra& a, const DegreeAssignment& d, int cap) {
  check_assignment(a, d, cap);
  return space_from({&a}, d);
}

IdentitySpace product_identity_space(const std::vector<AlgebraPtr>& algebras, const DegreeAssignment& d, int cap) {
  if (algebras.empty()) throw Error(ErrorKind::ValidationError, "empty product");
  std::vector<const GradedAlgebra*> algs;
  for (const auto& a : algebras) {
    if (!(*a->ambient() == *algebras.front()->ambient())) {
      throw Error(ErrorKind::AmbientMismatch, "factors graded by different groups");
    }
    check_assignment(*a, d, cap);
    algs.push_back(a.get());
  }
  return space_from(algs, d);
}

ContainmentReport multilinear_containment(const GradedAlgebra& a, const GradedAlgebra& b,
                                          const ContainmentOptions& opts) {
  if (!(*a.ambient() == *b.ambient())) throw Error(ErrorKind::AmbientMismatch, "algebras graded by different groups");
  if (opts.n_max > opts.cap) {
    throw Error(ErrorKind::DegreeCapExceeded, "n_max " + std::to_string(opts.n_max) + " exceeds the cap " +
                                                  std::to_string(opts.cap));
  }
  std::set<Elem> supp;
  for (Elem g : a.support()) supp.insert(g);
  for (Elem g : b.support()) supp.insert(g);
  const std::vector<Elem> degs(supp.begin(), supp.end());

  std::vector<DegreeAssignment> todo;
  ContainmentReport rep;
  rep.n_max = opts.n_max;
  for (int n = 1; n <= opts.n_max; ++n) {
    std::vector<int> idx(n, 0);
    while (true) {
      DegreeAssignment d;
      for (int i : idx) d.degs.push_back(degs[i]);
      if (std::max(work_estimate(a, d), work_estimate(b, d)) > opts.budget) {
        rep.skipped.push_back(std::move(d));
      } else {
        todo.push_back(std::move(d));
      }
      int i = n - 1;
      while (i >= 0 && ++idx[i] == static_cast<int>(degs.size())) idx[i--] = 0;
      if (i < 0) break;
    }
  }

  rep.results.resize(todo.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < todo.size(); ++t) {
    const auto& d = todo[t];
    AssignmentResult res;
    res.assignment = d;
    const int cols = static_cast<int>(permutations(d.n()).size());
    std::set<Pattern> pa, pb;
    collect_patterns(a, d, pa);
    const bool b_full = collect_patterns(b, d, pb);
    const Rref ra = reduce_patterns(pa, cols, field_for(pa, CycloField::get(1)));
    res.kernel_dim_a = cols - ra.rank();
    if (!b_full) {
      res.trivial = true;
      res.kernel_dim_b = cols;
    } else {
      const Rref rb = reduce_patterns(pb, cols, field_for(pb, CycloField::get(1)));
      res.kernel_dim_b = cols - rb.rank();
      for (auto& p : kernel_basis(ra, d)) {
        if (!annihilates(p, rb)) {
          res.contained = false;
          res.separating = std::move(p);
          break;
        }
      }
    }
    rep.results[t] = std::move(res);
  }

  for (const auto& r : rep.results) rep.contained = rep.contained && r.contained;
  std::ostringstream os;
  if (rep.contained) {
    os << "no separation found up to n_max=" << opts.n_max;
  } else {
    const auto it = std::find_if(rep.results.begin(), rep.results.end(), [](const auto& r) { return !r.contained; });
    os << "not contained: separated at degree " << it->assignment.n();
  }
  if (!rep.skipped.empty()) os << " (" << rep.skipped.size() << " assignments skipped over budget)";
  os << "; multilinear components only, substitutions from homogeneous component bases";
  rep.summary = os.str();
  return rep;
}

}  // namespace gradalg
