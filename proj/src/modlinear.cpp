#include "gradalg/modlinear.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "gradalg/errors.hpp"

namespace gradalg {

void ModMatrix::add(int r, int c, std::int64_t v) { at(r, c) = mod_norm(at(r, c) + v, n_); }

void ModMatrix::append_row(std::span<const std::int64_t> values) {
  if (static_cast<int>(values.size()) != cols_) throw Error(ErrorKind::LengthMismatch, "row length mismatch");
  for (auto v : values) a_.push_back(mod_norm(v, n_));
  ++rows_;
}

std::int64_t mod_norm(std::int64_t v, std::int64_t n) {
  v %= n;
  return v < 0 ? v + n : v;
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t s, t;
  if (n == 1) return 0;
  if (ext_gcd(mod_norm(a, n), n, s, t) != 1) throw Error(ErrorKind::DivisionByZero, "not a unit");
  return mod_norm(s, n);
}

namespace {

using Row = std::vector<std::int64_t>;

// q with p*q = x (mod n); requires gcd(p, n) | x.
std::int64_t mod_div(std::int64_t x, std::int64_t p, std::int64_t n) {
  const std::int64_t g = std::gcd(p, n);
  const std::int64_t ng = n / g;
  if (ng == 1) return 0;
  return mod_norm((x / g) % ng * mod_inverse((p / g) % ng, ng), ng);
}

bool divides_mod(std::int64_t p, std::int64_t x, std::int64_t n) { return x % std::gcd(p, n) == 0; }

struct Eliminator {
  std::vector<Row> a;  // row-major, compacted as zero rows appear
  Row b;
  std::vector<Row> v;  // column transform, x = V y
  std::int64_t n;
  int cols;
  bool has_b;
  bool inconsistent = false;

  // R_t <- s R_t + u R_i ; R_i <- c R_t + d R_i
  void combine_rows(int t, int i, std::int64_t s, std::int64_t u, std::int64_t c, std::int64_t d) {
    for (int k = 0; k < cols; ++k) {
      const std::int64_t rt = a[t][k], ri = a[i][k];
      a[t][k] = mod_norm(s * rt + u * ri, n);
      a[i][k] = mod_norm(c * rt + d * ri, n);
    }
    if (has_b) {
      const std::int64_t bt = b[t], bi = b[i];
      b[t] = mod_norm(s * bt + u * bi, n);
      b[i] = mod_norm(c * bt + d * bi, n);
    }
  }

  void combine_cols(int t, int j, std::int64_t s, std::int64_t u, std::int64_t c, std::int64_t d) {
    auto apply = [&](std::vector<Row>& m) {
      for (auto& row : m) {
        const std::int64_t ct = row[t], cj = row[j];
        row[t] = mod_norm(s * ct + u * cj, n);
        row[j] = mod_norm(c * ct + d * cj, n);
      }
    };
    apply(a);
    apply(v);
  }

  // Folds row i into the pivot row with a unimodular 2x2 gcd step.
  void fold_row(int t, int i) {
    const std::int64_t p = a[t][t], x = a[i][t];
    if (x % p == 0) {
      const std::int64_t q = x / p;
      combine_rows(t, i, 1, 0, n - q % n, 1);
      return;
    }
    std::int64_t s, u;
    const std::int64_t g = ext_gcd(p, x, s, u);
    combine_rows(t, i, mod_norm(s, n), mod_norm(u, n), mod_norm(-(x / g), n), p / g);
  }

  void fold_col(int t, int j) {
    const std::int64_t p = a[t][t], x = a[t][j];
    if (x % p == 0) {
      const std::int64_t q = x / p;
      combine_cols(t, j, 1, 0, n - q % n, 1);
      return;
    }
    std::int64_t s, u;
    const std::int64_t g = ext_gcd(p, x, s, u);
    combine_cols(t, j, mod_norm(s, n), mod_norm(u, n), mod_norm(-(x / g), n), p / g);
  }

  bool find_pivot(int t, int& pr, int& pc) const {
    std::int64_t best = 0;
    const int rows = static_cast<int>(a.size());
    for (int r = t; r < rows; ++r) {
      for (int c = t; c < cols; ++c) {
        const std::int64_t x = a[r][c];
        if (x == 0) continue;
        const std::int64_t g = std::gcd(x, n);
        if (best == 0 || g < best) {
          best = g;
          pr = r;
          pc = c;
          if (g == 1) return true;
        }
      }
    }
    return best != 0;
  }

  void swap_cols(int c1, int c2) {
    if (c1 == c2) return;
    for (auto& row : a) std::swap(row[c1], row[c2]);
    for (auto& row : v) std::swap(row[c1], row[c2]);
  }

  void swap_rows(int r1, int r2) {
    if (r1 == r2) return;
    std::swap(a[r1], a[r2]);
    if (has_b) std::swap(b[r1], b[r2]);
  }

  void clear_serial(int t) {
    const int rows = static_cast<int>(a.size());
    for (;;) {
      for (int i = t + 1; i < rows; ++i)
        if (a[i][t] != 0) fold_row(t, i);
      bool touched_column = false;
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        if (a[t][j] % a[t][t] != 0) touched_column = true;
        fold_col(t, j);
      }
      if (!touched_column) return;
    }
  }

  void clear_parallel(int t) {
    const int rows = static_cast<int>(a.size());
    for (;;) {
      // Serial folds only where the pivot does not divide mod N; afterwards
      // the final pivot divides every remaining entry of the column.
      for (int i = t + 1; i < rows; ++i)
        if (a[i][t] != 0 && !divides_mod(a[t][t], a[i][t], n)) fold_row(t, i);
      const std::int64_t p = a[t][t];
      const Row& pivot_row = a[t];
      const std::int64_t pivot_b = has_b ? b[t] : 0;
#pragma omp parallel for schedule(static)
      for (int i = t + 1; i < rows; ++i) {
        const std::int64_t x = a[i][t];
        if (x == 0) continue;
        const std::int64_t q = mod_div(x, p, n);
        Row& row = a[i];
        for (int k = t; k < cols; ++k) {
          if (pivot_row[k] != 0) row[k] = mod_norm(row[k] - q * pivot_row[k], n);
        }
        if (has_b) b[i] = mod_norm(b[i] - q * pivot_b, n);
      }
      bool touched_column = false;
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] != 0 && !divides_mod(a[t][t], a[t][j], n)) {
          fold_col(t, j);
          touched_column = true;
        }
      }
      const std::int64_t p2 = a[t][t];
      Row q(cols, 0);
      bool any = false;
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] != 0) {
          q[j] = mod_div(a[t][j], p2, n);
          any = true;
        }
      }
      if (any) {
        auto apply = [&](std::vector<Row>& m) {
          const int mr = static_cast<int>(m.size());
#pragma omp parallel for schedule(static)
          for (int r = 0; r < mr; ++r) {
            Row& row = m[r];
            const std::int64_t ct = row[t];
            if (ct == 0) continue;
            for (int j = t + 1; j < cols; ++j) {
              if (q[j] != 0) row[j] = mod_norm(row[j] - q[j] * ct, n);
            }
          }
        };
        apply(a);
        apply(v);
      }
      if (!touched_column) return;
    }
  }

  // Drops rows below t that have become identically zero.
  void compact(int t) {
    std::size_t w = t + 1;
    for (std::size_t r = t + 1; r < a.size(); ++r) {
      const bool zero = std::all_of(a[r].begin() + t + 1, a[r].end(), [](std::int64_t x) { return x == 0; }) &&
                        a[r][t] == 0;
      if (zero) {
        if (has_b && b[r] != 0) inconsistent = true;
        continue;
      }
      if (w != r) {
        a[w] = std::move(a[r]);
        if (has_b) b[w] = b[r];
      }
      ++w;
    }
    a.resize(w);
    if (has_b) b.resize(w);
  }
};

ModSolution run(ModMatrix m, const std::int64_t* rhs, Exec exec) {
  const std::int64_t n = m.modulus();
  if (n < 1) throw Error(ErrorKind::SpecMalformed, "modulus must be positive");
  Eliminator e;
  e.n = n;
  e.cols = m.cols();
  e.has_b = rhs != nullptr;
  e.a.resize(m.rows());
  for (int r = 0; r < m.rows(); ++r) e.a[r].assign(m.row(r).begin(), m.row(r).end());
  if (e.has_b) {
    e.b.resize(m.rows());
    for (int r = 0; r < m.rows(); ++r) e.b[r] = mod_norm(rhs[r], n);
  }
  e.v.assign(e.cols, Row(e.cols, 0));
  for (int c = 0; c < e.cols; ++c) e.v[c][c] = 1 % n;

  int t = 0;
  while (t < std::min(static_cast<int>(e.a.size()), e.cols)) {
    int pr = 0, pc = 0;
    if (!e.find_pivot(t, pr, pc)) break;
    e.swap_rows(t, pr);
    e.swap_cols(t, pc);
    if (exec == Exec::serial) {
      e.clear_serial(t);
    } else {
      e.clear_parallel(t);
    }
    e.compact(t);
    ++t;
  }
  const int rank = t;

  ModSolution sol;
  sol.rank = rank;
  if (e.has_b) {
    bool ok = !e.inconsistent;
    for (std::size_t r = rank; r < e.a.size() && ok; ++r)
      if (e.b[r] != 0) ok = false;
    Row y(e.cols, 0);
    for (int i = 0; i < rank && ok; ++i) {
      const std::int64_t d = e.a[i][i];
      if (e.b[i] % std::gcd(d, n) != 0) {
        ok = false;
        break;
      }
      y[i] = mod_div(e.b[i], d, n);
    }
    if (ok) {
      Row x(e.cols, 0);
      for (int r = 0; r < e.cols; ++r) {
        std::int64_t acc = 0;
        for (int c = 0; c < e.cols; ++c)
          if (y[c] != 0) acc = mod_norm(acc + e.v[r][c] * y[c], n);
        x[r] = acc;
      }
      sol.particular = std::move(x);
    }
  }
  auto column = [&](int c, std::int64_t scale) {
    Row g(e.cols);
    for (int r = 0; r < e.cols; ++r) g[r] = mod_norm(e.v[r][c] * scale, n);
    return g;
  };
  for (int i = 0; i < rank; ++i) {
    const std::int64_t g = std::gcd(e.a[i][i], n);
    if (g > 1) {
      sol.kernel_gens.push_back(column(i, n / g));
      sol.kernel_orders.push_back(g);
    }
  }
  if (n > 1) {
    for (int c = rank; c < e.cols; ++c) {
      sol.kernel_gens.push_back(column(c, 1));
      sol.kernel_orders.push_back(n);
    }
  }
  return sol;
}

}  // namespace

ModSolution solve_mod(ModMatrix a, std::span<const std::int64_t> b, Exec exec) {
  if (static_cast<int>(b.size()) != a.rows()) throw Error(ErrorKind::LengthMismatch, "rhs length mismatch");
  return run(std::move(a), b.data(), exec);
}

ModSolution kernel_mod(ModMatrix a, Exec exec) { return run(std::move(a), nullptr, exec); }

// ------------------------------------------------------------ integer Smith

SmithResult smith_relations(const std::vector<std::vector<mpz_class>>& relations, int cols) {
  std::vector<std::vector<mpz_class>> r = relations;
  for (auto& row : r) {
    if (static_cast<int>(row.size()) != cols) throw Error(ErrorKind::LengthMismatch, "relation length mismatch");
  }
  const int rows = static_cast<int>(r.size());
  std::vector<std::vector<mpz_class>> p(cols, std::vector<mpz_class>(cols, 0));
  for (int i = 0; i < cols; ++i) p[i][i] = 1;

  auto col_swap = [&](int c1, int c2) {
    if (c1 == c2) return;
    for (auto& row : r) std::swap(row[c1], row[c2]);
    std::swap(p[c1], p[c2]);
  };
  // new col_t = s col_t + u col_j ; new col_j = c col_t + d col_j (det 1)
  auto col_combine = [&](int t, int j, const mpz_class& s, const mpz_class& u, const mpz_class& c,
                         const mpz_class& d) {
    for (auto& row : r) {
      const mpz_class ct = row[t], cj = row[j];
      row[t] = s * ct + u * cj;
      row[j] = c * ct + d * cj;
    }
    // basis rows transform by the inverse [[d, -c], [-u, s]]
    for (int k = 0; k < cols; ++k) {
      const mpz_class pt = p[t][k], pj = p[j][k];
      p[t][k] = d * pt - c * pj;
      p[j][k] = -u * pt + s * pj;
    }
  };
  auto row_combine = [&](int t, int i, const mpz_class& s, const mpz_class& u, const mpz_class& c,
                         const mpz_class& d) {
    for (int k = 0; k < cols; ++k) {
      const mpz_class rt = r[t][k], ri = r[i][k];
      r[t][k] = s * rt + u * ri;
      r[i][k] = c * rt + d * ri;
    }
  };
  auto gcdx = [](const mpz_class& a, const mpz_class& b, mpz_class& s, mpz_class& t) {
    mpz_class g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  };

  int t = 0;
  while (t < std::min(rows, cols)) {
    int pr = -1, pc = -1;
    mpz_class best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (r[i][j] != 0 && (best == 0 || abs(r[i][j]) < best)) {
          best = abs(r[i][j]);
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(r[t], r[pr]);
    col_swap(t, pc);
    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < rows; ++i) {
        if (r[i][t] == 0) continue;
        const mpz_class a = r[t][t], x = r[i][t];
        if (x % a == 0) {
          row_combine(t, i, 1, 0, -(x / a), 1);
        } else {
          mpz_class s, u;
          const mpz_class g = gcdx(a, x, s, u);
          row_combine(t, i, s, u, -(x / g), a / g);
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (r[t][j] == 0) continue;
        const mpz_class a = r[t][t], x = r[t][j];
        if (x % a == 0) {
          col_combine(t, j, 1, 0, -(x / a), 1);
        } else {
          mpz_class s, u;
          const mpz_class g = gcdx(a, x, s, u);
          col_combine(t, j, s, u, -(x / g), a / g);
          dirty = true;
        }
      }
      if (!dirty) break;
    }
    ++t;
  }
  const int rank = t;
  std::vector<mpz_class> d(cols, 0);
  for (int i = 0; i < rank; ++i) d[i] = abs(r[i][i]);
  // Enforce the divisibility chain with gcd/lcm column moves.
  for (int i = 0; i < rank; ++i) {
    for (int j = i + 1; j < rank; ++j) {
      if (d[j] % d[i] == 0) continue;
      const mpz_class a = d[i], b = d[j];
      mpz_class s, u;
      const mpz_class g = gcdx(a, b, s, u);
      const mpz_class sa = s * a / g, tb = u * b / g;
      for (int k = 0; k < cols; ++k) {
        const mpz_class pi = p[i][k], pj = p[j][k];
        p[i][k] = sa * pi + tb * pj;
        p[j][k] = pj - pi;
      }
      d[i] = g;
      d[j] = a / g * b;
    }
  }
  return SmithResult{std::move(d), std::move(p)};
}

}  // namespace gradalg
