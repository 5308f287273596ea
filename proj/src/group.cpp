#include "gradalg/group.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "gradalg/errors.hpp"

namespace gradalg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TableInvalid: return "TableInvalid";
    case ErrorKind::SpecMalformed: return "SpecMalformed";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::ChainNotCentral: return "ChainNotCentral";
    case ErrorKind::ExtensionFailed: return "ExtensionFailed";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<Elem>> mul,
                                    std::vector<std::string> labels, int order_cap) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) throw Error(ErrorKind::TableInvalid, "empty multiplication table");
  if (n > order_cap) {
    throw Error(ErrorKind::OrderCapExceeded,
                "group order " + std::to_string(n) + " exceeds cap " + std::to_string(order_cap));
  }
  FiniteGroup g;
  g.name_ = std::move(name);
  g.n_ = n;
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(mul[a].size()) != n) {
      throw Error(ErrorKind::TableInvalid, "table is not square");
    }
    for (int b = 0; b < n; ++b) {
      if (mul[a][b] < 0 || mul[a][b] >= n) {
        throw Error(ErrorKind::TableInvalid, "table entry out of range");
      }
      g.table_[static_cast<std::size_t>(a) * n + b] = mul[a][b];
    }
  }
  for (int x = 0; x < n; ++x) {
    if (g.mul(0, x) != x || g.mul(x, 0) != x) {
      throw Error(ErrorKind::TableInvalid, "element 0 is not the neutral element");
    }
  }
  g.inv_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (g.mul(x, y) == 0) {
        g.inv_[x] = y;
        break;
      }
    }
    if (g.inv_[x] < 0 || g.mul(g.inv_[x], x) != 0) {
      throw Error(ErrorKind::TableInvalid, "element " + std::to_string(x) + " has no inverse");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
          throw Error(ErrorKind::TableInvalid, "multiplication is not associative");
        }
  if (labels.empty()) {
    labels.resize(n);
    for (int x = 0; x < n; ++x) labels[x] = std::to_string(x);
  }
  if (static_cast<int>(labels.size()) != n) {
    throw Error(ErrorKind::TableInvalid, "label count does not match order");
  }
  g.labels_ = std::move(labels);
  return g;
}

Elem FiniteGroup::pow(Elem a, long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(Elem a) const {
  int k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::exponent() const {
  int e = 1;
  for (Elem x = 0; x < n_; ++x) e = std::lcm(e, element_order(x));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<Elem> FiniteGroup::find_label(const std::string& label) const {
  for (Elem x = 0; x < n_; ++x)
    if (labels_[x] == label) return x;
  return std::nullopt;
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  std::vector<std::vector<Elem>> t(n_, std::vector<Elem>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

// ------------------------------------------------------------------- Subgroup

Subgroup::Subgroup(GroupPtr parent, std::vector<Elem> members) : parent_(std::move(parent)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  pos_.assign(parent_->order(), -1);
  for (Elem m : members) {
    if (!parent_->contains(m)) throw Error(ErrorKind::NotASubgroup, "member out of range");
  }
  for (std::size_t i = 0; i < members.size(); ++i) pos_[members[i]] = static_cast<int>(i);
  if (members.empty() || members.front() != 0) {
    throw Error(ErrorKind::NotASubgroup, "subgroup must contain the neutral element");
  }
  for (Elem a : members) {
    if (pos_[parent_->inv(a)] < 0) throw Error(ErrorKind::NotASubgroup, "not closed under inverses");
    for (Elem b : members) {
      if (pos_[parent_->mul(a, b)] < 0) {
        throw Error(ErrorKind::NotASubgroup, "not closed under multiplication");
      }
    }
  }
  members_ = std::move(members);
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<Elem> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {0}); }

Subgroup Subgroup::generated(GroupPtr parent, const std::vector<Elem>& generators) {
  const int n = parent->order();
  std::vector<char> in(n, 0);
  std::vector<Elem> members{0};
  in[0] = 1;
  for (Elem g : generators) {
    if (!parent->contains(g)) throw Error(ErrorKind::NotASubgroup, "generator out of range");
  }
  // Right-multiply every member by every generator until closed; finite
  // groups make this a subgroup.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem g : generators) {
      Elem p = parent->mul(members[i], g);
      if (!in[p]) {
        in[p] = 1;
        members.push_back(p);
      }
    }
  }
  return Subgroup(std::move(parent), std::move(members));
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  if (!(*parent_ == *other.parent_)) return false;
  return std::all_of(members_.begin(), members_.end(), [&](Elem a) { return other.contains(a); });
}

GroupPtr Subgroup::as_group() const {
  if (as_group_) return as_group_;
  const int m = order();
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = parent_->label(members_[i]);
    for (int j = 0; j < m; ++j) t[i][j] = pos_[parent_->mul(members_[i], members_[j])];
  }
  std::ostringstream name;
  name << parent_->name() << "[";
  for (int i = 0; i < m; ++i) name << (i ? "," : "") << members_[i];
  name << "]";
  as_group_ = std::make_shared<const FiniteGroup>(
      FiniteGroup::from_table(name.str(), std::move(t), std::move(labels), parent_->order()));
  return as_group_;
}

bool Subgroup::operator<(const Subgroup& other) const {
  if (members_.size() != other.members_.size()) return members_.size() < other.members_.size();
  return members_ < other.members_;
}

// ------------------------------------------------------------------ GroupSpec

namespace {

int parse_positive(const std::string& s, const std::string& whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
    throw Error(ErrorKind::SpecMalformed, "cannot parse group spec '" + whole + "'");
  }
  int v = std::stoi(s);
  if (v < 1) throw Error(ErrorKind::SpecMalformed, "group parameter must be positive in '" + whole + "'");
  return v;
}

std::vector<std::string> split_product(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == 'x' || c == '*') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

GroupPtr make(std::string name, std::vector<std::vector<Elem>> t, std::vector<std::string> labels,
              int cap) {
  return std::make_shared<const FiniteGroup>(
      FiniteGroup::from_table(std::move(name), std::move(t), std::move(labels), cap));
}

GroupPtr cyclic(int n, int cap) {
  if (n > cap) throw Error(ErrorKind::OrderCapExceeded, "C" + std::to_string(n) + " exceeds order cap");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return make("C" + std::to_string(n), std::move(t), std::move(labels), cap);
}

// r^i s^j  ->  j*n + i ; (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b+d)
GroupPtr dihedral(int n, int cap) {
  const int order = 2 * n;
  if (order > cap) throw Error(ErrorKind::OrderCapExceeded, "D" + std::to_string(n) + " exceeds order cap");
  std::vector<std::vector<Elem>> t(order, std::vector<Elem>(order));
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    const int a = x % n, b = x / n;
    labels[x] = b == 0 ? (a == 0 ? "e" : "r" + std::to_string(a))
                       : (a == 0 ? "s" : "r" + std::to_string(a) + "s");
    for (int y = 0; y < order; ++y) {
      const int c = y % n, d = y / n;
      const int r = ((a + (b ? -c : c)) % n + n) % n;
      t[x][y] = ((b + d) % 2) * n + r;
    }
  }
  return make("D" + std::to_string(n), std::move(t), std::move(labels), cap);
}

// 1,-1,i,-i,j,-j,k,-k
GroupPtr quaternion8(int cap) {
  if (8 > cap) throw Error(ErrorKind::OrderCapExceeded, "Q8 exceeds order cap");
  // unit u in {1,i,j,k} = 0..3, sign s; element id = 2*u + s
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int s = (x % 2 + y % 2 + sign_mul[u][v]) % 2;
      t[x][y] = 2 * unit_mul[u][v] + s;
    }
  return make("Q8", std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, cap);
}

std::string cycle_label(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<char> seen(n, 0);
  std::string out;
  for (int s = 0; s < n; ++s) {
    if (seen[s] || p[s] == s) continue;
    out += "(";
    for (int x = s; !seen[x]; x = p[x]) {
      seen[x] = 1;
      out += std::to_string(x + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

// Permutations in lexicographic one-line order (identity first);
// (p*q)(x) = p(q(x)).
GroupPtr symmetric(int n, int cap) {
  if (n > 5) throw Error(ErrorKind::SpecMalformed, "symmetric groups are limited to n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  if (order > cap) throw Error(ErrorKind::OrderCapExceeded, "S" + std::to_string(n) + " exceeds order cap");
  std::vector<std::vector<Elem>> t(order, std::vector<Elem>(order));
  std::vector<std::string> labels(order);
  for (int a = 0; a < order; ++a) {
    labels[a] = cycle_label(perms[a]);
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<Elem>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return make("S" + std::to_string(n), std::move(t), std::move(labels), cap);
}

GroupPtr product(const std::vector<GroupPtr>& factors, int cap) {
  long order = 1;
  for (const auto& f : factors) order *= f->order();
  if (order > cap) throw Error(ErrorKind::OrderCapExceeded, "product group exceeds order cap");
  const int n = static_cast<int>(order);
  const bool short_labels = std::all_of(factors.begin(), factors.end(), [](const GroupPtr& f) {
    return std::all_of(f->labels().begin(), f->labels().end(),
                       [](const std::string& l) { return l.size() == 1; });
  });
  auto digits = [&](int x) {
    std::vector<int> d(factors.size());
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      d[i] = x % factors[i]->order();
      x /= factors[i]->order();
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) x = x * factors[i]->order() + d[i];
    return x;
  };
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  std::string name;
  for (std::size_t i = 0; i < factors.size(); ++i) name += (i ? "x" : "") + factors[i]->name();
  for (int x = 0; x < n; ++x) {
    const auto dx = digits(x);
    std::string l = short_labels ? "" : "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!short_labels && i) l += ",";
      l += factors[i]->label(dx[i]);
    }
    labels[x] = short_labels ? l : l + ")";
    for (int y = 0; y < n; ++y) {
      const auto dy = digits(y);
      std::vector<int> dz(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) dz[i] = factors[i]->mul(dx[i], dy[i]);
      t[x][y] = encode(dz);
    }
  }
  return make(name, std::move(t), std::move(labels), cap);
}

}  // namespace

GroupSpec GroupSpec::parse(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::SpecMalformed, "empty group spec");
  auto parts = split_product(text);
  if (parts.size() > 1) {
    Product p;
    for (const auto& part : parts) p.factors.push_back(parse(part));
    return GroupSpec{std::move(p)};
  }
  const char head = text[0];
  const std::string rest = text.substr(1);
  switch (head) {
    case 'C':
    case 'Z': return GroupSpec{Cyclic{parse_positive(rest, text)}};
    case 'D': return GroupSpec{Dihedral{parse_positive(rest, text)}};
    case 'S': return GroupSpec{Symmetric{parse_positive(rest, text)}};
    case 'Q':
      if (rest == "8") return GroupSpec{Quaternion8{}};
      break;
    case 'V':
      if (rest == "4") return GroupSpec{Product{{GroupSpec{Cyclic{2}}, GroupSpec{Cyclic{2}}}}};
      break;
    default: break;
  }
  throw Error(ErrorKind::SpecMalformed, "cannot parse group spec '" + text + "'");
}

std::string GroupSpec::to_string() const {
  struct Visitor {
    std::string operator()(const Cyclic& c) const { return "C" + std::to_string(c.n); }
    std::string operator()(const Dihedral& d) const { return "D" + std::to_string(d.n); }
    std::string operator()(const Quaternion8&) const { return "Q8"; }
    std::string operator()(const Symmetric& s) const { return "S" + std::to_string(s.n); }
    std::string operator()(const Product& p) const {
      std::string out;
      for (std::size_t i = 0; i < p.factors.size(); ++i) out += (i ? "x" : "") + p.factors[i].to_string();
      return out;
    }
    std::string operator()(const Table& t) const { return t.name; }
  };
  return std::visit(Visitor{}, family);
}

GroupPtr build_group(const GroupSpec& spec, int order_cap) {
  struct Visitor {
    int cap;
    GroupPtr operator()(const GroupSpec::Cyclic& c) const { return cyclic(c.n, cap); }
    GroupPtr operator()(const GroupSpec::Dihedral& d) const {
      if (d.n < 1) throw Error(ErrorKind::SpecMalformed, "dihedral parameter must be >= 1");
      return dihedral(d.n, cap);
    }
    GroupPtr operator()(const GroupSpec::Quaternion8&) const { return quaternion8(cap); }
    GroupPtr operator()(const GroupSpec::Symmetric& s) const { return symmetric(s.n, cap); }
    GroupPtr operator()(const GroupSpec::Product& p) const {
      if (p.factors.empty()) throw Error(ErrorKind::SpecMalformed, "empty product");
      std::vector<GroupPtr> fs;
      for (const auto& f : p.factors) fs.push_back(build_group(f, cap));
      return product(fs, cap);
    }
    GroupPtr operator()(const GroupSpec::Table& t) const { return make(t.name, t.mul, t.labels, cap); }
  };
  return std::visit(Visitor{order_cap}, spec.family);
}

GroupPtr build_group(const std::string& text, int order_cap) {
  return build_group(GroupSpec::parse(text), order_cap);
}

// ------------------------------------------------------------------ queries

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group) {
  const int n = group->order();
  std::set<std::vector<Elem>> found;
  std::vector<std::vector<Elem>> frontier;
  auto add = [&](const Subgroup& s) {
    if (found.insert(s.members()).second) frontier.push_back(s.members());
  };
  for (Elem g = 0; g < n; ++g) add(Subgroup::generated(group, {g}));
  // Every subgroup is generated by adding one element at a time to a
  // smaller subgroup, so joining with cyclic generators reaches all of them.
  while (!frontier.empty()) {
    auto batch = std::move(frontier);
    frontier.clear();
    for (const auto& members : batch) {
      std::vector<char> in(n, 0);
      for (Elem m : members) in[m] = 1;
      for (Elem g = 0; g < n; ++g) {
        if (in[g]) continue;
        auto gens = members;
        gens.push_back(g);
        add(Subgroup::generated(group, gens));
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& m : found) out.emplace_back(group, m);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
void require_subgroup_of(const GroupPtr& group, const Subgroup& h) {
  if (!(*h.parent() == *group)) throw Error(ErrorKind::NotASubgroup, "subgroup belongs to a different group");
}
}  // namespace

Subgroup normalizer(const GroupPtr& group, const Subgroup& h) {
  require_subgroup_of(group, h);
  std::vector<Elem> out;
  for (Elem x = 0; x < group->order(); ++x) {
    const Elem xi = group->inv(x);
    bool ok = true;
    for (Elem a : h.members()) {
      if (!h.contains(group->mul(group->mul(xi, a), x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Subgroup(group, std::move(out));
}

Subgroup centralizer(const GroupPtr& group, const Subgroup& h) {
  require_subgroup_of(group, h);
  std::vector<Elem> out;
  for (Elem x = 0; x < group->order(); ++x) {
    if (std::all_of(h.members().begin(), h.members().end(),
                    [&](Elem a) { return group->mul(x, a) == group->mul(a, x); })) {
      out.push_back(x);
    }
  }
  return Subgroup(group, std::move(out));
}

Subgroup center(const GroupPtr& group) { return centralizer(group, Subgroup::whole(group)); }

bool is_normal(const GroupPtr& group, const Subgroup& h) {
  return normalizer(group, h).order() == group->order();
}

bool is_central(const GroupPtr& group, const Subgroup& h) {
  return centralizer(group, h).order() == group->order();
}

std::vector<Elem> left_transversal(const Subgroup& within, const Subgroup& h) {
  const auto& g = *within.parent();
  std::vector<char> covered(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x : within.members()) {  // ascending, so the first hit is the minimum of its coset
    if (covered[x]) continue;
    reps.push_back(x);
    for (Elem a : h.members()) covered[g.mul(x, a)] = 1;
  }
  return reps;
}

RelationReport subgroup_relations(const GroupPtr& group, const Subgroup& h) {
  require_subgroup_of(group, h);
  RelationReport r;
  r.is_normal = is_normal(group, h);
  r.is_central = is_central(group, h);
  r.index = group->order() / h.order();
  r.transversal = left_transversal(Subgroup::whole(group), h);
  return r;
}

bool all_subgroups_normal(const GroupPtr& group) {
  if (group->is_abelian()) return true;
  // Every subgroup is normal iff every cyclic subgroup is normal.
  for (Elem g = 0; g < group->order(); ++g) {
    if (!is_normal(group, Subgroup::generated(group, {g}))) return false;
  }
  return true;
}

Subgroup conjugate_subgroup(const Subgroup& h, Elem x) {
  const auto& g = *h.parent();
  std::vector<Elem> out;
  for (Elem a : h.members()) out.push_back(g.conj(a, x));
  return Subgroup(h.parent(), std::move(out));
}

}  // namespace gradalg
