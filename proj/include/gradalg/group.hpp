#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gradalg {

/// Group element identifier. Element 0 is always the neutral element.
using Elem = int;

inline constexpr int kDefaultOrderCap = 64;

/// A finite group given by its full multiplication table.
///
/// Construction validates associativity, the identity (element 0) and
/// inverses, and enforces an order cap. Instances are immutable.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::string name, std::vector<std::vector<Elem>> mul,
                                std::vector<std::string> labels = {},
                                int order_cap = kDefaultOrderCap);

  const std::string& name() const { return name_; }
  int order() const { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// g x g^-1
  Elem conj(Elem x, Elem g) const { return mul(mul(g, x), inv(g)); }
  Elem pow(Elem a, long k) const;
  int element_order(Elem a) const;
  int exponent() const;
  bool is_abelian() const;
  bool contains(Elem a) const { return a >= 0 && a < n_; }

  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find_label(const std::string& label) const;

  std::vector<std::vector<Elem>> table() const;

  bool operator==(const FiniteGroup& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  FiniteGroup() = default;

  std::string name_;
  int n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A subgroup of a parent group, stored as its sorted member list.
class Subgroup {
 public:
  /// Validates closure; throws NotASubgroup otherwise.
  Subgroup(GroupPtr parent, std::vector<Elem> members);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);
  /// Smallest subgroup containing `generators`.
  static Subgroup generated(GroupPtr parent, const std::vector<Elem>& generators);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Elem>& members() const { return members_; }
  int order() const { return static_cast<int>(members_.size()); }
  bool contains(Elem a) const { return a >= 0 && a < static_cast<int>(pos_.size()) && pos_[a] >= 0; }
  /// Position of `a` in members(), or -1.
  int index_of(Elem a) const { return pos_[a]; }
  Elem member(int i) const { return members_[i]; }
  bool is_subset_of(const Subgroup& other) const;
  bool is_whole() const { return order() == parent_->order(); }

  /// The subgroup as a standalone group; element i corresponds to member(i).
  GroupPtr as_group() const;

  bool operator==(const Subgroup& other) const {
    return *parent_ == *other.parent_ && members_ == other.members_;
  }
  bool operator<(const Subgroup& other) const;

 private:
  GroupPtr parent_;
  std::vector<Elem> members_;
  std::vector<int> pos_;
  mutable GroupPtr as_group_;
};

/// Textual/structured description of a group family.
struct GroupSpec {
  struct Cyclic { int n; };
  struct Dihedral { int n; };  // order 2n
  struct Quaternion8 {};
  struct Symmetric { int n; };
  struct Product { std::vector<GroupSpec> factors; };
  struct Table {
    std::string name;
    std::vector<std::vector<Elem>> mul;
    std::vector<std::string> labels;
  };
  std::variant<Cyclic, Dihedral, Quaternion8, Symmetric, Product, Table> family;

  /// Parses "C4", "C2xC2", "D4", "Q8", "S3". Table specs ("table:@file")
  /// are resolved by the io layer.
  static GroupSpec parse(const std::string& text);
  std::string to_string() const;
};

GroupPtr build_group(const GroupSpec& spec, int order_cap = kDefaultOrderCap);
GroupPtr build_group(const std::string& text, int order_cap = kDefaultOrderCap);

/// All subgroups, sorted by order then lexicographically by members.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group);

Subgroup normalizer(const GroupPtr& group, const Subgroup& h);
Subgroup centralizer(const GroupPtr& group, const Subgroup& h);
Subgroup center(const GroupPtr& group);

struct RelationReport {
  bool is_normal = false;
  bool is_central = false;
  int index = 0;
  /// Left-coset representatives xH, minimal identifier per coset, ascending.
  std::vector<Elem> transversal;
};

RelationReport subgroup_relations(const GroupPtr& group, const Subgroup& h);

/// Left-coset transversal of h inside the larger subgroup `within`.
std::vector<Elem> left_transversal(const Subgroup& within, const Subgroup& h);

bool is_normal(const GroupPtr& group, const Subgroup& h);
bool is_central(const GroupPtr& group, const Subgroup& h);

/// True iff every subgroup is normal (abelian or Hamiltonian).
bool all_subgroups_normal(const GroupPtr& group);

/// x H x^-1 as a subgroup.
Subgroup conjugate_subgroup(const Subgroup& h, Elem x);

}  // namespace gradalg
