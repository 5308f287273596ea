#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "gradalg/embeddings.hpp"
#include "gradalg/graded_pi.hpp"

namespace gradalg {

using json = nlohmann::json;

struct Config {
  int order_cap = kDefaultOrderCap;
  std::optional<std::int64_t> modulus;  // working-modulus override
  int nmax = kDefaultDegreeCap;
  std::int64_t budget = kDefaultWorkBudget;

  CohomologyOptions cohomology() const { return {modulus, Exec::parallel}; }
};

/// Fields present in `j` override those of `base`.
Config parse_config(const json& j, Config base = {});
/// Config from the file named by GRADALG_CONFIG, if set.
Config config_from_env();

struct Workspace {
  Config config;
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, ExpCocycle> cocycles;
  std::map<std::string, MatPtr> algebras;  // twisted group algebras are k = 1, theta = (e)
};

/// Resolves group references ("C2xC2", "table:@file.json", workspace names,
/// inline objects) relative to base_dir.
struct ParseContext {
  int order_cap = kDefaultOrderCap;
  std::string base_dir = ".";
  const Workspace* workspace = nullptr;
};

/// Reads a JSON document; ParseError carries line and column.
json read_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& origin = "<input>");

GroupPtr parse_group(const json& j, const ParseContext& ctx);
json emit_group(const FiniteGroup& g);
/// The catalog name when it rebuilds the same table, else the full object.
json group_ref(const FiniteGroup& g);

Subgroup parse_subgroup(const GroupPtr& g, const json& j);
json emit_subgroup(const Subgroup& h);

CycloNumber parse_cyclo(const json& j);
json emit_cyclo(const CycloNumber& x);

ExpCocycle parse_cocycle(const json& j, const ParseContext& ctx, std::optional<GroupPtr> group = std::nullopt);
json emit_cocycle(const ExpCocycle& c);

ExpFunction parse_function(const json& j, const GroupPtr& g);
json emit_function(const ExpFunction& f);

/// Matrix algebra (k and theta optional: k = 1, theta = (e)).
MatPtr parse_algebra(const json& j, const ParseContext& ctx);
/// Twisted group algebra; rejects k != 1 or theta != (e).
TgaPtr parse_tga(const json& j, const ParseContext& ctx);
json emit_algebra(const GradedMatrixAlgebra& a);
json emit_algebra(const TwistedGroupAlgebra& a);

json emit_element(const Element& x);
Element parse_element(const json& j, const AlgebraPtr& a);

json emit_map(const AlgebraMap& m);
json emit_h2(const H2Description& h);
json emit_report(const DecisionReport& r);
json emit_lambda(const std::optional<LambdaWitness>& w);
json emit_poly(const GradedMultilinearPoly& p);
json emit_identity_space(const IdentitySpace& s);
json emit_containment(const ContainmentReport& r);
json emit_tower(const TowerReport& t);
json emit_product(const ProductReport& r);
json emit_relations(const GroupPtr& g, const Subgroup& h);

Workspace parse_workspace(const json& j, const ParseContext& ctx);
Workspace parse_workspace_file(const std::string& path);
json emit_workspace(const Workspace& w);

/// Integers beyond 2^53 - 1 become decimal strings.
json int_json(std::int64_t v);
std::int64_t json_int(const json& j, const std::string& where);

}  // namespace gradalg
