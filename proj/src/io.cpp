#include "gradalg/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gradalg/errors.hpp"

namespace gradalg {

namespace fs = std::filesystem;

namespace {

constexpr std::int64_t kMaxSafeInt = (std::int64_t{1} << 53) - 1;

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ValidationError, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) invalid(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<std::vector<std::int64_t>> int_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected a matrix");
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : j) {
    if (!row.is_array()) invalid(where, "expected a matrix row");
    std::vector<std::int64_t> r;
    for (const auto& x : row) r.push_back(json_int(x, where));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Elem> elem_list(const GroupPtr& g, const json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected a list of group elements");
  std::vector<Elem> out;
  for (const auto& x : j) {
    if (x.is_string()) {
      auto e = g->find_label(x.get<std::string>());
      if (!e) invalid(where, "unknown element label '" + x.get<std::string>() + "'");
      out.push_back(*e);
    } else {
      const auto v = json_int(x, where);
      if (v < 0 || v >= g->order()) invalid(where, "element id " + std::to_string(v) + " out of range");
      out.push_back(static_cast<Elem>(v));
    }
  }
  return out;
}

json one_based(const std::vector<int>& v) {
  json out = json::array();
  for (int x : v) out.push_back(x + 1);
  return out;
}

}  // namespace

json int_json(std::int64_t v) {
  if (v > kMaxSafeInt || v < -kMaxSafeInt) return std::to_string(v);
  return v;
}

std::int64_t json_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t used = 0;
    try {
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  invalid(where, "expected an integer");
}

// ------------------------------------------------------------------ parsing

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Config parse_config(const json& j, Config base) {
  if (!j.is_object()) invalid("config", "expected an object");
  if (j.contains("order_cap")) base.order_cap = static_cast<int>(json_int(j["order_cap"], "config/order_cap"));
  if (j.contains("modulus")) {
    if (j["modulus"].is_null()) {
      base.modulus.reset();
    } else {
      base.modulus = json_int(j["modulus"], "config/modulus");
      if (*base.modulus < 1) invalid("config/modulus", "must be positive");
    }
  }
  if (j.contains("nmax")) base.nmax = static_cast<int>(json_int(j["nmax"], "config/nmax"));
  if (j.contains("budget")) base.budget = json_int(j["budget"], "config/budget");
  if (base.order_cap < 1) invalid("config/order_cap", "must be positive");
  if (base.nmax < 1) invalid("config/nmax", "must be positive");
  return base;
}

Config config_from_env() {
  const char* path = std::getenv("GRADALG_CONFIG");
  if (!path || !*path) return {};
  return parse_config(read_json_file(path));
}

GroupPtr parse_group(const json& j, const ParseContext& ctx) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (ctx.workspace) {
      auto it = ctx.workspace->groups.find(s);
      if (it != ctx.workspace->groups.end()) return it->second;
    }
    if (s.rfind("table:@", 0) == 0) {
      fs::path p = s.substr(7);
      if (p.is_relative()) p = fs::path(ctx.base_dir) / p;
      ParseContext sub = ctx;
      sub.base_dir = p.parent_path().string();
      return parse_group(read_json_file(p.string()), sub);
    }
    return build_group(s, ctx.order_cap);
  }
  if (j.is_object()) {
    if (j.contains("spec")) return parse_group(j["spec"], ctx);
    const std::string where = "group";
    const std::string name = j.contains("name") ? j["name"].get<std::string>() : "table";
    auto mul64 = int_matrix(field(j, "mul", where), where + "/mul");
    std::vector<std::vector<Elem>> mul;
    for (const auto& row : mul64) mul.emplace_back(row.begin(), row.end());
    if (j.contains("order") && json_int(j["order"], where + "/order") != static_cast<std::int64_t>(mul.size())) {
      invalid(where, "order does not match the table size");
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(name, std::move(mul), std::move(labels), ctx.order_cap));
  }
  invalid("group", "expected a spec string or a table object");
}

json emit_group(const FiniteGroup& g) {
  json j;
  j["name"] = g.name();
  j["order"] = g.order();
  j["mul"] = g.table();
  j["labels"] = g.labels();
  return j;
}

json group_ref(const FiniteGroup& g) {
  try {
    auto rebuilt = build_group(g.name(), std::max(g.order(), kDefaultOrderCap));
    if (*rebuilt == g && rebuilt->labels() == g.labels()) return g.name();
  } catch (const Error&) {
  }
  return emit_group(g);
}

Subgroup parse_subgroup(const GroupPtr& g, const json& j) {
  return Subgroup(g, elem_list(g, j, "subgroup"));
}

json emit_subgroup(const Subgroup& h) { return h.members(); }

CycloNumber parse_cyclo(const json& j) {
  const std::string where = "cyclo";
  const auto m = json_int(field(j, "M", where), where + "/M");
  if (m < 1 || m > (1 << 20)) invalid(where, "modulus out of range");
  auto f = CycloField::get(static_cast<int>(m));
  const auto& cs = field(j, "coeffs", where);
  if (!cs.is_array() || static_cast<int>(cs.size()) != f->degree()) {
    invalid(where, "expected " + std::to_string(f->degree()) + " coefficients");
  }
  std::vector<mpq_class> coeffs;
  for (const auto& c : cs) {
    if (!c.is_array() || c.size() != 2) invalid(where, "coefficient must be [num, den]");
    auto str = [&](const json& x) { return x.is_string() ? x.get<std::string>() : std::to_string(json_int(x, where)); };
    try {
      mpz_class num(str(c[0])), den(str(c[1]));
      if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      coeffs.push_back(q);
    } catch (const std::invalid_argument&) {
      invalid(where, "coefficients must be decimal integers");
    }
  }
  return CycloNumber(f, std::move(coeffs));
}

json emit_cyclo(const CycloNumber& x) {
  json cs = json::array();
  for (const auto& c : x.coeffs()) cs.push_back(json::array({c.get_num().get_str(), c.get_den().get_str()}));
  return json{{"M", x.field()->modulus()}, {"coeffs", cs}};
}

ExpCocycle parse_cocycle(const json& j, const ParseContext& ctx, std::optional<GroupPtr> group) {
  const std::string where = "cocycle";
  if (j.is_string() && ctx.workspace) {
    auto it = ctx.workspace->cocycles.find(j.get<std::string>());
    if (it == ctx.workspace->cocycles.end()) invalid(where, "unknown cocycle '" + j.get<std::string>() + "'");
    return it->second;
  }
  GroupPtr g = j.contains("group") ? parse_group(j["group"], ctx) : group.value_or(nullptr);
  if (!g) invalid(where, "missing field \"group\"");
  Subgroup h = j.contains("subgroup") ? parse_subgroup(g, j["subgroup"]) : Subgroup::whole(g);
  const auto m = j.contains("modulus") ? json_int(j["modulus"], where + "/modulus") : h.order();
  if (m < 1) invalid(where, "modulus must be positive");
  if (!j.contains("exponents")) return ExpCocycle::trivial(h, m);
  return ExpCocycle::from_matrix(h, m, int_matrix(j["exponents"], where + "/exponents"));
}

json emit_cocycle(const ExpCocycle& c) {
  return json{{"group", group_ref(*c.domain().parent())},
              {"subgroup", c.domain().members()},
              {"modulus", int_json(c.modulus())},
              {"exponents", c.matrix()}};
}

ExpFunction parse_function(const json& j, const GroupPtr& g) {
  const std::string where = "function";
  Subgroup h = parse_subgroup(g, field(j, "subgroup", where));
  ExpFunction f{h, json_int(field(j, "modulus", where), where), {}};
  for (const auto& v : field(j, "values", where)) f.values.push_back(json_int(v, where) % f.modulus);
  if (static_cast<int>(f.values.size()) != h.order()) throw Error(ErrorKind::LengthMismatch, "function length");
  return f;
}

json emit_function(const ExpFunction& f) {
  return json{{"subgroup", f.domain.members()}, {"modulus", int_json(f.modulus)}, {"values", f.values}};
}

MatPtr parse_algebra(const json& j, const ParseContext& ctx) {
  const std::string where = "algebra";
  if (j.is_string() && ctx.workspace) {
    auto it = ctx.workspace->algebras.find(j.get<std::string>());
    if (it == ctx.workspace->algebras.end()) invalid(where, "unknown algebra '" + j.get<std::string>() + "'");
    return it->second;
  }
  if (!j.is_object()) invalid(where, "expected an object");
  GroupPtr g;
  if (j.contains("group")) {
    g = parse_group(j["group"], ctx);
  } else if (j.contains("cocycle") && j["cocycle"].is_object() && j["cocycle"].contains("group")) {
    g = parse_group(j["cocycle"]["group"], ctx);
  } else if (j.contains("cocycle") && j["cocycle"].is_string() && ctx.workspace) {
    g = parse_cocycle(j["cocycle"], ctx).domain().parent();
  } else {
    invalid(where, "missing field \"group\"");
  }
  std::optional<ExpCocycle> sigma;
  if (j.contains("cocycle") && !j["cocycle"].is_null()) {
    json cj = j["cocycle"];
    if (cj.is_object() && !cj.contains("subgroup") && j.contains("subgroup")) cj["subgroup"] = j["subgroup"];
    sigma = parse_cocycle(cj, ctx, g);
    if (!(*sigma->domain().parent() == *g)) invalid(where, "cocycle lives on another group");
  }
  Subgroup h = j.contains("subgroup") ? parse_subgroup(g, j["subgroup"])
                                      : (sigma ? sigma->domain() : Subgroup::whole(g));
  if (sigma && !(sigma->domain() == h)) invalid(where, "cocycle subgroup differs from the algebra subgroup");
  if (!sigma) sigma = ExpCocycle::trivial(h, h.order());
  if (!is_cocycle(*sigma)) invalid(where, "twisting function fails the cocycle identity");
  auto base = TwistedGroupAlgebra::create(*sigma);
  std::vector<Elem> theta = j.contains("theta") ? elem_list(g, j["theta"], where + "/theta") : std::vector<Elem>{0};
  if (j.contains("k") && json_int(j["k"], where + "/k") != static_cast<std::int64_t>(theta.size())) {
    invalid(where, "k does not match the length of theta");
  }
  return GradedMatrixAlgebra::create(std::move(base), std::move(theta));
}

TgaPtr parse_tga(const json& j, const ParseContext& ctx) {
  auto m = parse_algebra(j, ctx);
  if (m->k() != 1 || m->theta()[0] != 0) invalid("algebra", "expected a twisted group algebra (k = 1, theta = (e))");
  return m->base();
}

json emit_algebra(const GradedMatrixAlgebra& a) {
  return json{{"k", a.k()},
              {"theta", a.theta()},
              {"group", group_ref(*a.ambient())},
              {"subgroup", a.subgroup().members()},
              {"cocycle", json{{"modulus", int_json(a.cocycle().modulus())}, {"exponents", a.cocycle().matrix()}}}};
}

json emit_algebra(const TwistedGroupAlgebra& a) {
  return json{{"group", group_ref(*a.ambient())},
              {"subgroup", a.subgroup().members()},
              {"cocycle", json{{"modulus", int_json(a.cocycle().modulus())}, {"exponents", a.cocycle().matrix()}}}};
}

json emit_element(const Element& x) {
  json terms = json::array();
  const auto* mat = dynamic_cast<const GradedMatrixAlgebra*>(x.algebra().get());
  for (const auto& [b, c] : x.terms()) {
    json t;
    if (mat) {
      const auto e = mat->element(b);
      t["i"] = e.i + 1;
      t["j"] = e.j + 1;
      t["g"] = e.zeta;
    } else {
      t["g"] = x.algebra()->degree(b);
    }
    t["c"] = emit_cyclo(c);
    terms.push_back(std::move(t));
  }
  return json{{"algebra", x.algebra()->describe()}, {"terms", terms}};
}

Element parse_element(const json& j, const AlgebraPtr& a) {
  Element out = a->zero();
  const auto* mat = dynamic_cast<const GradedMatrixAlgebra*>(a.get());
  for (const auto& t : field(j, "terms", "element")) {
    const Elem g = static_cast<Elem>(json_int(field(t, "g", "element"), "element/g"));
    int b;
    if (mat) {
      b = mat->index(static_cast<int>(json_int(field(t, "i", "element"), "element/i")) - 1,
                     static_cast<int>(json_int(field(t, "j", "element"), "element/j")) - 1, g);
    } else {
      const auto* tga = dynamic_cast<const TwistedGroupAlgebra*>(a.get());
      if (!tga || !tga->subgroup().contains(g)) invalid("element", "degree not in the algebra");
      b = tga->subgroup().index_of(g);
    }
    out.add_term(b, parse_cyclo(field(t, "c", "element")));
  }
  return out;
}

// ------------------------------------------------------------------ reports

json emit_map(const AlgebraMap& m) {
  json images = json::array();
  for (int b = 0; b < m.domain->dim(); ++b) {
    images.push_back(json{{"basis", m.domain->basis_label(b)}, {"image", emit_element(m.images[b])}});
  }
  return json{{"domain", m.domain->describe()}, {"codomain", m.codomain->describe()}, {"images", images}};
}

json emit_h2(const H2Description& h) {
  json reps = json::array();
  for (const auto& r : h.representatives) reps.push_back(emit_cocycle(r));
  json factors = json::array();
  for (auto f : h.invariant_factors) factors.push_back(int_json(f));
  return json{{"group", group_ref(*h.group)},
              {"order", int_json(h.order)},
              {"invariant_factors", factors},
              {"base_modulus", int_json(h.base_modulus)},
              {"working_modulus", int_json(h.working_modulus)},
              {"representatives", reps}};
}

json emit_report(const DecisionReport& r) {
  json reasons = json::array();
  for (const auto& x : r.reasons) reasons.push_back(json{{"code", x.code}, {"detail", x.detail}});
  json j{{"decision", r.decision}, {"verdict", to_string(r.verdict)}, {"verified", r.verified}, {"reasons", reasons}};
  if (r.matrix_witness) {
    const auto& w = *r.matrix_witness;
    j["witness"] = json{{"f", emit_function(w.tga.f)},
                        {"delta", w.slots.delta},
                        {"alpha", one_based(w.slots.alpha)},
                        {"xis", w.slots.xis}};
  } else if (r.tga_witness) {
    j["witness"] = json{{"f", emit_function(r.tga_witness->f)}};
  } else {
    j["witness"] = nullptr;
  }
  if (r.map) j["map"] = emit_map(*r.map);
  return j;
}

json emit_lambda(const std::optional<LambdaWitness>& w) {
  if (!w) return json{{"member", false}, {"witness", nullptr}};
  return json{{"member", true},
              {"witness", json{{"target", w->target()},
                               {"delta", w->delta()},
                               {"alpha", one_based(w->alpha())},
                               {"xis", w->xis()}}}};
}

json emit_poly(const GradedMultilinearPoly& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.coeffs) terms.push_back(json{{"word", one_based(w)}, {"c", emit_cyclo(c)}});
  return json{{"text", p.to_string()}, {"degrees", p.assignment.degs}, {"terms", terms}};
}

json emit_identity_space(const IdentitySpace& s) {
  json basis = json::array();
  for (const auto& p : s.basis) basis.push_back(emit_poly(p));
  return json{{"algebras", s.algebras},
              {"degrees", s.assignment.degs},
              {"monomials", s.monomials},
              {"rank", s.rank},
              {"dimension", s.basis.size()},
              {"basis", basis}};
}

json emit_containment(const ContainmentReport& r) {
  json rows = json::array();
  for (const auto& a : r.results) {
    json row{{"degrees", a.assignment.degs},
             {"kernel_dim_a", a.kernel_dim_a},
             {"kernel_dim_b", a.kernel_dim_b},
             {"contained", a.contained},
             {"trivial", a.trivial}};
    row["separating"] = a.separating ? emit_poly(*a.separating) : json(nullptr);
    rows.push_back(std::move(row));
  }
  json skipped = json::array();
  for (const auto& d : r.skipped) skipped.push_back(d.degs);
  return json{{"verdict", r.contained ? "no_separation_up_to_nmax" : "not_contained"},
              {"contained", r.contained},
              {"n_max", r.n_max},
              {"summary", r.summary},
              {"assignments", rows},
              {"skipped", skipped}};
}

json emit_tower(const TowerReport& t) {
  json chain = json::array();
  for (const auto& h : t.chain) chain.push_back(h.members());
  json cocycles = json::array();
  for (const auto& c : t.cocycles) cocycles.push_back(emit_cocycle(c));
  json embeds = json::array();
  for (const auto& e : t.embeddings) embeds.push_back(emit_report(e));
  json j{{"chain", chain}, {"cocycles", cocycles}, {"embeddings", embeds}};
  if (t.square) {
    const auto& s = *t.square;
    j["square"] = json{{"verified", s.verified},
                       {"commutes", s.commutes},
                       {"algebras", json{{"b", emit_algebra(*s.b)},
                                         {"top_right", emit_algebra(*s.top_right)},
                                         {"bottom_left", emit_algebra(*s.bottom_left)},
                                         {"bottom_right", emit_algebra(*s.bottom_right)}}},
                       {"maps", json{{"top", emit_map(s.top)},
                                     {"left", emit_map(s.left)},
                                     {"right", emit_map(s.right)},
                                     {"bottom", emit_map(s.bottom)}}}};
  } else {
    j["square"] = nullptr;
  }
  return j;
}

json emit_product(const ProductReport& r) {
  json assignment = json::array();
  for (int i : r.assignment) assignment.push_back(i < 0 ? json(nullptr) : json(i + 1));
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(emit_report(c));
  return json{{"verdict", to_string(r.verdict)},
              {"verified", r.verified},
              {"assignment", assignment},
              {"convention", r.convention},
              {"warnings", r.warnings},
              {"components", comps}};
}

json emit_relations(const GroupPtr& g, const Subgroup& h) {
  const auto rel = subgroup_relations(g, h);
  return json{{"subgroup", h.members()},
              {"is_normal", rel.is_normal},
              {"is_central", rel.is_central},
              {"index", rel.index},
              {"transversal", rel.transversal},
              {"normalizer", normalizer(g, h).members()},
              {"centralizer", centralizer(g, h).members()}};
}

// ---------------------------------------------------------------- workspace

namespace {

// Accepts [{"name": n, ...}, ...] or {n: {...}, ...}.
std::vector<std::pair<std::string, json>> named_entries(const json& j, const std::string& where) {
  std::vector<std::pair<std::string, json>> out;
  std::set<std::string> seen;
  auto add = [&](std::string name, json body, const std::string& path) {
    if (name.empty()) invalid(path, "empty name");
    if (!seen.insert(name).second) invalid(path, "duplicate name '" + name + "'");
    out.emplace_back(std::move(name), std::move(body));
  };
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string path = where + "/" + std::to_string(i);
      if (!j[i].is_object() || !j[i].contains("name") || !j[i]["name"].is_string()) invalid(path, "missing name");
      json body = j[i];
      body.erase("name");
      add(j[i]["name"].get<std::string>(), std::move(body), path);
    }
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) add(it.key(), it.value(), where + "/" + it.key());
  } else {
    invalid(where, "expected an array or object");
  }
  return out;
}

}  // namespace

Workspace parse_workspace(const json& j, const ParseContext& outer) {
  if (!j.is_object()) invalid("workspace", "expected an object");
  Workspace ws;
  if (j.contains("config")) ws.config = parse_config(j["config"]);
  ParseContext ctx = outer;
  ctx.order_cap = ws.config.order_cap;
  ctx.workspace = &ws;
  auto rewrap = [](const std::string& path, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ValidationError || e.kind() == ErrorKind::ParseError) throw;
      throw Error(ErrorKind::ValidationError, path + ": " + std::string(to_string(e.kind())) + ": " + e.what());
    }
  };
  if (j.contains("groups")) {
    for (auto& [name, body] : named_entries(j["groups"], "/groups")) {
      const json& spec = body.is_object() && body.contains("group") ? body["group"] : body;
      ws.groups.emplace(name, rewrap("/groups/" + name, [&] { return parse_group(spec, ctx); }));
    }
  }
  if (j.contains("cocycles")) {
    for (auto& [name, body] : named_entries(j["cocycles"], "/cocycles")) {
      auto c = rewrap("/cocycles/" + name, [&] { return parse_cocycle(body, ctx); });
      if (!is_cocycle(c)) invalid("/cocycles/" + name, "fails the cocycle identity");
      ws.cocycles.emplace(name, std::move(c));
    }
  }
  if (j.contains("algebras")) {
    for (auto& [name, body] : named_entries(j["algebras"], "/algebras")) {
      ws.algebras.emplace(name, rewrap("/algebras/" + name, [&] { return parse_algebra(body, ctx); }));
    }
  }
  return ws;
}

Workspace parse_workspace_file(const std::string& path) {
  ParseContext ctx;
  ctx.base_dir = fs::path(path).parent_path().string();
  if (ctx.base_dir.empty()) ctx.base_dir = ".";
  return parse_workspace(read_json_file(path), ctx);
}

json emit_workspace(const Workspace& w) {
  json groups = json::array(), cocycles = json::array(), algebras = json::array();
  for (const auto& [name, g] : w.groups) groups.push_back(json{{"name", name}, {"group", emit_group(*g)}});
  for (const auto& [name, c] : w.cocycles) {
    json body = emit_cocycle(c);
    body["group"] = emit_group(*c.domain().parent());
    body["name"] = name;
    cocycles.push_back(std::move(body));
  }
  for (const auto& [name, a] : w.algebras) {
    json body = emit_algebra(*a);
    body["group"] = emit_group(*a->ambient());
    body["name"] = name;
    algebras.push_back(std::move(body));
  }
  json config{{"order_cap", w.config.order_cap}, {"nmax", w.config.nmax}, {"budget", int_json(w.config.budget)}};
  config["modulus"] = w.config.modulus ? int_json(*w.config.modulus) : json(nullptr);
  return json{{"config", config}, {"groups", groups}, {"cocycles", cocycles}, {"algebras", algebras}};
}

}  // namespace gradalg
