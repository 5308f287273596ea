// gradalg: command-line front end. Prints one JSON document on stdout.
// Exit codes: 0 yes/success, 3 no, 2 usage/validation/hypothesis error, 1 internal error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gradalg/errors.hpp"
#include "gradalg/io.hpp"
#include "gradalg/sweep.hpp"

using namespace gradalg;
namespace fs = std::filesystem;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 3;
constexpr int kUserError = 2;
constexpr int kInternal = 1;

struct Globals {
  std::string workspace_path;
  std::optional<std::int64_t> modulus;
  std::optional<int> order_cap;
  std::optional<int> nmax;
  std::optional<std::int64_t> budget;
};

struct Session {
  Config config;
  std::optional<Workspace> workspace;

  ParseContext ctx(const std::string& base_dir = ".") const {
    ParseContext c;
    c.order_cap = config.order_cap;
    c.base_dir = base_dir;
    c.workspace = workspace ? &*workspace : nullptr;
    return c;
  }
};

// A value argument: a file path, inline JSON, or a bare word (catalog spec or workspace name).
struct Loaded {
  json value;
  std::string base_dir = ".";
};

Loaded load(const std::string& arg) {
  if (arg.empty()) throw Error(ErrorKind::UsageError, "empty argument");
  const char c = arg.front();
  if (c == '{' || c == '[' || c == '"') return {parse_json_text(arg, "<argument>"), "."};
  if (fs::is_regular_file(arg)) {
    auto dir = fs::path(arg).parent_path().string();
    return {read_json_file(arg), dir.empty() ? "." : dir};
  }
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") {
    throw Error(ErrorKind::ParseError, arg + ": cannot open file");
  }
  return {json(arg), "."};
}

GroupPtr group_arg(const Session& s, const std::string& arg) {
  auto l = load(arg);
  return parse_group(l.value, s.ctx(l.base_dir));
}

MatPtr algebra_arg(const Session& s, const std::string& arg) {
  auto l = load(arg);
  return parse_algebra(l.value, s.ctx(l.base_dir));
}

TgaPtr tga_arg(const Session& s, const std::string& arg) {
  auto l = load(arg);
  return parse_tga(l.value, s.ctx(l.base_dir));
}

ExpCocycle cocycle_arg(const Session& s, const std::string& arg) {
  auto l = load(arg);
  auto c = parse_cocycle(l.value, s.ctx(l.base_dir));
  return c;
}

Subgroup subgroup_arg(const GroupPtr& g, const std::string& arg) { return parse_subgroup(g, load(arg).value); }

std::vector<Elem> tuple_arg(const GroupPtr& g, const std::string& arg) {
  // a subgroup parse would sort and dedupe; tuples keep order and repeats
  const json j = load(arg).value;
  if (!j.is_array()) throw Error(ErrorKind::ValidationError, "tuple: expected a list");
  std::vector<Elem> out;
  for (const auto& x : j) {
    if (x.is_string()) {
      auto e = g->find_label(x.get<std::string>());
      if (!e) throw Error(ErrorKind::ValidationError, "tuple: unknown element '" + x.get<std::string>() + "'");
      out.push_back(*e);
    } else {
      const auto v = json_int(x, "tuple");
      if (!g->contains(static_cast<Elem>(v))) throw Error(ErrorKind::ValidationError, "tuple: element out of range");
      out.push_back(static_cast<Elem>(v));
    }
  }
  return out;
}

int emit(const json& j, int code) {
  std::cout << j.dump(2) << '\n';
  return code;
}

int verdict_code(bool yes) { return yes ? kYes : kNo; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded twisted group algebras: cohomology, embeddings and graded identities"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--workspace", g.workspace_path, "workspace JSON with named groups, cocycles and algebras");
  app.add_option("--modulus", g.modulus, "working modulus override for cocycle computations");
  app.add_option("--order-cap", g.order_cap, "largest group order accepted");
  app.add_option("--nmax", g.nmax, "largest identity degree");
  app.add_option("--budget", g.budget, "work budget for identity computations");

  std::function<int(Session&)> action;
  auto on = [&](CLI::App* sub, std::function<int(Session&)> f) { sub->callback([&action, f] { action = f; }); };

  // group
  std::string grp, sub_arg;
  bool list_subgroups = false;
  auto* cmd_group = app.add_subcommand("group", "describe a group, a subgroup, or its subgroup lattice");
  cmd_group->add_option("--group", grp, "catalog spec, table file or workspace name")->required();
  cmd_group->add_option("--subgroup", sub_arg, "subgroup members (ids or labels)");
  cmd_group->add_flag("--subgroups", list_subgroups, "list all subgroups");
  on(cmd_group, [&](Session& s) {
    auto G = group_arg(s, grp);
    json out = emit_group(*G);
    if (!sub_arg.empty()) out["relations"] = emit_relations(G, subgroup_arg(G, sub_arg));
    if (list_subgroups) {
      json subs = json::array();
      for (const auto& h : enumerate_subgroups(G)) subs.push_back(h.members());
      out["subgroups"] = subs;
    }
    return emit(out, kYes);
  });

  // h2
  auto* cmd_h2 = app.add_subcommand("h2", "second cohomology with coefficients in F*");
  cmd_h2->add_option("--group", grp, "group")->required();
  cmd_h2->add_option("--subgroup", sub_arg, "compute for this subgroup instead");
  on(cmd_h2, [&](Session& s) {
    auto G = group_arg(s, grp);
    auto h = sub_arg.empty() ? Subgroup::whole(G) : subgroup_arg(G, sub_arg);
    return emit(emit_h2(h2_over_Fstar(h)), kYes);
  });

  // cocycle ...
  std::string sigma_arg, rho_arg, target_arg;
  auto* cmd_cocycle = app.add_subcommand("cocycle", "cocycle operations");
  cmd_cocycle->require_subcommand(1);
  auto* c_check = cmd_cocycle->add_subcommand("check", "test the cocycle identity");
  c_check->add_option("--cocycle", sigma_arg)->required();
  on(c_check, [&](Session& s) {
    auto c = cocycle_arg(s, sigma_arg);
    const bool ok = is_cocycle(c);
    return emit(json{{"is_cocycle", ok}}, verdict_code(ok));
  });
  auto* c_equiv = cmd_cocycle->add_subcommand("equiv", "decide cohomology of two cocycles");
  c_equiv->add_option("--sigma", sigma_arg)->required();
  c_equiv->add_option("--rho", rho_arg)->required();
  on(c_equiv, [&](Session& s) {
    auto a = cocycle_arg(s, sigma_arg), b = cocycle_arg(s, rho_arg);
    for (const auto* c : {&a, &b})
      if (!is_cocycle(*c)) throw Error(ErrorKind::NotACocycle, "input fails the cocycle identity");
    auto f = classes_equivalent(a, b, s.config.cohomology());
    json out{{"equivalent", f.has_value()}};
    out["f"] = f ? emit_function(*f) : json(nullptr);
    return emit(out, verdict_code(f.has_value()));
  });
  auto* c_restrict = cmd_cocycle->add_subcommand("restrict", "restrict to a subgroup");
  c_restrict->add_option("--cocycle", sigma_arg)->required();
  c_restrict->add_option("--subgroup", sub_arg)->required();
  on(c_restrict, [&](Session& s) {
    auto c = cocycle_arg(s, sigma_arg);
    return emit(emit_cocycle(restrict_to(c, subgroup_arg(c.domain().parent(), sub_arg))), kYes);
  });
  auto* c_extend = cmd_cocycle->add_subcommand("extend", "extend a class to a larger subgroup");
  c_extend->add_option("--cocycle", sigma_arg)->required();
  c_extend->add_option("--target", target_arg, "target subgroup (default: the whole group)");
  on(c_extend, [&](Session& s) {
    auto c = cocycle_arg(s, sigma_arg);
    if (!is_cocycle(c)) throw Error(ErrorKind::NotACocycle, "input fails the cocycle identity");
    const auto& G = c.domain().parent();
    auto t = target_arg.empty() ? Subgroup::whole(G) : subgroup_arg(G, target_arg);
    auto e = extend_class(c, t, s.config.cohomology());
    json out{{"extended", e.has_value()}};
    out["cocycle"] = e ? emit_cocycle(*e) : json(nullptr);
    return emit(out, verdict_code(e.has_value()));
  });
  auto* c_order = cmd_cocycle->add_subcommand("order", "order of the class in H^2");
  c_order->add_option("--cocycle", sigma_arg)->required();
  on(c_order, [&](Session& s) {
    auto c = cocycle_arg(s, sigma_arg);
    if (!is_cocycle(c)) throw Error(ErrorKind::NotACocycle, "input fails the cocycle identity");
    return emit(json{{"order", int_json(class_order(c, s.config.cohomology()))}}, kYes);
  });

  // embed / iso
  std::string a_arg, b_arg;
  std::vector<std::string> as_args, bs_args;
  auto* cmd_embed = app.add_subcommand("embed", "decide whether --a embeds into --b");
  cmd_embed->require_subcommand(1);
  auto* e_tga = cmd_embed->add_subcommand("tga", "twisted group algebras");
  auto* e_mat = cmd_embed->add_subcommand("matrix", "graded matrix algebras");
  auto* e_prod = cmd_embed->add_subcommand("product", "products of graded matrix algebras");
  auto* cmd_iso = app.add_subcommand("iso", "decide graded isomorphism");
  cmd_iso->require_subcommand(1);
  auto* i_tga = cmd_iso->add_subcommand("tga", "twisted group algebras");
  auto* i_mat = cmd_iso->add_subcommand("matrix", "graded matrix algebras");
  for (auto* c : {e_tga, e_mat, i_tga, i_mat}) {
    c->add_option("--a", a_arg)->required();
    c->add_option("--b", b_arg)->required();
  }
  on(e_tga, [&](Session& s) {
    auto r = twisted_embed(tga_arg(s, a_arg), tga_arg(s, b_arg), s.config.cohomology());
    return emit(emit_report(r), verdict_code(r.yes()));
  });
  on(e_mat, [&](Session& s) {
    auto r = matrix_embed(algebra_arg(s, a_arg), algebra_arg(s, b_arg), s.config.cohomology());
    return emit(emit_report(r), verdict_code(r.yes()));
  });
  on(i_tga, [&](Session& s) {
    auto r = twisted_iso(tga_arg(s, a_arg), tga_arg(s, b_arg), s.config.cohomology());
    return emit(emit_report(r), verdict_code(r.yes()));
  });
  on(i_mat, [&](Session& s) {
    auto r = matrix_iso(algebra_arg(s, a_arg), algebra_arg(s, b_arg), s.config.cohomology());
    return emit(emit_report(r), verdict_code(r.yes()));
  });
  e_prod->add_option("--b", bs_args, "factors B_1..B_s to embed")->required();
  e_prod->add_option("--a", as_args, "factors A_1..A_r of the target")->required();
  on(e_prod, [&](Session& s) {
    std::vector<MatPtr> bs, as;
    for (const auto& x : bs_args) bs.push_back(algebra_arg(s, x));
    for (const auto& x : as_args) as.push_back(algebra_arg(s, x));
    auto r = product_embed(bs, as, s.config.cohomology());
    return emit(emit_product(r), verdict_code(r.yes()));
  });

  // lambda
  std::string alg_arg, tuple;
  auto* cmd_lambda = app.add_subcommand("lambda", "is --target in the regrading orbit of the algebra's tuple");
  cmd_lambda->add_option("--algebra", alg_arg)->required();
  cmd_lambda->add_option("--target", tuple)->required();
  bool with_iso = false;
  cmd_lambda->add_flag("--iso", with_iso, "also emit the regrading isomorphism");
  on(cmd_lambda, [&](Session& s) {
    auto a = algebra_arg(s, alg_arg);
    auto w = lambda_membership(tuple_arg(a->ambient(), tuple), *a);
    json out = emit_lambda(w);
    if (w && with_iso) {
      auto rg = regrade_iso(a, *w);
      out["target_algebra"] = emit_algebra(*rg.target);
      out["map"] = emit_map(rg.map);
    }
    return emit(out, verdict_code(w.has_value()));
  });

  // pi
  std::vector<std::string> algs;
  std::string degrees;
  auto* cmd_pi = app.add_subcommand("pi", "multilinear graded identities");
  cmd_pi->require_subcommand(1);
  auto* p_space = cmd_pi->add_subcommand("space", "identities of given degrees (common to all --algebra)");
  p_space->add_option("--algebra", algs)->required();
  p_space->add_option("--degrees", degrees, "degrees of x_1..x_n")->required();
  on(p_space, [&](Session& s) {
    std::vector<AlgebraPtr> list;
    for (const auto& x : algs) list.push_back(algebra_arg(s, x));
    DegreeAssignment d{tuple_arg(list.front()->ambient(), degrees)};
    return emit(emit_identity_space(product_identity_space(list, d, s.config.nmax)), kYes);
  });
  auto* p_contain = cmd_pi->add_subcommand("contain", "are the identities of --a identities of --b");
  p_contain->add_option("--a", a_arg)->required();
  p_contain->add_option("--b", b_arg)->required();
  on(p_contain, [&](Session& s) {
    ContainmentOptions o;
    o.n_max = s.config.nmax;
    o.cap = std::max(s.config.nmax, kDefaultDegreeCap);
    o.budget = s.config.budget;
    auto r = multilinear_containment(*algebra_arg(s, a_arg), *algebra_arg(s, b_arg), o);
    return emit(emit_containment(r), verdict_code(r.contained));
  });

  // tower
  std::string chain_arg, theta_arg;
  int k = 1, t = 1;
  auto* cmd_tower = app.add_subcommand("tower", "extend a twisted group algebra up a central chain");
  cmd_tower->add_option("--algebra", alg_arg, "twisted group algebra at the bottom of the chain")->required();
  cmd_tower->add_option("--chain", chain_arg, "list of subgroups H = H_0 < ... < H_m")->required();
  cmd_tower->add_option("-k", k, "matrix size of the left column");
  cmd_tower->add_option("-t", t, "matrix size of the right column");
  cmd_tower->add_option("--theta", theta_arg, "k-tuple for the top row (default e)");
  on(cmd_tower, [&](Session& s) {
    auto b = tga_arg(s, alg_arg);
    const auto& G = b->ambient();
    const json cj = load(chain_arg).value;
    if (!cj.is_array()) throw Error(ErrorKind::ValidationError, "chain: expected a list of subgroups");
    std::vector<Subgroup> chain;
    for (const auto& h : cj) chain.push_back(parse_subgroup(G, h));
    std::vector<Elem> theta = theta_arg.empty() ? std::vector<Elem>{} : tuple_arg(G, theta_arg);
    auto r = build_tower(b, chain, k, t, theta, s.config.cohomology());
    const bool ok = !r.square || (r.square->verified && r.square->commutes);
    return emit(emit_tower(r), ok ? kYes : kInternal);
  });

  // sweep
  std::uint64_t seed = SweepOptions{}.seed;
  auto* cmd_sweep = app.add_subcommand("sweep", "run the acceptance catalog");
  cmd_sweep->add_option("--seed", seed, "seed for the randomized parts");
  on(cmd_sweep, [&](Session& s) {
    SweepOptions o;
    o.seed = seed;
    o.cohomology = s.config.cohomology();
    const auto results = run_sweep(o);
    for (const auto& r : results) {
      std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.title << " (" << r.seconds << " s)\n";
    }
    const json out = emit_sweep(results);
    return emit(out, out["passed"].get<bool>() ? kYes : kNo);
  });

  // workspace
  std::string ws_file;
  auto* cmd_ws = app.add_subcommand("workspace", "validate a workspace and print it in canonical form");
  cmd_ws->add_option("file", ws_file)->required();
  on(cmd_ws, [&](Session&) { return emit(emit_workspace(parse_workspace_file(ws_file)), kYes); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "UsageError: " << e.what() << '\n';
    return kUserError;
  }

  try {
    Session s;
    s.config = config_from_env();
    if (!g.workspace_path.empty()) {
      s.workspace = parse_workspace_file(g.workspace_path);
      const json wj = read_json_file(g.workspace_path);
      if (wj.contains("config")) s.config = parse_config(wj["config"], s.config);
    }
    if (g.modulus) s.config.modulus = *g.modulus;
    if (g.order_cap) s.config.order_cap = *g.order_cap;
    if (g.nmax) s.config.nmax = *g.nmax;
    if (g.budget) s.config.budget = *g.budget;
    if (!action) throw Error(ErrorKind::UsageError, "no command given");
    return action(s);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
