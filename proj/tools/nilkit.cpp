// nilkit command line: build, verify, factor, fibration, cocycle,
// translations, rp, corpus.
//
// Exit codes: 0 success, 1 a check failed, 2 input error, 3 size guard.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "nilkit/dynamics.hpp"
#include "nilkit/factors.hpp"
#include "nilkit/fibrations.hpp"
#include "nilkit/io.hpp"
#include "nilkit/translations.hpp"

namespace fs = std::filesystem;
using namespace nilkit;
using io::Json;

namespace {

struct Settings {
  int lmax = -1;
  std::uint64_t guard = 0;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::string config;
};

Settings g;

int lmax_or(int fallback) { return g.lmax >= 0 ? g.lmax : fallback; }

// flags > NILKIT_GUARD > config file > built-in default
void apply_settings(const CLI::App& app) {
  std::optional<std::uint64_t> guard;
  if (!g.config.empty()) {
    const Json c = io::read_file(g.config);
    if (!c.is_object()) throw io::SchemaError("", "config must be an object");
    if (c.contains("guard")) guard = c["guard"].get<std::uint64_t>();
    if (c.contains("lmax") && app.count("--lmax") == 0) g.lmax = c["lmax"].get<int>();
    if (c.contains("seed") && app.count("--seed") == 0) g.seed = c["seed"].get<std::uint64_t>();
  }
  if (const char* env = std::getenv("NILKIT_GUARD")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw InputError("cli.BadGuard", "NILKIT_GUARD must be an integer");
    guard = v;
  }
  if (app.count("--guard")) guard = g.guard;
  if (guard) set_size_guard(*guard);
}

void emit(const Json& doc, const std::string& path = g.out) {
  if (path.empty())
    std::cout << io::dump(doc);
  else
    io::write_file(path, doc);
}

fs::path out_dir() {
  if (g.out.empty()) throw InputError("cli.NoOut", "--out DIR is required");
  fs::create_directories(g.out);
  return fs::path(g.out);
}

std::vector<Element> parse_list(const std::string& s) {
  std::vector<Element> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<Element>(std::stoul(item)));
    } catch (const std::exception&) {
      throw InputError("cli.BadList", "'" + s + "' is not a comma separated list of integers");
    }
  }
  return out;
}

Json verdicts_json(const std::vector<Verdict>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(io::to_json(v));
  return out;
}

Json classification_json(const Classification& c) {
  return {{"s", c.s},
          {"kind", to_string(c.kind)},
          {"consistent", c.consistent},
          {"checks", verdicts_json({c.horizontal1, c.horizontal2, c.horizontal5, c.vertical1, c.vertical2, c.vertical5})}};
}

Json structure_json(const StructureGroup& a) {
  return {{"s", a.s}, {"order", a.group.order()}, {"invariants", a.group.invariants()},
          {"free", a.free.passed}, {"orbits", a.orbits.passed}};
}

SpacePtr load_space(const std::string& path) { return share(io::cubespace_from_json(io::open(io::read_file(path), "cubespace"))); }

// ---- build ----

struct BuildArgs {
  std::string what;
  std::string group, filtration = "lcs", gamma = "trivial", abelian, action, subgroup;
  int degree = 1;
  std::uint32_t cyclic = 0, dihedral = 0, symmetric = 0, alternating = 0;
  std::string product;
};

FiniteGroup load_group(const std::string& path) { return io::group_from_json(io::open(io::read_file(path), "group")); }

int cmd_build(const BuildArgs& a) {
  Json prov = {{"construction", a.what}};
  if (a.what == "group") {
    FiniteGroup grp;
    if (a.cyclic) {
      grp = cyclic_group(a.cyclic);
      prov["cyclic"] = a.cyclic;
    } else if (a.dihedral) {
      grp = dihedral_group(a.dihedral);
      prov["dihedral"] = a.dihedral;
    } else if (a.symmetric) {
      grp = symmetric_group(a.symmetric);
      prov["symmetric"] = a.symmetric;
    } else if (a.alternating) {
      grp = alternating_group(a.alternating);
      prov["alternating"] = a.alternating;
    } else if (!a.product.empty()) {
      grp = abelian_product(parse_list(a.product)).group();
      prov["product"] = a.product;
    } else {
      throw InputError("cli.BadBuild", "build group needs --cyclic, --dihedral, --symmetric, --alternating or --product");
    }
    emit(io::envelope("group", io::to_json(grp), prov));
    return 0;
  }
  if (a.what == "filtration") {
    auto grp = load_group(a.group);
    Filtration f = a.filtration == "lcs" ? lower_central_series(grp) : abelian_filtration(grp, a.degree);
    prov["filtration"] = a.filtration;
    emit(io::envelope("filtration", io::to_json(grp, f), prov));
    return 0;
  }
  if (a.what == "action") {
    auto grp = load_group(a.group);
    GroupAction act = a.subgroup.empty() ? left_translation(grp)
                                         : coset_action(grp, subgroup_closure(grp, parse_list(a.subgroup)));
    prov["subgroup"] = a.subgroup;
    emit(io::envelope("action", io::to_json(act), prov));
    return 0;
  }
  if (a.what == "hk") {
    FiniteGroup grp;
    Filtration f;
    if (a.filtration == "lcs") {
      grp = load_group(a.group);
      f = lower_central_series(grp);
    } else {
      auto ff = io::filtration_from_json(io::open(io::read_file(a.filtration), "filtration"));
      grp = ff.group;
      f = ff.filtration;
    }
    Subgroup gamma = a.gamma == "trivial" ? trivial_subgroup(grp) : subgroup_closure(grp, parse_list(a.gamma));
    const int l = lmax_or(f.degree() + 1);
    prov["filtration"] = a.filtration;
    prov["gamma"] = gamma.elements();
    prov["lmax"] = l;
    emit(io::envelope("cubespace", io::to_json(hk_nilspace(grp, f, gamma, l)), prov));
    return 0;
  }
  if (a.what == "ds") {
    auto ab = abelian_invariants(load_group(a.abelian));
    const int l = lmax_or(a.degree + 2);
    prov["degree"] = a.degree;
    prov["lmax"] = l;
    prov["invariants"] = ab.invariants();
    emit(io::envelope("cubespace", io::to_json(standard_nilspace(ab, a.degree, l)), prov));
    return 0;
  }
  if (a.what == "dynamical") {
    auto act = io::action_from_json(io::open(io::read_file(a.action), "action"));
    const int l = lmax_or(2);
    prov["lmax"] = l;
    emit(io::envelope("cubespace", io::to_json(dynamical_cubespace(act, l)), prov));
    return 0;
  }
  throw InputError("cli.BadBuild", "unknown construction '" + a.what + "'");
}

// ---- verify ----

struct VerifyArgs {
  std::string file, replay;
  bool nilspace = false, weak = false;
  int degree = -1, glueing = -1, fibration = -1;
};

int cmd_verify(const VerifyArgs& a) {
  const Json subject = io::read_file(a.file);
  if (!a.replay.empty()) {
    auto r = io::replay_certificate(io::read_file(a.replay), subject);
    emit({{"subject_matches", r.subject_matches},
          {"failures", r.failures},
          {"reproduced", r.reproduced},
          {"unsupported", r.unsupported},
          {"passed", r.passed()}});
    return r.passed() ? 0 : 1;
  }
  std::vector<Verdict> vs;
  Json summary = Json::object();
  if (io::kind_of(subject) == "map") {
    auto f = io::map_from_json(io::open(subject, "map"));
    vs.push_back(check_morphism(f));
    if (a.fibration >= 0) vs.push_back(check_fibration(f, a.fibration));
  } else {
    const auto x = io::cubespace_from_json(io::open(subject, "cubespace"));
    const bool nil = a.nilspace || (!a.weak && a.glueing < 0);
    std::optional<int> degree;
    if (nil || (a.weak && a.degree < 0)) {
      auto cert = nilspace_degree(x);
      // uniqueness failing below the degree is how the degree is found, not a defect
      Json scan = Json::array();
      for (const auto& v : cert.verdicts) {
        if (cert.is_nilspace && v.check == "uniqueness")
          scan.push_back(io::to_json(v));
        else
          vs.push_back(v);
      }
      if (!scan.empty()) summary["degree_scan"] = std::move(scan);
      summary["is_nilspace"] = cert.is_nilspace;
      summary["ergodic_level"] = cert.ergodic_level;
      summary["lmax_checked"] = cert.lmax_checked;
      if (!cert.reason.empty()) summary["reason"] = cert.reason;
      degree = cert.degree;
      summary["degree"] = degree ? Json(*degree) : Json(nullptr);
      if (a.degree >= 0 && nil && degree != a.degree) {
        Verdict v = Verdict::fail("degree", a.degree, "computed degree differs", Witness{});
        v.witness.reset();
        vs.push_back(v);
      }
    }
    if (a.weak) {
      const int s = a.degree >= 0 ? a.degree : degree.value_or(-1);
      if (s < 1) throw InputError("cli.NoDegree", "weak structure needs a degree >= 1");
      auto sg = structure_group(x, s);
      auto w = verify_weak_structure(x, sg);
      vs.push_back(w.item1);
      vs.insert(vs.end(), w.item2.begin(), w.item2.end());
      vs.push_back(w.replacement);
      summary["structure_group"] = structure_json(sg);
      summary["item2_sampled"] = w.sampled;
    }
    if (a.glueing >= 0) vs.push_back(check_glueing(x, a.glueing));
  }
  const Json cert = io::certificate(subject, vs, summary);
  emit(cert);
  return io::open(cert, "certificate")["passed"].get<bool>() ? 0 : 1;
}

// ---- factor ----

int cmd_factor(const std::string& file, bool tower, int sg) {
  auto x = load_space(file);
  Json report = Json::object();
  if (tower) {
    auto t = canonical_tower(x);
    const fs::path dir = out_dir();
    Json levels = Json::array();
    for (const auto& lv : t.levels) {
      if (lv.t == 0) continue;  // pi_0 is a point
      const std::string stem = "level-" + std::to_string(lv.t);
      io::write_file((dir / (stem + ".cubespace.json")).string(), io::document(*lv.space));
      io::write_file((dir / (stem + ".map.json")).string(), io::document(lv.projection));
      levels.push_back({{"t", lv.t}, {"points", lv.space->points()}, {"files", stem}});
    }
    bool ok = true;
    for (const auto& v : t.fibration_checks) ok = ok && v.passed;
    report["degree"] = t.degree;
    report["levels"] = std::move(levels);
    report["fibrations"] = verdicts_json(t.fibration_checks);
    std::cout << io::dump(report);
    return ok ? 0 : 1;
  }
  if (sg < 1) throw InputError("cli.BadFactor", "factor needs --tower or --structure-group S");
  // A_t lives on pi_t(X)
  const auto levels = canonical_tower(x);
  if (sg > levels.degree) throw InputError("cli.BadFactor", "structure group above the degree");
  auto a = structure_group_at(levels, sg);
  report = structure_json(a);
  std::cout << io::dump(report);
  return a.free.passed && a.orbits.passed ? 0 : 1;
}

// ---- fibration ----

int cmd_fibration(const std::string& file, int s) {
  auto f = io::map_from_json(io::open(io::read_file(file), "map"));
  if (s < 0) s = std::max(require_degree(*f.source), require_degree(*f.target));
  if (s < 1) s = 1;
  auto c = classify(f, s);
  auto d = decompose(f, s);
  Json report = {{"kind", to_string(c.kind)},
                 {"classification", classification_json(c)},
                 {"decomposition",
                  {{"middle_points", d.middle->points()},
                   {"classes", io::to_json(d.relation)},
                   {"vertical", classification_json(d.vertical_class)},
                   {"horizontal", classification_json(d.horizontal_class)},
                   {"composes", d.composes}}}};
  if (!g.out.empty()) {
    const fs::path dir = out_dir();
    io::write_file((dir / "middle.cubespace.json").string(), io::document(*d.middle));
    io::write_file((dir / "vertical.map.json").string(), io::document(d.vertical));
    io::write_file((dir / "horizontal.map.json").string(), io::document(d.horizontal));
  }
  std::cout << to_string(c.kind) << "\n" << io::dump(report);
  return c.consistent && d.composes ? 0 : 1;
}

// ---- cocycle ----

int cmd_cocycle(const std::string& map_file, const std::string& rho_file) {
  auto phi = io::map_from_json(io::open(io::read_file(map_file), "map"));
  auto rho = io::cocycle_from_json(io::open(io::read_file(rho_file), "cocycle"));
  auto sol = solve_functional(phi, rho);
  Json factors = Json::array();
  for (auto [p, e] : sol.raw.count_factors) factors.push_back({p, e});
  Json report = {{"feasible", sol.feasible}, {"count_factors", factors}};
  if (!sol.feasible) {
    report["infeasible"] = true;
    if (sol.raw.witness) {
      Json combo = Json::array();
      for (auto [row, coef] : sol.raw.witness->combination) combo.push_back({row, coef});
      report["witness"] = {{"coordinate", sol.raw.witness->coordinate},
                           {"modulus", sol.raw.witness->modulus},
                           {"combination", combo},
                           {"value", sol.raw.witness->value}};
    }
    std::cout << io::dump(report);
    return 1;
  }
  report["log2_count"] = sol.raw.log2_count();
  report["round_trip"] = sol.round_trip;
  report["rho_tilde_cocycle"] = io::to_json(sol.rho_tilde_cocycle);
  if (!g.out.empty()) {
    const fs::path dir = out_dir();
    io::write_file((dir / "f.function.json").string(), io::document(sol.f));
    io::write_file((dir / "rho_tilde.cocycle.json").string(), io::document(*sol.rho_tilde));
  }
  std::cout << io::dump(report);
  return sol.round_trip ? 0 : 1;
}

// ---- translations ----

int cmd_translations(const std::string& file, int level) {
  auto x = load_space(file);
  Json report = Json::object();
  if (level > 0) {
    auto t = translation_group(*x, level);
    report = {{"level", level}, {"order", t.group.order()}, {"elements", t.elements}};
    std::cout << io::dump(report);
    return 0;
  }
  auto f = translation_filtration(*x);
  Json levels = Json::array();
  for (const auto& t : f.levels) levels.push_back({{"level", t.level}, {"order", t.group.order()}});
  report = {{"levels", levels}, {"nesting", io::to_json(f.nesting)}, {"commutators", io::to_json(f.commutators)}};
  std::cout << io::dump(report);
  return f.nesting.passed && f.commutators.passed ? 0 : 1;
}

// ---- rp ----

int cmd_rp(const std::string& file, int s) {
  auto act = io::action_from_json(io::open(io::read_file(file), "action"));
  DynamicalSystem sys(act, lmax_or(s + 1));
  Json parts = Json::array();
  bool ok = true;
  std::optional<RpQuotient> single;
  for (auto& part : rp_quotient_components(sys, s)) {
    const auto& q = part.quotient;
    ok = ok && q.degree.passed && q.translations.passed;
    parts.push_back({{"orbit", part.orbit},
                     {"relation", io::to_json(*q.rp.relation)},
                     {"quotient_points", q.space->points()},
                     {"degree", q.certificate.degree ? Json(*q.certificate.degree) : Json(nullptr)},
                     {"checks", verdicts_json({q.rp.equivalence, q.degree, q.ergodic, q.translations})}});
    if (act.transitive()) single = q;
  }
  if (!g.out.empty() && single) emit(io::document(*single->rp.relation));
  std::cout << io::dump(Json{{"s", s}, {"minimal", sys.minimal()}, {"components", parts}});
  return ok ? 0 : 1;
}

// ---- corpus ----

int cmd_corpus() {
  const fs::path dir = out_dir();
  auto put = [&](const std::string& name, const Json& doc) { io::write_file((dir / name).string(), doc); };
  std::mt19937_64 rng(g.seed);
  const std::vector<std::pair<std::string, std::vector<std::uint32_t>>> abelian = {
      {"z2", {2}}, {"z3", {3}}, {"z4", {4}}, {"z2xz2", {2, 2}}};
  for (const auto& [name, inv] : abelian) {
    auto a = abelian_product(inv);
    put(name + ".group.json", io::document(a.group()));
    for (int s = 1; s <= 2; ++s)
      put("d" + std::to_string(s) + name + ".cubespace.json", io::document(standard_nilspace(a, s, s + 2)));
  }
  auto d4 = dihedral_group(4);
  put("d4.group.json", io::document(d4));
  put("hk-d4.cubespace.json", io::document(hk_nilspace(d4, lower_central_series(d4), trivial_subgroup(d4), 3)));
  auto z4 = cyclic_group(4);
  auto f = validate_filtration(z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
  put("z4deg2.filtration.json", io::document(z4, f));
  auto hk = share(hk_nilspace(z4, f, trivial_subgroup(z4), 3));
  put("hk-z4deg2.cubespace.json", io::document(*hk));
  auto d1z2 = share(standard_nilspace(abelian_product({2}), 1, 3));
  put("mod2.map.json", io::document(CubespaceMap(hk, d1z2, {0, 1, 0, 1})));
  put("to-point.map.json", io::document(CubespaceMap(hk, share(point_cubespace(3)), {0, 0, 0, 0})));
  put("z6-rotation.action.json", io::document(left_translation(cyclic_group(6))));
  put("a5-left.action.json", io::document(left_translation(alternating_group(5))));
  put("d4-on-4.action.json", io::document(coset_action(d4, subgroup_closure(d4, std::vector<Element>{2}))));
  // seeded coboundary on HK(Z/4, deg 2) with values in Z/4
  auto a4 = abelian_invariants(z4);
  std::vector<Element> vals(hk->points());
  for (auto& v : vals) v = static_cast<Element>(rng() % a4.order());
  put("rho.cocycle.json", io::document(derivative(GroupValuedFunction(hk, a4, vals), 2)));
  // seeded corruption: D_2(Z/2) without one 2-cube
  auto d2 = standard_nilspace(abelian_product({2}), 2, 4);
  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= d2.lmax(); ++l) cubes.push_back(d2.cubes(l).codes());
  cubes[2].erase(cubes[2].begin() + static_cast<std::ptrdiff_t>(1 + rng() % (cubes[2].size() - 2)));
  put("broken.cubespace.json", io::document(FiniteCubespace(d2.points(), cubes)));
  std::cout << io::dump(Json{{"directory", dir.string()}, {"seed", g.seed}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite nilspace toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--lmax", g.lmax, "largest cube dimension");
  app.add_option("--guard", g.guard, "enumeration size guard");
  app.add_option("--out", g.out, "output file or directory");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json"}));
  app.add_option("--seed", g.seed, "seed for generated examples");
  app.add_option("--config", g.config, "JSON config file")->check(CLI::ExistingFile);

  BuildArgs b;
  auto* build = app.add_subcommand("build", "construct a group, filtration, action or cubespace");
  build->add_option("what", b.what, "group | filtration | action | hk | ds | dynamical")->required();
  build->add_option("--group", b.group);
  build->add_option("--filtration", b.filtration, "lcs, abelian, or a filtration file (hk)");
  build->add_option("--gamma", b.gamma, "trivial or comma separated generators");
  build->add_option("--abelian", b.abelian, "abelian group file");
  build->add_option("--degree", b.degree);
  build->add_option("--action", b.action);
  build->add_option("--subgroup", b.subgroup, "coset action: comma separated generators");
  build->add_option("--cyclic", b.cyclic);
  build->add_option("--dihedral", b.dihedral);
  build->add_option("--symmetric", b.symmetric);
  build->add_option("--alternating", b.alternating);
  build->add_option("--product", b.product, "comma separated cyclic orders");

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "check axioms and write a certificate");
  verify->add_option("file", v.file)->required()->check(CLI::ExistingFile);
  verify->add_flag("--nilspace", v.nilspace);
  verify->add_flag("--weak-structure", v.weak);
  verify->add_option("--degree", v.degree);
  verify->add_option("--glueing", v.glueing);
  verify->add_option("--fibration", v.fibration, "maps: relative completion up to this dimension");
  verify->add_option("--replay", v.replay, "replay a certificate against the file")->check(CLI::ExistingFile);

  std::string factor_file;
  bool tower = false;
  int sg = -1;
  auto* factor = app.add_subcommand("factor", "canonical factors and structure groups");
  factor->add_option("file", factor_file)->required()->check(CLI::ExistingFile);
  factor->add_flag("--tower", tower);
  factor->add_option("--structure-group", sg);

  std::string fib_file;
  int fib_s = -1;
  auto* fibration = app.add_subcommand("fibration", "classify and decompose a fibration");
  fibration->add_option("--classify", fib_file)->required()->check(CLI::ExistingFile);
  fibration->add_option("--degree", fib_s);

  std::vector<std::string> solve;
  auto* cocycle = app.add_subcommand("cocycle", "solve rho = d f + rho~ o phi");
  cocycle->add_option("--solve", solve, "MAP COCYCLE")->expected(2)->required()->check(CLI::ExistingFile);

  std::string tr_file;
  int tr_level = 0;
  auto* translations = app.add_subcommand("translations", "brute-force translation groups");
  translations->add_option("file", tr_file)->required()->check(CLI::ExistingFile);
  translations->add_option("--level", tr_level);

  std::string rp_file;
  int rp_s = 1;
  auto* rp = app.add_subcommand("rp", "regionally proximal relation of an action");
  rp->add_option("file", rp_file)->required()->check(CLI::ExistingFile);
  rp->add_option("--degree", rp_s);

  auto* corpus = app.add_subcommand("corpus", "write the standard instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    apply_settings(app);
    if (*build) return cmd_build(b);
    if (*verify) return cmd_verify(v);
    if (*factor) return cmd_factor(factor_file, tower, sg);
    if (*fibration) return cmd_fibration(fib_file, fib_s);
    if (*cocycle) return cmd_cocycle(solve[0], solve[1]);
    if (*translations) return cmd_translations(tr_file, tr_level);
    if (*rp) return cmd_rp(rp_file, rp_s);
    if (*corpus) return cmd_corpus();
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
