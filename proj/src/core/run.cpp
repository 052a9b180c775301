#include "core/run.hpp"

#include <algorithm>
#include <sstream>

#include "core/characters.hpp"
#include "core/envelopes.hpp"
#include "core/factor.hpp"
#include "core/fixtures.hpp"

namespace modind {

namespace {

struct Flags {
  std::map<std::string, std::string> kv;
  std::vector<std::string> positional;

  std::string get(const std::string& k, const std::string& dflt = "") const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  bool has(const std::string& k) const { return kv.count(k) > 0; }
};

Flags parse_flags(const std::vector<std::string>& args) {
  Flags f;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].rfind("--", 0) == 0) {
      const std::string key = args[i].substr(2);
      if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
        f.kv[key] = args[++i];
      } else {
        f.kv[key] = "1";
      }
    } else {
      f.positional.push_back(args[i]);
    }
  }
  return f;
}

std::string coeff_label(const FieldElement& c, const std::string& label) {
  if (c.is_one()) return label;
  const std::string cs = c.str();
  const bool wrap = cs.find_first_of("+-/ ") != std::string::npos;
  return (wrap ? "(" + cs + ")" : cs) + "*" + label;
}

std::string format_lincomb(const Vec& v, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += coeff_label(v[i], labels[i]);
  }
  return out.empty() ? "0" : out;
}

std::string action_table(const Representation& rep) {
  std::ostringstream os;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rep.dim; ++i) labels.push_back(rep.label(i));
  for (std::size_t g = 0; g < rep.action.size(); ++g) {
    for (std::size_t j = 0; j < rep.dim; ++j)
      os << rep.algebra->names()[g] << "·" << labels[j] << " = "
         << format_lincomb(rep.action[g].col(j), labels) << "\n";
  }
  return os.str();
}

Json matrix_to_json(const Matrix& m) {
  Json cols = Json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Json col = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) col.push_back(m.at(i, j).str());
    cols.push_back(col);
  }
  return cols;
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

struct CheckList {
  std::ostringstream& os;
  int failures = 0;
  void check(bool ok, const std::string& what) {
    os << (ok ? "  [ok] " : "  [FAIL] ") << what << "\n";
    if (!ok) ++failures;
  }
};

// ---------------------------------------------------------------------------
// induce plumbing shared by several subcommands
// ---------------------------------------------------------------------------

struct InduceInputs {
  LiePtr l;
  std::string algebra_name;
  SubalgebraSpec s;
  Representation w;
  std::vector<Polynomial> f1;
  std::optional<std::vector<Polynomial>> f2;
  std::string labels = "m";
};

InduceInputs resolve_induce(const Workspace& ws, const Flags& flags) {
  Json task = ws.tasks.contains("induce") ? ws.tasks.at("induce")
                                          : Json::object();
  auto pick = [&](const std::string& key) -> std::string {
    if (flags.has(key)) return flags.get(key);
    if (task.contains(key)) return task.at(key).get<std::string>();
    throw doc_error(Diagnostic{"tasks.induce", "missing '" + key + "'"});
  };
  InduceInputs in;
  in.algebra_name = pick("algebra");
  auto ait = ws.algebras.find(in.algebra_name);
  if (ait == ws.algebras.end())
    throw doc_error(Diagnostic{"tasks.induce", "unknown algebra"});
  in.l = ait->second;
  auto sit = ws.subalgebras.find(pick("subalgebra"));
  if (sit == ws.subalgebras.end())
    throw doc_error(Diagnostic{"tasks.induce", "unknown subalgebra"});
  in.s = sit->second.spec;
  auto mit = ws.modules.find(pick("module"));
  if (mit == ws.modules.end())
    throw doc_error(Diagnostic{"tasks.induce", "unknown module"});
  in.w = mit->second.rep;

  const std::string fname = pick("f");
  auto fit = ws.ffamilies.find(fname);
  if (fit == ws.ffamilies.end())
    throw doc_error(Diagnostic{"tasks.induce", "unknown f-family"});
  // complement names: the adapted order is (complement..., subalgebra...)
  AdaptedBasis ab = adapt_basis(in.l, in.s);
  for (std::size_t i = 0; i < ab.n1; ++i) {
    const std::string& nm = ab.adapted->names()[i];
    auto pit = fit->second.find(nm);
    if (pit == fit->second.end())
      throw doc_error(Diagnostic{"ffamilies." + fname,
                                 "no polynomial for complement generator '" +
                                     nm + "'"});
    in.f1.push_back(pit->second);
  }
  // subalgebra polynomials are optional: present entries override the
  // minimal-polynomial choice
  std::vector<Polynomial> f2;
  bool have_all = true;
  for (std::size_t k = 0; k < ab.n2(); ++k) {
    const std::string& nm = ab.adapted->names()[ab.n1 + k];
    auto pit = fit->second.find(nm);
    if (pit == fit->second.end()) {
      have_all = false;
      break;
    }
    f2.push_back(pit->second);
  }
  if (have_all && !f2.empty()) in.f2 = std::move(f2);
  if (task.contains("labels")) in.labels = task.at("labels").get<std::string>();
  if (flags.has("labels")) in.labels = flags.get("labels");
  return in;
}

Report run_induce(const Workspace& ws, const Flags& flags,
                  unsigned long long seed) {
  (void)seed;
  Report rep;
  InduceInputs in = resolve_induce(ws, flags);
  InducedModule im = induce(in.l, in.s, in.w, in.f1, in.f2, in.labels);
  std::ostringstream os;
  os << "induced module: dim " << im.dim() << " = " << im.w.dim;
  for (std::size_t i = 0; i < im.adapted.n1; ++i)
    os << " * " << im.reduced->bound(i);
  os << "\n\nrelations in the reduced enveloping algebra:\n";
  Json relations = Json::array();
  for (std::size_t i = 0; i < im.adapted.dim(); ++i) {
    const std::string lhs = im.adapted.adapted->names()[i] + "^" +
                            std::to_string(im.reduced->bound(i));
    const std::string rhs =
        im.reduced->overflow_rhs(i).str(im.adapted.adapted->names());
    os << "  " << lhs << " = " << rhs << "\n";
    relations.push_back(lhs + " = " + rhs);
  }
  for (const auto& w : im.reduced->warnings()) os << "  note: " << w << "\n";
  os << "\naction:\n" << action_table(im.rep_original);

  rep.data["schema"] = "modind-report/1";
  rep.data["subcommand"] = "induce";
  rep.data["dim"] = im.dim();
  rep.data["relations"] = relations;
  rep.data["unit"] = matrix_to_json(im.unit);
  Json doc;
  doc["schema"] = "modind/1";
  doc["fields"]["F"] = field_to_json(in.l->field());
  doc["algebras"][in.algebra_name] = algebra_to_json(in.l, "F");
  doc["modules"]["induced"] =
      module_to_json(im.rep_original, in.algebra_name);
  rep.data["module_document"] = doc;
  rep.text = os.str();
  return rep;
}

std::string tower_name(const FieldPtr& f) { return f->describe(); }

Report run_cluster(const Workspace& ws, const Flags& flags,
                   unsigned long long seed) {
  Report rep;
  std::ostringstream os;
  Json task = ws.tasks.contains("cluster") ? ws.tasks.at("cluster")
                                           : Json::object();
  std::string target = flags.get("target");
  if (target.empty() && task.contains("target"))
    target = task.at("target").get<std::string>();
  if (target.empty()) target = "@induce";

  Representation v;
  if (target == "@induce") {
    InduceInputs in = resolve_induce(ws, flags);
    InducedModule im = induce(in.l, in.s, in.w, in.f1, in.f2, in.labels);
    v = im.rep_original;
  } else {
    auto mit = ws.modules.find(target);
    if (mit == ws.modules.end())
      throw doc_error(Diagnostic{"tasks.cluster", "unknown module"});
    v = mit->second.rep;
  }

  Cluster cl = cluster_of(v, seed);
  os << "cluster of the module (" << cl.size() << " characters):\n";
  Json chars = Json::array();
  for (std::size_t i = 0; i < cl.chars.size(); ++i) {
    const Character& c = cl.chars[i];
    os << "  c" << (i + 1) << ": " << c.str(v.algebra->names()) << "   [tower "
       << tower_name(c.tower) << "]\n";
    Json cj;
    cj["values"] = Json::array();
    for (const auto& val : c.values) cj["values"].push_back(val.str());
    cj["tower"] = tower_name(c.tower);
    chars.push_back(cj);
  }

  auto comps = cluster_decompose(v, seed);
  os << "\ncluster decomposition: " << comps.size() << " component(s)\n";
  Json jcomps = Json::array();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < v.dim; ++i) labels.push_back(v.label(i));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    os << "  component " << (i + 1) << ": dim " << comps[i].basis.size()
       << ", cluster {";
    for (std::size_t k = 0; k < comps[i].cluster.chars.size(); ++k)
      os << (k ? ", " : "")
         << comps[i].cluster.chars[k].str(v.algebra->names());
    os << "}\n";
    Json jc;
    jc["dim"] = comps[i].basis.size();
    jc["basis"] = Json::array();
    for (const auto& b : comps[i].basis) {
      os << "    " << format_lincomb(b, labels) << "\n";
      jc["basis"].push_back(vec_to_json(b));
    }
    jcomps.push_back(jc);
  }
  rep.data["schema"] = "modind-report/1";
  rep.data["subcommand"] = "cluster";
  rep.data["characters"] = chars;
  rep.data["components"] = jcomps;
  rep.text = os.str();
  return rep;
}

Report run_hom(const Workspace& ws, const Flags& flags,
               unsigned long long seed) {
  (void)seed;
  Report rep;
  Json task = ws.tasks.contains("hom") ? ws.tasks.at("hom") : Json::object();
  auto pick = [&](const std::string& key) -> std::string {
    if (flags.has(key)) return flags.get(key);
    if (task.contains(key)) return task.at(key).get<std::string>();
    throw doc_error(Diagnostic{"tasks.hom", "missing '" + key + "'"});
  };
  auto resolve = [&](const std::string& name) -> Representation {
    if (name == "@induce") {
      InduceInputs in = resolve_induce(ws, flags);
      return induce(in.l, in.s, in.w, in.f1, in.f2, in.labels).rep_original;
    }
    auto mit = ws.modules.find(name);
    if (mit == ws.modules.end())
      throw doc_error(Diagnostic{"tasks.hom", "unknown module '" + name + "'"});
    return mit->second.rep;
  };
  Representation a = resolve(pick("source"));
  Representation b = resolve(pick("target"));
  auto basis = hom_space(a, b);
  std::ostringstream os;
  os << "hom space dimension: " << basis.size() << "\n";
  Json mats = Json::array();
  for (const auto& t : basis) mats.push_back(matrix_to_json(t));
  rep.data["schema"] = "modind-report/1";
  rep.data["subcommand"] = "hom";
  rep.data["dim"] = basis.size();
  rep.data["basis"] = mats;
  rep.text = os.str();
  return rep;
}

Report run_adjoint_check(const Workspace& ws, const Flags& flags,
                         unsigned long long seed) {
  (void)seed;
  Report rep;
  std::ostringstream os;
  CheckList checks{os};
  Json task = ws.tasks.contains("adjoint") ? ws.tasks.at("adjoint")
                                           : Json::object();
  std::string vname = flags.get("target");
  if (vname.empty() && task.contains("target"))
    vname = task.at("target").get<std::string>();
  if (vname.empty())
    throw doc_error(Diagnostic{"tasks.adjoint", "missing 'target'"});
  auto mit = ws.modules.find(vname);
  if (mit == ws.modules.end())
    throw doc_error(Diagnostic{"tasks.adjoint", "unknown module"});
  Representation v = mit->second.rep;

  InduceInputs in = resolve_induce(ws, flags);
  InducedModule im = induce(in.l, in.s, in.w, in.f1, in.f2, in.labels);
  os << "induced module dim " << im.dim() << ", target '" << vname << "' dim "
     << v.dim << "\n";

  auto homS = hom_space(im.w, restrict_to(v, im.adapted.sub));
  auto homL = hom_space(im.rep_original, v);
  os << "dim hom_S(W, res V) = " << homS.size() << ", dim hom_L(ind W, V) = "
     << homL.size() << "\n";
  checks.check(homS.size() == homL.size(),
               "adjunction dimension equality");

  std::vector<std::string> vlabels;
  for (std::size_t i = 0; i < v.dim; ++i) vlabels.push_back(v.label(i));
  Json psis = Json::array();
  for (std::size_t t = 0; t < homS.size(); ++t) {
    Matrix psi = adjoint_forward(im, homS[t], v);
    checks.check(adjoint_backward(im, psi) == homS[t],
                 "unit triangle for theta_" + std::to_string(t + 1));
    os << "psi_" << (t + 1) << ":\n";
    for (std::size_t j = 0; j < im.dim(); ++j)
      os << "  psi(" << im.rep.label(j)
         << ") = " << format_lincomb(psi.col(j), vlabels) << "\n";
    os << "  kernel dimension: " << nullspace(psi).size() << "\n";
    psis.push_back(matrix_to_json(psi));
  }
  rep.data["schema"] = "modind-report/1";
  rep.data["subcommand"] = "adjoint-check";
  rep.data["hom_dim"] = homS.size();
  rep.data["psi"] = psis;
  rep.status = checks.failures == 0 ? 0 : 1;
  rep.text = os.str();
  return rep;
}

Report run_envelope(const Workspace& ws, const Flags& flags,
                    unsigned long long seed) {
  (void)seed;
  Report rep;
  std::ostringstream os;
  Json task = ws.tasks.contains("envelope") ? ws.tasks.at("envelope")
                                            : Json::object();
  std::string aname = flags.get("algebra");
  if (aname.empty() && task.contains("algebra"))
    aname = task.at("algebra").get<std::string>();
  auto ait = ws.algebras.find(aname);
  if (ait == ws.algebras.end())
    throw doc_error(Diagnostic{"tasks.envelope", "unknown algebra"});
  EnvelopeSpec env = build_envelope_adjoint(ait->second);
  ValidationReport vr = validate_envelope(env);
  os << "envelope of '" << aname << "': dim " << env.lstar->dim() << " (from "
     << ait->second->dim() << ")\n";
  os << "basis: ";
  for (std::size_t i = 0; i < env.lstar->dim(); ++i)
    os << (i ? ", " : "") << env.lstar->names()[i];
  os << "\np-map:\n";
  for (std::size_t i = 0; i < env.lstar->dim(); ++i)
    os << "  " << env.lstar->names()[i] << "^[p] = "
       << format_lincomb(env.lstar->pmap_basis(i), env.lstar->names()) << "\n";
  os << "validation: " << (vr.ok() ? "ok" : vr.str()) << "\n";
  rep.data["schema"] = "modind-report/1";
  rep.data["subcommand"] = "envelope";
  rep.data["dim"] = env.lstar->dim();
  rep.data["algebra"] = algebra_to_json(env.lstar, "F");
  rep.status = vr.ok() ? 0 : 1;
  rep.text = os.str();
  return rep;
}

Report run_validate(const Workspace& ws) {
  Report rep;
  std::ostringstream os;
  CheckList checks{os};
  for (const auto& [name, l] : ws.algebras) {
    ValidationReport r = l->validate();
    checks.check(r.ok(), "algebra '" + name + "'" + (r.ok() ? "" : ": " + r.str()));
  }
  for (const auto& [name, s] : ws.subalgebras) {
    ValidationReport r =
        validate_subalgebra(s.spec, s.spec.parent->has_pmap());
    checks.check(r.ok(),
                 "subalgebra '" + name + "'" + (r.ok() ? "" : ": " + r.str()));
  }
  for (const auto& [name, m] : ws.modules) {
    ValidationReport r = validate_rep(m.rep);
    checks.check(r.ok(), "module '" + name + "'" + (r.ok() ? "" : ": " + r.str()));
  }
  for (const auto& [name, fam] : ws.ffamilies)
    for (const auto& [gen, poly] : fam)
      checks.check(!poly.is_zero() && *poly.degree() >= 1,
                   "f-family '" + name + "." + gen + "' has degree >= 1");
  rep.status = checks.failures == 0 ? 0 : 1;
  rep.data["schema"] = "modind-report/1";
  rep.data["subcommand"] = "validate";
  rep.data["failures"] = checks.failures;
  rep.text = os.str();
  return rep;
}

// ---------------------------------------------------------------------------
// demos
// ---------------------------------------------------------------------------

Report demo_ex32(const Flags& flags, unsigned long long seed) {
  Report rep;
  std::ostringstream os;
  CheckList checks{os};
  auto F = Field::prime(3);
  const long long alpha = std::stoll(flags.get("alpha", "1"));
  const long long beta = std::stoll(flags.get("beta", "1"));
  auto L = fixtures::xy_algebra(F);
  auto S = fixtures::span_x(L);
  auto W = fixtures::w_rotation(subalgebra_as_algebra(S));
  std::vector<Polynomial> f1{
      fixtures::f_y_poly(F, F->from_int(alpha), F->from_int(beta))};
  InducedModule im = induce(L, S, W, f1);
  os << "alpha = " << alpha << ", beta = " << beta << "\n";
  os << "dim = " << im.dim() << "\n";
  os << action_table(im.rep_original);
  checks.check(im.dim() == 12, "dimension formula");
  checks.check(validate_rep(im.rep).ok(), "induced action is a representation");

  auto V = fixtures::v_module(L, F->from_int(alpha), F->from_int(beta));
  Matrix theta(F, 6, 2);
  theta.set(0, 0, F->one());
  theta.set(1, 1, F->one());
  Matrix omega = adjoint_forward(im, theta, V);
  std::vector<std::string> vlabels;
  for (std::size_t i = 0; i < 6; ++i) vlabels.push_back(V.label(i));
  os << "omega:\n";
  for (std::size_t j = 0; j < 12; ++j)
    os << "  omega(" << im.rep.label(j)
       << ") = " << format_lincomb(omega.col(j), vlabels) << "\n";
  checks.check(nullspace(omega).size() == 6, "ker(omega) is six-dimensional");
  checks.check(adjoint_backward(im, omega) == theta, "unit triangle");

  Cluster cl = cluster_of(im.rep_original, seed);
  os << "cluster size: " << cl.size() << "\n";
  checks.check(cl.size() == (beta % 3 == 0 ? 2u : 4u), "cluster size");
  auto comps = cluster_decompose(im.rep_original, seed);
  os << "components:";
  for (const auto& c : comps) os << " " << c.basis.size();
  os << "\n";
  rep.status = checks.failures == 0 ? 0 : 1;
  rep.data["schema"] = "modind-report/1";
  rep.data["subcommand"] = "demo";
  rep.data["name"] = "ex32";
  rep.data["cluster_size"] = cl.size();
  rep.text = os.str();
  return rep;
}

Report demo_ex31(const Flags& flags) {
  Report rep;
  std::ostringstream os;
  CheckList checks{os};
  auto F = Field::prime(3);
  const long long alpha = std::stoll(flags.get("alpha", "1"));
  const long long beta = std::stoll(flags.get("beta", "1"));
  auto L = fixtures::xy_algebra(F);
  auto V = fixtures::v_module(L, F->from_int(alpha), F->from_int(beta));
  checks.check(L->validate().ok(), "algebra axioms");
  checks.check(validate_rep(V).ok(), "the six-dimensional action table");
  os << action_table(V);
  rep.status = checks.failures == 0 ? 0 : 1;
  rep.data["schema"] = "modind-report/1";
  rep.data["name"] = "ex31";
  rep.text = os.str();
  return rep;
}

Report demo_s3y(const Flags& flags, unsigned long long seed) {
  (void)seed;
  Report rep;
  std::ostringstream os;
  CheckList checks{os};
  auto F = Field::prime(3);
  const long long alpha = std::stoll(flags.get("alpha", "1"));
  auto L = fixtures::xy_algebra(F);
  auto S = fixtures::span_y(L);
  auto W = fixtures::w_line(subalgebra_as_algebra(S));
  std::vector<Polynomial> f1{fixtures::f_x_poly(F)};
  InducedModule im = induce(L, S, W, f1, std::nullopt, "u");
  os << "dim = " << im.dim() << "\n";
  // the defining relation for x^6, computed by expanding f_x(z_x) = 0
  const std::string relation =
      "x^6 = " + im.reduced->overflow_rhs(0).str(im.adapted.adapted->names());
  os << "computed relation: " << relation << "\n";
  PBWElement expect = PBWElement::monomial(F, {4, 0}, F->from_int(2)) +
                      PBWElement::monomial(F, {2, 0}, F->from_int(-1)) +
                      PBWElement::monomial(F, {0, 0}, F->from_int(-1));
  checks.check(im.reduced->overflow_rhs(0) == expect,
               "x^6 = 2x^4 - x^2 - 1, derived from (x^3 - x)^2 + 1 = 0");
  os << action_table(im.rep_original);

  auto V = fixtures::v_module(L, F->from_int(alpha), F->zero());
  // theta: w -> v_1^0 + v_1^1 + v_1^2
  Matrix theta(F, 6, 1);
  theta.set(0, 0, F->one());
  theta.set(2, 0, F->one());
  theta.set(4, 0, F->one());
  Matrix psi = adjoint_forward(im, theta, V);
  checks.check(rank(psi) == 6, "psi: ind(W,f) -> V is an isomorphism");
  rep.status = checks.failures == 0 ? 0 : 1;
  rep.data["schema"] = "modind-report/1";
  rep.data["name"] = "s3y";
  rep.data["relation"] = relation;
  rep.text = os.str();
  return rep;
}

Report demo_f3tau(const Flags& flags, unsigned long long seed) {
  (void)flags;
  Report rep;
  std::ostringstream os;
  CheckList checks{os};
  auto F = Field::rational_function(Field::prime(3), "tau");
  auto L = fixtures::xy_algebra(F);
  auto S = fixtures::span_y(L);
  auto W = fixtures::w_line(subalgebra_as_algebra(S));
  std::vector<Polynomial> f1{Polynomial::from_coeffs(
      F, {-F->generator(), F->zero(), F->zero(), F->one()})};
  InducedModule im = induce(L, S, W, f1, std::nullopt, "v");
  os << "dim = " << im.dim() << "\n";
  os << "computed relation: x^9 = "
     << im.reduced->overflow_rhs(0).str(im.adapted.adapted->names()) << "\n";
  os << action_table(im.rep_original);
  checks.check(im.dim() == 9, "dimension 9");
  auto irr = is_irreducible(im.rep_original, seed);
  checks.check(irr.irreducible, "V is irreducible (" + irr.certificate + ")");
  Cluster cl = cluster_of(im.rep_original, seed);
  checks.check(cl.size() == 1, "a single character");
  if (cl.size() == 1) {
    os << "character: " << cl.chars[0].str(L->names()) << "   [tower "
       << tower_name(cl.chars[0].tower) << "]\n";
  }
  rep.status = checks.failures == 0 ? 0 : 1;
  rep.data["schema"] = "modind-report/1";
  rep.data["name"] = "f3tau";
  rep.text = os.str();
  return rep;
}

Report demo_ex42(const Flags& flags, unsigned long long seed) {
  (void)flags;
  Report rep;
  std::ostringstream os;
  CheckList checks{os};
  auto F3 = Field::prime(3);
  auto F = Field::extension(F3, Polynomial::from_ints(F3, {1, 0, 1}), "i");
  FieldElement lambda = F->generator();
  os << "p = 3, lambda = " << lambda.str() << " (not in the prime field)\n";

  auto L = fixtures::xab_algebra(F, lambda);
  EnvelopeSpec env0 = build_envelope_adjoint(L);
  checks.check(env0.lstar->dim() == 4, "envelope has dimension 4");

  // present the envelope on the basis (x, a, b, d)
  const FieldElement unit_shift = (lambda.pow(3) - lambda).inv();
  Vec d = scale(sub(env0.lstar->pmap_basis(0), unit_vec(F, 4, 0)), unit_shift);
  Matrix cols(F, 4, 4);
  for (std::size_t i = 0; i < 3; ++i) cols.set(i, i, F->one());
  for (std::size_t i = 0; i < 4; ++i) cols.set(i, 3, d[i]);
  LiePtr lstar = env0.lstar->transform_basis(cols, {"x", "a", "b", "d"});
  EnvelopeSpec env;
  env.l = L;
  env.lstar = lstar;
  env.embed = Matrix(F, 4, 3);
  for (std::size_t i = 0; i < 3; ++i) env.embed.set(i, i, F->one());
  checks.check(validate_envelope(env).ok(), "envelope validation");
  Vec xp = lstar->pmap_basis(0);
  Vec expect_xp = unit_vec(F, 4, 0);
  expect_xp[3] = lambda.pow(3) - lambda;
  checks.check(eq_vec(xp, expect_xp),
               "x^[p] = x + (lambda^p - lambda) d, so L* matches <d, L>");
  checks.check(eq_vec(lstar->bracket(unit_vec(F, 4, 3), unit_vec(F, 4, 2)),
                      unit_vec(F, 4, 2)),
               "[d, b] = b");

  // S = <a>, W = <w0> with a w0 = w0
  SubalgebraSpec s{L, {unit_vec(F, 3, 1)}, {"a"}};
  SubalgebraSpec s_star{lstar, {unit_vec(F, 4, 1)}, {"a"}};
  auto pc = p_closure_of_subalgebra(s_star);
  checks.check(pc.closed.basis.size() == 1, "S^[p] = S");
  Representation W;
  W.algebra = subalgebra_as_algebra(pc.closed).algebra;
  W.dim = 1;
  W.field = F;
  Matrix act(F, 1, 1);
  act.set(0, 0, F->one());
  W.action.push_back(act);
  W.labels = {"w0"};

  // two admissible extensions: sigma = mu + nu takes the values 1 and 2,
  // both with eta = sigma^3 - sigma = 0; eps_k = -(lambda^3-lambda) sigma_k
  const FieldElement sig1 = F->one();
  const FieldElement sig2 = F->from_int(2);
  const FieldElement shift = lambda.pow(3) - lambda;
  const FieldElement eps1 = -shift * sig1;
  const FieldElement eps2 = -shift * sig2;
  auto lin = [&](const FieldElement& r) {
    return Polynomial::from_coeffs(F, {-r, F->one()});
  };
  // adapted order of L* over S: (x, b, d; a)
  std::vector<Polynomial> f1{lin(eps1) * lin(eps2), lin(F->one()),
                             Polynomial::variable(F)};
  TFunctorResult t = t_functor(env, s, W, f1);
  os << "dim T(W) = " << t.star.dim() << "\n";

  auto V = fixtures::hk_module(L, lambda);
  Matrix theta(F, 9, 1);
  for (int i = 0; i < 3; ++i) theta.set(3 * i, 0, F->one());

  auto vstar_with = [&](const FieldElement& mu, const FieldElement& nu) {
    Representation vs;
    vs.algebra = lstar;
    vs.dim = V.dim;
    vs.field = F;
    vs.labels = V.labels;
    vs.action = V.action;
    vs.action.push_back(fixtures::hk_d_action(F, mu, nu));
    return vs;
  };
  Representation v1 = vstar_with(F->zero(), sig1);  // (mu, nu) = (0, 1)
  Representation v2 = vstar_with(F->zero(), sig2);  // (mu, nu) = (0, 2)
  checks.check(validate_rep(v1).ok() && validate_rep(v2).ok(),
               "both extensions are L*-modules");

  Matrix psi1 = lemma_psi(t, theta, v1);
  Matrix psi2 = lemma_psi(t, theta, v2);
  checks.check(eq_vec(psi1.apply(t.star.unit.col(0)), theta.col(0)),
               "psi_1(1 (x) w0) = theta(w0)");
  checks.check(eq_vec(psi2.apply(t.star.unit.col(0)), theta.col(0)),
               "psi_2(1 (x) w0) = theta(w0)");
  checks.check(psi1 != psi2, "psi_1 and psi_2 differ as matrices");
  Matrix diff = psi1 - psi2;
  os << "psi_1 columns (nonzero):\n";
  std::vector<std::string> vlabels = V.labels;
  for (std::size_t j = 0; j < t.star.dim(); ++j) {
    if (is_zero_vec(psi1.col(j)) && is_zero_vec(psi2.col(j))) continue;
    os << "  psi_1(" << t.star.rep.label(j)
       << ") = " << format_lincomb(psi1.col(j), vlabels) << " | psi_2(...) = "
       << format_lincomb(psi2.col(j), vlabels) << "\n";
  }
  os << "difference is " << (diff.is_zero() ? "zero" : "nonzero") << "\n";

  TrueInduced ti = true_induce(t);
  os << "dim of the submodule generated by 1 (x) w0: " << ti.basis.size()
     << "\n";
  checks.check(ti.basis.size() <= t.star.dim(), "submodule inside T(W)");
  Matrix r1 = restrict_map_to(ti, psi1);
  Matrix r2 = restrict_map_to(ti, psi2);
  checks.check(r1 == r2, "psi_1 and psi_2 agree on the generated submodule");

  auto homS = hom_space(W, restrict_to(V, subalgebra_as_algebra(s)));
  auto homL = hom_space(ti.rep, V);
  os << "dim hom_S(W, res V) = " << homS.size() << ", dim hom_L(ind W, V) = "
     << homL.size() << "\n";
  checks.check(homS.size() == homL.size(),
               "adjunction dimension equality on the repaired adjoint");

  rep.status = checks.failures == 0 ? 0 : 1;
  rep.data["schema"] = "modind-report/1";
  rep.data["name"] = "ex42";
  rep.data["dim_T"] = t.star.dim();
  rep.data["dim_ind"] = ti.basis.size();
  rep.data["psi1"] = matrix_to_json(psi1);
  rep.data["psi2"] = matrix_to_json(psi2);
  rep.data["psi_difference"] = matrix_to_json(diff);
  rep.text = os.str();
  (void)seed;
  return rep;
}

Report run_demo(const Flags& flags, unsigned long long seed) {
  if (flags.positional.empty())
    throw doc_error(Diagnostic{
        "demo", "expected a demo name: ex31, ex32, s3y, f3tau, ex42"});
  const std::string& name = flags.positional[0];
  if (name == "ex31") return demo_ex31(flags);
  if (name == "ex32") return demo_ex32(flags, seed);
  if (name == "s3y") return demo_s3y(flags, seed);
  if (name == "f3tau") return demo_f3tau(flags, seed);
  if (name == "ex42") return demo_ex42(flags, seed);
  throw doc_error(Diagnostic{"demo", "unknown demo '" + name + "'"});
}

}  // namespace

const std::vector<std::string>& known_subcommands() {
  static const std::vector<std::string> cmds{
      "validate", "induce", "cluster", "hom", "adjoint-check", "envelope",
      "demo"};
  return cmds;
}

Report run(const std::string& subcommand, const Workspace* ws,
           const std::vector<std::string>& args, unsigned long long seed) {
  Flags flags = parse_flags(args);
  auto need_ws = [&]() -> const Workspace& {
    if (!ws)
      throw doc_error(
          Diagnostic{subcommand, "this subcommand needs a workspace document"});
    return *ws;
  };
  if (subcommand == "validate") return run_validate(need_ws());
  if (subcommand == "induce") return run_induce(need_ws(), flags, seed);
  if (subcommand == "cluster") return run_cluster(need_ws(), flags, seed);
  if (subcommand == "hom") return run_hom(need_ws(), flags, seed);
  if (subcommand == "adjoint-check")
    return run_adjoint_check(need_ws(), flags, seed);
  if (subcommand == "envelope") return run_envelope(need_ws(), flags, seed);
  if (subcommand == "demo") return run_demo(flags, seed);
  throw doc_error(Diagnostic{subcommand, "unknown subcommand"});
}

}  // namespace modind
