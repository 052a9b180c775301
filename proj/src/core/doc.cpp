#include "core/doc.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace modind {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw doc_error(Diagnostic{where, message});
}

// ---------------------------------------------------------------------------
// element expressions
// ---------------------------------------------------------------------------

struct ExprParser {
  const std::string& src;
  std::size_t pos = 0;
  const FieldPtr& field;
  const std::map<std::string, FieldElement>& env;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void err(const std::string& msg) {
    fail("expression '" + src + "'", msg + " at offset " + std::to_string(pos));
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      ++pos;
    if (pos == start) err("expected an integer");
    return std::stoll(src.substr(start, pos - start));
  }

  FieldElement atom() {
    skip_ws();
    if (pos >= src.size()) err("unexpected end of expression");
    if (eat('(')) {
      FieldElement e = expr();
      if (!eat(')')) err("expected ')'");
      return e;
    }
    const char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)))
      return field->from_int(integer());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '_'))
        ++pos;
      const std::string name = src.substr(start, pos - start);
      auto it = env.find(name);
      if (it == env.end()) err("unknown symbol '" + name + "'");
      return Field::embed(it->second, field);
    }
    err("unexpected character");
  }

  FieldElement power() {
    FieldElement base = atom();
    skip_ws();
    if (pos < src.size() && src[pos] == '^') {
      ++pos;
      skip_ws();
      if (pos < src.size() && src[pos] == '(') {
        // possibly a fractional exponent: ^(j/d)
        std::size_t save = pos;
        ++pos;
        long long num = integer();
        skip_ws();
        if (pos < src.size() && src[pos] == '/') {
          ++pos;
          long long den = integer();
          if (!eat(')')) err("expected ')' in exponent");
          return fractional_power(base, num, den);
        }
        // plain parenthesized integer exponent
        pos = save;
        if (!eat('(')) err("expected '('");
        long long e = integer();
        if (!eat(')')) err("expected ')' in exponent");
        return base.pow(e);
      }
      return base.pow(integer());
    }
    return base;
  }

  FieldElement fractional_power(const FieldElement& base, long long num,
                                long long den) {
    if (den <= 0) err("exponent denominator must be positive");
    // supported: p^k-th roots of the root generator of an inseparable tower
    const FieldPtr f = base.field();
    if (f->kind() != Field::Kind::Inseparable)
      err("fractional powers need a root tower field");
    unsigned long long q = 1;
    for (long k = 0; k < f->insep_level(); ++k)
      q *= static_cast<unsigned long long>(f->characteristic());
    if (!(base == Field::embed(f->root_field()->generator(), f)))
      err("fractional powers apply to the tower variable only");
    if (q % static_cast<unsigned long long>(den) != 0)
      err("denominator does not divide the available root order");
    // base = s^q with s the internal generator; base^{num/den} = s^{q num/den}
    const unsigned long long e =
        q / static_cast<unsigned long long>(den) *
        static_cast<unsigned long long>(num);
    return f->generator().pow(static_cast<long long>(e));
  }

  FieldElement unary() {
    skip_ws();
    if (eat('-')) return -unary();
    return power();
  }

  FieldElement term() {
    FieldElement acc = unary();
    for (;;) {
      skip_ws();
      if (pos < src.size() && src[pos] == '*') {
        ++pos;
        acc = acc * unary();
      } else if (pos < src.size() && src[pos] == '/') {
        ++pos;
        acc = acc / unary();
      } else {
        return acc;
      }
    }
  }

  FieldElement expr() {
    FieldElement acc = term();
    for (;;) {
      skip_ws();
      if (pos < src.size() && src[pos] == '+') {
        ++pos;
        acc = acc + term();
      } else if (pos < src.size() && src[pos] == '-') {
        ++pos;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }
};

// tower generators visible from f, outermost name first
void collect_generators(const FieldPtr& f,
                        std::map<std::string, FieldElement>& env,
                        const FieldPtr& top) {
  switch (f->kind()) {
    case Field::Kind::Prime:
      return;
    case Field::Kind::Extension:
    case Field::Kind::RationalFunction:
      env.emplace(f->var(), Field::embed(f->generator(), top));
      collect_generators(f->base(), env, top);
      return;
    case Field::Kind::Inseparable:
      // expose the root variable; fractional powers reach the generator
      env.emplace(f->root_field()->var(),
                  Field::embed(f->root_field()->generator(), top));
      collect_generators(f->base(), env, top);
      return;
  }
}

}  // namespace

FieldElement parse_element(const std::string& text, const FieldPtr& field,
                           const std::map<std::string, FieldElement>& params) {
  std::map<std::string, FieldElement> env = params;
  collect_generators(field, env, field);
  ExprParser p{text, 0, field, env};
  FieldElement e = p.expr();
  p.skip_ws();
  if (p.pos != text.size())
    fail("expression '" + text + "'", "trailing characters");
  return e;
}

namespace {

FieldElement parse_value(const Json& j, const FieldPtr& field,
                         const std::map<std::string, FieldElement>& params,
                         const std::string& where) {
  if (j.is_number_integer()) return field->from_int(j.get<long long>());
  if (j.is_string()) return parse_element(j.get<std::string>(), field, params);
  fail(where, "expected a number or an element expression string");
}

Vec parse_vector(const Json& j, const FieldPtr& field, std::size_t dim,
                 const std::map<std::string, FieldElement>& params,
                 const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  if (j.size() != dim)
    fail(where, "expected " + std::to_string(dim) + " coordinates, got " +
                    std::to_string(j.size()));
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_value(j[i], field, params,
                            where + "[" + std::to_string(i) + "]"));
  return v;
}

Polynomial parse_poly(const Json& j, const FieldPtr& field,
                      const std::map<std::string, FieldElement>& params,
                      const std::string& where) {
  if (!j.is_array()) fail(where, "expected a coefficient list");
  std::vector<FieldElement> cs;
  for (std::size_t i = 0; i < j.size(); ++i)
    cs.push_back(parse_value(j[i], field, params,
                             where + "[" + std::to_string(i) + "]"));
  return Polynomial::from_coeffs(field, std::move(cs));
}

FieldPtr parse_field(const Json& j, const std::map<std::string, FieldPtr>& known,
                     const std::string& where) {
  if (!j.is_object() || !j.contains("kind")) fail(where, "expected a field object");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "prime") {
    if (!j.contains("p")) fail(where, "prime field needs p");
    return Field::prime(j.at("p").get<long>());
  }
  auto base_of = [&]() -> FieldPtr {
    if (!j.contains("base")) fail(where, "missing base field reference");
    const std::string name = j.at("base").get<std::string>();
    auto it = known.find(name);
    if (it == known.end()) fail(where, "unknown base field '" + name + "'");
    return it->second;
  };
  if (kind == "ext") {
    FieldPtr base = base_of();
    if (!j.contains("modulus") || !j.contains("var"))
      fail(where, "extension needs modulus and var");
    Polynomial mod = parse_poly(j.at("modulus"), base, {}, where + ".modulus");
    return Field::extension(base, mod, j.at("var").get<std::string>());
  }
  if (kind == "ratfun") {
    FieldPtr base = base_of();
    if (!j.contains("var")) fail(where, "rational function field needs var");
    return Field::rational_function(base, j.at("var").get<std::string>());
  }
  if (kind == "insep") {
    FieldPtr base = base_of();
    long levels = j.contains("levels") ? j.at("levels").get<long>() : 1;
    return Field::inseparable_root(base, levels);
  }
  fail(where, "unknown field kind '" + kind + "'");
}

}  // namespace

Workspace parse_workspace(const std::string& json_text,
                          const std::map<std::string, std::string>& params) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail("document", std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "top level must be an object");

  Workspace ws;
  if (doc.contains("fields")) {
    for (const auto& [name, body] : doc.at("fields").items())
      ws.fields.emplace(name, parse_field(body, ws.fields, "fields." + name));
  }

  // parameters: {"alpha": {"field": "F3", "default": "1"}}
  if (doc.contains("params")) {
    for (const auto& [name, body] : doc.at("params").items()) {
      if (!body.is_object() || !body.contains("field"))
        fail("params." + name, "expected {field, default?}");
      const std::string fname = body.at("field").get<std::string>();
      auto fit = ws.fields.find(fname);
      if (fit == ws.fields.end())
        fail("params." + name, "unknown field '" + fname + "'");
      std::string text;
      auto ov = params.find(name);
      if (ov != params.end()) {
        text = ov->second;
      } else if (body.contains("default")) {
        text = body.at("default").is_string()
                   ? body.at("default").get<std::string>()
                   : body.at("default").dump();
      } else {
        fail("params." + name,
             "no value given; pin it with --param " + name + "=...");
      }
      ws.params.emplace(name, parse_element(text, fit->second, {}));
    }
  }
  for (const auto& [name, text] : params)
    if (!ws.params.count(name))
      fail("params." + name, "document declares no such parameter");

  if (doc.contains("algebras")) {
    for (const auto& [name, body] : doc.at("algebras").items()) {
      const std::string where = "algebras." + name;
      if (!body.contains("field") || !body.contains("basis"))
        fail(where, "expected {field, basis, brackets?, pmap?}");
      auto fit = ws.fields.find(body.at("field").get<std::string>());
      if (fit == ws.fields.end()) fail(where, "unknown field");
      const FieldPtr F = fit->second;
      std::vector<std::string> names =
          body.at("basis").get<std::vector<std::string>>();
      const std::size_t n = names.size();
      auto index_of = [&](const std::string& nm) -> std::size_t {
        for (std::size_t i = 0; i < n; ++i)
          if (names[i] == nm) return i;
        fail(where, "unknown basis name '" + nm + "'");
      };
      std::vector<LieAlgebra::BracketEntry> entries;
      if (body.contains("brackets")) {
        for (const auto& [key, val] : body.at("brackets").items()) {
          auto comma = key.find(',');
          if (comma == std::string::npos)
            fail(where + ".brackets", "keys look like \"x,y\"");
          std::size_t i = index_of(key.substr(0, comma));
          std::size_t k = index_of(key.substr(comma + 1));
          Vec v = parse_vector(val, F, n, ws.params,
                               where + ".brackets." + key);
          if (i < k) {
            entries.push_back({i, k, v});
          } else if (k < i) {
            entries.push_back({k, i, scale(v, F->from_int(-1))});
          } else {
            fail(where + ".brackets", "bracket of an element with itself");
          }
        }
      }
      std::optional<std::vector<Vec>> pmap;
      if (body.contains("pmap")) {
        std::vector<Vec> rows(n, zero_vec(F, n));
        for (const auto& [key, val] : body.at("pmap").items())
          rows[index_of(key)] =
              parse_vector(val, F, n, ws.params, where + ".pmap." + key);
        pmap = std::move(rows);
      }
      ws.algebras.emplace(
          name, LieAlgebra::create(F, names, entries, std::move(pmap)));
    }
  }

  if (doc.contains("subalgebras")) {
    for (const auto& [name, body] : doc.at("subalgebras").items()) {
      const std::string where = "subalgebras." + name;
      if (!body.contains("algebra") || !body.contains("basis"))
        fail(where, "expected {algebra, basis, names?}");
      auto ait = ws.algebras.find(body.at("algebra").get<std::string>());
      if (ait == ws.algebras.end()) fail(where, "unknown algebra");
      const LiePtr L = ait->second;
      SubalgebraEntry ent;
      ent.algebra_name = body.at("algebra").get<std::string>();
      ent.spec.parent = L;
      for (std::size_t i = 0; i < body.at("basis").size(); ++i)
        ent.spec.basis.push_back(
            parse_vector(body.at("basis")[i], L->field(), L->dim(), ws.params,
                         where + ".basis[" + std::to_string(i) + "]"));
      if (body.contains("names"))
        ent.spec.names = body.at("names").get<std::vector<std::string>>();
      ws.subalgebras.emplace(name, std::move(ent));
    }
  }

  if (doc.contains("modules")) {
    for (const auto& [name, body] : doc.at("modules").items()) {
      const std::string where = "modules." + name;
      if (!body.contains("over") || !body.contains("dim") ||
          !body.contains("action"))
        fail(where, "expected {over, dim, action, labels?, field?}");
      ModuleEntry ent;
      ent.over = body.at("over").get<std::string>();
      std::vector<std::string> gen_names;
      LiePtr acting;
      if (ws.algebras.count(ent.over)) {
        acting = ws.algebras.at(ent.over);
        gen_names = acting->names();
      } else if (ws.subalgebras.count(ent.over)) {
        ent.over_subalgebra = true;
        auto sa = subalgebra_as_algebra(ws.subalgebras.at(ent.over).spec);
        acting = sa.algebra;
        gen_names = acting->names();
      } else {
        fail(where, "unknown algebra or subalgebra '" + ent.over + "'");
      }
      const std::size_t dim = body.at("dim").get<std::size_t>();
      FieldPtr F = acting->field();
      if (body.contains("field")) {
        auto fit = ws.fields.find(body.at("field").get<std::string>());
        if (fit == ws.fields.end()) fail(where, "unknown field");
        F = fit->second;
      }
      ent.rep.algebra = acting;
      ent.rep.dim = dim;
      ent.rep.field = F;
      ent.rep.action.assign(acting->dim(), Matrix(F, dim, dim));
      for (const auto& [key, val] : body.at("action").items()) {
        std::size_t gi = acting->dim();
        for (std::size_t i = 0; i < gen_names.size(); ++i)
          if (gen_names[i] == key) gi = i;
        if (gi == acting->dim())
          fail(where + ".action", "unknown generator '" + key + "'");
        if (!val.is_array() || val.size() != dim)
          fail(where + ".action." + key, "expected one column per basis vector");
        Matrix m(F, dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
          Vec col = parse_vector(val[j], F, dim, ws.params,
                                 where + ".action." + key + "[" +
                                     std::to_string(j) + "]");
          for (std::size_t i = 0; i < dim; ++i) m.set(i, j, col[i]);
        }
        ent.rep.action[gi] = std::move(m);
      }
      if (body.contains("labels"))
        ent.rep.labels = body.at("labels").get<std::vector<std::string>>();
      ws.modules.emplace(name, std::move(ent));
    }
  }

  if (doc.contains("ffamilies")) {
    for (const auto& [name, body] : doc.at("ffamilies").items()) {
      const std::string where = "ffamilies." + name;
      if (!body.contains("field"))
        fail(where, "an f-family names its coefficient field");
      auto fit = ws.fields.find(body.at("field").get<std::string>());
      if (fit == ws.fields.end()) fail(where, "unknown field");
      std::map<std::string, Polynomial> fam;
      for (const auto& [gen, val] : body.items()) {
        if (gen == "field") continue;
        fam.emplace(gen,
                    parse_poly(val, fit->second, ws.params, where + "." + gen));
      }
      ws.ffamilies.emplace(name, std::move(fam));
    }
  }

  if (doc.contains("tasks")) ws.tasks = doc.at("tasks");
  return ws;
}

Workspace parse_workspace_file(
    const std::string& path, const std::map<std::string, std::string>& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), params);
}

Json field_to_json(const FieldPtr& f) {
  Json j;
  switch (f->kind()) {
    case Field::Kind::Prime:
      j["kind"] = "prime";
      j["p"] = f->characteristic();
      return j;
    case Field::Kind::Extension: {
      j["kind"] = "ext";
      j["base"] = field_to_json(f->base());
      Json mod = Json::array();
      for (std::size_t i = 0; i < f->modulus().size(); ++i)
        mod.push_back(f->modulus().coeff(i).str());
      j["modulus"] = mod;
      j["var"] = f->var();
      return j;
    }
    case Field::Kind::RationalFunction:
      j["kind"] = "ratfun";
      j["base"] = field_to_json(f->base());
      j["var"] = f->var();
      return j;
    case Field::Kind::Inseparable:
      j["kind"] = "insep";
      j["base"] = field_to_json(f->root_field());
      j["levels"] = f->insep_level();
      return j;
  }
  return j;
}

Json module_to_json(const Representation& rep, const std::string& algebra_name) {
  Json j;
  j["over"] = algebra_name;
  j["dim"] = rep.dim;
  Json action = Json::object();
  for (std::size_t k = 0; k < rep.action.size(); ++k) {
    Json cols = Json::array();
    for (std::size_t c = 0; c < rep.dim; ++c) {
      Json col = Json::array();
      for (std::size_t r = 0; r < rep.dim; ++r)
        col.push_back(rep.action[k].at(r, c).str());
      cols.push_back(col);
    }
    action[rep.algebra->names()[k]] = cols;
  }
  j["action"] = action;
  if (!rep.labels.empty()) j["labels"] = rep.labels;
  return j;
}

Json algebra_to_json(const LiePtr& l, const std::string& field_name) {
  Json j;
  j["field"] = field_name;
  j["basis"] = l->names();
  Json br = Json::object();
  for (std::size_t i = 0; i < l->dim(); ++i)
    for (std::size_t k = i + 1; k < l->dim(); ++k) {
      const Vec& v = l->bracket_basis(i, k);
      if (is_zero_vec(v)) continue;
      Json arr = Json::array();
      for (const auto& c : v) arr.push_back(c.str());
      br[l->names()[i] + "," + l->names()[k]] = arr;
    }
  j["brackets"] = br;
  if (l->has_pmap()) {
    Json pm = Json::object();
    for (std::size_t i = 0; i < l->dim(); ++i) {
      Json arr = Json::array();
      for (const auto& c : l->pmap_basis(i)) arr.push_back(c.str());
      pm[l->names()[i]] = arr;
    }
    j["pmap"] = pm;
  }
  return j;
}

}  // namespace modind
