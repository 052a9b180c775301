// The workspace document: named field descriptors, algebras, subalgebras,
// modules, f-families, and task directives, with a small expression grammar
// for field elements ("2*i + 1", "alpha^2+beta^2", "tau^(1/3)").
#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "core/induction.hpp"

namespace modind {

using Json = nlohmann::ordered_json;

struct Diagnostic {
  std::string where;  // JSON-ish path of the offending entry
  std::string message;
};

struct doc_error : math_error {
  explicit doc_error(const Diagnostic& d)
      : math_error(d.where + ": " + d.message), diagnostic(d) {}
  Diagnostic diagnostic;
};

struct SubalgebraEntry {
  std::string algebra_name;
  SubalgebraSpec spec;
};

struct ModuleEntry {
  std::string over;          // algebra or subalgebra name
  bool over_subalgebra = false;
  Representation rep;
};

struct Workspace {
  std::map<std::string, FieldPtr> fields;
  std::map<std::string, FieldElement> params;
  std::map<std::string, LiePtr> algebras;
  std::map<std::string, SubalgebraEntry> subalgebras;
  std::map<std::string, ModuleEntry> modules;
  // family name -> (generator name -> polynomial)
  std::map<std::string, std::map<std::string, Polynomial>> ffamilies;
  Json tasks;  // raw task directives, interpreted by run()
};

// params: name -> value expression, overriding document defaults
Workspace parse_workspace(const std::string& json_text,
                          const std::map<std::string, std::string>& params);
Workspace parse_workspace_file(const std::string& path,
                               const std::map<std::string, std::string>& params);

// element expression evaluation against a field's tower generators plus
// named parameters
FieldElement parse_element(const std::string& text, const FieldPtr& field,
                           const std::map<std::string, FieldElement>& params);

// serialization (inverse of parsing, for --out documents)
Json field_to_json(const FieldPtr& f);
Json module_to_json(const Representation& rep, const std::string& algebra_name);
Json algebra_to_json(const LiePtr& l, const std::string& field_name);

}  // namespace modind
