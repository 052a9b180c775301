#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/run.hpp"

using namespace modind;

namespace {

const char* kMini = R"({
  "schema": "modind/1",
  "fields": {
    "F3": {"kind": "prime", "p": 3},
    "F9": {"kind": "ext", "base": "F3", "modulus": [1, 0, 1], "var": "i"},
    "F3t": {"kind": "ratfun", "base": "F3", "var": "tau"},
    "F3t9": {"kind": "insep", "base": "F3t", "levels": 2}
  },
  "params": {"alpha": {"field": "F3", "default": "1"}},
  "algebras": {
    "L": {"field": "F3", "basis": ["x", "y"],
          "brackets": {"x,y": [0, 1]},
          "pmap": {"x": [1, 0], "y": [0, 0]}}
  },
  "subalgebras": {"S": {"algebra": "L", "basis": [[1, 0]], "names": ["x"]}},
  "modules": {
    "W": {"over": "S", "dim": 2, "labels": ["b1", "b2"],
          "action": {"x": [[0, 1], [-1, 0]]}}
  },
  "ffamilies": {"f": {"field": "F3", "y": ["alpha^2+1", "alpha", 1], "x": [1, 0, 1]}}
})";

}  // namespace

TEST_CASE("parsing the miniature document") {
  Workspace ws = parse_workspace(kMini, {});
  CHECK(ws.fields.size() == 4);
  CHECK(ws.fields.at("F9")->kind() == Field::Kind::Extension);
  CHECK(ws.fields.at("F3t9")->insep_level() == 2);
  CHECK(ws.algebras.at("L")->validate().ok());
  CHECK(ws.params.at("alpha") == ws.fields.at("F3")->one());
  CHECK(ws.modules.at("W").rep.dim == 2);
  CHECK(ws.ffamilies.at("f").at("y").coeff(0) ==
        ws.fields.at("F3")->from_int(2));
}

TEST_CASE("parameter overrides change the parsed values") {
  Workspace ws = parse_workspace(kMini, {{"alpha", "2"}});
  CHECK(ws.params.at("alpha") == ws.fields.at("F3")->from_int(2));
  CHECK(ws.ffamilies.at("f").at("y").coeff(1) ==
        ws.fields.at("F3")->from_int(2));
}

TEST_CASE("an empty document parses to an empty workspace") {
  Workspace ws = parse_workspace("{}", {});
  CHECK(ws.fields.empty());
  CHECK(ws.algebras.empty());
}

TEST_CASE("diagnostics carry the offending path") {
  CHECK_THROWS_WITH_AS(
      parse_workspace(R"({"fields": {"F": {"kind": "prim", "p": 3}}})", {}),
      doctest::Contains("fields.F"), doc_error);
  CHECK_THROWS_WITH_AS(
      parse_workspace(
          R"({"fields": {"F3": {"kind": "prime", "p": 3}},
              "algebras": {"L": {"field": "F8", "basis": ["x"]}}})",
          {}),
      doctest::Contains("algebras.L"), doc_error);
  CHECK_THROWS_AS(parse_workspace("{", {}), doc_error);
  // unknown parameter
  CHECK_THROWS_AS(parse_workspace(kMini, {{"gamma", "1"}}), doc_error);
}

TEST_CASE("expression grammar") {
  Workspace ws = parse_workspace(kMini, {});
  auto F9 = ws.fields.at("F9");
  FieldElement i = F9->generator();
  CHECK(parse_element("2*i + 1", F9, {}) == F9->from_int(2) * i + F9->one());
  CHECK(parse_element("i^2", F9, {}) == F9->from_int(-1));
  CHECK(parse_element("(i+1)^2", F9, {}) == (i + F9->one()).pow(2));
  CHECK(parse_element("1/(i+1)", F9, {}) == (i + F9->one()).inv());
  auto F3t = ws.fields.at("F3t");
  FieldElement tau = F3t->generator();
  CHECK(parse_element("(tau+1)/tau", F3t, {}) ==
        (tau + F3t->one()) / tau);
  auto F3t9 = ws.fields.at("F3t9");
  CHECK(parse_element("tau^(1/9)", F3t9, {}) == F3t9->generator());
  CHECK(parse_element("tau^(1/3)", F3t9, {}) == F3t9->generator().pow(3));
  CHECK(parse_element("tau^(2/3)", F3t9, {}) == F3t9->generator().pow(6));
  CHECK_THROWS_AS(parse_element("tau^(1/2)", F3t9, {}), doc_error);
  CHECK_THROWS_AS(parse_element("2 + ", F9, {}), doc_error);
  CHECK_THROWS_AS(parse_element("zeta", F9, {}), doc_error);
}

TEST_CASE("element strings round-trip through the grammar") {
  Workspace ws = parse_workspace(kMini, {});
  for (const auto& [name, F] : ws.fields) {
    std::vector<FieldElement> samples;
    if (F->is_finite()) {
      for (unsigned long long k = 0; k < *F->size(); ++k)
        samples.push_back(F->element_at(k));
    } else {
      auto E = F->base();
      samples.push_back(F->generator());
      samples.push_back(F->generator().inv());
      samples.push_back(F->make_fraction(Polynomial::from_ints(E, {1, 2, 1}),
                                         Polynomial::from_ints(E, {0, 1})));
      if (F->kind() == Field::Kind::Inseparable)
        samples.push_back(F->generator().pow(3) + F->one());
    }
    for (const auto& s : samples) {
      CAPTURE(name);
      CAPTURE(s.str());
      CHECK(parse_element(s.str(), F, {}) == s);
    }
  }
}

TEST_CASE("induced module documents round-trip") {
  Workspace ws = parse_workspace(kMini, {});
  std::vector<std::string> args{"--algebra", "L", "--subalgebra", "S",
                                "--module", "W", "--f", "f"};
  Report rep = run("induce", &ws, args, 0);
  CHECK(rep.status == 0);
  const Json& doc = rep.data.at("module_document");
  Workspace ws2 = parse_workspace(doc.dump(), {});
  const Representation& m = ws2.modules.at("induced").rep;
  CHECK(m.dim == 12);
  CHECK(validate_rep(m).ok());
  // re-emitting gives the identical document (byte stability)
  Report rep2 = run("induce", &ws, args, 0);
  CHECK(rep.data.dump() == rep2.data.dump());
}

TEST_CASE("run: validate flags a broken module") {
  std::string broken = R"({
    "fields": {"F3": {"kind": "prime", "p": 3}},
    "algebras": {"L": {"field": "F3", "basis": ["x", "y"],
                       "brackets": {"x,y": [0, 1]},
                       "pmap": {"x": [1, 0], "y": [0, 0]}}},
    "modules": {"B": {"over": "L", "dim": 1,
                      "action": {"x": [[1]], "y": [[1]]}}}
  })";
  Workspace ws = parse_workspace(broken, {});
  Report rep = run("validate", &ws, {}, 0);
  CHECK(rep.status != 0);
}
