// modind command line: thin wrapper over the shared library's C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modind/modind.h"

namespace {

struct WorkspaceHandle {
  modind_workspace* ws = nullptr;
  ~WorkspaceHandle() { modind_workspace_free(ws); }
};

struct ReportHandle {
  modind_report* rep = nullptr;
  ~ReportHandle() { modind_report_free(rep); }
};

int fail_with(const char* what, int code) {
  std::cerr << "error: " << what << " (" << modind_last_error() << ")\n";
  return code == MODIND_OK ? 1 : code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact induced modules for restricted Lie algebras"};
  app.require_subcommand(1);

  std::string workspace_path;
  std::string out_path;
  std::string field_name;
  unsigned long long seed = 0;
  std::vector<std::string> params;
  bool json_output = false;

  app.add_option("--seed", seed, "seed for randomized internals (default 0)");
  app.add_option("--out", out_path, "write the JSON report to this path");
  app.add_option("--field", field_name,
                 "named field a task should prefer, when it takes one");
  app.add_option("--param", params, "pin a document parameter, name=value");
  app.add_flag("--json", json_output, "print the JSON report instead of text");

  struct Sub {
    CLI::App* cmd = nullptr;
    std::vector<std::string> rest;
    bool needs_doc = true;
  };
  std::map<std::string, Sub> subs;
  auto add_sub = [&](const std::string& name, const std::string& help,
                     bool needs_doc) {
    Sub s;
    s.cmd = app.add_subcommand(name, help);
    s.needs_doc = needs_doc;
    if (needs_doc)
      s.cmd->add_option("workspace", workspace_path, "workspace document")
          ->required();
    s.cmd->allow_extras();
    subs[name] = s;
  };
  add_sub("validate", "validate every object in the document", true);
  add_sub("induce", "build the induced module and print its tables", true);
  add_sub("cluster", "characters, cluster, and cluster decomposition", true);
  add_sub("hom", "basis of a homomorphism space", true);
  add_sub("adjoint-check", "verify the adjunction on a target module", true);
  add_sub("envelope", "build and validate the adjoint p-envelope", true);
  add_sub("demo", "run a built-in worked example (ex31, ex32, s3y, f3tau, ex42)",
          false);

  CLI11_PARSE(app, argc, argv);

  std::string chosen;
  for (auto& [name, sub] : subs)
    if (sub.cmd->parsed()) chosen = name;
  if (chosen.empty()) {
    std::cerr << "error: no subcommand\n";
    return 1;
  }
  Sub& sub = subs[chosen];
  std::vector<std::string> rest = sub.cmd->remaining();

  WorkspaceHandle ws;
  if (sub.needs_doc) {
    std::vector<const char*> ps;
    for (const auto& p : params) ps.push_back(p.c_str());
    int rc = modind_workspace_open(workspace_path.c_str(),
                                   ps.empty() ? nullptr : ps.data(), ps.size(),
                                   &ws.ws);
    if (rc != MODIND_OK) return fail_with("cannot load workspace", rc);
  }

  if (!field_name.empty()) {
    rest.push_back("--field");
    rest.push_back(field_name);
  }
  std::vector<const char*> args;
  for (const auto& r : rest) args.push_back(r.c_str());

  ReportHandle rep;
  int rc = modind_run(ws.ws, chosen.c_str(), args.empty() ? nullptr : args.data(),
                      args.size(), seed, &rep.rep);
  if (rc != MODIND_OK) return fail_with("run failed", rc);

  if (json_output)
    std::cout << modind_report_json(rep.rep) << "\n";
  else
    std::cout << modind_report_text(rep.rep);

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail_with("cannot write report", MODIND_ERR_IO);
    out << modind_report_json(rep.rep) << "\n";
  }
  return modind_report_status(rep.rep) == 0 ? 0 : MODIND_ERR_CHECK_FAILED;
}
