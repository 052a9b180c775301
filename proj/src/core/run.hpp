// Subcommand dispatch: validate, induce, cluster, hom, adjoint-check,
// envelope, demo.  Produces a human-readable report and a machine-readable
// JSON document; status 0 means every check passed.
#pragma once

#include "core/doc.hpp"

namespace modind {

struct Report {
  std::string text;
  Json data;
  int status = 0;
};

// ws may be null for subcommands that need no document (demo)
Report run(const std::string& subcommand, const Workspace* ws,
           const std::vector<std::string>& args, unsigned long long seed);

const std::vector<std::string>& known_subcommands();

}  // namespace modind
