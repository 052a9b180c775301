// exercises the shared-library boundary: workspace loading, error paths,
// and report retrieval through the C interface
#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#include "modind/modind.h"

#define REQUIRE(cond)                                                   \
  do {                                                                  \
    if (!(cond)) {                                                      \
      std::fprintf(stderr, "FAILED at %s:%d: %s\n  last error: %s\n",   \
                   __FILE__, __LINE__, #cond, modind_last_error());     \
      return 1;                                                         \
    }                                                                   \
  } while (0)

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_capi <fixtures-dir>\n");
    return 2;
  }
  const std::string dir = argv[1];

  REQUIRE(std::strlen(modind_version()) > 0);

  // null-argument handling
  modind_workspace* ws = nullptr;
  REQUIRE(modind_workspace_open(nullptr, nullptr, 0, &ws) ==
          MODIND_ERR_NULL_ARG);
  REQUIRE(modind_workspace_open("/no/such/file.json", nullptr, 0, &ws) ==
          MODIND_ERR_PARSE);
  REQUIRE(ws == nullptr);

  // parse errors carry messages
  REQUIRE(modind_workspace_from_text("{ nope", nullptr, 0, &ws) ==
          MODIND_ERR_PARSE);
  REQUIRE(std::strlen(modind_last_error()) > 0);

  // load the shipped fixture with a pinned parameter
  const char* params[] = {"alpha=1", "beta=1"};
  REQUIRE(modind_workspace_open((dir + "/ex32.json").c_str(), params, 2, &ws) ==
          MODIND_OK);
  REQUIRE(ws != nullptr);

  modind_report* rep = nullptr;
  REQUIRE(modind_run(ws, "validate", nullptr, 0, 0, &rep) == MODIND_OK);
  REQUIRE(modind_report_status(rep) == 0);
  modind_report_free(rep);

  REQUIRE(modind_run(ws, "induce", nullptr, 0, 0, &rep) == MODIND_OK);
  REQUIRE(modind_report_status(rep) == 0);
  REQUIRE(std::strstr(modind_report_text(rep), "dim 12") != nullptr);
  REQUIRE(std::strstr(modind_report_json(rep), "\"dim\": 12") != nullptr);
  modind_report_free(rep);

  REQUIRE(modind_run(ws, "no-such-command", nullptr, 0, 0, &rep) ==
          MODIND_ERR_PARSE);

  // demo needs no workspace
  const char* dargs[] = {"ex32", "--alpha", "2", "--beta", "1"};
  REQUIRE(modind_run(nullptr, "demo", dargs, 5, 0, &rep) == MODIND_OK);
  REQUIRE(modind_report_status(rep) == 0);
  modind_report_free(rep);

  modind_workspace_free(ws);
  std::puts("test_capi: all checks passed");
  return 0;
}
