#include "modind/modind.h"

#include <cstring>
#include <functional>
#include <string>

#include "core/run.hpp"

using namespace modind;

struct modind_workspace_s {
  Workspace ws;
};

struct modind_report_s {
  std::string text;
  std::string json;
  int status = 0;
};

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

int guard(const std::function<void()>& body) {
  try {
    body();
    return MODIND_OK;
  } catch (const doc_error& e) {
    return set_error(MODIND_ERR_PARSE, e.what());
  } catch (const division_by_zero& e) {
    return set_error(MODIND_ERR_DOMAIN, e.what());
  } catch (const incompatible_fields& e) {
    return set_error(MODIND_ERR_DOMAIN, e.what());
  } catch (const unsupported_computation& e) {
    return set_error(MODIND_ERR_UNSUPPORTED, e.what());
  } catch (const invariant_violation& e) {
    return set_error(MODIND_ERR_INTERNAL, e.what());
  } catch (const math_error& e) {
    return set_error(MODIND_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return set_error(MODIND_ERR_INTERNAL, e.what());
  }
}

std::map<std::string, std::string> parse_params(const char* const* params,
                                                size_t nparams) {
  std::map<std::string, std::string> out;
  for (size_t i = 0; i < nparams; ++i) {
    if (!params[i]) continue;
    const std::string kv = params[i];
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw doc_error(Diagnostic{"params", "expected name=value, got " + kv});
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

}  // namespace

extern "C" {

const char* modind_version(void) { return "modind 1.0.0"; }

const char* modind_last_error(void) { return g_last_error.c_str(); }

int modind_workspace_open(const char* path, const char* const* params,
                          size_t nparams, modind_workspace** out) {
  if (!path || !out) return set_error(MODIND_ERR_NULL_ARG, "null argument");
  *out = nullptr;
  return guard([&] {
    auto* h = new modind_workspace_s();
    try {
      h->ws = parse_workspace_file(path, parse_params(params, nparams));
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

int modind_workspace_from_text(const char* json_text, const char* const* params,
                               size_t nparams, modind_workspace** out) {
  if (!json_text || !out)
    return set_error(MODIND_ERR_NULL_ARG, "null argument");
  *out = nullptr;
  return guard([&] {
    auto* h = new modind_workspace_s();
    try {
      h->ws = parse_workspace(json_text, parse_params(params, nparams));
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

void modind_workspace_free(modind_workspace* ws) { delete ws; }

int modind_run(modind_workspace* ws, const char* subcommand,
               const char* const* args, size_t nargs, unsigned long long seed,
               modind_report** out) {
  if (!subcommand || !out)
    return set_error(MODIND_ERR_NULL_ARG, "null argument");
  *out = nullptr;
  return guard([&] {
    std::vector<std::string> argv;
    for (size_t i = 0; i < nargs; ++i)
      if (args && args[i]) argv.emplace_back(args[i]);
    Report rep = run(subcommand, ws ? &ws->ws : nullptr, argv, seed);
    auto* h = new modind_report_s();
    h->text = rep.text;
    h->json = rep.data.dump(2);
    h->status = rep.status;
    *out = h;
  });
}

int modind_report_status(const modind_report* report) {
  return report ? report->status : MODIND_ERR_NULL_ARG;
}

const char* modind_report_text(const modind_report* report) {
  return report ? report->text.c_str() : "";
}

const char* modind_report_json(const modind_report* report) {
  return report ? report->json.c_str() : "";
}

void modind_report_free(modind_report* report) { delete report; }

}  // extern "C"
