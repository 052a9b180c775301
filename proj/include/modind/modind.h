/* modind -- exact-arithmetic toolkit for reduced enveloping algebras and
 * finite-dimensional induced modules of restricted Lie algebras.
 *
 * C interface over the shared library: opaque handles, integer status
 * codes, and UTF-8 report strings.  All functions are safe to call from C
 * or C++; handles are not thread-safe individually, but distinct handles
 * may be used from distinct threads.
 */
#ifndef MODIND_H
#define MODIND_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MODIND_BUILDING_SHARED)
#    define MODIND_API __declspec(dllexport)
#  else
#    define MODIND_API __declspec(dllimport)
#  endif
#else
#  if defined(MODIND_BUILDING_SHARED)
#    define MODIND_API __attribute__((visibility("default")))
#  else
#    define MODIND_API
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum modind_status {
  MODIND_OK = 0,
  MODIND_ERR_NULL_ARG = 1,     /* a required pointer was NULL */
  MODIND_ERR_IO = 2,           /* file not found / unreadable */
  MODIND_ERR_PARSE = 3,        /* document syntax or schema error */
  MODIND_ERR_VALIDATION = 4,   /* an object failed its validator */
  MODIND_ERR_DOMAIN = 5,       /* a mathematical precondition failed */
  MODIND_ERR_UNSUPPORTED = 6,  /* outside the toolkit's deliberate scope */
  MODIND_ERR_CHECK_FAILED = 7, /* a subcommand ran but a check failed */
  MODIND_ERR_INTERNAL = 8      /* engine invariant violated; a bug */
} modind_status;

typedef struct modind_workspace_s modind_workspace;
typedef struct modind_report_s modind_report;

/* library version string, static storage */
MODIND_API const char* modind_version(void);

/* last error message on this thread, static thread-local storage */
MODIND_API const char* modind_last_error(void);

/* Parse a workspace document from a file or from memory.  `params` is an
 * array of "name=value" strings pinning the document's named parameters
 * (may be NULL when nparams is 0).  On success *out owns the workspace and
 * must be freed with modind_workspace_free. */
MODIND_API int modind_workspace_open(const char* path,
                                     const char* const* params, size_t nparams,
                                     modind_workspace** out);
MODIND_API int modind_workspace_from_text(const char* json_text,
                                          const char* const* params,
                                          size_t nparams,
                                          modind_workspace** out);
MODIND_API void modind_workspace_free(modind_workspace* ws);

/* Run a subcommand ("validate", "induce", "cluster", "hom",
 * "adjoint-check", "envelope", "demo").  `ws` may be NULL for "demo".
 * `args` carries subcommand arguments ("ex42", "--alpha", "1", ...).  On
 * success *out owns the report. */
MODIND_API int modind_run(modind_workspace* ws, const char* subcommand,
                          const char* const* args, size_t nargs,
                          unsigned long long seed, modind_report** out);

/* 0 when every check in the report passed */
MODIND_API int modind_report_status(const modind_report* report);
/* human-readable report; owned by the report handle */
MODIND_API const char* modind_report_text(const modind_report* report);
/* machine-readable JSON report; owned by the report handle */
MODIND_API const char* modind_report_json(const modind_report* report);
MODIND_API void modind_report_free(modind_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MODIND_H */
