/* ifplab: finite group actions on rational surfaces, exact arithmetic.
 *
 * Every function returns an ifp_status. On failure the message is available
 * from ifp_last_error() on the calling thread until the next call.
 * JSON strings are owned by the caller and released with ifp_string_free().
 */
#ifndef IFPLAB_IFPLAB_H
#define IFPLAB_IFPLAB_H

#include <stddef.h>

#if defined(IFPLAB_BUILDING)
#define IFPLAB_API __attribute__((visibility("default")))
#else
#define IFPLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ifp_status {
  IFP_OK = 0,
  IFP_MISMATCH = 1,          /* roster verdicts disagree with expectations */
  IFP_INVALID_INPUT = 2,
  IFP_INVARIANT_VIOLATION = 3
} ifp_status;

typedef enum ifp_verdict { IFP_VERDICT_YES = 0, IFP_VERDICT_NOT = 1, IFP_VERDICT_UNKNOWN = 2 } ifp_verdict;

typedef struct ifp_group ifp_group;

IFPLAB_API const char* ifp_version(void);
IFPLAB_API const char* ifp_last_error(void);

/* cap = 0 selects the default order cap. */
IFPLAB_API int ifp_group_build(const char* spec, size_t cap, ifp_group** out);
IFPLAB_API void ifp_group_free(ifp_group* g);
IFPLAB_API int ifp_group_order(const ifp_group* g, size_t* out);
IFPLAB_API int ifp_group_conductor(const ifp_group* g, unsigned* out);
/* "linear2", "proj3" or "wreath"; static storage. */
IFPLAB_API int ifp_group_kind(const ifp_group* g, const char** out);
IFPLAB_API int ifp_group_verdict(const ifp_group* g, int* out);
IFPLAB_API int ifp_group_abelian_subgroups_cyclic(const ifp_group* g, int* out);

/* Command documents: {"command","input","result","witness"?,"timing_ms"}.
 * surface is "p2", "f0" or NULL/"auto". */
IFPLAB_API int ifp_check_json(const char* spec, size_t cap, char** out);
IFPLAB_API int ifp_sigma_json(const char* spec, const char* surface, size_t cap, char** out);
IFPLAB_API int ifp_lefschetz_json(const char* spec, const char* surface, size_t cap, char** out);
IFPLAB_API int ifp_resolve_json(long r, long a, char** out);
/* action: "split", "separate" or "normalize". */
IFPLAB_API int ifp_germ_json(long r, long p, long q, const char* action, char** out);
/* coset_cap = 0 selects the default of 10^6. */
IFPLAB_API int ifp_pi1_json(long p, long q, size_t coset_cap, char** out);
IFPLAB_API int ifp_hessian_model_json(char** out);
/* Returns IFP_MISMATCH (with the document in *out) when a row disagrees. */
IFPLAB_API int ifp_table_json(const char* roster_path, size_t cap, char** out);

IFPLAB_API void ifp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
