/* Rowmotion, K-promotion and cyclic sieving on minuscule posets. */
#ifndef MINUSCULE_MINUSCULE_H
#define MINUSCULE_MINUSCULE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef MN_BUILDING_LIBRARY
#    define MN_API __declspec(dllexport)
#  else
#    define MN_API __declspec(dllimport)
#  endif
#else
#  define MN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mn_poset mn_poset;
typedef struct mn_table mn_table;

typedef enum mn_status {
    MN_OK = 0,
    MN_ERR_PARAMETER = 1,   /* argument outside the operation's domain */
    MN_ERR_VALIDATION = 2,  /* malformed poset, tableau or file contents */
    MN_ERR_UNSUPPORTED = 3, /* operation not defined for this poset */
    MN_ERR_RESOURCE = 4,    /* state or enumeration cap exceeded */
    MN_ERR_INVARIANT = 5,   /* internal consistency check failed */
    MN_ERR_IO = 6,
    MN_ERR_INTERNAL = 7
} mn_status;

typedef enum mn_format { MN_FORMAT_TEXT = 0, MN_FORMAT_JSON = 1, MN_FORMAT_CSV = 2 } mn_format;

MN_API const char *mn_version(void);

/* Message for the last failing call on this thread; never NULL. */
MN_API const char *mn_last_error_message(void);

/* Frees any string returned through a char ** out-parameter. */
MN_API void mn_string_free(char *s);

MN_API mn_status mn_format_parse(const char *text, mn_format *out);

/* family: cayley-moufang, freudenthal, propeller:N, rectangle:AxB, staircase:N,
   or a path to a JSON poset file. */
MN_API mn_status mn_poset_load(const char *family, mn_poset **out);
MN_API void mn_poset_free(mn_poset *poset);
MN_API size_t mn_poset_size(const mn_poset *poset);
MN_API int mn_poset_rank(const mn_poset *poset);
MN_API mn_status mn_poset_name(const mn_poset *poset, char **out);
MN_API mn_status mn_poset_to_json(const mn_poset *poset, char **out);

/* Rowmotion orbit multiset on J(P x k). states receives |J(P x k)|. */
MN_API mn_status mn_rowmotion_orbits(const mn_poset *poset, size_t k, uint64_t state_cap, unsigned threads,
                                     mn_format format, uint64_t *states, char **out);

/* Hook-product generating polynomial of plane partitions of height at most k. */
MN_API mn_status mn_qpoly(const mn_poset *poset, size_t k, mn_format format, char **out);

/* Gapless orbit table. cache_dir may be NULL or empty to disable caching. */
MN_API mn_status mn_gapless_table_build(const mn_poset *poset, const char *cache_dir, uint64_t gapless_cap,
                                        unsigned threads, mn_table **out);
MN_API mn_status mn_gapless_table_from_json(const char *json, mn_table **out);
MN_API void mn_table_free(mn_table *table);
MN_API size_t mn_table_row_count(const mn_table *table);
MN_API mn_status mn_table_row(const mn_table *table, size_t index, int *ceiling, uint64_t *period, uint64_t *orbits);
MN_API uint64_t mn_table_total(const mn_table *table);
MN_API mn_status mn_table_render(const mn_table *table, mn_format format, char **out);

/* Number of tableaux in Inc^m whose promotion period divides j, as a decimal string. */
MN_API mn_status mn_count_fixed(const mn_table *table, uint64_t m, uint64_t j, char **out);

/* holds receives 1 when every per-d record matches. */
MN_API mn_status mn_verify_csp(const mn_poset *poset, const mn_table *table, size_t k, uint64_t psi_recount_cap,
                               unsigned threads, mn_format format, int *holds, char **out);

MN_API mn_status mn_promotion_order(const mn_poset *poset, const mn_table *table, uint64_t m, mn_format format,
                                    uint64_t *period, char **out);

/* Compares the frame of the poset with the set of boxes stable under promotion. */
MN_API mn_status mn_frame_check(const mn_poset *poset, uint64_t gapless_cap, unsigned threads, mn_format format,
                                int *agree, char **out);

/* Runs the reproduction items against golden files. golden_dir NULL selects the
   directory compiled into the library. */
MN_API mn_status mn_reproduce(const char *golden_dir, const char *cache_dir, unsigned threads, mn_format format,
                              int *all_pass, char **out);

/* JSON run manifest. parameters_json must be a JSON object; output is digested, not stored. */
MN_API mn_status mn_manifest(const char *subcommand, const char *parameters_json, double wall_seconds,
                             uint64_t states, uint64_t state_cap, const char *output, char **out);

#ifdef __cplusplus
}
#endif

#endif
