#ifndef NLSLAB_H
#define NLSLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NLSLAB_API __declspec(dllexport)
#else
#define NLSLAB_API __attribute__((visibility("default")))
#endif

/* Status codes; also the exit codes of the command line tool. */
typedef enum {
    NLSLAB_OK = 0,
    NLSLAB_ERR_IO = 1,           /* unreadable config, unwritable output */
    NLSLAB_ERR_PRECONDITION = 2, /* invalid config or parameters, unknown experiment */
    NLSLAB_ERR_NUMERICAL = 3,    /* numerical guard tripped (blow-up, non-finite state) */
    NLSLAB_ERR_INTERNAL = 4
} nlslab_status;

typedef struct nlslab_config nlslab_config;
typedef struct nlslab_result nlslab_result;
typedef struct nlslab_field nlslab_field;

NLSLAB_API const char* nlslab_version(void);
/* Message of the last failed call on this thread ("" if none). */
NLSLAB_API const char* nlslab_last_error(void);

/* 0 selects the hardware concurrency. */
NLSLAB_API int nlslab_set_threads(int count);
NLSLAB_API int nlslab_get_threads(void);

NLSLAB_API int nlslab_experiment_count(void);
NLSLAB_API const char* nlslab_experiment_name(int index);
NLSLAB_API const char* nlslab_experiment_description(int index);

NLSLAB_API int nlslab_config_new(nlslab_config** out);
NLSLAB_API int nlslab_config_load(const char* path, nlslab_config** out);
NLSLAB_API int nlslab_config_parse(const char* text, nlslab_config** out);
NLSLAB_API int nlslab_config_set(nlslab_config* cfg, const char* key, const char* value);
/* "key=value" */
NLSLAB_API int nlslab_config_override(nlslab_config* cfg, const char* assignment);
/* Copies the resolved value (after defaults) into buf; needs a valid experiment key. */
NLSLAB_API int nlslab_config_get(const nlslab_config* cfg, const char* key, char* buf, size_t len);
NLSLAB_API int nlslab_config_validate(const nlslab_config* cfg);
NLSLAB_API void nlslab_config_free(nlslab_config* cfg);

/* Runs the experiment and writes its CSV files and manifest.json. */
NLSLAB_API int nlslab_run(const nlslab_config* cfg, nlslab_result** out);
NLSLAB_API int nlslab_result_file_count(const nlslab_result* res);
NLSLAB_API const char* nlslab_result_file(const nlslab_result* res, int index);
NLSLAB_API int nlslab_result_warning_count(const nlslab_result* res);
NLSLAB_API const char* nlslab_result_warning(const nlslab_result* res, int index);
NLSLAB_API double nlslab_result_wall_seconds(const nlslab_result* res);
NLSLAB_API void nlslab_result_free(nlslab_result* res);

/* Sampled fields on the periodic box [-L/2, L/2) with n points, interleaved re/im. */
NLSLAB_API int nlslab_field_new(double L, int n, const double* interleaved, nlslab_field** out);
NLSLAB_API int nlslab_field_points(const nlslab_field* f);
NLSLAB_API int nlslab_field_values(const nlslab_field* f, double* interleaved);
/* Free evolution exp(i t d^2) (sign +1) or its adjoint (sign -1), in place. */
NLSLAB_API int nlslab_field_propagate(nlslab_field* f, double t, int sign);
/* Fourier-Lebesgue norm with weight <xi>^s and exponent r > 1. */
NLSLAB_API int nlslab_field_fl_norm(const nlslab_field* f, double s, double r, double* out);
NLSLAB_API void nlslab_field_free(nlslab_field* f);

#ifdef __cplusplus
}
#endif

#endif
