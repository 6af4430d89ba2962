#include "nlslab/nlslab.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                        \
    do {                                                                    \
        if (!(cond)) {                                                      \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                     \
        }                                                                   \
    } while (0)

int main(void) {
    EXPECT(strcmp(nlslab_version(), "0.1.0") == 0);
    EXPECT(nlslab_experiment_count() >= 9);
    EXPECT(strcmp(nlslab_experiment_name(0), "") != 0);
    EXPECT(nlslab_experiment_name(-1) == NULL || strcmp(nlslab_experiment_name(-1), "") == 0);

    nlslab_config* cfg = NULL;
    EXPECT(nlslab_config_parse("experiment = soliton-oracle\nT = 0.1\n", &cfg) == NLSLAB_OK);
    char buf[64];
    EXPECT(nlslab_config_get(cfg, "omega", buf, sizeof buf) == NLSLAB_OK);
    EXPECT(strcmp(buf, "1.2") == 0);
    EXPECT(nlslab_config_validate(cfg) == NLSLAB_OK);
    EXPECT(nlslab_config_override(cfg, "dt=-1") == NLSLAB_OK);
    EXPECT(nlslab_config_validate(cfg) == NLSLAB_ERR_PRECONDITION);
    EXPECT(strlen(nlslab_last_error()) > 0);
    EXPECT(nlslab_config_override(cfg, "broken") == NLSLAB_ERR_PRECONDITION);
    EXPECT(nlslab_config_set(cfg, "experiment", "unknown-thing") == NLSLAB_OK);
    EXPECT(nlslab_config_validate(cfg) == NLSLAB_ERR_PRECONDITION);
    EXPECT(strstr(nlslab_last_error(), "soliton-oracle") != NULL);
    nlslab_config_free(cfg);

    EXPECT(nlslab_config_load("/nonexistent/config", &cfg) == NLSLAB_ERR_IO);

    EXPECT(nlslab_config_new(&cfg) == NLSLAB_OK);
    nlslab_config_set(cfg, "experiment", "illposed-nls");
    nlslab_config_set(cfg, "N_list", "20,40");
    nlslab_config_set(cfg, "output", "capi_out");
    nlslab_result* res = NULL;
    EXPECT(nlslab_run(cfg, &res) == NLSLAB_OK);
    if (res) {
        EXPECT(nlslab_result_file_count(res) == 2);
        EXPECT(nlslab_result_wall_seconds(res) >= 0.0);
        FILE* f = fopen(nlslab_result_file(res, 0), "r");
        EXPECT(f != NULL);
        if (f) fclose(f);
        nlslab_result_free(res);
    }
    nlslab_config_free(cfg);

    EXPECT(nlslab_set_threads(2) == NLSLAB_OK);
    EXPECT(nlslab_get_threads() == 2);
    EXPECT(nlslab_set_threads(-1) == NLSLAB_ERR_PRECONDITION);

    /* Gaussian: propagation is unitary and the adjoint undoes it */
    enum { n = 256 };
    double L = 40.0, data[2 * n], back[2 * n];
    for (int j = 0; j < n; ++j) {
        double x = -0.5 * L + j * L / n;
        data[2 * j] = exp(-0.5 * x * x);
        data[2 * j + 1] = 0.0;
    }
    nlslab_field* fld = NULL;
    EXPECT(nlslab_field_new(L, n, data, &fld) == NLSLAB_OK);
    EXPECT(nlslab_field_points(fld) == n);
    double before = 0.0, after = 0.0;
    EXPECT(nlslab_field_fl_norm(fld, 0.0, 2.0, &before) == NLSLAB_OK);
    EXPECT(nlslab_field_propagate(fld, 0.7, 1) == NLSLAB_OK);
    EXPECT(nlslab_field_fl_norm(fld, 0.0, 2.0, &after) == NLSLAB_OK);
    EXPECT(fabs(before - after) < 1e-12 * before);
    EXPECT(nlslab_field_propagate(fld, 0.7, -1) == NLSLAB_OK);
    nlslab_field_values(fld, back);
    double err = 0.0;
    for (int j = 0; j < 2 * n; ++j) err = fmax(err, fabs(back[j] - data[j]));
    EXPECT(err < 1e-12);
    EXPECT(nlslab_field_fl_norm(fld, 0.0, 1.0, &after) == NLSLAB_ERR_PRECONDITION);
    nlslab_field_free(fld);
    EXPECT(nlslab_field_new(L, 3, data, &fld) == NLSLAB_ERR_PRECONDITION);

    if (failures) fprintf(stderr, "%d failures\n", failures);
    else printf("capi: all checks passed\n");
    return failures ? 1 : 0;
}
