#include "nlslab/nlslab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace {

int fail(int status) {
    std::fprintf(stderr, "error: %s\n", nlslab_last_error());
    return status;
}

int load(const std::string& path, const std::vector<std::string>& sets, nlslab_config** cfg) {
    int st = nlslab_config_load(path.c_str(), cfg);
    if (st != NLSLAB_OK) return st;
    for (const auto& s : sets) {
        st = nlslab_config_override(*cfg, s.c_str());
        if (st != NLSLAB_OK) return st;
    }
    return NLSLAB_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nlslab: spectral experiments for cubic and derivative Schrodinger equations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nlslab_version()));

    std::string config_path;
    std::vector<std::string> sets;
    auto* run = app.add_subcommand("run", "run the experiment named in a config file");
    run->add_option("--config", config_path, "key = value config file")->required();
    run->add_option("--set", sets, "override, key=value (repeatable)");
    auto* validate = app.add_subcommand("validate", "check a config without running it");
    validate->add_option("--config", config_path, "key = value config file")->required();
    validate->add_option("--set", sets, "override, key=value (repeatable)");
    auto* list = app.add_subcommand("list-experiments", "print the experiment names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* env = std::getenv("NLSLAB_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (*env == '\0' || *end != '\0' || n < 0) {
            std::fprintf(stderr, "error: NLSLAB_THREADS must be a nonnegative integer\n");
            return 2;
        }
        nlslab_set_threads(int(n));
    }

    if (list->parsed()) {
        for (int k = 0; k < nlslab_experiment_count(); ++k)
            std::printf("%-18s %s\n", nlslab_experiment_name(k), nlslab_experiment_description(k));
        return 0;
    }

    nlslab_config* cfg = nullptr;
    int st = load(config_path, sets, &cfg);
    if (st != NLSLAB_OK) {
        nlslab_config_free(cfg);
        return fail(st);
    }
    if (validate->parsed()) {
        st = nlslab_config_validate(cfg);
        nlslab_config_free(cfg);
        if (st != NLSLAB_OK) return fail(st);
        std::printf("config ok\n");
        return 0;
    }
    nlslab_result* res = nullptr;
    st = nlslab_run(cfg, &res);
    nlslab_config_free(cfg);
    if (st != NLSLAB_OK) return fail(st);
    for (int k = 0; k < nlslab_result_warning_count(res); ++k)
        std::fprintf(stderr, "warning: %s\n", nlslab_result_warning(res, k));
    for (int k = 0; k < nlslab_result_file_count(res); ++k) std::printf("%s\n", nlslab_result_file(res, k));
    std::printf("wall time %.3f s\n", nlslab_result_wall_seconds(res));
    nlslab_result_free(res);
    return 0;
}
