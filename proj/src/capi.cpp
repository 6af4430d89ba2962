#include "nlslab/nlslab.h"

#include "nlslab/errors.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/spectral.hpp"

#include <cstring>
#include <new>
#include <string>

struct nlslab_config {
    nlslab::Config cfg;
};

struct nlslab_result {
    nlslab::RunReport report;
};

struct nlslab_field {
    nlslab::SampledField f;
};

namespace {

thread_local std::string last_error;

template <class F>
int guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return NLSLAB_OK;
    } catch (const nlslab::PreconditionError& e) {
        last_error = e.what();
        return NLSLAB_ERR_PRECONDITION;
    } catch (const nlslab::NumericalGuardError& e) {
        last_error = e.what();
        return NLSLAB_ERR_NUMERICAL;
    } catch (const nlslab::IoError& e) {
        last_error = e.what();
        return NLSLAB_ERR_IO;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return NLSLAB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return NLSLAB_ERR_INTERNAL;
    }
}

void need_ptr(const void* p, const char* what) { nlslab::require(p != nullptr, std::string(what) + " is null"); }

} // namespace

extern "C" {

const char* nlslab_version(void) {
    static const std::string v = nlslab::version_string();
    return v.c_str();
}

const char* nlslab_last_error(void) { return last_error.c_str(); }

int nlslab_set_threads(int count) {
    return guarded([&] {
        nlslab::require(count >= 0, "thread count must be nonnegative");
        nlslab::set_thread_count(count);
    });
}

int nlslab_get_threads(void) { return nlslab::thread_count(); }

int nlslab_experiment_count(void) { return int(nlslab::experiment_catalog().size()); }

const char* nlslab_experiment_name(int index) {
    const auto& c = nlslab::experiment_catalog();
    return index >= 0 && index < int(c.size()) ? c[index].name.c_str() : nullptr;
}

const char* nlslab_experiment_description(int index) {
    const auto& c = nlslab::experiment_catalog();
    return index >= 0 && index < int(c.size()) ? c[index].description.c_str() : nullptr;
}

int nlslab_config_new(nlslab_config** out) {
    return guarded([&] {
        need_ptr(out, "output handle");
        *out = new nlslab_config{};
    });
}

int nlslab_config_load(const char* path, nlslab_config** out) {
    return guarded([&] {
        need_ptr(path, "path");
        need_ptr(out, "output handle");
        *out = new nlslab_config{nlslab::Config::from_file(path)};
    });
}

int nlslab_config_parse(const char* text, nlslab_config** out) {
    return guarded([&] {
        need_ptr(text, "text");
        need_ptr(out, "output handle");
        *out = new nlslab_config{nlslab::Config::from_text(text)};
    });
}

int nlslab_config_set(nlslab_config* cfg, const char* key, const char* value) {
    return guarded([&] {
        need_ptr(cfg, "config");
        need_ptr(key, "key");
        need_ptr(value, "value");
        cfg->cfg.set(key, value);
    });
}

int nlslab_config_override(nlslab_config* cfg, const char* assignment) {
    return guarded([&] {
        need_ptr(cfg, "config");
        need_ptr(assignment, "assignment");
        cfg->cfg.apply_override(assignment);
    });
}

int nlslab_config_get(const nlslab_config* cfg, const char* key, char* buf, size_t len) {
    return guarded([&] {
        need_ptr(cfg, "config");
        need_ptr(key, "key");
        need_ptr(buf, "buffer");
        auto kv = nlslab::validate_config(cfg->cfg);
        auto it = kv.find(key);
        nlslab::require(it != kv.end(), std::string("unknown key '") + key + "'");
        nlslab::require(it->second.size() < len, "buffer too small");
        std::memcpy(buf, it->second.c_str(), it->second.size() + 1);
    });
}

int nlslab_config_validate(const nlslab_config* cfg) {
    return guarded([&] {
        need_ptr(cfg, "config");
        nlslab::validate_config(cfg->cfg);
    });
}

void nlslab_config_free(nlslab_config* cfg) { delete cfg; }

int nlslab_run(const nlslab_config* cfg, nlslab_result** out) {
    return guarded([&] {
        need_ptr(cfg, "config");
        auto rep = nlslab::run_experiment(cfg->cfg);
        if (out) *out = new nlslab_result{std::move(rep)};
    });
}

int nlslab_result_file_count(const nlslab_result* res) { return res ? int(res->report.files.size()) : 0; }

const char* nlslab_result_file(const nlslab_result* res, int index) {
    if (!res || index < 0 || index >= int(res->report.files.size())) return nullptr;
    return res->report.files[index].c_str();
}

int nlslab_result_warning_count(const nlslab_result* res) { return res ? int(res->report.warnings.size()) : 0; }

const char* nlslab_result_warning(const nlslab_result* res, int index) {
    if (!res || index < 0 || index >= int(res->report.warnings.size())) return nullptr;
    return res->report.warnings[index].c_str();
}

double nlslab_result_wall_seconds(const nlslab_result* res) { return res ? res->report.wall_seconds : 0.0; }

void nlslab_result_free(nlslab_result* res) { delete res; }

int nlslab_field_new(double L, int n, const double* interleaved, nlslab_field** out) {
    return guarded([&] {
        need_ptr(out, "output handle");
        nlslab::require(L > 0.0 && n >= 2 && n % 2 == 0, "field needs L > 0 and an even n >= 2");
        nlslab::SampledField f{nlslab::SpaceGrid(L, n)};
        if (interleaved)
            for (int j = 0; j < n; ++j) f.values[j] = nlslab::cplx(interleaved[2 * j], interleaved[2 * j + 1]);
        f.validate();
        *out = new nlslab_field{std::move(f)};
    });
}

int nlslab_field_points(const nlslab_field* f) { return f ? f->f.grid.n : 0; }

int nlslab_field_values(const nlslab_field* f, double* interleaved) {
    return guarded([&] {
        need_ptr(f, "field");
        need_ptr(interleaved, "buffer");
        for (int j = 0; j < f->f.grid.n; ++j) {
            interleaved[2 * j] = f->f.values[j].real();
            interleaved[2 * j + 1] = f->f.values[j].imag();
        }
    });
}

int nlslab_field_propagate(nlslab_field* f, double t, int sign) {
    return guarded([&] {
        need_ptr(f, "field");
        nlslab::require(sign == 1 || sign == -1, "sign must be +1 or -1");
        f->f = nlslab::free_propagate(f->f, t, sign);
    });
}

int nlslab_field_fl_norm(const nlslab_field* f, double s, double r, double* out) {
    return guarded([&] {
        need_ptr(f, "field");
        need_ptr(out, "output");
        *out = nlslab::fourier_lebesgue_norm(f->f, {s, r});
    });
}

void nlslab_field_free(nlslab_field* f) { delete f; }

} // extern "C"
