#include "strongrate/strongrate.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "strongrate/config.hpp"
#include "strongrate/drift.hpp"
#include "strongrate/error.hpp"
#include "strongrate/report.hpp"
#include "strongrate/transform.hpp"

struct sr_drift {
  strongrate::DriftSpec spec;
};

struct sr_transform {
  strongrate::TransformTable table;
};

struct sr_report {
  strongrate::Report report;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

sr_status fail(sr_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class F>
sr_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SR_OK;
  } catch (const strongrate::Error& e) {
    return fail(static_cast<sr_status>(static_cast<int>(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SR_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SR_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw strongrate::ConfigError(std::string(name) + " must not be NULL");
}

nlohmann::json parse_config(const char* config_json) {
  if (config_json == nullptr || *config_json == '\0') return nlohmann::json::object();
  try {
    return nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw strongrate::ConfigError(std::string("malformed config JSON: ") + e.what());
  }
}

}  // namespace

extern "C" {

const char* sr_version(void) { return "0.1.0"; }

const char* sr_last_error(void) { return g_last_error.c_str(); }

sr_status sr_eval_h(double s, double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = strongrate::eval_h(s, x);
  });
}

sr_status sr_eval_mu_s(double s, double x, double* out) {
  return guarded([&] {
    need(out, "out");
    strongrate::FractionalDriftParams p;
    p.s = s;
    *out = strongrate::eval_mu_s(p, x);
  });
}

sr_status sr_drift_create(const char* kind, double s, sr_drift** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    *out = nullptr;
    auto d = new sr_drift{strongrate::make_drift(strongrate::parse_drift_kind(kind, s))};
    *out = d;
  });
}

void sr_drift_destroy(sr_drift* drift) { delete drift; }

sr_status sr_drift_eval(const sr_drift* drift, double x, double* out) {
  return guarded([&] {
    need(drift, "drift");
    need(out, "out");
    *out = drift->spec(x);
  });
}

sr_status sr_drift_sup_norm(const sr_drift* drift, double* out) {
  return guarded([&] {
    need(drift, "drift");
    need(out, "out");
    *out = drift->spec.sup_norm;
  });
}

sr_status sr_drift_l1_norm(const sr_drift* drift, double* out, int* finite) {
  return guarded([&] {
    need(drift, "drift");
    need(out, "out");
    need(finite, "finite");
    *finite = drift->spec.integrable() ? 1 : 0;
    *out = drift->spec.l1_norm.value_or(std::numeric_limits<double>::infinity());
  });
}

sr_status sr_transform_create(const sr_drift* drift, double x_max, double step, sr_transform** out) {
  return guarded([&] {
    need(drift, "drift");
    need(out, "out");
    *out = nullptr;
    *out = new sr_transform{strongrate::build_transform(drift->spec, x_max, step > 0.0 ? step : 1e-4)};
  });
}

void sr_transform_destroy(sr_transform* transform) { delete transform; }

#define SR_TRANSFORM_EVAL(name, fn)                          \
  sr_status name(const sr_transform* t, double v, double* out) { \
    return guarded([&] {                                     \
      need(t, "transform");                                  \
      need(out, "out");                                      \
      *out = strongrate::fn(t->table, v);                    \
    });                                                      \
  }

SR_TRANSFORM_EVAL(sr_transform_G, eval_G)
SR_TRANSFORM_EVAL(sr_transform_Gprime, eval_Gprime)
SR_TRANSFORM_EVAL(sr_transform_Ginv, eval_Ginv)
SR_TRANSFORM_EVAL(sr_transform_b, eval_b)
#undef SR_TRANSFORM_EVAL

sr_status sr_transform_bounds(const sr_transform* t, double* c1, double* c2) {
  return guarded([&] {
    need(t, "transform");
    need(c1, "c1");
    need(c2, "c2");
    *c1 = t->table.c1;
    *c2 = t->table.c2;
  });
}

sr_status sr_config_resolve(const char* verb, const char* config_json, char** out_json) {
  return guarded([&] {
    need(verb, "verb");
    need(out_json, "out_json");
    *out_json = nullptr;
    const std::string text = strongrate::resolve_config(verb, parse_config(config_json)).to_json().dump();
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out_json = buf;
  });
}

void sr_string_free(char* str) { delete[] str; }

sr_status sr_run(const char* verb, const char* config_json, sr_report** out) {
  return guarded([&] {
    need(verb, "verb");
    need(out, "out");
    *out = nullptr;
    const strongrate::RunConfig cfg = strongrate::resolve_config(verb, parse_config(config_json));
    auto* r = new sr_report{strongrate::run_verb(cfg), {}};
    r->json = r->report.json_text();
    *out = r;
  });
}

void sr_report_destroy(sr_report* report) { delete report; }

const char* sr_report_json(const sr_report* report) { return report ? report->json.c_str() : ""; }

const char* sr_report_csv(const sr_report* report) { return report ? report->report.csv.c_str() : ""; }

const char* sr_report_summary(const sr_report* report) {
  return report ? report->report.summary.c_str() : "";
}

double sr_report_wall_seconds(const sr_report* report) {
  return report ? report->report.wall_seconds : std::nan("");
}

sr_status sr_report_write(const sr_report* report, const char* base, const char* format) {
  return guarded([&] {
    need(report, "report");
    need(base, "base");
    need(format, "format");
    strongrate::write_report(report->report, base, strongrate::parse_report_format(format));
  });
}

}  // extern "C"
