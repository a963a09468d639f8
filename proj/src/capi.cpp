// Copyright 2026 The lipproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lipproj/lipproj.h"

#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "lipproj/bounds.hpp"
#include "lipproj/commands.hpp"
#include "lipproj/error.hpp"
#include "lipproj/oracle.hpp"
#include "lipproj/polynomials.hpp"
#include "lipproj/witness.hpp"

struct lp_report {
  lipproj::CommandReport report;
};

struct lp_quadratic {
  lipproj::Quadratic q;
};

struct lp_witness {
  lipproj::WitnessField field;
};

namespace {

thread_local std::string g_last_error;

lp_status StatusFor(lipproj::ErrorCode code) {
  using lipproj::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidDimension:
      return LP_ERR_INVALID_DIMENSION;
    case ErrorCode::kDimensionMismatch:
      return LP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kIndex:
      return LP_ERR_INDEX;
    case ErrorCode::kDomain:
      return LP_ERR_DOMAIN;
    case ErrorCode::kParameter:
      return LP_ERR_PARAMETER;
    case ErrorCode::kResource:
      return LP_ERR_RESOURCE;
    case ErrorCode::kContract:
      return LP_ERR_CONTRACT;
    case ErrorCode::kCheckFailed:
      return LP_ERR_CHECK_FAILED;
    case ErrorCode::kParse:
      return LP_ERR_PARSE;
  }
  return LP_ERR_INTERNAL;
}

template <typename F>
lp_status Guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return LP_OK;
  } catch (const lipproj::Error& e) {
    g_last_error = e.what();
    return StatusFor(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LP_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LP_ERR_INTERNAL;
  }
}

lp_status NullArg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return LP_ERR_NULL_ARGUMENT;
}

}  // namespace

extern "C" {

const char* lp_version(void) { return "1.0.0"; }

const char* lp_last_error(void) { return g_last_error.c_str(); }

const char* lp_status_name(lp_status status) {
  switch (status) {
    case LP_OK:
      return "ok";
    case LP_ERR_NULL_ARGUMENT:
      return "null-argument";
    case LP_ERR_INVALID_DIMENSION:
      return "invalid-dimension";
    case LP_ERR_DIMENSION_MISMATCH:
      return "dimension-mismatch";
    case LP_ERR_INDEX:
      return "index";
    case LP_ERR_DOMAIN:
      return "domain";
    case LP_ERR_PARAMETER:
      return "parameter";
    case LP_ERR_RESOURCE:
      return "resource";
    case LP_ERR_CONTRACT:
      return "contract";
    case LP_ERR_CHECK_FAILED:
      return "check-failed";
    case LP_ERR_PARSE:
      return "parse";
    case LP_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

int lp_exit_code(lp_status status) {
  switch (status) {
    case LP_OK:
      return 0;
    case LP_ERR_RESOURCE:
      return 3;
    case LP_ERR_CHECK_FAILED:
    case LP_ERR_CONTRACT:
    case LP_ERR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

lp_status lp_run(const char* command, const char* config_json, lp_report** out) {
  if (!command) return NullArg("command");
  if (!out) return NullArg("out");
  *out = nullptr;
  return Guard([&] {
    lipproj::RunConfig cfg;
    if (config_json && *config_json) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(config_json);
      } catch (const nlohmann::json::exception& e) {
        lipproj::Fail(lipproj::ErrorCode::kParse, std::string("config: ") + e.what());
      }
      cfg = lipproj::ConfigFromJson(j);
    }
    cfg.command = command;
    auto* r = new lp_report{lipproj::RunCommand(cfg)};
    *out = r;
  });
}

int lp_report_passed(const lp_report* report) { return report && report->report.passed ? 1 : 0; }

const char* lp_report_output(const lp_report* report) {
  return report ? report->report.output.c_str() : "";
}

const char* lp_report_summary(const lp_report* report) {
  return report ? report->report.summary.c_str() : "";
}

const char* lp_report_failure(const lp_report* report) {
  return report ? report->report.failure.c_str() : "";
}

void lp_report_free(lp_report* report) { delete report; }

lp_status lp_quadratic_create(int dim, const double* coeffs, lp_quadratic** out) {
  if (!coeffs) return NullArg("coeffs");
  if (!out) return NullArg("out");
  *out = nullptr;
  return Guard([&] {
    if (dim < 1) lipproj::Fail(lipproj::ErrorCode::kInvalidDimension, "dim must be >= 1");
    lipproj::Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) a(i, j) = coeffs[i * dim + j];
    }
    *out = new lp_quadratic{lipproj::Quadratic(a)};
  });
}

lp_status lp_quadratic_from_json(const char* json, lp_quadratic** out) {
  if (!json) return NullArg("json");
  if (!out) return NullArg("out");
  *out = nullptr;
  return Guard([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      lipproj::Fail(lipproj::ErrorCode::kParse, e.what());
    }
    *out = new lp_quadratic{lipproj::QuadraticFromJson(j)};
  });
}

lp_status lp_quadratic_eval(const lp_quadratic* q, const double* x, double* out) {
  if (!q) return NullArg("q");
  if (!x) return NullArg("x");
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = q->q(Eigen::Map<const lipproj::Vector>(x, q->q.dim()));
  });
}

lp_status lp_quadratic_sup_norm(const lp_quadratic* q, double* out) {
  if (!q) return NullArg("q");
  if (!out) return NullArg("out");
  return Guard([&] { *out = lipproj::SupNorm(q->q); });
}

lp_status lp_quadratic_lip_norm(const lp_quadratic* q, double* out) {
  if (!q) return NullArg("q");
  if (!out) return NullArg("out");
  return Guard([&] { *out = lipproj::LipNormOnBall(q->q); });
}

void lp_quadratic_free(lp_quadratic* q) { delete q; }

lp_status lp_witness_create(int n, double eps, double delta, lp_witness** out) {
  if (!out) return NullArg("out");
  *out = nullptr;
  return Guard([&] {
    *out = new lp_witness{lipproj::WitnessField(lipproj::WitnessParams(n, eps, delta))};
  });
}

lp_status lp_witness_planar(const lp_witness* w, double x, double y, double* value,
                            double grad[2]) {
  if (!w) return NullArg("w");
  if (!value) return NullArg("value");
  return Guard([&] {
    *value = w->field.planar()(x, y);
    if (grad) {
      const auto g = w->field.planar().Gradient(x, y);
      grad[0] = g[0];
      grad[1] = g[1];
    }
  });
}

lp_status lp_witness_eval(const lp_witness* w, const double* x, int which, double* value,
                          double* grad) {
  if (!w) return NullArg("w");
  if (!x) return NullArg("x");
  if (!value) return NullArg("value");
  return Guard([&] {
    if (which != 0 && which != 1) {
      lipproj::Fail(lipproj::ErrorCode::kParameter, "which must be 0 (Psi) or 1 (Psi_d)");
    }
    const int n = w->field.params().n();
    const lipproj::Vector v = Eigen::Map<const lipproj::Vector>(x, n);
    *value = which == 0 ? w->field.Psi(v) : w->field.PsiD(v);
    if (grad) {
      const lipproj::Vector g = which == 0 ? w->field.GradPsi(v) : w->field.GradPsiD(v);
      for (int i = 0; i < n; ++i) grad[i] = g(i);
    }
  });
}

void lp_witness_free(lp_witness* w) { delete w; }

double lp_bound_constant(void) { return lipproj::BoundConstant(); }

lp_status lp_closed_form_bound(int n, double* out) {
  if (!out) return NullArg("out");
  return Guard([&] { *out = lipproj::ClosedFormBound(n); });
}

lp_status lp_free_norm(int npoints, int dim, const double* points, const double* weights,
                       double* out) {
  if (!points) return NullArg("points");
  if (!weights) return NullArg("weights");
  if (!out) return NullArg("out");
  return Guard([&] {
    if (npoints < 1 || dim < 1) {
      lipproj::Fail(lipproj::ErrorCode::kInvalidDimension, "npoints and dim must be positive");
    }
    std::vector<lipproj::Vector> pts;
    for (int i = 0; i < npoints; ++i) {
      pts.push_back(Eigen::Map<const lipproj::Vector>(points + i * dim, dim));
    }
    const lipproj::FiniteBallNet net(std::move(pts));
    *out = lipproj::FreeNormOfFunctional(Eigen::Map<const lipproj::Vector>(weights, npoints), net);
  });
}

}  // extern "C"
