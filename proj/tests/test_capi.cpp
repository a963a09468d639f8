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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(lp_version(), "");
  EXPECT_STREQ(lp_status_name(LP_OK), "ok");
  EXPECT_STREQ(lp_status_name(LP_ERR_PARSE), "parse");
  EXPECT_EQ(lp_exit_code(LP_OK), 0);
  EXPECT_EQ(lp_exit_code(LP_ERR_CHECK_FAILED), 1);
  EXPECT_EQ(lp_exit_code(LP_ERR_PARAMETER), 2);
  EXPECT_EQ(lp_exit_code(LP_ERR_PARSE), 2);
  EXPECT_EQ(lp_exit_code(LP_ERR_RESOURCE), 3);
}

TEST(CApi, RunBoundReport) {
  lp_report* r = nullptr;
  ASSERT_EQ(lp_run("bound", R"({"n": "3..10", "format": "json"})", &r), LP_OK) << lp_last_error();
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(lp_report_passed(r), 1);
  EXPECT_STREQ(lp_report_failure(r), "");
  const auto doc = nlohmann::json::parse(lp_report_output(r));
  EXPECT_EQ(doc["rows"].size(), 8u);
  EXPECT_EQ(doc["C"].get<double>(), lp_bound_constant());
  EXPECT_NE(std::string(lp_report_summary(r)).find("PASS"), std::string::npos);
  lp_report_free(r);
}

TEST(CApi, RunErrorsSetStatusAndMessage) {
  lp_report* r = reinterpret_cast<lp_report*>(0x1);
  EXPECT_EQ(lp_run("bound", R"({"n": 2})", &r), LP_ERR_PARAMETER);
  EXPECT_EQ(r, nullptr);
  EXPECT_STRNE(lp_last_error(), "");
  EXPECT_EQ(lp_run("bound", "{not json", &r), LP_ERR_PARSE);
  EXPECT_EQ(lp_run("bound", R"({"unknown": 1})", &r), LP_ERR_PARSE);
  EXPECT_EQ(lp_run("nope", nullptr, &r), LP_ERR_PARAMETER);
  EXPECT_EQ(lp_run(nullptr, nullptr, &r), LP_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lp_run("bound", nullptr, nullptr), LP_ERR_NULL_ARGUMENT);
  ASSERT_EQ(lp_run("bound", "", &r), LP_OK);
  EXPECT_STREQ(lp_last_error(), "");
  lp_report_free(r);
  lp_report_free(nullptr);
}

TEST(CApi, CorruptTauReportsFailureButReturnsOk) {
  lp_report* r = nullptr;
  ASSERT_EQ(lp_run("witness-check", R"({"n": 8, "corrupt_tau": true})", &r), LP_OK);
  EXPECT_EQ(lp_report_passed(r), 0);
  EXPECT_NE(std::string(lp_report_failure(r)).find("Fact 3.2"), std::string::npos);
  lp_report_free(r);
}

TEST(CApi, QuadraticHandles) {
  // q(x) = 2 x1^2 - x2^2 + 2 x1 x2 (symmetric part of the coefficient matrix).
  const double coeffs[4] = {2.0, 0.5, 1.5, -1.0};
  lp_quadratic* q = nullptr;
  ASSERT_EQ(lp_quadratic_create(2, coeffs, &q), LP_OK);
  const double x[2] = {0.5, -1.0};
  double v = 0.0;
  ASSERT_EQ(lp_quadratic_eval(q, x, &v), LP_OK);
  EXPECT_NEAR(v, 2.0 * 0.25 - 1.0 + 2.0 * 0.5 * -1.0, 1e-15);
  // Symmetric matrix [[2,1],[1,-1]] has eigenvalues (1 +- sqrt 13)/2; sup |q| on the ball is the
  // largest magnitude and the Lipschitz norm on the ball is twice it.
  const double top = (1.0 + std::sqrt(13.0)) / 2.0;
  double sup = 0.0, lip = 0.0;
  ASSERT_EQ(lp_quadratic_sup_norm(q, &sup), LP_OK);
  ASSERT_EQ(lp_quadratic_lip_norm(q, &lip), LP_OK);
  EXPECT_NEAR(sup, top, 1e-12);
  EXPECT_NEAR(lip, 2.0 * top, 1e-12);
  lp_quadratic_free(q);

  EXPECT_EQ(lp_quadratic_create(0, coeffs, &q), LP_ERR_INVALID_DIMENSION);
  EXPECT_EQ(lp_quadratic_create(2, nullptr, &q), LP_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lp_quadratic_eval(nullptr, x, &v), LP_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lp_quadratic_from_json("{", &q), LP_ERR_PARSE);
  EXPECT_EQ(lp_quadratic_from_json(R"({"dim": 2, "upper": [1, 2]})", &q),
            LP_ERR_DIMENSION_MISMATCH);
  ASSERT_EQ(lp_quadratic_from_json(R"({"dim": 2, "upper": [1, 0, 1]})", &q), LP_OK);
  ASSERT_EQ(lp_quadratic_sup_norm(q, &sup), LP_OK);
  EXPECT_NEAR(sup, 1.0, 1e-12);
  lp_quadratic_free(q);
  lp_quadratic_free(nullptr);
}

TEST(CApi, WitnessHandles) {
  lp_witness* w = nullptr;
  ASSERT_EQ(lp_witness_create(6, 0.3, std::acos(-1.0) / 100.0, &w), LP_OK);
  double value = 0.0, grad2[2];
  ASSERT_EQ(lp_witness_planar(w, 0.0, 0.0, &value, grad2), LP_OK);
  EXPECT_EQ(value, 0.0);
  // The planar witness vanishes on the disc of radius 2 eps.
  ASSERT_EQ(lp_witness_planar(w, 0.1, 0.2, &value, grad2), LP_OK);
  EXPECT_EQ(value, 0.0);
  EXPECT_EQ(grad2[0], 0.0);
  ASSERT_EQ(lp_witness_planar(w, 0.5, 0.4, &value, nullptr), LP_OK);
  EXPECT_NE(value, 0.0);

  std::vector<double> x = {0.1, -0.2, 0.05, 0.3, -0.1, 0.02};
  std::vector<double> grad(6);
  const double h = 1e-6;
  for (int which : {0, 1}) {
    ASSERT_EQ(lp_witness_eval(w, x.data(), which, &value, grad.data()), LP_OK);
    for (int i = 0; i < 6; ++i) {
      std::vector<double> up = x, down = x;
      up[i] += h;
      down[i] -= h;
      double fu = 0.0, fd = 0.0;
      ASSERT_EQ(lp_witness_eval(w, up.data(), which, &fu, nullptr), LP_OK);
      ASSERT_EQ(lp_witness_eval(w, down.data(), which, &fd, nullptr), LP_OK);
      EXPECT_NEAR((fu - fd) / (2.0 * h), grad[i], 1e-6);
    }
  }
  EXPECT_EQ(lp_witness_eval(w, x.data(), 2, &value, nullptr), LP_ERR_PARAMETER);
  EXPECT_EQ(lp_witness_eval(nullptr, x.data(), 0, &value, nullptr), LP_ERR_NULL_ARGUMENT);
  lp_witness_free(w);

  EXPECT_EQ(lp_witness_create(1, 0.3, 0.01, &w), LP_ERR_PARAMETER) << lp_last_error();
  EXPECT_EQ(lp_witness_create(6, 0.7, 0.01, &w), LP_ERR_PARAMETER);
}

TEST(CApi, BoundsAndFreeNorm) {
  double b = 0.0;
  ASSERT_EQ(lp_closed_form_bound(10, &b), LP_OK);
  EXPECT_NEAR(b, lp_bound_constant() * std::pow(10.0 - 2.0 * std::sqrt(2.0), 0.2), 1e-15);
  EXPECT_NE(lp_closed_form_bound(2, &b), LP_OK);

  // Points 0, q, p, r spaced 1/4 apart on a line; +1 at p, -1/2 at q and r.
  const double pts[4] = {0.0, 0.25, 0.5, 0.75};
  const double w[4] = {0.0, -0.5, 1.0, -0.5};
  double norm = 0.0;
  ASSERT_EQ(lp_free_norm(4, 1, pts, w, &norm), LP_OK) << lp_last_error();
  EXPECT_NEAR(norm, 0.25, 1e-12);
  const double unbalanced[4] = {0.0, 1.0, 1.0, 0.0};
  EXPECT_NE(lp_free_norm(4, 1, pts, unbalanced, &norm), LP_OK);
  EXPECT_EQ(lp_free_norm(0, 1, pts, w, &norm), LP_ERR_INVALID_DIMENSION);
  EXPECT_EQ(lp_free_norm(4, 1, nullptr, w, &norm), LP_ERR_NULL_ARGUMENT);
}

}  // namespace
