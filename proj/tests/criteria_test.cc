// Copyright 2026 The wpir-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "wpir/criteria.h"
#include "wpir/optimizer.h"

using wpir::Metric;
using wpir::Setting;

TEST_CASE("gain criterion matches the printed three-decimal values") {
  CHECK(std::abs(wpir::GainCriterion(1, 3, 0.7828) - (-0.025)) <= 0.001);
  CHECK(std::abs(wpir::GainCriterion(1, 8, 0.7828) - (-0.091)) <= 0.001);
  // Vanishing ratio leaves only the log deficit.
  const double tiny = wpir::GainCriterion(2, 5, 1e-9);
  CHECK(tiny == doctest::Approx(-(1.0 - std::log2(3.0) / std::log2(5.0)))
                    .epsilon(1e-9));
  CHECK_THROWS_AS(wpir::GainCriterion(4, 5, 0.5),
                  wpir::InvalidArgumentError);
  CHECK_THROWS_AS(wpir::GainCriterion(0, 5, 0.5),
                  wpir::InvalidArgumentError);
}

TEST_CASE("gain table at the threshold ratio") {
  const wpir::GainTable table = wpir::ComputeGainTable(0.7828);
  // All twenty printed entries, three decimals each.
  const double expected[6][5] = {
      {-0.025, 0, 0, 0, 0},
      {-0.044, -0.007, 0, 0, 0},
      {-0.059, -0.020, -0.008, 0, 0},
      {-0.071, -0.033, -0.020, -0.011, 0},
      {-0.081, -0.046, -0.033, -0.025, -0.014},
      {-0.091, -0.059, -0.047, -0.039, -0.030},
  };
  for (int files = 3; files <= 8; ++files) {
    for (int m = 1; m <= 5; ++m) {
      const auto& cell = table.cells[files - 3][m - 1];
      if (m <= files - 2) {
        REQUIRE(cell.has_value());
        CHECK(std::abs(*cell - expected[files - 3][m - 1]) <= 0.001);
      } else {
        CHECK_FALSE(cell.has_value());
      }
    }
  }
}

TEST_CASE("gain table at a smaller ratio is entirely negative") {
  const wpir::GainTable table = wpir::ComputeGainTable(0.5);
  for (const auto& row : table.cells) {
    for (const auto& cell : row) {
      if (cell.has_value()) CHECK(*cell < 0.0);
    }
  }
}

TEST_CASE("gain criterion increases with the ratio") {
  for (int files = 3; files <= 8; ++files) {
    for (int m = 1; m <= files - 2; ++m) {
      double prev = wpir::GainCriterion(m, files, 0.005);
      for (int i = 1; i <= 100; ++i) {
        const double ratio = 0.005 + 0.985 * i / 100.0;
        const double cur = wpir::GainCriterion(m, files, ratio);
        CHECK(cur > prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("gain criterion factors the Mil diagnostic") {
  for (const double ratio : {0.25, 0.5, 0.7828, 0.8}) {
    const int n = 100;
    const int s = static_cast<int>(ratio * n + 0.5);
    for (int files = 3; files <= 8; ++files) {
      const auto params = wpir::MakeParams(Setting::kMdsCoded, n, s, files);
      const auto diag = wpir::DCoefficients(params, Metric::kMil);
      double power = 1.0;
      for (int i = 0; i < files - 1; ++i) power *= params.ratio;
      const double factor = 1.0 - power;  // 1 - q^(M-1), positive
      for (int m = 1; m <= files - 2; ++m) {
        const double via_criterion =
            factor * wpir::GainCriterion(m, files, params.ratio);
        CHECK(std::abs(diag.d[m - 1] - via_criterion) <= 1e-12);
      }
    }
  }
}

TEST_CASE("plain ratio family is strictly decreasing") {
  const auto grid = wpir::LinearGrid(1.0, 20.0, 1000);
  const auto report = wpir::CheckPlainRatio(0.627, grid);
  CHECK(report.strictly_decreasing);
  CHECK(report.max_difference < 0.0);
  CHECK_FALSE(report.witness.has_value());
  CHECK(report.aux_at_anchor ==
        doctest::Approx(1.7411927527534137).epsilon(1e-12));
  CHECK(report.aux_slope_at_anchor ==
        doctest::Approx(2.235338622294775).epsilon(1e-12));
  CHECK(std::abs(report.aux_slope_at_anchor - 2.235) <= 0.005);
  CHECK(report.min_aux_curvature > 0.0);

  const auto strong = wpir::CheckPlainRatio(2.0, grid);
  CHECK(strong.strictly_decreasing);

  CHECK_THROWS_AS(wpir::CheckPlainRatio(0.5, grid),
                  wpir::InvalidArgumentError);
}

TEST_CASE("offset ratio family is strictly decreasing") {
  const auto grid = wpir::LinearGrid(6.0, 60.0, 1000);
  const auto report = wpir::CheckOffsetRatio(0.2448, grid);
  CHECK(report.strictly_decreasing);
  CHECK_FALSE(report.witness.has_value());
  // The anchor margin is a near-cancellation but stays positive.
  CHECK(report.aux_at_anchor > 0.0);
  CHECK(report.aux_at_anchor < 0.002);
  CHECK(report.aux_slope_at_anchor ==
        doctest::Approx(1.7857987019781105).epsilon(1e-12));
  CHECK(std::abs(report.aux_slope_at_anchor - 1.784) <= 0.005);
  CHECK(report.min_aux_curvature > 0.0);

  CHECK_THROWS_AS(wpir::CheckOffsetRatio(0.2, grid),
                  wpir::InvalidArgumentError);
  CHECK_THROWS_AS(wpir::CheckOffsetRatio(0.2448, wpir::LinearGrid(1.0, 5.0, 10)),
                  wpir::InvalidArgumentError);
}

TEST_CASE("replicated worst-case gain sweep") {
  const auto small = wpir::ReplicatedMaxlGainSweep(2, 3);
  REQUIRE(small.values.size() == 1);
  CHECK(small.values[0] == doctest::Approx(-2.5).epsilon(1e-14));
  CHECK(small.differences.empty());
  CHECK(small.all_negative);

  for (int n = 2; n <= 5; ++n) {
    for (int files = 3; files <= 10; ++files) {
      const auto sweep = wpir::ReplicatedMaxlGainSweep(n, files);
      CHECK(sweep.all_negative);
      if (files > 3) CHECK(sweep.strictly_decreasing);
    }
  }
}

TEST_CASE("worst-case gain sweep scales the Maxl diagnostic") {
  for (int n = 2; n <= 4; ++n) {
    for (int files = 3; files <= 7; ++files) {
      const auto params = wpir::MakeParams(Setting::kReplicated, n, 1, files);
      const auto diag = wpir::DCoefficients(params, Metric::kMaxl);
      const auto sweep = wpir::ReplicatedMaxlGainSweep(n, files);
      double n_pow = 1.0;
      for (int i = 0; i < files; ++i) n_pow *= n;
      for (int m = 1; m <= files - 2; ++m) {
        const double rescaled = sweep.values[m - 1] / (n_pow * (m + 1));
        CHECK(std::abs(diag.d[m - 1] - rescaled) <= 1e-12);
      }
    }
  }
}

TEST_CASE("coded worst-case term ratios") {
  const double y0 = wpir::kMaxlMinInverseRatio;
  CHECK(std::abs(wpir::MaxlTermRatio(3, 1, y0) - 1.570) <= 0.002);
  CHECK(std::abs(wpir::MaxlTermRatio(4, 1, y0) - 1.233) <= 0.002);
  CHECK(std::abs(wpir::MaxlTermRatio(5, 1, y0) - 1.133) <= 0.002);
  CHECK(std::abs(wpir::MaxlTermRatio(4, 2, y0) - 2.032) <= 0.002);
  CHECK(std::abs(wpir::MaxlTermRatio(5, 2, y0) - 1.416) <= 0.002);
  CHECK(std::abs(wpir::MaxlTermRatio(6, 2, y0) - 1.225) <= 0.002);
  CHECK(std::abs(wpir::MaxlTermRatio(7, 2, y0) - 1.138) <= 0.002);

  const auto table = wpir::MaxlTermRatioTable(y0, 7);
  CHECK(table.all_above_one);
  const auto wide = wpir::MaxlTermRatioTable(10.0, 8);
  CHECK(wide.all_above_one);
  CHECK_THROWS_AS(wpir::MaxlTermRatioTable(1.2, 7),
                  wpir::InvalidArgumentError);
}

TEST_CASE("term ratio is increasing in y and obeys the power bound") {
  for (int files = 3; files <= 8; ++files) {
    for (int m = 1; m <= files - 2; ++m) {
      double prev = wpir::MaxlTermRatio(files, m, wpir::kMaxlMinInverseRatio);
      for (int i = 1; i <= 50; ++i) {
        const double y = wpir::kMaxlMinInverseRatio + 0.2 * i;
        const double cur = wpir::MaxlTermRatio(files, m, y);
        CHECK(cur > prev);
        prev = cur;

        // (y^(M-1)-1)/(y^(M-m-1)-1) > y^m.
        double y_m1 = 1.0;
        for (int k = 0; k < files - 1; ++k) y_m1 *= y;
        double y_sub = 1.0;
        for (int k = 0; k < files - m - 1; ++k) y_sub *= y;
        double y_m = 1.0;
        for (int k = 0; k < m; ++k) y_m *= y;
        CHECK((y_m1 - 1.0) / (y_sub - 1.0) > y_m);
      }
    }
  }
}

TEST_CASE("compensated summation") {
  const double terms[] = {1e16, 1.0, -1e16};
  CHECK(wpir::CompensatedSum(terms) == 1.0);
}
