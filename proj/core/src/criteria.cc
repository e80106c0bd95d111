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

#include "wpir/criteria.h"

#include <cmath>

namespace wpir {

namespace {

struct FamilyTraits {
  double offset;     // added to ln(1+x) in the denominator
  double aux_sign;   // sign of the a(1+x)(ln(1+x)+offset) term in phi
  double min_x;
  double max_x;
  double anchor;
  double min_exponent;
};

FamilyTraits Traits(RatioFamily family) {
  if (family == RatioFamily::kPlain) {
    return {0.0, +1.0, 1.0, 50.0, 1.0, kPlainRatioMinExponent};
  }
  return {kRatioDenominatorOffset, -1.0, 6.0, 100.0, 6.0,
          kOffsetRatioMinExponent};
}

double Ratio(double a, double x, double offset) {
  return (1.0 - std::exp(-a * x)) / (std::log1p(x) + offset);
}

// phi(x) = e^(a*x) - 1 +/- a*(1+x)*(ln(1+x) + offset). Positivity of the
// offset-family phi is exactly the sign of -f'; the value at the anchor
// nearly cancels there, hence the compensated accumulation.
double AuxMargin(double a, double x, const FamilyTraits& traits) {
  const double terms[] = {
      std::exp(a * x), -1.0,
      traits.aux_sign * a * (1.0 + x) * (std::log1p(x) + traits.offset)};
  return CompensatedSum(terms);
}

double AuxSlope(double a, double x, const FamilyTraits& traits) {
  return a * (std::exp(a * x) + 1.0 + traits.offset + std::log1p(x));
}

double AuxCurvature(double a, double x) {
  return a * (a * std::exp(a * x) + 1.0 / (1.0 + x));
}

MonotonicityReport CheckRatio(RatioFamily family, double exponent,
                              std::span<const double> grid) {
  const FamilyTraits traits = Traits(family);
  if (!(exponent >= traits.min_exponent)) {
    throw InvalidArgumentError("exponent " + std::to_string(exponent) +
                               " is below the hypothesis floor " +
                               std::to_string(traits.min_exponent));
  }
  if (grid.size() < 2) {
    throw InvalidArgumentError("monotonicity grid needs at least 2 points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < traits.min_x || grid[i] > traits.max_x) {
      throw InvalidArgumentError("grid point outside the admissible domain");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidArgumentError("grid must be strictly increasing");
    }
  }

  MonotonicityReport report;
  report.family = family;
  report.exponent = exponent;
  report.grid_points = grid.size();
  report.strictly_decreasing = true;
  double prev = Ratio(exponent, grid[0], traits.offset);
  double min_diff = 0.0;
  double max_diff = 0.0;
  bool first = true;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = Ratio(exponent, grid[i], traits.offset);
    const double diff = cur - prev;
    if (first || diff < min_diff) min_diff = diff;
    if (first || diff > max_diff) max_diff = diff;
    first = false;
    if (!(diff < 0.0) && !report.witness.has_value()) {
      report.strictly_decreasing = false;
      report.witness = grid[i - 1];
    }
    prev = cur;
  }
  report.min_difference = min_diff;
  report.max_difference = max_diff;
  report.aux_at_anchor = AuxMargin(exponent, traits.anchor, traits);
  report.aux_slope_at_anchor = AuxSlope(exponent, traits.anchor, traits);
  double min_curv = AuxCurvature(exponent, grid[0]);
  for (double x : grid) {
    min_curv = std::min(min_curv, AuxCurvature(exponent, x));
  }
  report.min_aux_curvature = min_curv;
  return report;
}

double PowInt(double base, int exponent) {
  double value = 1.0;
  for (int i = 0; i < exponent; ++i) value *= base;
  return value;
}

}  // namespace

double GainCriterion(int m_prime, int n_files, double ratio) {
  if (n_files < 3) {
    throw InvalidArgumentError("gain criterion needs at least 3 files");
  }
  if (m_prime < 1 || m_prime > n_files - 2) {
    throw InvalidArgumentError("interior index " + std::to_string(m_prime) +
                               " outside [1, " + std::to_string(n_files - 2) +
                               "]");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidArgumentError("ratio must lie in (0, 1)");
  }
  const double numerator = PowInt(ratio, m_prime + 1) - PowInt(ratio, n_files);
  const double denominator = 1.0 - PowInt(ratio, n_files - 1);
  const double log_deficit =
      1.0 - std::log2(static_cast<double>(m_prime + 1)) /
                std::log2(static_cast<double>(n_files));
  return numerator / denominator - log_deficit;
}

GainTable ComputeGainTable(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidArgumentError("ratio must lie in (0, 1)");
  }
  GainTable table;
  table.ratio = ratio;
  for (int files = GainTable::kMinFiles; files <= GainTable::kMaxFiles;
       ++files) {
    for (int m = 1; m <= GainTable::kMaxInterior; ++m) {
      if (m <= files - 2) {
        table.cells[files - GainTable::kMinFiles][m - 1] =
            GainCriterion(m, files, ratio);
      }
    }
  }
  return table;
}

MonotonicityReport CheckPlainRatio(double exponent,
                                   std::span<const double> grid) {
  return CheckRatio(RatioFamily::kPlain, exponent, grid);
}

MonotonicityReport CheckOffsetRatio(double exponent,
                                    std::span<const double> grid) {
  return CheckRatio(RatioFamily::kOffset, exponent, grid);
}

std::vector<double> LinearGrid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) {
    throw InvalidArgumentError("degenerate grid request");
  }
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + step * static_cast<double>(i);
  }
  grid.back() = hi;
  return grid;
}

SignSweep ReplicatedMaxlGainSweep(int n_servers, int n_files) {
  if (n_servers < 2 || n_files < 3) {
    throw InvalidArgumentError("sweep needs N >= 2 and M >= 3");
  }
  const double n = n_servers;
  const double m_files = n_files;
  const double shared = m_files * n / (m_files + n - 1.0) *
                        (PowInt(n, n_files - 1) - 1.0);
  SignSweep sweep;
  for (int m = 1; m <= n_files - 2; ++m) {
    sweep.values.push_back((m + 1) * (PowInt(n, n_files - m - 1) - 1.0) -
                           shared);
  }
  sweep.all_negative = true;
  for (double v : sweep.values) {
    if (!(v < 0.0)) sweep.all_negative = false;
  }
  sweep.strictly_decreasing = true;
  for (std::size_t i = 1; i < sweep.values.size(); ++i) {
    const double diff = sweep.values[i] - sweep.values[i - 1];
    sweep.differences.push_back(diff);
    if (!(diff < 0.0)) sweep.strictly_decreasing = false;
  }
  return sweep;
}

double MaxlTermRatio(int n_files, int interior, double y) {
  if (n_files < 3 || interior < 1 || interior > n_files - 2) {
    throw InvalidArgumentError("term ratio indices out of range");
  }
  if (!(y > 1.0)) {
    throw InvalidArgumentError("term ratio requires y > 1");
  }
  const double m_files = n_files;
  return 1.0 / (interior + 1) * (m_files * y / (m_files + y - 1.0)) *
         ((PowInt(y, n_files - 1) - 1.0) /
          (PowInt(y, n_files - interior - 1) - 1.0));
}

TermRatioTable MaxlTermRatioTable(double y, int max_files) {
  if (!(y >= kMaxlMinInverseRatio)) {
    throw InvalidArgumentError("y is below the admissible floor 25/17");
  }
  if (max_files < 3) {
    throw InvalidArgumentError("table needs max_files >= 3");
  }
  TermRatioTable table;
  table.y = y;
  table.all_above_one = true;
  for (int m = 1; m <= max_files - 2; ++m) {
    for (int files = m + 2; files <= max_files; ++files) {
      const double value = MaxlTermRatio(files, m, y);
      table.entries.push_back({files, m, value});
      if (!(value > 1.0)) table.all_above_one = false;
    }
  }
  return table;
}

double CompensatedSum(std::span<const double> terms) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double term : terms) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

}  // namespace wpir
