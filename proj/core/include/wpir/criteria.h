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
//
// Numerical verification of the scalar criteria behind the threshold
// results: the normalized interior-gain criterion g, monotonicity of two
// exponential-over-log ratio families, and the sign/ratio functions that
// settle the worst-case-metric interior directions. Checks are grid-based:
// strict discrete differences plus closed-form derivative signs, which is
// what can be verified without symbolic machinery.

#ifndef WPIR_CRITERIA_H_
#define WPIR_CRITERIA_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "wpir/model.h"

namespace wpir {

// Hypothesis constants for the ratio families. The plain family covers every
// admissible exponent a = ln(N) via a >= 0.627 < ln 2; the offset family
// covers a = ln(N/s) via a >= 0.2448 = -ln(0.7828), the value induced by the
// Mil ratio threshold.
inline constexpr double kPlainRatioMinExponent = 0.627;
inline constexpr double kOffsetRatioMinExponent = 0.2448;
inline constexpr double kRatioDenominatorOffset = 0.005;
// 1/0.68: smallest inverse storage ratio admitted by the Maxl threshold.
inline constexpr double kMaxlMinInverseRatio = 25.0 / 17.0;

// Normalized interior-gain criterion for the Mil metric:
//   g(m', M) = (q^(m'+1) - q^M) / (1 - q^(M-1)) - (1 - log2(m'+1)/log2(M)).
// Negative values certify that interior support point m' cannot beat the
// two-point distribution; g relates to the Mil diagnostic coefficient by the
// positive factor (1 - q^(M-1)). Requires M >= 3, 1 <= m' <= M-2, q in (0,1).
double GainCriterion(int m_prime, int n_files, double ratio);

// g evaluated for M in [3, 8] and m' in [1, min(5, M-2)]; cells with
// m' > M-2 are not applicable.
struct GainTable {
  static constexpr int kMinFiles = 3;
  static constexpr int kMaxFiles = 8;
  static constexpr int kMaxInterior = 5;

  double ratio = 0.0;
  // cells[M - kMinFiles][m' - 1]
  std::array<std::array<std::optional<double>, kMaxInterior>,
             kMaxFiles - kMinFiles + 1>
      cells;
};

GainTable ComputeGainTable(double ratio);

// The two ratio families whose strict decrease underpins the Mil threshold
// analysis: f(x) = (1 - e^(-a*x)) / (ln(1+x) + offset), with offset 0 on
// x >= 1 (plain) and offset 0.005 on x >= 6 (offset variant).
enum class RatioFamily {
  kPlain,
  kOffset,
};

// Grid verdict for one ratio check, with the auxiliary margin function phi
// evaluated at the domain anchor (x = 1 plain, x = 6 offset). phi at the
// anchor is a near-cancellation for the offset family and is accumulated
// with compensated summation.
struct MonotonicityReport {
  RatioFamily family = RatioFamily::kPlain;
  double exponent = 0.0;  // a
  std::size_t grid_points = 0;
  double min_difference = 0.0;  // over consecutive grid values of f
  double max_difference = 0.0;
  bool strictly_decreasing = false;
  std::optional<double> witness;  // left endpoint of a violating step
  double aux_at_anchor = 0.0;     // phi(anchor)
  double aux_slope_at_anchor = 0.0;
  double min_aux_curvature = 0.0;  // min of phi'' over the grid
};

// Plain family: requires a >= 0.627 and a sorted grid inside [1, 50].
MonotonicityReport CheckPlainRatio(double exponent,
                                   std::span<const double> grid);

// Offset family: requires a >= 0.2448 and a sorted grid inside [6, 100].
MonotonicityReport CheckOffsetRatio(double exponent,
                                    std::span<const double> grid);

// Evenly spaced grid helper, endpoints included.
std::vector<double> LinearGrid(double lo, double hi, std::size_t points);

// Scaled interior-direction gain for the worst-case metric on replicated
// storage: f(m') = (m'+1)(N^(M-m'-1) - 1) - (M*N/(M+N-1))(N^(M-1) - 1) over
// m' in [1, M-2]. Equals N^M * (m'+1) times the Maxl diagnostic coefficient;
// all values negative and strictly decreasing certifies the replicated
// optimality claim.
struct SignSweep {
  std::vector<double> values;       // f(m'), m' = 1..M-2
  std::vector<double> differences;  // f(m'+1) - f(m'), empty when M = 3
  bool all_negative = false;
  bool strictly_decreasing = false;
};

SignSweep ReplicatedMaxlGainSweep(int n_servers, int n_files);

// Term ratio settling the coded worst-case-metric interior directions:
//   ratio(M, m, y) = (1/(m+1)) * (M*y/(M+y-1)) * ((y^(M-1)-1)/(y^(M-m-1)-1)),
// strictly increasing in y. Values above 1 certify a negative interior
// gain (in the plain diagnostic sense). Requires y > 1, 1 <= m <= M-2.
double MaxlTermRatio(int n_files, int interior, double y);

struct TermRatioEntry {
  int n_files = 0;
  int interior = 0;
  double value = 0.0;
};

struct TermRatioTable {
  double y = 0.0;
  std::vector<TermRatioEntry> entries;  // M in [m+2, max_files], m >= 1
  bool all_above_one = false;
};

// Requires y >= 25/17 and max_files >= 3.
TermRatioTable MaxlTermRatioTable(double y, int max_files);

// Neumaier-compensated sum; used where terms nearly cancel.
double CompensatedSum(std::span<const double> terms);

}  // namespace wpir

#endif  // WPIR_CRITERIA_H_
