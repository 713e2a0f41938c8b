// Copyright 2026 The tessfact Authors. All Rights Reserved.
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

#pragma once

#include <cmath>
#include <cstddef>

namespace tessfact::detail {

/// Adaptive Simpson with Richardson correction. Subdivision stops once
/// `max_intervals` panels exist; the remaining panels are accepted as is.
template <class F>
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(F f, double abs_tol, std::size_t max_intervals)
      : f_(f), tol_(abs_tol), max_intervals_(max_intervals) {}

  double operator()(double a, double b) {
    intervals_ = 1;
    const double fa = f_(a), fb = f_(b), m = 0.5 * (a + b), fm = f_(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return refine(a, b, fa, fm, fb, whole, tol_, 0);
  }

  std::size_t intervals() const noexcept { return intervals_; }

 private:
  double refine(double a, double b, double fa, double fm, double fb, double whole,
                double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f_(lm), frm = f_(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    // A few forced levels keep a symmetric integrand from fooling the first test.
    if (depth >= 4 && (std::abs(diff) <= 15.0 * tol || intervals_ >= max_intervals_ ||
                       depth > 50)) {
      return left + right + diff / 15.0;
    }
    ++intervals_;
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  F f_;
  double tol_;
  std::size_t max_intervals_;
  std::size_t intervals_ = 0;
};

template <class F>
double integrate(F f, double a, double b, double abs_tol = 1e-9,
                 std::size_t max_intervals = 10000) {
  if (!(b > a)) return 0.0;
  return AdaptiveSimpson<F>(f, abs_tol, max_intervals)(a, b);
}

}  // namespace tessfact::detail
