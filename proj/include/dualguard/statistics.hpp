#pragma once

#include <vector>

namespace dualguard {

double mean(const std::vector<double>& xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_stddev(const std::vector<double>& xs);
double standard_error(const std::vector<double>& xs);

/// Two-sided p-value of |T| >= |t| for Student's t with `dof` degrees of
/// freedom.
double student_t_two_sided(double t, double dof);

struct PairedTest {
  double t = 0.0;
  double p = 1.0;
  double dof = 0.0;
};

/// Paired t-test on a - b. Zero-variance differences give p = 1 when the mean
/// difference is also zero and p = 0 otherwise.
PairedTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace dualguard
