#ifndef CAC_STATS_HPP
#define CAC_STATS_HPP

#include <vector>

namespace cac {

double mean(const std::vector<double>& xs);
// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
double sample_stddev(const std::vector<double>& xs);

// Regularized incomplete beta function I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided 95% Student-t critical value t_{0.975, df}, df >= 1.
double student_t_975(int df);

// Half-width of the 95% confidence interval of the mean across replications.
double ci_halfwidth_95(const std::vector<double>& xs);

}  // namespace cac

#endif
