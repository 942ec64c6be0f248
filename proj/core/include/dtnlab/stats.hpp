#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace dtnlab {

enum class StatMethod { paired_t, wilcoxon };

std::string_view to_string(StatMethod m);

struct StatTestResult {
    StatMethod method = StatMethod::paired_t;
    double statistic = 0.0; // t for the t-test, W = min(W+, W-) for Wilcoxon
    double p_value = 1.0;   // two-sided
    int n = 0;              // effective sample count (zero diffs removed for Wilcoxon)
    bool significant = false; // at alpha = 0.05
};

inline constexpr double kAlpha = 0.05;

/// Two-sided paired t-test on the differences xs - ys. Sample standard
/// deviation uses the n-1 denominator; the p-value comes from the Student-t
/// CDF with n-1 degrees of freedom.
/// Throws on length mismatch, n < 2, or zero-variance differences (a
/// degenerate input is an error, not p = 0).
StatTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys);

/// Two-sided Wilcoxon signed-rank test on xs - ys. Zero differences are
/// dropped; absolute differences are ranked with midranks for ties. For
/// n <= 20 the p-value is exact (full enumeration of the 2^n sign
/// assignments); beyond that a normal approximation with tie and continuity
/// corrections is used.
/// Throws on length mismatch or when every difference is zero.
StatTestResult wilcoxon_signed_rank(std::span<const double> xs, std::span<const double> ys);

namespace detail {

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation (Lentz). Accurate to ~1e-14 over the range used here.
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

/// Standard normal CDF.
double normal_cdf(double z);

} // namespace detail

} // namespace dtnlab
