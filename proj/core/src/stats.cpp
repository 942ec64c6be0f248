#include "dtnlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "dtnlab/error.hpp"

namespace dtnlab {

std::string_view to_string(StatMethod m) {
    return m == StatMethod::paired_t ? "paired_t" : "wilcoxon";
}

namespace detail {

namespace {

// continued fraction for the incomplete beta function (modified Lentz)
double betacf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    const double x = dof / (dof + t * t);
    const double tail = 0.5 * incomplete_beta(dof / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

} // namespace detail

StatTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw Error("paired_t_test: sample lengths differ");
    const auto n = xs.size();
    if (n < 2) throw Error("paired_t_test: need at least 2 pairs");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = xs[i] - ys[i];

    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) throw Error("paired_t_test: zero variance in differences (degenerate input)");

    const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
    const double dof = static_cast<double>(n - 1);
    const double p = 2.0 * detail::student_t_cdf(-std::fabs(t), dof);

    StatTestResult r;
    r.method = StatMethod::paired_t;
    r.statistic = t;
    r.p_value = std::min(1.0, p);
    r.n = static_cast<int>(n);
    r.significant = r.p_value < kAlpha;
    return r;
}

StatTestResult wilcoxon_signed_rank(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw Error("wilcoxon_signed_rank: sample lengths differ");

    std::vector<double> d;
    d.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = xs[i] - ys[i];
        if (v != 0.0) d.push_back(v);
    }
    const auto n = d.size();
    if (n == 0) throw Error("wilcoxon_signed_rank: all differences are zero (degenerate input)");

    // midranks of |d|
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::fabs(d[a]) < std::fabs(d[b]); });
    std::vector<double> rank(n);
    std::vector<std::size_t> tie_sizes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && std::fabs(d[order[j]]) == std::fabs(d[order[i]])) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) rank[order[k]] = mid;
        tie_sizes.push_back(j - i);
        i = j;
    }

    double w_plus = 0.0;
    double rank_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rank_total += rank[i];
        if (d[i] > 0.0) w_plus += rank[i];
    }
    const double w_minus = rank_total - w_plus;
    const double w = std::min(w_plus, w_minus);

    StatTestResult r;
    r.method = StatMethod::wilcoxon;
    r.statistic = w;
    r.n = static_cast<int>(n);

    if (n <= 20) {
        // exact: count sign assignments with W+ <= observed min side
        const std::uint64_t total = 1ULL << n;
        std::uint64_t count = 0;
        const double tol = w + 1e-9;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1ULL << i)) s += rank[i];
            }
            if (s <= tol) ++count;
        }
        r.p_value = std::min(1.0, 2.0 * static_cast<double>(count) / static_cast<double>(total));
    } else {
        const double nn = static_cast<double>(n);
        const double mu = nn * (nn + 1.0) / 4.0;
        double tie_corr = 0.0;
        for (std::size_t t : tie_sizes) {
            const double td = static_cast<double>(t);
            tie_corr += td * td * td - td;
        }
        const double sigma = std::sqrt(nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_corr / 48.0);
        // W is the min side, so z <= 0; continuity correction toward the mean
        const double z = (w - mu + 0.5) / sigma;
        r.p_value = std::min(1.0, 2.0 * detail::normal_cdf(z));
    }
    r.significant = r.p_value < kAlpha;
    return r;
}

} // namespace dtnlab
