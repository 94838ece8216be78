#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "apiwatt/error.hpp"

namespace apiwatt::stats {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

namespace detail {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kTolerance = 1e-12;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kTolerance) return h;
    }
    throw ConvergenceError("incomplete beta continued fraction", kMaxIterations);
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw StatsError("incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw StatsError("incomplete beta needs x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // The fraction converges fast only below the mean; reflect otherwise.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(X > f) for X ~ F(df1, df2).
inline double f_upper_tail(double f, double df1, double df2) {
    if (!(df1 >= 1.0) || !(df2 >= 1.0)) throw StatsError("F distribution needs df1, df2 >= 1");
    if (std::isnan(f) || f < 0.0) throw StatsError("F statistic must be non-negative");
    if (f == 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    const double x = df2 / (df2 + df1 * f);
    return std::clamp(incomplete_beta(0.5 * df2, 0.5 * df1, x), 0.0, 1.0);
}

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1]; nodes symmetric, positive half listed.
inline constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

/// Composite 16-point Gauss-Legendre over `panels` equal panels of [lo, hi].
template <typename F>
double gauss_legendre(F&& f, double lo, double hi, int panels) {
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        double acc = 0.0;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
            const double dx = half * kGlNodes[i];
            acc += kGlWeights[i] * (f(mid - dx) + f(mid + dx));
        }
        total += acc * half;
    }
    return total;
}

inline constexpr double kNormalSpan = 8.5;  // phi(8.5) ~ 1e-16

/// Composite Gauss-Legendre nodes over [-kNormalSpan, kNormalSpan] with
/// weight * phi(z) and Phi(z) precomputed, since only Phi(z - w) varies.
struct NormalRangeRule {
    std::vector<double> z;
    std::vector<double> weighted_pdf;
    std::vector<double> cdf;

    explicit NormalRangeRule(int panels) {
        const double width = 2.0 * kNormalSpan / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = -kNormalSpan + (p + 0.5) * width;
            const double half = 0.5 * width;
            for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
                for (double sign : {-1.0, 1.0}) {
                    const double zz = mid + sign * half * kGlNodes[i];
                    z.push_back(zz);
                    weighted_pdf.push_back(half * kGlWeights[i] * normal_pdf(zz));
                    cdf.push_back(normal_cdf(zz));
                }
            }
        }
    }

    /// P(range of k iid standard normals <= w), by quadrature of
    /// k * int phi(z) [Phi(z) - Phi(z - w)]^(k-1) dz.
    double operator()(double w, int k) const {
        if (w <= 0.0) return 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double inner = std::max(cdf[i] - normal_cdf(z[i] - w), 0.0);
            double power = 1.0;
            for (int e = 1; e < k; ++e) power *= inner;
            total += weighted_pdf[i] * power;
        }
        return std::min(1.0, k * total);
    }
};

// Log density of s = sqrt(chi2_df / df).
inline double log_scaled_chi_density(double s, double df) {
    const double half = 0.5 * df;
    double lf = std::log(2.0) + half * std::log(half) - std::lgamma(half) - df * 0.5 * s * s;
    if (df != 1.0) lf += (df - 1.0) * std::log(s);
    return lf;
}

}  // namespace detail

/// P(Q <= q) for the studentized range with k means and df error degrees of
/// freedom. Outer quadrature over the scaled chi density of the standard error
/// estimate, inner over the normal range probability; panels are doubled
/// until two successive estimates agree to 1e-7 (absolute accuracy 1e-6).
inline double ptukey(double q, int k, double df) {
    if (std::isnan(q) || q < 0.0) throw StatsError("studentized range needs q >= 0");
    if (k < 2) throw StatsError("studentized range needs k >= 2");
    if (!(df >= 1.0)) throw StatsError("studentized range needs df >= 1");
    if (q == 0.0) return 0.0;
    if (std::isinf(q)) return 1.0;

    constexpr double kAgreement = 1e-7;
    constexpr int kMaxRefinements = 5;

    if (std::isinf(df)) {
        int panels = 12;
        double prev = detail::NormalRangeRule(panels)(q, k);
        for (int r = 0; r < kMaxRefinements; ++r) {
            panels *= 2;
            const double next = detail::NormalRangeRule(panels)(q, k);
            if (std::fabs(next - prev) < kAgreement) return std::clamp(next, 0.0, 1.0);
            prev = next;
        }
        throw ConvergenceError("studentized range quadrature", kMaxRefinements);
    }

    // Support of the scale density: walk out from the mode until the log
    // density has dropped by 40 (relative mass below ~1e-17).
    const double mode = std::sqrt(std::max(df - 1.0, 0.0) / df);
    const double step = std::min(0.5, 1.0 / std::sqrt(2.0 * df));
    const double peak = detail::log_scaled_chi_density(std::max(mode, step * 1e-3), df);
    double lo = mode;
    while (lo > 0.0 && detail::log_scaled_chi_density(lo, df) > peak - 40.0) lo = std::max(0.0, lo - step);
    double hi = mode + step;
    while (detail::log_scaled_chi_density(hi, df) > peak - 40.0) hi += step;

    auto estimate = [&](int outer_panels, int inner_panels) {
        const detail::NormalRangeRule range(inner_panels);
        auto integrand = [&](double s) {
            return std::exp(detail::log_scaled_chi_density(s, df)) * range(q * s, k);
        };
        return detail::gauss_legendre(integrand, lo, hi, outer_panels);
    };

    int outer = 12;
    int inner = 8;
    double prev = estimate(outer, inner);
    for (int r = 0; r < kMaxRefinements; ++r) {
        outer *= 2;
        inner *= 2;
        const double next = estimate(outer, inner);
        if (std::fabs(next - prev) < kAgreement) return std::clamp(next, 0.0, 1.0);
        prev = next;
    }
    throw ConvergenceError("studentized range quadrature", kMaxRefinements);
}

struct AnovaResult {
    enum class Status {
        Ok,
        Constant,            // every observation identical: F undefined, reported as F = 0, p = 1
        ZeroWithinVariance,  // groups internally constant but different: F = +inf, p = 0
    };

    double f = 0.0;
    double p = 1.0;
    double df_between = 0.0;
    double df_within = 0.0;
    double ss_between = 0.0;
    double ss_within = 0.0;
    double ms_between = 0.0;
    double ms_within = 0.0;  // MSE
    Status status = Status::Ok;
    std::vector<double> group_means;
    std::vector<std::size_t> group_sizes;

    bool degenerate() const { return status == Status::Constant; }

    friend bool operator==(const AnovaResult&, const AnovaResult&) = default;
};

inline const char* to_string(AnovaResult::Status s) {
    switch (s) {
        case AnovaResult::Status::Ok: return "ok";
        case AnovaResult::Status::Constant: return "constant";
        case AnovaResult::Status::ZeroWithinVariance: return "zero_within_variance";
    }
    return "ok";
}

/// One-way ANOVA over `groups` (one observation sequence per group).
inline AnovaResult anova(std::span<const std::vector<double>> groups) {
    if (groups.size() < 2) throw StatsError("ANOVA needs at least 2 groups, got " + std::to_string(groups.size()));
    std::size_t total = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].size() < 2)
            throw StatsError("ANOVA needs at least 2 observations per group; group " + std::to_string(g) + " has " +
                             std::to_string(groups[g].size()));
        for (double x : groups[g])
            if (!std::isfinite(x)) throw StatsError("ANOVA observation is not finite in group " + std::to_string(g));
        total += groups[g].size();
    }

    AnovaResult r;
    const auto k = groups.size();
    r.df_between = static_cast<double>(k - 1);
    r.df_within = static_cast<double>(total - k);

    double grand_sum = 0.0;
    double scale = 0.0;
    for (const auto& g : groups) {
        double sum = 0.0;
        for (double x : g) {
            sum += x;
            scale += x * x;
        }
        r.group_means.push_back(sum / static_cast<double>(g.size()));
        r.group_sizes.push_back(g.size());
        grand_sum += sum;
    }
    const double grand_mean = grand_sum / static_cast<double>(total);
    for (std::size_t g = 0; g < k; ++g) {
        const double d = r.group_means[g] - grand_mean;
        r.ss_between += static_cast<double>(groups[g].size()) * d * d;
        for (double x : groups[g]) r.ss_within += (x - r.group_means[g]) * (x - r.group_means[g]);
    }

    // Sums of squares this small relative to the data are rounding residue.
    const double floor = 1e-20 * std::max(scale, std::numeric_limits<double>::min());
    if (r.ss_within <= floor) r.ss_within = 0.0;
    if (r.ss_between <= floor) r.ss_between = 0.0;

    r.ms_between = r.ss_between / r.df_between;
    r.ms_within = r.ss_within / r.df_within;
    if (r.ss_within == 0.0) {
        if (r.ss_between == 0.0) {
            r.status = AnovaResult::Status::Constant;
            r.f = 0.0;
            r.p = 1.0;
        } else {
            r.status = AnovaResult::Status::ZeroWithinVariance;
            r.f = std::numeric_limits<double>::infinity();
            r.p = 0.0;
        }
        return r;
    }
    r.f = r.ms_between / r.ms_within;
    r.p = f_upper_tail(r.f, r.df_between, r.df_within);
    return r;
}

inline AnovaResult anova(const std::vector<std::vector<double>>& groups) {
    return anova(std::span<const std::vector<double>>(groups));
}

struct TukeyPair {
    std::size_t group_a = 0;
    std::size_t group_b = 0;
    double mean_diff = 0.0;  // mean(a) - mean(b)
    double q = 0.0;
    double p_adj = 1.0;
    bool significant = false;

    friend bool operator==(const TukeyPair&, const TukeyPair&) = default;
};

/// Tukey-Kramer pairwise comparisons for every unordered pair (a < b), using
/// the MSE and degrees of freedom of a previously computed ANOVA.
inline std::vector<TukeyPair> tukey_hsd(const AnovaResult& fit, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw StatsError("significance level must lie in (0, 1)");
    const auto k = fit.group_means.size();
    std::vector<TukeyPair> out;
    out.reserve(k * (k - 1) / 2);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            TukeyPair pr;
            pr.group_a = a;
            pr.group_b = b;
            pr.mean_diff = fit.group_means[a] - fit.group_means[b];
            const double se = std::sqrt(0.5 * fit.ms_within *
                                        (1.0 / static_cast<double>(fit.group_sizes[a]) +
                                         1.0 / static_cast<double>(fit.group_sizes[b])));
            const double diff = std::fabs(pr.mean_diff);
            if (diff == 0.0) {
                pr.q = 0.0;
                pr.p_adj = 1.0;
            } else if (se == 0.0) {
                pr.q = std::numeric_limits<double>::infinity();
                pr.p_adj = 0.0;
            } else {
                pr.q = diff / se;
                pr.p_adj = std::clamp(1.0 - ptukey(pr.q, static_cast<int>(k), fit.df_within), 0.0, 1.0);
            }
            pr.significant = pr.p_adj < alpha;
            out.push_back(pr);
        }
    }
    return out;
}

inline std::vector<TukeyPair> tukey_hsd(std::span<const std::vector<double>> groups, double alpha) {
    return tukey_hsd(anova(groups), alpha);
}

inline std::vector<TukeyPair> tukey_hsd(const std::vector<std::vector<double>>& groups, double alpha) {
    return tukey_hsd(std::span<const std::vector<double>>(groups), alpha);
}

}  // namespace apiwatt::stats
