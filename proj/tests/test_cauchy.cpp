#include <windarea/cauchy.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace windarea;

namespace {

constexpr double pi = std::numbers::pi;

// Exact quantiles at i / (n + 1).
std::vector<double> ideal_sample(const cauchy_params &c, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cauchy_quantile(c, static_cast<double>(i + 1) / static_cast<double>(n + 1));
    return v;
}

} // namespace

TEST(CauchyCdf, Examples) {
    const cauchy_params std_c{0.0, 1.0};
    EXPECT_DOUBLE_EQ(cauchy_cdf(std_c, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(cauchy_cdf(std_c, 1.0), 0.75);
    EXPECT_DOUBLE_EQ(cauchy_cdf(std_c, -1.0), 0.25);
    EXPECT_DOUBLE_EQ(cauchy_cdf({2.0, 0.5}, 2.5), 0.75);
    // Lower tail keeps relative accuracy.
    EXPECT_NEAR(cauchy_cdf(std_c, -1e12) / (1.0 / (pi * 1e12)), 1.0, 1e-9);
    EXPECT_DOUBLE_EQ(cauchy_density(std_c, 0.0), 1.0 / pi);
}

TEST(CauchyCdf, PointMass) {
    const cauchy_params c{1.5, 0.0};
    EXPECT_EQ(cauchy_cdf(c, 1.4), 0.0);
    EXPECT_EQ(cauchy_cdf(c, 1.5), 1.0);
    EXPECT_EQ(cauchy_quantile(c, 0.3), 1.5);
}

TEST(CauchyQuantile, InvertsCdf) {
    // Positions are commensurate with sigma; a far-off position loses
    // digits in x - p before the CDF is even evaluated.
    for (double sigma : {1e-6, 1e-3, 1.0, 1e3, 1e6}) {
        for (const cauchy_params c : {cauchy_params{0.0, sigma}, cauchy_params{-2.0 * sigma, sigma}}) {
            for (double u = 0.01; u < 1.0; u += 0.01) {
                EXPECT_NEAR(cauchy_cdf(c, cauchy_quantile(c, u)), u, 1e-12) << sigma << ' ' << u;
            }
        }
    }
    EXPECT_DOUBLE_EQ(cauchy_quantile({0.0, 1.0}, 0.75), 1.0);
    EXPECT_DOUBLE_EQ(cauchy_quantile({0.0, 1.0}, 0.25), -1.0);
}

TEST(SampleCauchy, MedianAndDeterminism) {
    const cauchy_params c{-3.0, 2.0};
    const auto a = sample_cauchy(c, 20001, 9);
    EXPECT_EQ(a, sample_cauchy(c, 20001, 9));
    // sd of the median is pi sigma / (2 sqrt n) ~ 0.022.
    EXPECT_NEAR(median(a), -3.0, 0.1);
}

TEST(Median, EvenAndOdd) {
    EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
    EXPECT_THROW((void)median({}), error);
}

TEST(QuantileFit, RecoversIdealSample) {
    for (const cauchy_params c : {cauchy_params{0.0, 1.0}, {5.0, 0.1}, {-2.0, 30.0}}) {
        const auto fit = quantile_fit(ideal_sample(c, 999));
        EXPECT_NEAR(fit.position, c.position, 1e-9 * std::max(1.0, c.scale));
        EXPECT_NEAR(fit.scale, c.scale, 1e-9 * c.scale);
    }
}

TEST(QuantileFit, SmallExample) {
    // Positions (n + 1) q = 1.25, 2.5, 3.75 over {1, 2, 3, 4}.
    const auto fit = quantile_fit({4.0, 1.0, 3.0, 2.0});
    EXPECT_DOUBLE_EQ(fit.position, 2.5);
    EXPECT_DOUBLE_EQ(fit.scale, 0.5 * (3.75 - 1.25));
    try {
        (void)quantile_fit({1.0, 2.0, 3.0});
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::too_few_samples);
    }
}

TEST(QuantileFit, AffineEquivariance) {
    const auto s = sample_cauchy({0.0, 1.0}, 501, 4);
    const auto base = quantile_fit(s);
    for (auto [a, b] : {std::pair{2.0, 1.0}, {0.5, -7.0}, {-3.0, 0.0}}) {
        std::vector<double> t(s);
        for (auto &x : t) x = a * x + b;
        const auto fit = quantile_fit(t);
        EXPECT_NEAR(fit.position, a * base.position + b, 1e-12 * (1 + std::abs(b)));
        EXPECT_NEAR(fit.scale, std::abs(a) * base.scale, 1e-12);
    }
}

TEST(Estimators, TruncatedMean) {
    const std::vector<double> x{-100.0, 1.0, 2.0, 100.0};
    const std::vector<double> k{1.0, 10.0, 1000.0};
    const auto m = truncated_mean_estimator(x, k);
    EXPECT_DOUBLE_EQ(m[0], 0.5);
    EXPECT_DOUBLE_EQ(m[1], 0.75);
    EXPECT_DOUBLE_EQ(m[2], 0.75);
    EXPECT_EQ(default_k_schedule().front(), 16.0);
    EXPECT_EQ(default_k_schedule().back(), 1048576.0);
}

TEST(Estimators, SineEstimatorTendsToPosition) {
    // E sin(X / N) = exp(-sigma / N) sin(p / N) for X ~ C(p, sigma).
    const cauchy_params c{1.0, 0.2};
    const auto s = sample_cauchy(c, 200000, 21);
    const double n = 50.0;
    const double expected = n * std::exp(-c.scale / n) * std::sin(c.position / n);
    EXPECT_NEAR(sine_estimator(s, n), expected, 0.05);
    EXPECT_NEAR(sine_estimator(std::vector<double>{0.3}, 1e6), 0.3, 1e-9);
}

TEST(KolmogorovSmirnov, Examples) {
    // One point at the median: D = 1/2.
    EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{0.0}, cauchy_params{0.0, 1.0}), 0.5);
    // Ideal sample: D = 1 / (n + 1).
    EXPECT_NEAR(ks_statistic(ideal_sample({0.0, 1.0}, 99), cauchy_params{0.0, 1.0}), 0.01, 1e-12);
    EXPECT_DOUBLE_EQ(ks_two_sample({1.0, 2.0}, {3.0, 4.0}), 1.0);
    EXPECT_DOUBLE_EQ(ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}), 0.0);
    EXPECT_DOUBLE_EQ(ks_two_sample({1.0, 3.0}, {2.0, 4.0}), 0.5);
    EXPECT_NEAR(ks_critical_5(100), 0.136, 1e-12);
    EXPECT_NEAR(ks_critical_1(100), 0.163, 1e-12);
    EXPECT_NEAR(ks_two_sample_critical_1(100, 100), 1.63 * std::sqrt(0.02), 1e-12);
}

TEST(KolmogorovSmirnov, AffineInvariance) {
    const auto s = sample_cauchy({0.0, 1.0}, 300, 6);
    std::vector<double> t(s);
    for (auto &x : t) x = 4.0 * x - 2.0;
    EXPECT_NEAR(ks_statistic(s, cauchy_params{0.0, 1.0}), ks_statistic(t, cauchy_params{-2.0, 4.0}), 1e-12);
}

TEST(KolmogorovSmirnov, RejectionRateAtOnePercent) {
    // Samples from the true law exceed the 1% critical value about 1% of the time.
    const cauchy_params c{0.5, 2.0};
    const int trials = 1000;
    const std::size_t n = 400;
    int rejected = 0;
    for (int t = 0; t < trials; ++t)
        if (ks_statistic(sample_cauchy(c, n, 1000 + t), c) > ks_critical_1(n)) ++rejected;
    EXPECT_LE(rejected, 25);
}
