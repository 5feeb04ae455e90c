#pragma once

#include <functional>
#include <span>
#include <vector>

namespace xchg {

// Welford running mean/variance.
class RunningStats {
 public:
  void add(double x);
  long long count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;        // sample variance
  double std_error() const;       // sqrt(var / count)

 private:
  long long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Standard error of a time/batch-correlated series via batch means.
double batch_means_std_error(std::span<const double> batch_values);

// Kolmogorov asymptotic tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
KsResult ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit ols_fit(std::span<const double> x, std::span<const double> y);

}  // namespace xchg
