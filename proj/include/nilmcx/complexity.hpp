#pragma once

#include <string>
#include <vector>

#include "nilmcx/domain.hpp"

namespace nilmcx {

enum class OverlapMode {
    analytic_fast_path,  // closed form when both means sit well inside [0, P_M]
    numeric_oracle,      // always trapezoidal integration on the truncated domain
};

// Gaussian overlap kernel: every power value carries N(mu, sigma), truncated
// to the domain [0, P_M].
class OverlapKernel {
public:
    OverlapKernel(double sigma, double domain_max, double grid_step = 0.0,
                  OverlapMode mode = OverlapMode::analytic_fast_path, double prune_sigmas = 13.0);

    double sigma() const { return sigma_; }
    double domain_max() const { return domain_max_; }
    double grid_step() const { return grid_step_; }
    OverlapMode mode() const { return mode_; }

    // Pairs further apart than this contribute less than 1e-10 each and may
    // be skipped by the spectrum and per-sample loops.
    double prune_window() const { return prune_sigmas_ * sigma_; }
    double prune_sigmas() const { return prune_sigmas_; }

private:
    double sigma_;
    double domain_max_;
    double grid_step_;
    OverlapMode mode_;
    double prune_sigmas_;
};

// Overlapping coefficient of N(mu1, sigma) and N(mu2, sigma) on [0, P_M]:
// the area under the pointwise minimum of the two densities. Exactly
// symmetric in its arguments.
double ovl(double mu1, double mu2, const OverlapKernel& kernel);

// C_k: summed overlap of the value at p_k against every one of the M
// aggregated values, self term included (duplicates contribute one term per
// repetition).
double complexity_of_value(double p_k, const AggregatedValueSet& values, const OverlapKernel& kernel);

ComplexitySpectrum spectrum(const AggregatedValueSet& values, const OverlapKernel& kernel);

struct TimeSeriesComplexity {
    std::vector<double> per_sample;
    double c_total = 0.0;  // arithmetic mean of per_sample
    double max = 0.0;
};

TimeSeriesComplexity timeseries_complexity(const PowerTrace& trace, const std::string& channel,
                                           const AggregatedValueSet& values, const OverlapKernel& kernel);

struct HistogramStatesResult {
    AggregatedValueSet states;  // metadata_free; 0 W entry prepended when anything was found
    std::vector<std::string> warnings;
};

// Fallback for traces without appliance metadata: aggregated states are the
// modes of the power histogram, with everything below floor_threshold
// smoothed away.
HistogramStatesResult histogram_states(const PowerTrace& trace, const std::string& channel,
                                       double bin_width, double floor_threshold);

}  // namespace nilmcx
