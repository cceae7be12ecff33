#include "nilmcx/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nilmcx {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double gauss_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

// Group powers as plain doubles, for binary searching sample windows.
std::vector<double> group_powers(const AggregatedValueSet& values) {
    std::vector<double> mus;
    mus.reserve(values.groups.size());
    for (const auto& g : values.groups) mus.push_back(g.power.watts());
    return mus;
}

void check_domain(const AggregatedValueSet& values, const OverlapKernel& kernel) {
    if (values.values.empty()) {
        throw ValidationError("aggregated value set is empty");
    }
    if (std::abs(kernel.domain_max() - values.p_max.watts()) > 1e-9) {
        throw ValidationError("kernel domain_max does not match the value set's P_M");
    }
}

}  // namespace

OverlapKernel::OverlapKernel(double sigma, double domain_max, double grid_step, OverlapMode mode,
                             double prune_sigmas)
    : sigma_(sigma),
      domain_max_(domain_max),
      grid_step_(grid_step > 0.0 ? grid_step : sigma / 50.0),
      mode_(mode),
      prune_sigmas_(prune_sigmas) {
    if (!(sigma_ > 0.0)) throw ValidationError("kernel sigma must be > 0");
    if (!(domain_max_ > 0.0)) throw ValidationError("kernel domain_max must be > 0");
    if (grid_step_ > sigma_ / 10.0) {
        throw ValidationError("numeric integration grid step must be <= sigma/10");
    }
    if (!(prune_sigmas_ > 0.0)) throw ValidationError("prune window must be > 0");
}

double ovl(double mu1, double mu2, const OverlapKernel& kernel) {
    // Canonical argument order makes ovl(a,b) == ovl(b,a) bit-exact.
    const double lo_mu = std::min(mu1, mu2);
    const double hi_mu = std::max(mu1, mu2);
    const double s = kernel.sigma();

    if (kernel.mode() == OverlapMode::analytic_fast_path && lo_mu >= 6.0 * s &&
        hi_mu <= kernel.domain_max() - 6.0 * s) {
        // Equal-sigma Gaussians cross at the midpoint; the min integrates to
        // erfc(d / (2 sqrt(2) sigma)). Valid once truncation tails are < 1e-9.
        return std::erfc((hi_mu - lo_mu) / (2.0 * std::numbers::sqrt2 * s));
    }

    // Trapezoid on [0, P_M]; the integrand is below 1e-22 further than
    // 10 sigma from both means, so the range is clipped there.
    const double lo = std::max(0.0, lo_mu - 10.0 * s);
    const double hi = std::min(kernel.domain_max(), hi_mu + 10.0 * s);
    if (hi <= lo) return 0.0;

    auto n = static_cast<std::size_t>(std::ceil((hi - lo) / kernel.grid_step()));
    n = std::max<std::size_t>(n, 8);
    const double h = (hi - lo) / static_cast<double>(n);
    double prev = std::min(gauss_pdf(lo, lo_mu, s), gauss_pdf(lo, hi_mu, s));
    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = lo + h * static_cast<double>(i);
        const double cur = std::min(gauss_pdf(x, lo_mu, s), gauss_pdf(x, hi_mu, s));
        acc += 0.5 * (prev + cur) * h;
        prev = cur;
    }
    return std::clamp(acc, 0.0, 1.0);
}

double complexity_of_value(double p_k, const AggregatedValueSet& values, const OverlapKernel& kernel) {
    check_domain(values, kernel);
    const double window = kernel.prune_window();
    double c = 0.0;
    // Fixed ascending-j summation keeps results independent of any caller
    // side parallelism.
    for (const auto& g : values.groups) {
        const double mu = g.power.watts();
        if (std::abs(mu - p_k) > window) continue;
        c += static_cast<double>(g.multiplicity) * ovl(p_k, mu, kernel);
    }
    return c;
}

ComplexitySpectrum spectrum(const AggregatedValueSet& values, const OverlapKernel& kernel) {
    check_domain(values, kernel);
    std::vector<double> per_group(values.groups.size());
    for (std::size_t g = 0; g < values.groups.size(); ++g) {
        per_group[g] = complexity_of_value(values.groups[g].power.watts(), values, kernel);
    }

    ComplexitySpectrum spec;
    spec.sigma = kernel.sigma();
    spec.entries.reserve(values.values.size());
    double sum = 0.0;
    double max = 0.0;
    for (const auto& value : values.values) {
        const double c = per_group[value.group];
        spec.entries.push_back({value.power, c});
        sum += c;
        max = std::max(max, c);
    }
    spec.mean = sum / static_cast<double>(spec.entries.size());
    spec.max = max;
    return spec;
}

TimeSeriesComplexity timeseries_complexity(const PowerTrace& trace, const std::string& channel,
                                           const AggregatedValueSet& values, const OverlapKernel& kernel) {
    check_domain(values, kernel);
    const auto& ch = trace.single_channel(channel);
    if (ch.samples.empty()) {
        throw ValidationError("trace channel " + ch.name + " is empty");
    }

    const auto mus = group_powers(values);
    const double window = kernel.prune_window();

    TimeSeriesComplexity out;
    out.per_sample.reserve(ch.samples.size());
    double sum = 0.0;
    for (const double p : ch.samples) {
        const auto first = std::lower_bound(mus.begin(), mus.end(), p - window);
        const auto last = std::upper_bound(first, mus.end(), p + window);
        double c = 0.0;
        for (auto it = first; it != last; ++it) {
            const auto g = static_cast<std::size_t>(it - mus.begin());
            c += static_cast<double>(values.groups[g].multiplicity) * ovl(p, *it, kernel);
        }
        out.per_sample.push_back(c);
        sum += c;
        out.max = std::max(out.max, c);
    }
    out.c_total = sum / static_cast<double>(out.per_sample.size());
    return out;
}

HistogramStatesResult histogram_states(const PowerTrace& trace, const std::string& channel,
                                       double bin_width, double floor_threshold) {
    if (!(bin_width > 0.0)) throw ConfigError("histogram bin width must be > 0");
    if (floor_threshold < 0.0) throw ConfigError("floor threshold must be >= 0");
    const auto& ch = trace.single_channel(channel);
    if (ch.samples.empty()) {
        throw ValidationError("trace channel " + ch.name + " is empty");
    }

    HistogramStatesResult result;
    result.states.metadata_free = true;

    // Bin everything at or above the floor; bins are anchored at 0 W.
    std::size_t max_bin = 0;
    std::vector<std::size_t> counts;
    std::vector<double> sums;
    bool any = false;
    for (const double s : ch.samples) {
        if (s < floor_threshold) continue;
        const auto bin = static_cast<std::size_t>(s / bin_width);
        if (bin + 2 > counts.size()) {
            counts.resize(bin + 2, 0);
            sums.resize(bin + 2, 0.0);
        }
        ++counts[bin];
        sums[bin] += s;
        max_bin = std::max(max_bin, bin);
        any = true;
    }
    if (!any) {
        result.warnings.push_back("no samples above the floor threshold; no states detected");
        return result;
    }

    // One state per connected run of non-empty bins, at the run's
    // count-weighted mean. Near-equal plateaus land in one run and merge
    // instead of double counting, which would overstate the profile
    // complexity.
    std::vector<std::pair<double, std::size_t>> states;  // (weighted mean, count)
    std::size_t b = 0;
    while (b <= max_bin) {
        if (counts[b] == 0) {
            ++b;
            continue;
        }
        double sum = 0.0;
        std::size_t cnt = 0;
        while (b <= max_bin && counts[b] > 0) {
            sum += sums[b];
            cnt += counts[b];
            ++b;
        }
        states.emplace_back(sum / static_cast<double>(cnt), cnt);
    }

    auto& set = result.states;
    set.values.push_back(AggregatedValue{Power::from_centiwatts(0), 0, 0});  // implicit all-off state
    for (const auto& [watts, count] : states) {
        const auto cw = static_cast<std::int64_t>(std::llround(watts * Power::scale));
        set.values.push_back(AggregatedValue{Power::from_centiwatts(cw), set.values.size(), 0});
    }
    std::sort(set.values.begin(), set.values.end(),
              [](const AggregatedValue& a, const AggregatedValue& b) { return a.power < b.power; });
    for (auto& value : set.values) {
        if (set.groups.empty() || set.groups.back().power != value.power) {
            set.groups.push_back(ValueGroup{value.power, 0});
        }
        ++set.groups.back().multiplicity;
        value.group = static_cast<std::uint32_t>(set.groups.size() - 1);
    }
    set.p_max = set.values.back().power;
    return result;
}

}  // namespace nilmcx
