#include "prophet/distribution.hpp"

#include "prophet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prophet {

Distribution Distribution::two_point(double a) {
    if (!(a >= 0.0) || a >= 1.0)
        throw std::invalid_argument("two_point: probability a must be in [0,1)");
    Distribution d;
    d.kind_ = DistKind::TwoPoint;
    d.a_ = a;
    return d;
}

Distribution Distribution::uniform01() {
    Distribution d;
    d.kind_ = DistKind::Uniform01;
    return d;
}

Distribution Distribution::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
    Distribution d;
    d.kind_ = DistKind::Exponential;
    d.rate_ = rate;
    return d;
}

Distribution Distribution::empirical(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("empirical: value list is empty");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("empirical: values must be nonnegative");
    std::sort(values.begin(), values.end());
    Distribution d;
    d.kind_ = DistKind::Empirical;
    d.values_ = std::move(values);
    return d;
}

Distribution Distribution::adversarial(int n) {
    // The exponent representation keeps rank arithmetic exact; n is capped
    // so that scaled values n^{3(s - s_top)} stay meaningful in doubles.
    if (n < 1 || n > 12)
        throw std::invalid_argument("adversarial: n must be in [1, 12]");
    Distribution d;
    d.kind_ = DistKind::Adversarial;
    d.adv_n_ = n;
    return d;
}

long long Distribution::adversarial_top_exponent() const {
    const long long n = adv_n_;
    return n * n * n + 1;
}

double Distribution::sample(Rng& rng) const {
    switch (kind_) {
    case DistKind::TwoPoint:
        return rng.next_u01() < a_ ? 0.0 : 1.0;
    case DistKind::Uniform01:
        return rng.next_u01();
    case DistKind::Exponential:
        return -std::log1p(-rng.next_u01()) / rate_;
    case DistKind::Empirical:
        return values_[rng.next_below(values_.size())];
    case DistKind::Adversarial: {
        const long long cube = static_cast<long long>(adv_n_) * adv_n_ * adv_n_;
        const double p_top = 1.0 / (static_cast<double>(adv_n_) * adv_n_);
        if (rng.next_u01() < p_top) return static_cast<double>(cube + 1);
        return static_cast<double>(1 + rng.next_below(static_cast<uint64_t>(cube)));
    }
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    switch (kind_) {
    case DistKind::TwoPoint:
        if (x < 0.0) return 0.0;
        if (x < 1.0) return a_;
        return 1.0;
    case DistKind::Uniform01:
        return std::clamp(x, 0.0, 1.0);
    case DistKind::Exponential:
        return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
    case DistKind::Empirical: {
        const auto it = std::upper_bound(values_.begin(), values_.end(), x);
        return static_cast<double>(it - values_.begin()) / values_.size();
    }
    case DistKind::Adversarial: {
        // support is {1, ..., n^3, n^3+1} in exponent space
        const double cube = static_cast<double>(adv_n_) * adv_n_ * adv_n_;
        const double p_top = 1.0 / (static_cast<double>(adv_n_) * adv_n_);
        const double s = std::floor(x);
        if (s < 1.0) return 0.0;
        if (s >= cube + 1.0) return 1.0;
        const double p_low = (1.0 - p_top) / cube;
        return std::min(s, cube) * p_low;
    }
    }
    return 0.0;
}

double Distribution::expected_max(int n) const {
    if (n < 1) throw std::invalid_argument("expected_max: n must be >= 1");
    switch (kind_) {
    case DistKind::TwoPoint:
        // max is 1 unless all n draws hit the atom at 0
        return -std::expm1(n * std::log(a_ == 0.0 ? 0.0 : a_));
    case DistKind::Uniform01:
        return num::integrate_rel([n](double x) { return -std::expm1(n * std::log(x)); },
                                  0.0, 1.0, 1e-10);
    case DistKind::Exponential: {
        // substitute u = exp(-rate x): integral of (1 - (1-u)^n) / (rate u)
        const double r = rate_;
        return num::integrate_rel(
            [n, r](double u) {
                if (u <= 0.0) return static_cast<double>(n) / r;
                return -std::expm1(n * std::log1p(-u)) / (r * u);
            },
            0.0, 1.0, 1e-10);
    }
    case DistKind::Empirical: {
        // finite support: sum of v * (F(v)^n - F(v-)^n) over distinct values
        double total = 0.0;
        double prev_cum = 0.0;
        size_t i = 0;
        const double m = static_cast<double>(values_.size());
        while (i < values_.size()) {
            size_t j = i;
            while (j < values_.size() && values_[j] == values_[i]) ++j;
            const double cum = static_cast<double>(j) / m;
            total += values_[i] * (std::pow(cum, n) - std::pow(prev_cum, n));
            prev_cum = cum;
            i = j;
        }
        return total;
    }
    case DistKind::Adversarial: {
        const double scaled = expected_max_scaled(n);
        const long long top = adversarial_top_exponent();
        return scaled * std::exp(3.0 * static_cast<double>(top) * std::log(adv_n_));
    }
    }
    throw std::invalid_argument("expected_max: unsupported distribution");
}

double Distribution::adversarial_scaled_value(double exponent) const {
    const long long top = adversarial_top_exponent();
    return std::exp(3.0 * (exponent - static_cast<double>(top)) * std::log(adv_n_));
}

double Distribution::expected_max_scaled(int n) const {
    if (kind_ != DistKind::Adversarial)
        throw std::invalid_argument("expected_max_scaled: adversarial only");
    const long long cube = static_cast<long long>(adv_n_) * adv_n_ * adv_n_;
    const double p_top = 1.0 / (static_cast<double>(adv_n_) * adv_n_);
    const double p_low = (1.0 - p_top) / static_cast<double>(cube);
    double total = 0.0;
    double prev_cum_pow = 0.0;   // F(s-1)^n
    for (long long s = 1; s <= cube + 1; ++s) {
        const double cum = s <= cube ? s * p_low : 1.0;
        const double cum_pow = std::pow(cum, n);
        total += adversarial_scaled_value(static_cast<double>(s)) * (cum_pow - prev_cum_pow);
        prev_cum_pow = cum_pow;
    }
    return total;
}

std::string Distribution::to_string() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    switch (kind_) {
    case DistKind::TwoPoint:
        os << "two-point:" << a_;
        break;
    case DistKind::Uniform01:
        os << "uniform01";
        break;
    case DistKind::Exponential:
        os << "exp:" << rate_;
        break;
    case DistKind::Empirical:
        os << "empirical:<" << values_.size() << " values>";
        break;
    case DistKind::Adversarial:
        os << "adversarial:" << adv_n_;
        break;
    }
    return os.str();
}

} // namespace prophet
