#include "prophet/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace prophet {

ConstantProfile::ConstantProfile(double level) : level_(level) {
    if (!(level > 0.0)) throw std::invalid_argument("ConstantProfile: level must be positive");
}

std::string ConstantProfile::to_string() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "constant:" << level_;
    return os.str();
}

double ThreeStepProfile::g(double y) const {
    if (y < 1.0 / 3.0) return 1.0;
    if (y < 2.0 / 3.0) return 4.0 / 3.0;
    return 2.0 / 3.0;
}

double ThreeStepProfile::h(double y) const {
    if (y < 1.0 / 3.0) return y;
    if (y < 2.0 / 3.0) return 1.0 / 3.0 + (y - 1.0 / 3.0) * 0.75;
    return 7.0 / 12.0 + (y - 2.0 / 3.0) * 1.5;
}

OptProfile::OptProfile(double mu_bar) : mu_bar_(mu_bar), sqrt_mu_(std::sqrt(mu_bar)) {
    if (!(mu_bar > 0.0)) throw std::invalid_argument("OptProfile: mu_bar must be positive");
}

double OptProfile::g(double y) const { return unconstrained_opt_g(y, mu_bar_); }

double OptProfile::h(double y) const {
    // integral of h'(z) = mu / (2 sqrt(mu - mu z))
    return sqrt_mu_ * (1.0 - std::sqrt(1.0 - y));
}

double unconstrained_opt_g(double y, double mu_bar) {
    return 2.0 * std::sqrt(mu_bar - mu_bar * y) / mu_bar;
}

double constrained_g(double y, double beta, double t) {
    if (y <= t || t >= 1.0) return beta + y;
    return (beta + t) * std::sqrt((y - 1.0) / (t - 1.0));
}

ConstrainedProfile::ConstrainedProfile(double beta, double t) : beta_(beta), t_(t) {
    if (!(beta > 0.0)) throw std::invalid_argument("ConstrainedProfile: beta must be positive");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("ConstrainedProfile: t must be in [0,1]");
}

double ConstrainedProfile::g(double y) const { return constrained_g(y, beta_, t_); }

double ConstrainedProfile::h(double y) const {
    if (y <= t_ || t_ >= 1.0) return std::log1p(y / beta_);
    // on (t, 1]: 1/g = sqrt(1-t) / ((beta+t) sqrt(1-y)), integrating gives
    // 2 sqrt(1-t) (sqrt(1-t) - sqrt(1-y)) / (beta+t)
    const double st = std::sqrt(1.0 - t_);
    return std::log1p(t_ / beta_) +
           2.0 * st * (st - std::sqrt(std::max(0.0, 1.0 - y))) / (beta_ + t_);
}

std::string ConstrainedProfile::to_string() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "constrained:beta=" << beta_ << ",t=" << t_;
    return os.str();
}

TabulatedProfile::TabulatedProfile(std::vector<double> ys, std::vector<double> gs)
    : ys_(std::move(ys)), gs_(std::move(gs)) {
    if (ys_.size() != gs_.size() || ys_.size() < 2)
        throw std::invalid_argument("TabulatedProfile: need at least two (y, g) rows");
    if (ys_.front() != 0.0 || ys_.back() != 1.0)
        throw std::invalid_argument("TabulatedProfile: y must span [0, 1]");
    for (size_t i = 0; i + 1 < ys_.size(); ++i)
        if (!(ys_[i] < ys_[i + 1]))
            throw std::invalid_argument("TabulatedProfile: y values must be increasing");
    for (size_t i = 0; i < gs_.size(); ++i)
        if (!(gs_[i] > 0.0) && !(gs_[i] == 0.0 && i + 1 == gs_.size()))
            throw std::invalid_argument(
                "TabulatedProfile: g must be positive (0 allowed only at y = 1)");
    // cumulative integral of 1/g across linear segments:
    // slope s != 0 gives log(g1/g0)/s, a flat segment gives width/g0
    h_.resize(ys_.size(), 0.0);
    for (size_t i = 0; i + 1 < ys_.size(); ++i) {
        const double w = ys_[i + 1] - ys_[i];
        const double s = (gs_[i + 1] - gs_[i]) / w;
        double piece;
        if (std::abs(s) < 1e-14) {
            piece = w / gs_[i];
        } else if (gs_[i + 1] == 0.0) {
            // a linear descent to 0 makes the cumulative integral diverge
            piece = std::numeric_limits<double>::infinity();
        } else {
            piece = std::log(gs_[i + 1] / gs_[i]) / s;
        }
        h_[i + 1] = h_[i] + piece;
    }
}

double TabulatedProfile::g(double y) const {
    const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
    size_t i = it == ys_.begin() ? 0 : static_cast<size_t>(it - ys_.begin()) - 1;
    if (i + 1 >= ys_.size()) i = ys_.size() - 2;
    const double w = ys_[i + 1] - ys_[i];
    const double lam = (y - ys_[i]) / w;
    return gs_[i] + lam * (gs_[i + 1] - gs_[i]);
}

double TabulatedProfile::h(double y) const {
    const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
    size_t i = it == ys_.begin() ? 0 : static_cast<size_t>(it - ys_.begin()) - 1;
    if (i + 1 >= ys_.size()) i = ys_.size() - 2;
    const double w = ys_[i + 1] - ys_[i];
    const double s = (gs_[i + 1] - gs_[i]) / w;
    const double gy = gs_[i] + s * (y - ys_[i]);
    if (std::abs(s) < 1e-14) return h_[i] + (y - ys_[i]) / gs_[i];
    return h_[i] + std::log(gy / gs_[i]) / s;
}

std::vector<double> TabulatedProfile::knots() const {
    return {ys_.begin() + 1, ys_.end() - 1};
}

SlopeOneStepProfile::SlopeOneStepProfile(std::vector<double> breakpoints,
                                         std::vector<double> levels, double epsilon)
    : xs_(std::move(breakpoints)), levels_(std::move(levels)), epsilon_(epsilon) {
    if (xs_.size() != levels_.size() + 1 && xs_.size() != levels_.size())
        throw std::invalid_argument("SlopeOneStepProfile: breakpoint/level size mismatch");
    // levels may include the closing breakpoint at 1; segments are xs_[i] .. xs_[i+1]
    h_.resize(xs_.size(), 0.0);
    for (size_t i = 0; i + 1 < xs_.size(); ++i) {
        const double w = xs_[i + 1] - xs_[i];
        h_[i + 1] = h_[i] + std::log1p(w / levels_[i]);
    }
}

size_t SlopeOneStepProfile::segment(double y) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), y);
    size_t i = it == xs_.begin() ? 0 : static_cast<size_t>(it - xs_.begin()) - 1;
    if (i + 1 >= xs_.size()) i = xs_.size() - 2;
    return i;
}

double SlopeOneStepProfile::g(double y) const {
    const size_t i = segment(y);
    return levels_[i] + (y - xs_[i]);
}

double SlopeOneStepProfile::h(double y) const {
    const size_t i = segment(y);
    return h_[i] + std::log1p((y - xs_[i]) / levels_[i]);
}

std::vector<double> SlopeOneStepProfile::knots() const {
    if (xs_.size() <= 2) return {};
    return {xs_.begin() + 1, xs_.end() - 1};
}

long long schedule_k_required(const std::vector<long long>& f) {
    long long k = 0;
    for (size_t i = 0; i < f.size(); ++i)
        k = std::max(k, f[i] - static_cast<long long>(i));   // f(i) - i + 1, i is 1-based
    return k;
}

DiscreteSchedule three_step_schedule(int n) {
    if (n < 3 || n % 3 != 0)
        throw std::invalid_argument("three_step_schedule: n must be a positive multiple of 3");
    DiscreteSchedule s;
    s.n = n;
    s.f.resize(static_cast<size_t>(n));
    const int third = n / 3;
    for (int i = 1; i <= n; ++i) {
        long long fi;
        if (i <= third)
            fi = n - 1;
        else if (i <= 2 * third)
            fi = 4LL * n / 3 - 1;
        else
            fi = 2LL * n / 3 - 1;
        s.f[static_cast<size_t>(i) - 1] = fi;
    }
    s.k_required = schedule_k_required(s.f);
    return s;
}

DiscreteSchedule discretize(const Profile& g, int n, long long k) {
    if (n < 1) throw std::invalid_argument("discretize: n must be >= 1");
    if (k < 1)
        throw std::invalid_argument(
            "discretize: k = 0 leaves step 1 without a reference value");
    DiscreteSchedule s;
    s.n = n;
    s.f.resize(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double gi = g.g(static_cast<double>(i) / n);
        long long fi = static_cast<long long>(std::ceil(gi * n - 1e-12));
        const long long cap = k + i - 1;
        if (fi < 1 || fi > cap) s.clamped = true;
        fi = std::clamp(fi, 1LL, cap);
        s.f[static_cast<size_t>(i) - 1] = fi;
    }
    s.k_required = schedule_k_required(s.f);
    return s;
}

DiscreteSchedule no_sample_schedule(std::vector<long long> f_from_step2) {
    DiscreteSchedule s;
    s.n = static_cast<int>(f_from_step2.size()) + 1;
    s.f.reserve(f_from_step2.size() + 1);
    s.f.push_back(0);   // forced skip: nothing seen yet
    for (size_t i = 0; i < f_from_step2.size(); ++i) {
        const long long cap = static_cast<long long>(i) + 1;   // k = 0: f(i) <= i - 1
        if (f_from_step2[i] < 1 || f_from_step2[i] > cap)
            throw std::invalid_argument("no_sample_schedule: f out of range");
        s.f.push_back(f_from_step2[i]);
    }
    s.k_required = 0;
    return s;
}

} // namespace prophet
