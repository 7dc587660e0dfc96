#pragma once

#include <memory>
#include <string>
#include <vector>

namespace prophet {

// Continuous sample-size schedule g : [0,1] -> R+. Every MRS rule is the
// discretization of some g. h(y) is the cumulative integral of 1/g from 0,
// provided in closed form by each shape.
class Profile {
public:
    virtual ~Profile() = default;
    virtual double g(double y) const = 0;
    virtual double h(double y) const = 0;
    // interior points where g changes shape (jumps, kinks); quadrature splits here
    virtual std::vector<double> knots() const { return {}; }
    virtual std::string to_string() const = 0;
    double g0() const { return g(0.0); }
};

// g == level everywhere.
class ConstantProfile final : public Profile {
public:
    explicit ConstantProfile(double level);
    double g(double) const override { return level_; }
    double h(double y) const override { return y / level_; }
    std::string to_string() const override;

private:
    double level_;
};

// Piecewise-constant warm-up schedule: levels 1, 4/3, 2/3 on thirds of [0,1].
class ThreeStepProfile final : public Profile {
public:
    double g(double y) const override;
    double h(double y) const override;
    std::vector<double> knots() const override { return {1.0 / 3.0, 2.0 / 3.0}; }
    std::string to_string() const override { return "three-step"; }
};

// Optimal unconstrained schedule g(y) = 2 sqrt(mu_bar - mu_bar y) / mu_bar.
// mu_bar is injected by the caller (solved, not hard-coded).
class OptProfile final : public Profile {
public:
    explicit OptProfile(double mu_bar);
    double g(double y) const override;
    double h(double y) const override;
    std::string to_string() const override { return "opt"; }
    double mu_bar() const { return mu_bar_; }

private:
    double mu_bar_;
    double sqrt_mu_;
};

// Budgeted schedule: g(y) = beta + y on [0, t], then the parametric arc
// (beta + t) sqrt((y-1)/(t-1)) falling to g(1) = 0.
class ConstrainedProfile final : public Profile {
public:
    ConstrainedProfile(double beta, double t);
    double g(double y) const override;
    double h(double y) const override;
    std::vector<double> knots() const override { return {t_}; }
    std::string to_string() const override;
    double beta() const { return beta_; }
    double t() const { return t_; }

private:
    double beta_, t_;
};

// Piecewise-linear interpolation of tabulated (y, g) rows.
class TabulatedProfile final : public Profile {
public:
    TabulatedProfile(std::vector<double> ys, std::vector<double> gs);
    double g(double y) const override;
    double h(double y) const override;
    std::vector<double> knots() const override;
    std::string to_string() const override { return "custom"; }

private:
    std::vector<double> ys_, gs_, h_;   // h_ = cumulative integral at nodes
};

// Step profile with slope-1 growth between breakpoints: the streaming
// approximation g~ of a continuous g. g(x) = level_i + (x - x_i) on
// [x_i, x_{i+1}).
class SlopeOneStepProfile final : public Profile {
public:
    SlopeOneStepProfile(std::vector<double> breakpoints, std::vector<double> levels,
                        double epsilon);
    double g(double y) const override;
    double h(double y) const override;
    std::vector<double> knots() const override;
    std::string to_string() const override { return "step"; }
    double epsilon() const { return epsilon_; }
    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& levels() const { return levels_; }

private:
    size_t segment(double y) const;
    std::vector<double> xs_, levels_, h_;
    double epsilon_;
};

// pointwise evaluators of the two paper-parameterized shapes
double unconstrained_opt_g(double y, double mu_bar);
double constrained_g(double y, double beta, double t);

// Per-step subset sizes for a concrete instance size.
struct DiscreteSchedule {
    std::vector<long long> f;    // f[i-1] is the subset size at step i; 0 = forced skip
    int n = 0;
    long long k_required = 0;    // max_i (f(i) - i + 1), clamped below at 0
    bool clamped = false;        // whether ceil(g * n) hit the [1, k+i-1] clamp

    long long at(int step) const { return f[static_cast<size_t>(step) - 1]; }
};

// The warm-up schedule: f = n-1, 4n/3-1, 2n/3-1 on thirds. Requires 3 | n.
DiscreteSchedule three_step_schedule(int n);

// f(i) = ceil(g(i/n) * n) clamped into [1, k+i-1]. Throws for k = 0 (step 1
// would have no reference value).
DiscreteSchedule discretize(const Profile& g, int n, long long k);

// Schedule for rules that use no upfront samples: step 1 is a forced skip
// (there is nothing to compare against), f(i) <= i-1 afterwards.
DiscreteSchedule no_sample_schedule(std::vector<long long> f_from_step2);

// Recomputes k_required from f.
long long schedule_k_required(const std::vector<long long>& f);

} // namespace prophet
