#pragma once

#include "prophet/rng.hpp"

#include <string>
#include <vector>

namespace prophet {

enum class DistKind { TwoPoint, Uniform01, Exponential, Empirical, Adversarial };

// Generative model for samples and values.
//
// Adversarial(n) is the hard rank-based instance: value n^{3s} for s = 1..n^3
// each with probability (1/n^3)(1 - 1/n^2), and the top value n^{3(n^3+1)}
// with probability 1/n^2. Since the absolute values overflow doubles already
// for moderate n, draws are represented by their exponent s; every stopping
// rule in this library is rank-based, so only the order matters, and ratios
// are formed in units of the top value (see expected_max_scaled).
class Distribution {
public:
    Distribution() : kind_(DistKind::Uniform01) {}

    static Distribution two_point(double a);
    static Distribution uniform01();
    static Distribution exponential(double rate);
    static Distribution empirical(std::vector<double> values);
    static Distribution adversarial(int n);   // 1 <= n <= 12

    DistKind kind() const { return kind_; }
    double two_point_a() const { return a_; }
    int adversarial_n() const { return adv_n_; }
    // exponent of the dominant adversarial value, s = n^3 + 1
    long long adversarial_top_exponent() const;
    const std::vector<double>& empirical_values() const { return values_; }

    double sample(Rng& rng) const;
    // P(X <= x); for Adversarial the argument is an exponent.
    double cdf(double x) const;

    // E[max of n draws]. Closed form for TwoPoint/Empirical/Adversarial,
    // quadrature of 1 - F^n (relative tolerance 1e-10) for the others.
    // For Adversarial the result can exceed the double range (+inf).
    double expected_max(int n) const;
    // Adversarial only: E[max of n draws] in units of the top value.
    double expected_max_scaled(int n) const;
    // Adversarial only: maps an exponent to value / top value.
    double adversarial_scaled_value(double exponent) const;

    std::string to_string() const;

private:
    DistKind kind_;
    double a_ = 0.0;       // TwoPoint: P(value 0)
    double rate_ = 1.0;    // Exponential
    int adv_n_ = 0;        // Adversarial
    std::vector<double> values_;         // Empirical (sorted)
};

} // namespace prophet
