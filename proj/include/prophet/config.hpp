#pragma once

#include "prophet/distribution.hpp"
#include "prophet/harness.hpp"
#include "prophet/profiles.hpp"

#include <memory>
#include <string>

namespace prophet {

// Config-string parsers shared by the CLI and tests.
//
//   distributions: two-point:0.4556 | uniform01 | exp:1.0 | adversarial:8
//                  | empirical:@values.csv          (one value per line)
//   profiles:      three-step | opt | constant:1.0
//                  | constrained:beta=1.0,t=0.31759 (t optional: solved)
//                  | custom:@g.csv                  (rows y,g; linear interp)
//   rules:         mrs:<profile> | streaming:<profile> | secretary
//
// Parse errors throw std::invalid_argument with a usable message.
Distribution parse_distribution(const std::string& spec);
std::shared_ptr<const Profile> parse_profile(const std::string& spec);
RuleSpec parse_rule(const std::string& spec, double epsilon);

} // namespace prophet
