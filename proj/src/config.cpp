#include "prophet/config.hpp"

#include "prophet/control.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prophet {

namespace {

double parse_number(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("could not parse " + what + " from '" + s + "'");
    }
}

std::vector<double> read_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("could not open '" + path + "'");
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (values.empty()) throw std::invalid_argument("'" + path + "' holds no values");
    return values;
}

} // namespace

Distribution parse_distribution(const std::string& spec) {
    if (spec == "uniform01") return Distribution::uniform01();
    if (spec.rfind("two-point:", 0) == 0)
        return Distribution::two_point(parse_number(spec.substr(10), "two-point probability"));
    if (spec.rfind("exp:", 0) == 0)
        return Distribution::exponential(parse_number(spec.substr(4), "exponential rate"));
    if (spec.rfind("adversarial:", 0) == 0)
        return Distribution::adversarial(
            static_cast<int>(parse_number(spec.substr(12), "adversarial n")));
    if (spec.rfind("empirical:@", 0) == 0)
        return Distribution::empirical(read_value_file(spec.substr(11)));
    throw std::invalid_argument("unknown distribution '" + spec + "'");
}

std::shared_ptr<const Profile> parse_profile(const std::string& spec) {
    if (spec == "three-step") return std::make_shared<ThreeStepProfile>();
    if (spec == "opt") return std::make_shared<OptProfile>(solve_mu_bar());
    if (spec.rfind("constant:", 0) == 0)
        return std::make_shared<ConstantProfile>(parse_number(spec.substr(9), "constant level"));
    if (spec.rfind("constrained:", 0) == 0) {
        double beta = std::nan(""), t = std::nan("");
        std::stringstream ss(spec.substr(12));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("constrained profile expects beta=..,t=..");
            const std::string key = kv.substr(0, eq);
            const double val = parse_number(kv.substr(eq + 1), "constrained parameter");
            if (key == "beta")
                beta = val;
            else if (key == "t")
                t = val;
            else
                throw std::invalid_argument("unknown constrained parameter '" + key + "'");
        }
        if (std::isnan(beta)) throw std::invalid_argument("constrained profile needs beta");
        if (std::isnan(t)) t = solve_q(beta).t_star;
        return std::make_shared<ConstrainedProfile>(beta, t);
    }
    if (spec.rfind("custom:@", 0) == 0) {
        std::ifstream in(spec.substr(8));
        if (!in) throw std::invalid_argument("could not open '" + spec.substr(8) + "'");
        std::vector<double> ys, gs;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("custom profile rows are 'y,g'");
            ys.push_back(parse_number(line.substr(0, comma), "custom profile y"));
            gs.push_back(parse_number(line.substr(comma + 1), "custom profile g"));
        }
        return std::make_shared<TabulatedProfile>(std::move(ys), std::move(gs));
    }
    throw std::invalid_argument("unknown profile '" + spec + "'");
}

RuleSpec parse_rule(const std::string& spec, double epsilon) {
    if (spec == "secretary") return RuleSpec::secretary();
    if (spec == "take-first") return RuleSpec::take_first();
    if (spec == "optimal-rank") return RuleSpec::optimal_rank();
    if (spec.rfind("mrs:", 0) == 0) return RuleSpec::mrs(parse_profile(spec.substr(4)));
    if (spec.rfind("streaming:", 0) == 0) {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("streaming rules need --epsilon > 0");
        return RuleSpec::streaming(parse_profile(spec.substr(10)), epsilon);
    }
    throw std::invalid_argument("unknown algorithm '" + spec + "'");
}

} // namespace prophet
