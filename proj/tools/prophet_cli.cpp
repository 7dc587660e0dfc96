#include "prophet/config.hpp"
#include "prophet/control.hpp"
#include "prophet/harness.hpp"
#include "prophet/streaming.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

uint64_t default_seed() {
    if (const char* env = std::getenv("PROPHET_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 12345;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

struct Output {
    std::string path;   // empty = stdout
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) file.open(path);
        return file;
    }
    std::ofstream file;
};

void write_gnuplot(const std::string& csv_path, const std::string& script_path,
                   const std::string& xlabel, const std::string& ylabel, int xcol, int ycol) {
    std::ofstream gp(script_path);
    gp << "set datafile separator ','\n"
       << "set key off\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set ylabel '" << ylabel << "'\n"
       << "plot '" << csv_path << "' using " << xcol << ":" << ycol
       << " every ::1 with linespoints\n";
}

int cmd_solve(const std::string& problem, std::optional<double> beta, bool as_json) {
    if (problem == "p") {
        const prophet::ControlSolution s = prophet::solve_p();
        if (as_json) {
            json j{{"problem", "p"},
                   {"alpha", s.alpha},
                   {"mu_bar", s.mu_bar},
                   {"a_star", s.a_star},
                   {"root_residual", s.root_residual}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "problem p: alpha=" << fmt(s.alpha) << " mu_bar=" << fmt(s.mu_bar)
                      << " a_star=" << fmt(s.a_star)
                      << " (residual " << fmt(s.root_residual) << ")\n";
        }
        return kExitOk;
    }
    const prophet::ControlSolution s = prophet::solve_q(*beta);
    if (as_json) {
        json j{{"problem", "q"},       {"beta", s.beta},
               {"alpha", s.alpha},     {"t_star", s.t_star},
               {"a_star", s.a_star},   {"conjectured_a_bt", s.conjectured_a_bt},
               {"conjectured_a_b1", s.conjectured_a_b1},
               {"inner_min_at_zero", s.inner_min_at_zero}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "problem q(beta=" << fmt(s.beta) << "): alpha=" << fmt(s.alpha)
                  << " t=" << fmt(s.t_star) << " a=" << fmt(s.a_star) << "\n";
    }
    return kExitOk;
}

int cmd_table1(const std::string& betas_csv, Output& out, bool as_json, bool gnuplot) {
    const std::vector<double> betas = parse_double_list(betas_csv);
    const std::vector<prophet::ControlSolution> rows = prophet::solve_q_rows(betas);

    auto reference_for = [](double beta) -> const prophet::BoundRow* {
        for (const auto& r : prophet::kReferenceBounds)
            if (std::abs(r.beta - beta) < 1e-9) return &r;
        return nullptr;
    };

    if (as_json) {
        json arr = json::array();
        for (const auto& s : rows) {
            json j{{"beta", s.beta}, {"alpha", s.alpha}, {"t", s.t_star}, {"a", s.a_star}};
            if (const auto* ref = reference_for(s.beta)) {
                j["alpha_ref"] = ref->alpha;
                j["d_alpha"] = s.alpha - ref->alpha;
            }
            arr.push_back(j);
        }
        out.stream() << arr.dump(2) << "\n";
        return kExitOk;
    }
    auto& os = out.stream();
    os << "beta,alpha,t,a,alpha_ref,t_ref,a_ref,d_alpha,d_t,d_a\n";
    for (const auto& s : rows) {
        const auto* ref = reference_for(s.beta);
        os << fmt(s.beta) << ',' << fmt(s.alpha) << ',' << fmt(s.t_star) << ','
           << fmt(s.a_star) << ',';
        if (ref) {
            os << fmt(ref->alpha) << ',' << fmt(ref->t) << ',' << fmt(ref->a) << ','
               << fmt(s.alpha - ref->alpha) << ',' << fmt(s.t_star - ref->t) << ','
               << fmt(s.a_star - ref->a);
        } else {
            os << ",,,,,";
        }
        os << '\n';
    }
    if (gnuplot && !out.path.empty())
        write_gnuplot(out.path, out.path + ".gp", "beta", "alpha", 1, 2);
    return kExitOk;
}

struct SimulateArgs {
    std::string algo, dist, tie = "jitter", sweep, output;
    int n = 10000;
    long long k = -1;
    double beta = std::nan("");
    long long trials = 100000;
    uint64_t seed = 0;
    bool seed_given = false;
    double epsilon = 0.0;
    bool as_json = false, gnuplot = false, paired_max = false;
};

void csv_estimate_header(std::ostream& os) {
    os << "algo,dist,a,n,k,trials,seed,epsilon,mean,stderr,stored_cells\n";
}

void csv_estimate_row(std::ostream& os, const prophet::RatioEstimate& e, long long k,
                      double epsilon, int stored_cells) {
    os << e.algo_id << ',' << e.dist_id << ',' << fmt(e.a) << ',' << e.n << ',' << k << ','
       << e.trials << ',' << e.seed << ',' << fmt(epsilon) << ',' << fmt(e.mean) << ','
       << fmt(e.stderr_) << ',' << stored_cells << '\n';
}

json json_estimate(const prophet::RatioEstimate& e, long long k, double epsilon,
                   int stored_cells) {
    json j{{"algo", e.algo_id}, {"dist", e.dist_id}, {"n", e.n},
           {"k", k},            {"trials", e.trials}, {"seed", e.seed},
           {"mean", e.mean},    {"stderr", e.stderr_}};
    if (!std::isnan(e.a)) j["a"] = e.a;
    if (epsilon > 0.0) j["epsilon"] = epsilon;
    if (stored_cells > 0) j["stored_cells"] = stored_cells;
    return j;
}

int cmd_simulate(SimulateArgs& args) {
    const uint64_t seed = args.seed_given ? args.seed : default_seed();
    const prophet::TieBreaker tie =
        args.tie == "strict" ? prophet::TieBreaker::Strict : prophet::TieBreaker::Jitter;

    prophet::RuleSpec rule;
    prophet::Distribution dist;
    try {
        rule = prophet::parse_rule(args.algo, args.epsilon);
        if (!args.sweep.empty() && !args.dist.empty()) {
            std::cerr << "error: --sweep-a replaces --dist\n";
            return kExitUsage;
        }
        if (args.sweep.empty()) {
            if (args.dist.empty()) {
                std::cerr << "error: need --dist or --sweep-a\n";
                return kExitUsage;
            }
            dist = prophet::parse_distribution(args.dist);
        }
        if (args.k < 0 && std::isnan(args.beta)) {
            std::cerr << "error: need --k or --beta\n";
            return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const long long k =
        args.k >= 0 ? args.k
                    : static_cast<long long>(std::floor(args.beta * args.n + 1e-12));

    Output out{args.output, {}};
    try {
        if (!args.sweep.empty()) {
            double lo, hi, step;
            if (std::sscanf(args.sweep.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
                step <= 0) {
                std::cerr << "error: --sweep-a expects lo:hi:step\n";
                return kExitUsage;
            }
            std::vector<double> grid;
            for (double a = lo; a <= hi + 1e-12; a += step) grid.push_back(a);
            const prophet::SweepResult res =
                prophet::sweep_two_point(rule, grid, args.n, k, args.trials, seed);
            if (args.as_json) {
                json arr = json::array();
                for (const auto& e : res.rows) arr.push_back(json_estimate(e, k, args.epsilon, 0));
                json j{{"rows", arr}, {"argmin_a", res.argmin_a}, {"min_ratio", res.min_ratio}};
                out.stream() << j.dump(2) << "\n";
            } else {
                auto& os = out.stream();
                csv_estimate_header(os);
                for (const auto& e : res.rows) csv_estimate_row(os, e, k, args.epsilon, 0);
            }
            if (args.gnuplot && !out.path.empty())
                write_gnuplot(out.path, out.path + ".gp", "a", "ratio", 3, 9);
            return kExitOk;
        }

        prophet::ProblemInstance inst{args.n, k, dist, seed};
        const prophet::RatioEstimate est =
            prophet::monte_carlo_ratio(rule, inst, args.trials, tie, args.paired_max);
        int stored_cells = 0;
        if (rule.kind == prophet::RuleSpec::Kind::Streaming) {
            prophet::Rng rng(seed, 0);
            stored_cells =
                prophet::run_streaming(*rule.profile, args.epsilon, inst, tie, rng)
                    .stored_cells_peak;
        }
        if (args.as_json) {
            out.stream() << json_estimate(est, k, args.epsilon, stored_cells).dump(2) << "\n";
        } else {
            auto& os = out.stream();
            csv_estimate_header(os);
            csv_estimate_row(os, est, k, args.epsilon, stored_cells);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sample-augmented prophet-inequality stopping rules: "
                 "control-problem solvers and a Monte Carlo harness"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve a control problem (p or q)");
    std::string problem;
    solve->add_option("problem", problem, "p or q")->required()->check(CLI::IsMember({"p", "q"}));
    double solve_beta = std::nan("");
    auto* beta_opt = solve->add_option("--beta", solve_beta, "sample budget (q only)");
    bool solve_json = false;
    solve->add_flag("--json", solve_json, "machine-readable output");

    // table1
    auto* table = app.add_subcommand("table1", "bounds for a list of beta values, as CSV");
    std::string betas = "1.4,1.3,1.2,1.1,1.0,0.9,0.8,0.7,0.6,0.5,0.4,0.3,0.2,0.1";
    table->add_option("--betas", betas, "comma-separated beta list (empty for none)");
    std::string table_output;
    table->add_option("--output", table_output, "write CSV here instead of stdout");
    bool table_json = false, table_gnuplot = false;
    table->add_flag("--json", table_json, "machine-readable output");
    table->add_flag("--gnuplot", table_gnuplot, "emit a plot script next to the CSV");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo competitive-ratio estimation");
    SimulateArgs sa;
    sim->add_option("--algo", sa.algo, "mrs:<profile> | streaming:<profile> | secretary")
        ->required();
    sim->add_option("--dist", sa.dist, "value distribution");
    sim->add_option("--n", sa.n, "number of online values")->check(CLI::PositiveNumber);
    sim->add_option("--k", sa.k, "number of upfront samples");
    sim->add_option("--beta", sa.beta, "sample budget k = floor(beta n)");
    sim->add_option("--trials", sa.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    auto* seed_opt = sim->add_option("--seed", sa.seed, "RNG seed (default: PROPHET_SEED or 12345)");
    sim->add_option("--epsilon", sa.epsilon, "grid width for streaming rules");
    sim->add_option("--tie", sa.tie, "jitter | strict")->check(CLI::IsMember({"jitter", "strict"}));
    sim->add_option("--sweep-a", sa.sweep, "sweep two-point worst case, lo:hi:step");
    sim->add_option("--output", sa.output, "write CSV here instead of stdout");
    sim->add_flag("--json", sa.as_json, "machine-readable output");
    sim->add_flag("--gnuplot", sa.gnuplot, "emit a plot script next to the CSV");
    sim->add_flag("--paired-max", sa.paired_max,
                  "divide by the per-trial empirical maximum (shared seeds)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) {
            if (problem == "q" && beta_opt->count() == 0) {
                std::cerr << "error: solve q requires --beta\n";
                return kExitUsage;
            }
            return cmd_solve(problem, solve_beta, solve_json);
        }
        if (table->parsed()) {
            Output out{table_output, {}};
            return cmd_table1(betas, out, table_json, table_gnuplot);
        }
        sa.seed_given = seed_opt->count() > 0;
        return cmd_simulate(sa);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
}
