#include "facloc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

#include "facloc/analysis.hpp"
#include "facloc/csv.hpp"
#include "facloc/exact_sequence.hpp"
#include "facloc/greedy.hpp"
#include "facloc/long_term.hpp"
#include "facloc/short_term.hpp"
#include "facloc/svg.hpp"

namespace facloc::cli {

namespace fs = std::filesystem;
using io::CsvWriter;

namespace {

std::vector<int> parse_shape(const std::string& text) {
    std::vector<int> shape;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find('x', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        shape.push_back(std::stoi(tok));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (shape.empty()) throw std::invalid_argument("empty shape");
    return shape;
}

DensityGrid make_uniform_from_spec(const std::string& spec) {
    // "d=2,shape=200x200"; the domain is the unit box.
    int d = -1;
    std::vector<int> shape;
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t next = spec.find(',', pos);
        std::string tok = spec.substr(pos, next == std::string::npos ? next : next - pos);
        size_t eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad --uniform spec: " + spec);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "d") d = std::stoi(val);
        else if (key == "shape") shape = parse_shape(val);
        else throw std::invalid_argument("bad --uniform key: " + key);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (d < 1 || shape.empty()) throw std::invalid_argument("--uniform needs d= and shape=");
    if (static_cast<int>(shape.size()) == 1 && d > 1) shape.assign(d, shape[0]);
    if (static_cast<int>(shape.size()) != d)
        throw std::invalid_argument("--uniform shape rank must match d");
    std::vector<double> lo(d, 0.0), hi(d, 1.0);
    return DensityGrid::uniform(BoxDomain(lo, hi), shape);
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_points_csv(const std::string& path, const std::vector<std::vector<double>>& pts,
                      const std::vector<std::string>& header_comments) {
    CsvWriter csv(path);
    for (const auto& c : header_comments) csv.comment(c);
    if (pts.empty()) return;
    std::vector<std::string> head;
    for (size_t c = 0; c < pts[0].size(); ++c) head.push_back("x" + std::to_string(c + 1));
    csv.row(head);
    for (const auto& p : pts) {
        std::vector<std::string> row;
        for (double v : p) row.push_back(CsvWriter::num(v));
        csv.row(row);
    }
}

}  // namespace

DensityGrid make_grid(const RunConfig& cfg) {
    if (cfg.density_path && cfg.uniform_spec)
        throw std::invalid_argument("give either --density or --uniform, not both");
    if (cfg.density_path) return DensityGrid::load(*cfg.density_path);
    if (cfg.uniform_spec) return make_uniform_from_spec(*cfg.uniform_spec);
    throw std::invalid_argument("a density source is required (--density or --uniform)");
}

int cmd_exact1d(const RunConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    fs::path dir = ensure_out_dir(cfg);
    exact1d::ExactSequence seq = exact1d::generate_sequence(cfg.n);

    {
        CsvWriter csv((dir / "sn.csv").string());
        csv.row({"k", "s_k_num", "s_k_den", "s_k_float", "n_times_s", "ratio_to_longterm"});
        // Exact at phase boundaries, streamed inside phases.
        Rational s = make_rational(1, 4);
        for (long k = 1; k <= cfg.n; ++k) {
            if (k > 1) s = seq.cost(k);
            double sd = to_double(s);
            csv.row({CsvWriter::num(k), s.get_num().get_str(), s.get_den().get_str(),
                     CsvWriter::num(sd), CsvWriter::num(k * sd), CsvWriter::num(4.0 * k * sd)});
        }
    }
    std::vector<double> ks, ratio;
    if (cfg.n >= 2) {
        analysis::SeriesReport rep = analysis::ratio_series(cfg.n);
        ks = rep.n;
        ratio = rep.value;
    } else {
        ks = {1.0};
        ratio = {1.0};
    }
    {
        CsvWriter csv((dir / "ratio.csv").string());
        csv.row({"k", "ratio"});
        for (size_t i = 0; i < ks.size(); ++i)
            csv.row({CsvWriter::num(static_cast<long>(ks[i])), CsvWriter::num(ratio[i])});
    }
    {
        CsvWriter csv((dir / "omega_counts.csv").string());
        csv.row({"j", "count", "fraction"});
        int jmax = 0;
        while (to_double(exact1d::boundary_region(jmax).left.second) * cfg.n > 0.5 && jmax < 40)
            ++jmax;
        for (int j = 0; j <= jmax; ++j) {
            long c = seq.points_in_region(cfg.n, j);
            csv.row({CsvWriter::num(static_cast<long>(j)), CsvWriter::num(c),
                     CsvWriter::num(static_cast<double>(c) / cfg.n)});
        }
    }
    {
        io::LinePlot plot;
        plot.title = "incremental vs batch cost ratio, uniform measure";
        plot.x_label = "n";
        plot.y_label = "4 n s_n";
        plot.log_x = cfg.n >= 100;
        plot.add_series("4 n s_n", ks, ratio);
        plot.write((dir / "ratio.svg").string());
    }
    return kExitOk;
}

namespace {

void write_trajectory_1d(const fs::path& dir, const std::string& stem,
                         const short1d::Trajectory& traj) {
    CsvWriter csv((dir / (stem + ".csv")).string());
    csv.row({"step", "x_added", "cost", "branchLabel"});
    for (size_t i = 0; i < traj.points.size(); ++i)
        csv.row({CsvWriter::num(static_cast<long>(i + 1)), CsvWriter::num(traj.points[i]),
                 CsvWriter::num(traj.costs[i]), traj.branch_label});
    std::vector<std::vector<double>> pts;
    for (double x : traj.points) pts.push_back({x});
    write_points_csv((dir / ("points_" + stem + ".csv")).string(), pts, {});
}

}  // namespace

int cmd_shortterm(const RunConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    DensityGrid grid = make_grid(cfg);
    fs::path dir = ensure_out_dir(cfg);
    if (grid.dim() == 1) {
        if (cfg.tie == TieFlag::Leftmost || cfg.tie == TieFlag::Both) {
            auto traj = short1d::run_trajectory(grid, cfg.n, short1d::TieRule::Leftmost);
            write_trajectory_1d(dir, "trajectory_leftmost", traj);
        }
        if (cfg.tie == TieFlag::Rightmost || cfg.tie == TieFlag::Both) {
            auto traj = short1d::run_trajectory(grid, cfg.n, short1d::TieRule::Rightmost);
            write_trajectory_1d(dir, "trajectory_rightmost", traj);
        }
    } else {
        greedy::GreedyState state = greedy::run(grid, cfg.n);
        std::vector<std::vector<double>> pts;
        for (long i = 0; i < state.config.size(); ++i) {
            auto p = state.config.point(i);
            pts.emplace_back(p.begin(), p.end());
        }
        write_points_csv((dir / "points.csv").string(), pts, {});
        CsvWriter csv((dir / "costs.csv").string());
        csv.row({"step", "cost", "gain"});
        for (size_t i = 0; i < state.cost_history.size(); ++i)
            csv.row({CsvWriter::num(static_cast<long>(i + 1)),
                     CsvWriter::num(state.cost_history[i]),
                     CsvWriter::num(state.gain_history[i])});
    }
    return kExitOk;
}

int cmd_longterm(const RunConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    DensityGrid grid = make_grid(cfg);
    fs::path dir = ensure_out_dir(cfg);

    MethodFlag method = cfg.method;
    if (method == MethodFlag::Auto)
        method = grid.dim() == 1 ? MethodFlag::DP : MethodFlag::Lloyd;
    if (method == MethodFlag::Closed && grid.dim() != 1)
        throw std::invalid_argument("--method closed applies to d=1 only");
    if (method == MethodFlag::DP && grid.dim() != 1)
        throw std::invalid_argument("--method dp applies to d=1 only");

    longterm::LongTermSolution sol;
    std::string method_name;
    switch (method) {
        case MethodFlag::Closed:
            sol = longterm::solve_uniform_1d(cfg.n);
            method_name = "closed";
            break;
        case MethodFlag::DP:
            sol = longterm::solve_dp_1d(grid, cfg.n);
            method_name = "dp";
            break;
        default:
            sol = longterm::solve_lloyd(grid, cfg.n, cfg.restarts, cfg.seed);
            method_name = "lloyd";
            break;
    }
    std::vector<std::string> comments = {"method=" + method_name,
                                         "cost=" + CsvWriter::num(sol.cost)};
    // The asymptotic reference needs theta_d, known for d in {1,2} only;
    // --limit insists on it and fails loudly elsewhere.
    if (cfg.want_limit || grid.dim() <= 2)
        comments.push_back("limit_cost=" + CsvWriter::num(longterm::limit_cost(grid, cfg.n)));
    write_points_csv((dir / "solution.csv").string(), sol.points, comments);
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    DensityGrid grid = make_grid(cfg);
    fs::path dir = ensure_out_dir(cfg);

    std::vector<double> ns, short_costs, long_costs, ratios;
    std::string long_name;
    if (grid.dim() == 1) {
        long_name = "l_n";
        auto traj = short1d::run_trajectory(grid, cfg.n, short1d::TieRule::Leftmost);
        auto longs = longterm::solve_dp_1d_all(grid, cfg.n);
        for (long k = 1; k <= cfg.n; ++k) {
            ns.push_back(static_cast<double>(k));
            short_costs.push_back(traj.costs[k - 1]);
            long_costs.push_back(longs[k - 1].cost);
            ratios.push_back(traj.costs[k - 1] / longs[k - 1].cost);
        }
    } else {
        long_name = "l_n_infty";
        greedy::GreedyState state = greedy::run(grid, cfg.n);
        for (long k = 1; k <= cfg.n; ++k) {
            double lc = longterm::limit_cost(grid, k);
            ns.push_back(static_cast<double>(k));
            short_costs.push_back(state.cost_history[k - 1]);
            long_costs.push_back(lc);
            ratios.push_back(state.cost_history[k - 1] / lc);
        }
    }
    {
        CsvWriter csv((dir / "compare.csv").string());
        csv.row({"n", "s_n", long_name, "ratio"});
        for (size_t i = 0; i < ns.size(); ++i)
            csv.row({CsvWriter::num(static_cast<long>(ns[i])), CsvWriter::num(short_costs[i]),
                     CsvWriter::num(long_costs[i]), CsvWriter::num(ratios[i])});
    }
    {
        io::LinePlot plot;
        plot.title = "incremental vs batch placement";
        plot.x_label = "n";
        plot.y_label = "s_n / " + long_name;
        plot.log_x = cfg.n >= 100;
        plot.add_series("ratio", ns, ratios);
        plot.write((dir / "compare.svg").string());
    }
    return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"facility location: incremental vs batch placement solvers"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string tie = "leftmost", method = "auto";

    auto add_common = [&](CLI::App* sub, bool needs_density) {
        sub->add_option("--n", cfg.n, "number of points")->required();
        sub->add_option("--out", cfg.out_dir, "output directory")->required();
        if (needs_density) {
            sub->add_option("--density", cfg.density_path, "density-grid file");
            sub->add_option("--uniform", cfg.uniform_spec,
                            "builtin uniform density, e.g. d=2,shape=200x200");
        }
    };

    CLI::App* exact = app.add_subcommand("exact1d", "exact uniform 1-D incremental sequence");
    add_common(exact, false);

    CLI::App* shortterm = app.add_subcommand("shortterm", "incremental (myopic) placement");
    add_common(shortterm, true);
    shortterm->add_option("--tie", tie, "leftmost|rightmost|both")
        ->check(CLI::IsMember({"leftmost", "rightmost", "both"}));

    CLI::App* lt = app.add_subcommand("longterm", "batch-optimal placement");
    add_common(lt, true);
    lt->add_option("--method", method, "auto|dp|lloyd|closed")
        ->check(CLI::IsMember({"auto", "dp", "lloyd", "closed"}));
    lt->add_option("--restarts", cfg.restarts, "Lloyd restarts");
    lt->add_option("--seed", cfg.seed, "RNG seed");
    lt->add_flag("--limit", cfg.want_limit, "require the asymptotic reference cost");

    CLI::App* cmp = app.add_subcommand("compare", "both strategies side by side");
    add_common(cmp, true);
    cmp->add_option("--restarts", cfg.restarts, "Lloyd restarts");
    cmp->add_option("--seed", cfg.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    cfg.tie = tie == "rightmost" ? TieFlag::Rightmost
            : tie == "both"      ? TieFlag::Both
                                 : TieFlag::Leftmost;
    cfg.method = method == "dp"     ? MethodFlag::DP
               : method == "lloyd"  ? MethodFlag::Lloyd
               : method == "closed" ? MethodFlag::Closed
                                    : MethodFlag::Auto;

    try {
        if (exact->parsed()) { cfg.command = Command::Exact1D; return cmd_exact1d(cfg); }
        if (shortterm->parsed()) { cfg.command = Command::ShortTerm; return cmd_shortterm(cfg); }
        if (lt->parsed()) { cfg.command = Command::LongTerm; return cmd_longterm(cfg); }
        cfg.command = Command::Compare;
        return cmd_compare(cfg);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace facloc::cli
