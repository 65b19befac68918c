#include "nonloc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nonloc/catalog.hpp"
#include "nonloc/io.hpp"

namespace nonloc {

namespace {

struct RunConfig {
    std::string format = "table";
    std::string input_path;
    double eps_support = kEpsSupport;
    std::uint64_t seed = 1;
    std::uint64_t rounds = 0;
};

std::string dec(double v, int places = 10) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(places) << v;
    return os.str();
}

std::string rat(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string strategy_text(const DeterministicStrategy& d) {
    std::ostringstream os;
    os << "A:(";
    for (std::size_t i = 0; i < d.map_a.size(); ++i) os << (i ? "," : "") << d.map_a[i];
    os << ") B:(";
    for (std::size_t i = 0; i < d.map_b.size(); ++i) os << (i ? "," : "") << d.map_b[i];
    os << ")";
    return os.str();
}

void emit(const Json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

void print_verdict_line(const NoGoVerdict& v, std::ostream& out) {
    out << "  verdict: violates_locality=" << (v.violates_locality ? "true" : "false")
        << " btwi=" << (v.btwi ? "true" : "false") << " pt=" << (v.pt ? "true" : "false")
        << "\n  witness: " << v.witness << "\n";
}

// Empirical CHSH value and its binomial standard error from a simulation.
struct EmpiricalChsh {
    double value = 0.0;
    double stderr_ = 0.0;
};

EmpiricalChsh empirical_chsh(const SimulationResult& sim) {
    EmpiricalChsh e;
    double var = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double n = static_cast<double>(sim.pair_totals[std::size_t(x) * 2 + y]);
            double corr = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    corr += ((a == b) ? 1.0 : -1.0) * sim.frequency(x, y, a, b);
            int sign = (x == 1 && y == 1) ? -1 : 1;
            e.value += sign * corr;
            if (n > 0) var += (1.0 - corr * corr) / n;
        }
    e.stderr_ = std::sqrt(var);
    return e;
}

int cmd_chsh(const RunConfig& cfg, std::ostream& out) {
    BellExpression expr = chsh_expression();
    LhvBound bound = lhv_bound(expr);
    Behavior quantum = chsh_quantum_behavior();
    double value = evaluate_expression(expr, quantum);

    Json j = Json::object();
    j["command"] = "chsh";
    j["lhv_bound"] = rational_to_json(bound.bound);
    j["maximizer"] = strategy_to_json(bound.maximizer);
    j["quantum_value"] = round_sig12(value);
    Json correlators = Json::array();
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Json c = Json::object();
            c["x"] = x;
            c["y"] = y;
            c["value"] = round_sig12(correlator(quantum, x, y));
            correlators.push_back(std::move(c));
        }
    j["correlators"] = std::move(correlators);

    if (cfg.rounds >= 1) {
        SimulationResult sim = simulate_rounds(quantum, cfg.rounds, cfg.seed);
        EmpiricalChsh emp = empirical_chsh(sim);
        Json s = Json::object();
        s["rounds"] = sim.rounds;
        s["seed"] = sim.seed;
        s["chsh"] = round_sig12(emp.value);
        s["stderr"] = round_sig12(emp.stderr_);
        j["empirical"] = std::move(s);
    }

    if (cfg.format == "json") {
        emit(j, out);
        return 0;
    }
    out << "CHSH\n";
    out << "  LHV bound (exact):      " << rat(bound.bound) << "\n";
    out << "  maximizing strategy:    " << strategy_text(bound.maximizer) << "\n";
    out << "  quantum value:          " << dec(value) << "  (2*sqrt(2) = "
        << dec(2.0 * std::sqrt(2.0)) << ")\n";
    out << "  correlators:           ";
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            out << " E(" << x << "," << y << ")=" << dec(correlator(quantum, x, y), 6);
    out << "\n";
    if (cfg.rounds >= 1) {
        const Json& s = j["empirical"];
        out << "  empirical (" << cfg.rounds << " rounds, seed " << cfg.seed
            << "): " << dec(s["chsh"].get<double>()) << " +/- "
            << dec(s["stderr"].get<double>()) << "\n";
    }
    return 0;
}

int cmd_hardy(const RunConfig& cfg, std::ostream& out) {
    Behavior beh = hardy_behavior();
    std::vector<Rational> exact = hardy_exact_table();
    const Scenario& sc = beh.scenario;

    HardyChain chain = hardy_chain(beh, cfg.eps_support);
    SupportTable support = support_of(beh, cfg.eps_support);
    SupportVerdict pt = is_pseudotelepathic(support);
    SupportVerdict btwi = is_btwi(support);
    LocalMembership lm = local_membership_exact(sc, exact);
    NoGoVerdict verdict = make_verdict(pt, btwi, &lm);

    // The four probabilities the argument runs on; setting 0 = z, 1 = x,
    // outcome 0 = +, 1 = -.
    struct Key {
        const char* label;
        int x, y, a, b;
    };
    const Key keys[] = {{"p(-,-|x,x)", 1, 1, 1, 1},
                        {"p(-,-|x,z)", 1, 0, 1, 1},
                        {"p(-,-|z,x)", 0, 1, 1, 1},
                        {"p(+,+|z,z)", 0, 0, 0, 0}};

    Json j = Json::object();
    j["command"] = "hardy";
    Json probs = Json::object();
    for (const Key& k : keys) {
        Json p = Json::object();
        p["exact"] = rational_to_json(exact[sc.index(k.x, k.y, k.a, k.b)]);
        p["value"] = round_sig12(beh.at(k.x, k.y, k.a, k.b));
        probs[k.label] = std::move(p);
    }
    j["probabilities"] = std::move(probs);
    Json steps = Json::array();
    for (const std::string& s : chain.steps) steps.push_back(s);
    j["chain"] = std::move(steps);
    j["chain_status"] = chain.status == HardyChain::Status::contradiction ? "contradiction"
                        : chain.status == HardyChain::Status::vacuous    ? "vacuous"
                                                                         : "no_contradiction";
    j["verdict"] = verdict_to_json(verdict);
    j["membership"] = Json::object({{"feasible", lm.feasible}, {"basis", "exact"}});

    if (cfg.format == "json") {
        emit(j, out);
        return 0;
    }
    out << "Hardy\n";
    for (const Key& k : keys)
        out << "  " << k.label << " = " << std::setw(4)
            << rat(exact[sc.index(k.x, k.y, k.a, k.b)]) << " = "
            << dec(beh.at(k.x, k.y, k.a, k.b)) << "\n";
    out << "  chain:\n";
    for (const std::string& s : chain.steps) out << "    " << s << "\n";
    print_verdict_line(verdict, out);
    return 0;
}

int cmd_magic_square(const RunConfig& cfg, std::ostream& out) {
    Game game = magic_square();
    ParityTableCensus census = parity_table_search();
    ClassicalValue cv = classical_value(game);
    QuantumStrategy qs = magic_square_quantum();
    double win = quantum_win_probability(game, qs);
    bool winning = is_winning_strategy(game, qs);

    Behavior beh = game_behavior(game, qs);
    SupportTable support = support_of(beh, cfg.eps_support);
    SupportVerdict pt = is_pseudotelepathic(support);
    SupportVerdict btwi = is_btwi(support);
    NoGoVerdict verdict = make_verdict(pt, btwi, nullptr); // tableau over cap; implied

    Json j = Json::object();
    j["command"] = "magic-square";
    j["valid_shared_tables"] = census.both;
    j["rows_even_only"] = census.rows_even;
    j["cols_odd_only"] = census.cols_odd;
    j["classical_value"] = rational_to_json(cv.value);
    j["best_classical_strategy"] = strategy_to_json(cv.best);
    j["quantum_win_probability"] = round_sig12(win);
    j["is_quantum_winning"] = winning;
    j["verdict"] = verdict_to_json(verdict);

    if (cfg.format == "json") {
        emit(j, out);
        return 0;
    }
    out << "Magic Square\n";
    out << "  valid tables: " << census.both << " of 512  (rows-even only: " << census.rows_even
        << ", cols-odd only: " << census.cols_odd << ")\n";
    out << "  classical value:          " << rat(cv.value) << " = "
        << dec(cv.value.convert_to<double>()) << "\n";
    out << "  quantum win probability:  " << dec(win) << "\n";
    out << "  quantum strategy winning: " << (winning ? "yes" : "no") << "\n";
    print_verdict_line(verdict, out);
    return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    if (cfg.input_path.empty())
        throw ValidationError("classify needs --input <behavior.json>");
    ParsedBehavior parsed = behavior_from_json(load_json_file(cfg.input_path));

    LocalMembership lm = parsed.exact
                             ? local_membership_exact(parsed.behavior.scenario, *parsed.exact)
                             : local_membership(parsed.behavior);
    SupportTable support = support_of(parsed.behavior, cfg.eps_support);
    SupportVerdict pt = is_pseudotelepathic(support);
    SupportVerdict btwi = is_btwi(support);
    NoGoVerdict verdict = make_verdict(pt, btwi, &lm);

    Json j = Json::object();
    j["command"] = "classify";
    j["eps_support"] = round_sig12(cfg.eps_support);
    j["verdict"] = verdict_to_json(verdict);
    Json m = Json::object();
    m["feasible"] = lm.feasible;
    m["basis"] = lm.exact_input ? "exact" : "numerical";
    if (!lm.feasible) m["gap"] = rational_to_json(lm.gap);
    j["membership"] = std::move(m);

    if (cfg.format == "json") {
        emit(j, out);
        return 0;
    }
    out << "Classification of " << cfg.input_path << "\n";
    out << "  membership: " << (lm.feasible ? "feasible" : "infeasible") << " ("
        << (lm.exact_input ? "exact" : "numerical") << ")\n";
    print_verdict_line(verdict, out);
    return 0;
}

int cmd_lhv_bound(const RunConfig& cfg, const std::string& game_name, std::ostream& out) {
    bool exact = true;
    BellExpression expr;
    if (!game_name.empty()) {
        if (game_name == "magic-square")
            expr = game_to_bell_expression(magic_square());
        else if (game_name == "chsh-game")
            expr = game_to_bell_expression(chsh_game());
        else if (game_name == "chsh")
            expr = chsh_expression();
        else
            throw ValidationError("unknown built-in '" + game_name +
                                  "'; try magic-square, chsh-game, or chsh");
    } else if (!cfg.input_path.empty()) {
        ParsedExpression parsed = expression_from_json(load_json_file(cfg.input_path));
        expr = std::move(parsed.expression);
        exact = parsed.exact;
    } else {
        throw ValidationError("lhv-bound needs --input <expression.json> or --game <name>");
    }
    LhvBound bound = lhv_bound(expr);

    Json j = Json::object();
    j["command"] = "lhv-bound";
    if (!game_name.empty()) j["game"] = game_name;
    j["bound"] = rational_to_json(bound.bound);
    j["bound_decimal"] = round_sig12(bound.bound.convert_to<double>());
    j["maximizer"] = strategy_to_json(bound.maximizer);
    j["basis"] = exact ? "exact" : "numerical";

    if (cfg.format == "json") {
        emit(j, out);
        return 0;
    }
    out << "LHV bound" << (game_name.empty() ? "" : " of " + game_name) << "\n";
    out << "  bound:      " << rat(bound.bound) << " = " << dec(bound.bound.convert_to<double>())
        << (exact ? "  (exact)" : "  (numerical)") << "\n";
    out << "  maximizer:  " << strategy_text(bound.maximizer) << "\n";
    return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    if (cfg.input_path.empty())
        throw ValidationError("simulate needs --input <behavior.json>");
    ParsedBehavior parsed = behavior_from_json(load_json_file(cfg.input_path));
    SimulationResult sim = simulate_rounds(parsed.behavior, cfg.rounds, cfg.seed);

    if (cfg.format == "json") {
        Json j = Json::object();
        j["command"] = "simulate";
        j["result"] = simulation_to_json(sim);
        emit(j, out);
        return 0;
    }
    const Scenario& sc = sim.scenario;
    out << "Simulation: " << sim.rounds << " rounds, seed " << sim.seed << "\n";
    for (int x = 0; x < sc.inputs_a; ++x)
        for (int y = 0; y < sc.inputs_b; ++y) {
            out << "  (x=" << x << ",y=" << y
                << ") n=" << sim.pair_totals[std::size_t(x) * sc.inputs_b + y] << " :";
            for (int a = 0; a < sc.outputs_a; ++a)
                for (int b = 0; b < sc.outputs_b; ++b)
                    out << "  " << sim.counts[sc.index(x, y, a, b)];
            out << "\n";
        }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Executable no-go theorems: Bell inequalities, inequality-free arguments, "
                 "and pseudo-telepathy on small entangled systems"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool with_eps) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"table", "json"}))
            ->capture_default_str();
        if (with_eps)
            sub->add_option("--eps", cfg.eps_support, "Support threshold for possibilistic tests")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
    };

    CLI::App* chsh = app.add_subcommand("chsh", "CHSH bound, quantum value, and correlators");
    add_common(chsh, false);
    chsh->add_option("--rounds", cfg.rounds, "Also simulate this many experiment rounds");
    chsh->add_option("--seed", cfg.seed, "Sampler seed")->capture_default_str();

    CLI::App* hardy = app.add_subcommand("hardy", "Hardy probabilities, logical chain, verdict");
    add_common(hardy, true);

    CLI::App* ms = app.add_subcommand("magic-square",
                                      "Magic Square census, values, and verdict");
    add_common(ms, true);

    CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a behavior file");
    add_common(classify_cmd, true);
    classify_cmd->add_option("--input", cfg.input_path, "Behavior JSON file")->required();

    CLI::App* bound_cmd =
        app.add_subcommand("lhv-bound", "Exact LHV bound of an expression file or built-in");
    add_common(bound_cmd, false);
    std::string bound_game;
    bound_cmd->add_option("--input", cfg.input_path, "Bell-expression JSON file");
    bound_cmd->add_option("--game", bound_game,
                          "Built-in name: magic-square, chsh-game, or chsh");

    CLI::App* sim_cmd = app.add_subcommand("simulate", "Sample rounds from a behavior file");
    add_common(sim_cmd, false);
    sim_cmd->add_option("--input", cfg.input_path, "Behavior JSON file")->required();
    std::uint64_t sim_rounds = 10000;
    sim_cmd->add_option("--rounds", sim_rounds, "Number of rounds")->capture_default_str();
    sim_cmd->add_option("--seed", cfg.seed, "Sampler seed")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (chsh->parsed()) return cmd_chsh(cfg, out);
        if (hardy->parsed()) return cmd_hardy(cfg, out);
        if (ms->parsed()) return cmd_magic_square(cfg, out);
        if (classify_cmd->parsed()) return cmd_classify(cfg, out);
        if (bound_cmd->parsed()) return cmd_lhv_bound(cfg, bound_game, out);
        if (sim_cmd->parsed()) {
            cfg.rounds = sim_rounds;
            return cmd_simulate(cfg, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace nonloc
