// Command-line front end: every subcommand prints one JSON document to
// stdout; diagnostics go to stderr.  Exit codes: 0 success, 1 usage error,
// 2 domain error (with a structured error document on stdout).

#include "tfkit/behavior.hpp"
#include "tfkit/errors.hpp"
#include "tfkit/json_io.hpp"
#include "tfkit/localpoly.hpp"
#include "tfkit/quantum.hpp"
#include "tfkit/scenario.hpp"
#include "tfkit/spacetime.hpp"
#include "tfkit/transfer_function.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace {

using tfkit::Json;
using tfkit::Rational;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    Json j;
    in >> j;
    return j;
}

std::vector<double> parse_angles(const std::string& text) {
    if (text == "exact-thirds") {
        return {0.0, -std::numbers::pi / 3.0, std::numbers::pi / 3.0};
    }
    std::vector<double> angles;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        angles.push_back(std::stod(text.substr(start, end - start)));
        if (end == text.size()) break;
        start = end + 1;
    }
    return angles;
}

/// Relay syntax: "+:1,-:2" (signs, 1-based settings) or "0:0,1:1"
/// (outcome:setting indices).
tfkit::Relay parse_relay(const std::string& text, int outcomes) {
    std::vector<int> relay(static_cast<std::size_t>(outcomes), -1);
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        auto item = text.substr(start, end - start);
        auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("malformed relay entry: '" + item + "'");
        }
        auto outcome_text = item.substr(0, colon);
        auto setting_text = item.substr(colon + 1);
        int outcome;
        int setting;
        if (outcome_text == "+" || outcome_text == "-") {
            outcome = outcome_text == "+" ? 0 : 1;
            setting = std::stoi(setting_text) - 1; // sign syntax uses 1-based settings
        } else {
            outcome = std::stoi(outcome_text);
            setting = std::stoi(setting_text);
        }
        if (outcome < 0 || outcome >= outcomes) {
            throw std::invalid_argument("relay outcome out of range: '" + item + "'");
        }
        relay[static_cast<std::size_t>(outcome)] = setting;
        if (end == text.size()) break;
        start = end + 1;
    }
    for (int v : relay) {
        if (v < 0) throw tfkit::RelayUndefined("relay does not cover every outcome");
    }
    return relay;
}

struct Options {
    // enumerate / classify
    std::string shape_text;
    bool count_only = false;
    std::uint64_t budget = 10'000'000;
    std::uint64_t limit = 0;
    std::string tf_text;
    // file inputs
    std::string input_path, exp1_path, exp2_path, joint_path;
    // quantum / bell
    std::string angles_text;
    bool exact_thirds = false;
    std::int64_t max_denominator = 1'000'000;
    bool skip_lp = false;
    std::uint64_t max_atoms = 10'000;
    // spacetime
    int n = 3;
    double length = 1.0;
    double phi = 0.5;
    std::string tau_text = "auto";
    double epsilon = 1e-9;
    std::string csv_path;
    // pigeonhole / escape
    std::string p_text;
    int m = 0;
    int lp_max = 15;
    // chain
    std::string relay_text;
    std::uint64_t samples = 0;
    std::uint64_t seed = 12345;
};

int run_enumerate(const Options& opt) {
    const auto shape = tfkit::ExperimentShape::parse(opt.shape_text);
    const tfkit::EnumerationBudget budget{opt.budget};
    const auto count = tfkit::transfer_function_count(shape, budget);
    Json out{{"schema", tfkit::kSchemaVersion}, {"shape", shape.to_text()}, {"count", count}};
    if (!opt.count_only) {
        Json functions = Json::array();
        std::uint64_t emitted = 0;
        bool truncated = false;
        tfkit::for_each_transfer_function(shape, [&](const tfkit::TransferFunction& f) {
            if (opt.limit && emitted >= opt.limit) {
                truncated = true;
                return;
            }
            functions.push_back(tfkit::to_canonical_text(f));
            ++emitted;
        }, budget);
        out["functions"] = std::move(functions);
        if (truncated) out["truncated"] = true;
    }
    emit(out);
    return 0;
}

int run_classify(const Options& opt) {
    const auto shape = tfkit::ExperimentShape::parse(opt.shape_text);
    if (!opt.tf_text.empty()) {
        const auto f = tfkit::transfer_function_from_text(shape, opt.tf_text);
        Json out = tfkit::signalling_to_json(tfkit::classify_signalling(f));
        out["tf"] = tfkit::to_canonical_text(f);
        out["product_form"] = tfkit::is_product_form(f);
        emit(out);
        return 0;
    }
    const auto census = tfkit::signalling_census(shape, {opt.budget});
    Json by_class = Json::object();
    for (const auto& [name, count] : census.by_class) by_class[name] = count;
    emit({{"schema", tfkit::kSchemaVersion},
          {"shape", shape.to_text()},
          {"total", census.total},
          {"census", std::move(by_class)},
          {"local_deterministic", tfkit::count_local_deterministic(shape)}});
    return 0;
}

int run_mix(const Options& opt) {
    const auto d = tfkit::distribution_from_json(load_json(opt.input_path));
    emit(tfkit::behavior_to_json(tfkit::behavior_from_distribution(d)));
    return 0;
}

int run_check_ns(const Options& opt) {
    const auto b = tfkit::behavior_from_json(load_json(opt.input_path));
    const auto flags = tfkit::check_no_signalling(b);
    Json out = tfkit::signalling_to_json(flags);
    out["no_signalling"] = flags.is_null();
    emit(out);
    return 0;
}

int run_lp(const Options& opt) {
    const auto b = tfkit::behavior_from_json(load_json(opt.input_path));
    const auto verdict = tfkit::local_membership(b, {opt.max_atoms});
    emit(tfkit::verdict_to_json(verdict, b));
    return 0;
}

int run_quantum(const Options& opt) {
    const tfkit::Angles angles{parse_angles(opt.angles_text)};
    const tfkit::RationalizationPolicy policy{opt.exact_thirds, opt.max_denominator};
    emit(tfkit::behavior_to_json(tfkit::singlet_behavior(angles, policy)));
    return 0;
}

int run_bell(const Options& opt) {
    if (opt.input_path.empty() && opt.angles_text.empty()) {
        throw std::invalid_argument("bell needs --angles or --input");
    }
    tfkit::Behavior b = [&] {
        if (!opt.input_path.empty()) {
            return tfkit::behavior_from_json(load_json(opt.input_path));
        }
        const tfkit::Angles angles{parse_angles(opt.angles_text)};
        // Symbolic rationals whenever the angle syntax allows them; the
        // continued-fraction bound covers the rest.
        const tfkit::RationalizationPolicy policy{true, opt.max_denominator};
        return tfkit::singlet_behavior(angles, policy);
    }();
    Json values = Json::object();
    Rational worst = 0;
    bool first = true;
    for (int k = 1; k <= 3; ++k) {
        const Rational value = tfkit::bell_expression(b, k);
        values[std::to_string(k)] = tfkit::rational_to_string(value);
        if (first || value < worst) worst = value;
        first = false;
    }
    Json out{{"schema", tfkit::kSchemaVersion},
             {"cyclic_values", std::move(values)},
             {"violation", tfkit::rational_to_string(worst)},
             {"violated", worst < 0}};
    if (!opt.skip_lp) {
        out["lp"] = tfkit::verdict_to_json(tfkit::local_membership(b, {opt.max_atoms}), b);
    }
    emit(out);
    return 0;
}

int run_spacetime_config(const Options& opt) {
    const double tau = opt.tau_text == "auto"
                           ? tfkit::BoostedConfiguration::default_tau(opt.length, opt.phi)
                           : std::stod(opt.tau_text);
    const auto config = tfkit::BoostedConfiguration::generate(opt.n, opt.length, opt.phi, tau);
    if (!opt.csv_path.empty()) {
        std::ofstream csv(opt.csv_path);
        if (!csv) throw std::invalid_argument("cannot open CSV output: " + opt.csv_path);
        csv << tfkit::configuration_to_csv(config);
    }
    emit(tfkit::configuration_to_json(config, {opt.epsilon}));
    return 0;
}

int run_pigeonhole(const Options& opt) {
    const Rational p = tfkit::rational_from_string(opt.p_text);
    const int n = tfkit::minimal_pigeonhole_n(p);
    const int m = opt.m > 0 ? opt.m : 2 * n + 1;
    const tfkit::PigeonholeOptions options{!opt.skip_lp && m <= opt.lp_max, opt.lp_max};
    Json out = tfkit::pigeonhole_to_json(tfkit::pigeonhole_infeasible(p, m, options));
    out["N"] = n;
    out["M"] = m;
    emit(out);
    return 0;
}

int run_chain(const Options& opt) {
    tfkit::ChainedScenario scenario;
    std::optional<tfkit::ExperimentShape> shape1;
    if (!opt.joint_path.empty()) {
        scenario.joint = tfkit::joint_distribution_from_json(load_json(opt.joint_path));
        shape1 = scenario.joint->shape();
    } else {
        scenario.experiments.push_back(tfkit::distribution_from_json(load_json(opt.exp1_path)));
        scenario.experiments.push_back(tfkit::distribution_from_json(load_json(opt.exp2_path)));
        shape1 = scenario.experiments[0].shape();
    }
    scenario.relay = parse_relay(opt.relay_text, shape1->party(0).outcomes);

    // Weak-signalling profile of both experiments; the interchange symmetry
    // of the marginals is reported, not assumed.
    Json profile = Json::array();
    for (int e = 0; e < 2; ++e) {
        const tfkit::TFDistribution d =
            scenario.joint ? scenario.joint->marginal(e)
                           : scenario.experiments[static_cast<std::size_t>(e)];
        profile.push_back(
            {{"experiment", e},
             {"a_to_b", tfkit::rational_to_string(tfkit::weak_signalling_probability(d, 0, 1))},
             {"b_to_a", tfkit::rational_to_string(tfkit::weak_signalling_probability(d, 1, 0))}});
    }

    if (opt.samples > 0) {
        const double estimate =
            tfkit::estimate_backward_causality(scenario, 0, 1, opt.samples, opt.seed);
        emit({{"schema", tfkit::kSchemaVersion},
              {"mode", "monte_carlo"},
              {"samples", opt.samples},
              {"seed", opt.seed},
              {"signalling_profile", std::move(profile)},
              {"witness_fraction", estimate}});
        return 0;
    }
    Json out = tfkit::causality_report_to_json(tfkit::detect_backward_causality(scenario, 0, 1));
    out["signalling_profile"] = std::move(profile);
    emit(out);
    return 0;
}

int run_escape(const Options& opt) {
    const Rational p = tfkit::rational_from_string(opt.p_text);
    std::optional<tfkit::JointTFDistribution> joint;
    if (!opt.joint_path.empty()) {
        joint = tfkit::joint_distribution_from_json(load_json(opt.joint_path));
    }
    emit(tfkit::escape_to_json(tfkit::anticorrelation_escape_check(p, opt.m, joint)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-function toolkit: enumeration, signalling classes, "
                 "local-polytope membership, singlet oracle, boosted-experiment geometry"};
    app.require_subcommand(1);
    Options opt;

    auto* enumerate = app.add_subcommand("enumerate", "enumerate transfer functions of a shape");
    enumerate->add_option("--shape", opt.shape_text, "shape, e.g. 2x2:2x2")->required();
    enumerate->add_flag("--count-only", opt.count_only, "emit the count without the listing");
    enumerate->add_option("--budget", opt.budget, "enumeration budget")
        ->check(CLI::PositiveNumber);
    enumerate->add_option("--limit", opt.limit, "truncate the listing after this many entries");

    auto* classify = app.add_subcommand("classify", "signalling census or single-function class");
    classify->add_option("--shape", opt.shape_text)->required();
    classify->add_option("--tf", opt.tf_text, "classify one function given in canonical text");
    classify->add_option("--budget", opt.budget);

    auto* mix = app.add_subcommand("mix", "behavior of a transfer-function distribution");
    mix->add_option("--input", opt.input_path, "tf_distribution JSON")->required();

    auto* check_ns = app.add_subcommand("check-ns", "behavior-level signalling check");
    check_ns->add_option("--input", opt.input_path, "behavior JSON")->required();

    auto* lp = app.add_subcommand("lp", "local-polytope membership with witness or certificate");
    lp->add_option("--input", opt.input_path, "behavior JSON")->required();
    lp->add_option("--max-atoms", opt.max_atoms);

    auto* quantum = app.add_subcommand("quantum", "singlet behavior at the given angles");
    quantum->add_option("--angles", opt.angles_text, "comma-separated radians or 'exact-thirds'")
        ->required();
    quantum->add_flag("--exact-thirds", opt.exact_thirds,
                      "snap to symbolic rationals at multiples of pi/3 and pi/2");
    quantum->add_option("--max-den", opt.max_denominator, "rationalization denominator bound")
        ->check(CLI::PositiveNumber);

    auto* bell = app.add_subcommand("bell", "Bell functional values and LP verdict");
    bell->add_option("--angles", opt.angles_text, "comma-separated radians or 'exact-thirds'");
    bell->add_option("--input", opt.input_path, "behavior JSON (alternative to --angles)");
    bell->add_option("--max-den", opt.max_denominator);
    bell->add_flag("--no-lp", opt.skip_lp, "skip the membership LP");
    bell->add_option("--max-atoms", opt.max_atoms);

    auto* spacetime = app.add_subcommand("spacetime", "boosted-experiment geometry");
    spacetime->require_subcommand(1);
    auto* config = spacetime->add_subcommand("config", "generate the 2N+1 experiment family");
    config->add_option("--n", opt.n, "N (2N+1 experiments)")->check(CLI::PositiveNumber);
    config->add_option("--l", opt.length, "preparation separation L")->check(CLI::PositiveNumber);
    config->add_option("--phi", opt.phi, "rapidity step")->check(CLI::PositiveNumber);
    config->add_option("--tau", opt.tau_text, "proper measurement delay, or 'auto'");
    config->add_option("--epsilon", opt.epsilon, "null-cone epsilon")->check(CLI::PositiveNumber);
    config->add_option("--csv", opt.csv_path, "write the event table as CSV to this path");
    auto* st_pigeonhole = spacetime->add_subcommand("pigeonhole", "pigeonhole arithmetic and LP");

    auto* pigeonhole = app.add_subcommand("pigeonhole", "minimal N, union bound and LP check");
    for (auto* cmd : {pigeonhole, st_pigeonhole}) {
        cmd->add_option("--p", opt.p_text, "signalling probability, e.g. 1/4")->required();
        cmd->add_option("--m", opt.m, "experiment count (default 2N+1)");
        cmd->add_flag("--no-lp", opt.skip_lp);
        cmd->add_option("--lp-max", opt.lp_max, "LP budget on experiment count");
    }

    auto* chain = app.add_subcommand("chain", "backward-causality sweep of two chained experiments");
    chain->add_option("--exp1", opt.exp1_path, "tf_distribution JSON of the earlier experiment");
    chain->add_option("--exp2", opt.exp2_path, "tf_distribution JSON of the later experiment");
    chain->add_option("--joint", opt.joint_path, "joint_tf_distribution JSON (overrides exp1/exp2)");
    chain->add_option("--relay", opt.relay_text, "outcome:setting map, e.g. '+:1,-:2'")->required();
    chain->add_option("--sample", opt.samples, "Monte-Carlo sample count (0 = exhaustive)");
    chain->add_option("--seed", opt.seed, "Monte-Carlo seed");

    auto* escape = app.add_subcommand("escape", "anticorrelation escape check");
    escape->add_option("--p", opt.p_text, "per-experiment signalling probability")->required();
    escape->add_option("--m", opt.m, "experiment count")->required();
    escape->add_option("--joint", opt.joint_path, "joint_tf_distribution JSON to audit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (enumerate->parsed()) return run_enumerate(opt);
        if (classify->parsed()) return run_classify(opt);
        if (mix->parsed()) return run_mix(opt);
        if (check_ns->parsed()) return run_check_ns(opt);
        if (lp->parsed()) return run_lp(opt);
        if (quantum->parsed()) return run_quantum(opt);
        if (bell->parsed()) return run_bell(opt);
        if (spacetime->parsed() && config->parsed()) return run_spacetime_config(opt);
        if ((spacetime->parsed() && st_pigeonhole->parsed()) || pigeonhole->parsed()) {
            return run_pigeonhole(opt);
        }
        if (chain->parsed()) return run_chain(opt);
        if (escape->parsed()) return run_escape(opt);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const tfkit::DomainError& e) {
        emit({{"schema", tfkit::kSchemaVersion},
              {"error", {{"name", e.name()}, {"message", e.what()}}}});
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        emit({{"schema", tfkit::kSchemaVersion},
              {"error", {{"name", "MalformedInput"}, {"message", e.what()}}}});
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        emit({{"schema", tfkit::kSchemaVersion},
              {"error", {{"name", "InternalError"}, {"message", e.what()}}}});
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
