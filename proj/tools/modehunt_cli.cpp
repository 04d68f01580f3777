#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_input.hpp"
#include "modehunt/harness.hpp"
#include "modehunt/kolmsig.hpp"
#include "modehunt/persistence1d.hpp"
#include "modehunt/report_io.hpp"
#include "modehunt/stats.hpp"
#include "modehunt/tautstring.hpp"

namespace {

using nlohmann::json;
using namespace modehunt;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json signature_array(const SignatureSequence& s) {
    json out = json::array();
    for (double v : s.positives()) out.push_back(v);
    return out;
}

void emit(const json& doc) { std::cout << dump_json(doc) << '\n'; }

// --- signatures -------------------------------------------------------------

struct SignaturesArgs {
    std::string input = "-";
    std::string metric = "kolmogorov";
};

void run_signatures(const SignaturesArgs& a) {
    const StepSignal f(cli::read_series(a.input));
    const SignatureSequence s = a.metric == "sup" ? persistence_signatures(f) : kolmogorov_signatures(f);
    emit({{"schema", kSchemaVersion},
          {"n", f.size()},
          {"metric", a.metric},
          {"signatures", signature_array(s)},
          {"mode_count", mode_count(f)}});
}

// --- modes --------------------------------------------------------------------

struct ModesArgs {
    std::string input = "-";
    double alpha = 0.05;
    std::optional<double> sigma, kappa, v, epsilon;
};

void run_modes(const ModesArgs& a) {
    const bool moment_given = a.kappa || a.v;
    if (a.sigma && moment_given) throw UsageError("give either --sigma or --kappa/--v, not both");
    if (!a.sigma && !(a.kappa && a.v)) throw UsageError("a noise model is required: --sigma, or --kappa with --v");

    const StepSignal f(cli::read_series(a.input));
    const std::size_t n = f.size();
    double t = 0.0;
    try {
        t = a.sigma ? tau_gauss(n, a.alpha, GaussianModel(*a.sigma)) : tau(n, a.alpha, MomentModel(*a.kappa, *a.v));
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }

    const SignatureSequence s = kolmogorov_signatures(f);
    const ConfidenceBand band = confidence_band(s, t);
    json bands = json::array();
    for (const auto& b : band.bands) bands.push_back({b.lower, b.upper});

    json doc{{"schema", kSchemaVersion},
             {"n", n},
             {"alpha", a.alpha},
             {"tau", t},
             {"signatures", signature_array(s)},
             {"k_hat", mode_estimate(s, t)},
             {"band", std::move(bands)},
             {"tail", {band.tail.lower, band.tail.upper}}};
    if (a.epsilon) {
        if (!(*a.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
        const ModeCI ci = mode_ci(s, *a.epsilon, t);
        doc["epsilon"] = *a.epsilon;
        doc["k_epsilon"] = mode_estimate(s, *a.epsilon);
        doc["mode_ci"] = {{"l", ci.lower}, {"u", ci.upper ? json(*ci.upper) : json("inf")}};
    }
    emit(doc);
}

// --- tautstring ---------------------------------------------------------------

struct TautArgs {
    std::string input = "-";
    double alpha = 0.0;
};

void run_tautstring(const TautArgs& a) {
    if (!(a.alpha >= 0.0)) throw UsageError("--alpha must be non-negative");
    const StepSignal f(cli::read_series(a.input));
    const TautString ts = taut_string(f, a.alpha);
    const StepSignal d = taut_derivative(f, a.alpha);

    json knots = json::array();
    for (std::size_t k = 0; k < ts.knots.size(); ++k) knots.push_back(ts.knot_position(k));
    json derivative = json::array();
    for (double v : d.values()) derivative.push_back(v);
    emit({{"schema", kSchemaVersion},
          {"n", f.size()},
          {"alpha", a.alpha},
          {"knots", std::move(knots)},
          {"values", ts.values},
          {"derivative", std::move(derivative)},
          {"mode_count", mode_count(d)}});
}

// --- simulate -----------------------------------------------------------------

struct SimulateArgs {
    std::string experiment;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::string out;
    bool timings = false;
    std::vector<std::size_t> sizes;
    std::string signal = "blocks";
    std::size_t n = 1024;
    double sigma = 2.0;
    double alpha = 0.1;
};

ExperimentReport simulate(const SimulateArgs& a) {
    if (a.reps == 0) throw UsageError("--reps must be positive");
    if (a.experiment == "table1") {
        Table1Config c;
        c.reps = a.reps;
        c.seed = a.seed;
        if (!a.sizes.empty()) c.sizes = a.sizes;
        return run_table1(c);
    }
    if (a.experiment == "error-control") {
        if (a.signal != "blocks" && a.signal != "bumps") throw UsageError("--signal must be blocks or bumps");
        const bool blocks = a.signal == "blocks";
        const StepSignal f = generate_signal(blocks ? TestSignal::blocks() : TestSignal::bumps(), a.n);
        if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
        if (!(a.sigma > 0.0)) throw UsageError("--sigma must be positive");
        return run_error_control(f, blocks ? 5 : 11, NoiseKind::gaussian(a.sigma, 0), a.alpha, a.reps, a.seed);
    }
    if (a.experiment == "detection") {
        DetectionConfig c;
        c.reps = a.reps;
        c.seed = a.seed;
        c.alpha = a.alpha;
        if (!a.sizes.empty()) c.plateau_sizes = a.sizes;
        return run_detection_comparison(c);
    }
    throw UsageError("unknown experiment '" + a.experiment + "'");
}

std::string csv_path_for(const std::string& json_path) {
    const auto slash = json_path.find_last_of('/');
    const auto dot = json_path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return json_path.substr(0, dot) + ".csv";
    return json_path + ".csv";
}

void run_simulate(const SimulateArgs& a) {
    const ExperimentReport report = simulate(a);
    const std::string text = dump_json(report_to_json(report, a.timings)) + "\n";
    if (a.out.empty() || a.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream json_file(a.out, std::ios::binary);
    if (!json_file) throw UsageError("cannot write " + a.out);
    json_file << text;
    const std::string csv = csv_path_for(a.out);
    std::ofstream csv_file(csv, std::ios::binary);
    if (!csv_file) throw UsageError("cannot write " + csv);
    write_report_csv(csv_file, report);
    std::cerr << "wrote " << a.out << " and " << csv << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mode hunting with Kolmogorov and persistence signatures"};
    app.require_subcommand(1);

    SignaturesArgs sig;
    auto* c_sig = app.add_subcommand("signatures", "Signature sequence of a series");
    c_sig->add_option("input", sig.input, "CSV or JSON file, '-' for stdin")->capture_default_str();
    c_sig->add_option("--metric", sig.metric, "kolmogorov or sup")
        ->check(CLI::IsMember({"kolmogorov", "sup"}))
        ->capture_default_str();

    ModesArgs modes;
    auto* c_modes = app.add_subcommand("modes", "Thresholded mode count, confidence band and interval");
    c_modes->add_option("input", modes.input, "CSV or JSON file, '-' for stdin")->capture_default_str();
    c_modes->add_option("--alpha", modes.alpha, "Error level in (0,1)")->capture_default_str();
    c_modes->add_option("--sigma", modes.sigma, "Known Gaussian noise level");
    c_modes->add_option("--kappa", modes.kappa, "Moment condition kappa");
    c_modes->add_option("--v", modes.v, "Moment condition v");
    c_modes->add_option("--epsilon", modes.epsilon, "Signature level for the mode-count interval");

    TautArgs taut;
    auto* c_taut = app.add_subcommand("tautstring", "Taut string and its derivative");
    c_taut->add_option("input", taut.input, "CSV or JSON file, '-' for stdin")->capture_default_str();
    c_taut->add_option("--alpha", taut.alpha, "Tube radius")->required();

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
    c_sim->add_option("--experiment", sim.experiment, "table1, error-control or detection")->required();
    c_sim->add_option("--reps", sim.reps, "Replications")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "Seed")->capture_default_str();
    c_sim->add_option("--out", sim.out, "JSON report path; the CSV goes next to it");
    c_sim->add_flag("--timings", sim.timings, "Include wall times in the report");
    c_sim->add_option("--sizes", sim.sizes, "Override the size grid (table1, detection plateau)");
    c_sim->add_option("--signal", sim.signal, "error-control: blocks or bumps")->capture_default_str();
    c_sim->add_option("--n", sim.n, "error-control: number of cells")->capture_default_str();
    c_sim->add_option("--sigma", sim.sigma, "error-control: Gaussian noise level")->capture_default_str();
    c_sim->add_option("--alpha", sim.alpha, "Error level")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (c_sig->parsed()) run_signatures(sig);
        if (c_modes->parsed()) run_modes(modes);
        if (c_taut->parsed()) run_tautstring(taut);
        if (c_sim->parsed()) run_simulate(sim);
    } catch (const cli::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
