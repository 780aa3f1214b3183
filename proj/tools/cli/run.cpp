#include "run.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <system_error>

#include "entswap/ensemble.hpp"
#include "entswap/errors.hpp"
#include "entswap/measures.hpp"

#ifndef ENTSWAP_VERSION
#define ENTSWAP_VERSION "0.0.0"
#endif

namespace entswap::cli {
namespace {

using json = nlohmann::ordered_json;

// Sweep endpoints are clipped this far inside (0, pi/2).
constexpr double kSweepMargin = 1e-6;

// Hand-typed amplitudes carry ~8 significant digits; within this distance of
// unit norm they are renormalized before reaching the library.
constexpr double kTypedAmplitudeTolerance = 1e-6;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string_view to_string(Command command) {
    switch (command) {
        case Command::Swap: return "swap";
        case Command::Sweep: return "sweep";
        case Command::Ensemble: return "ensemble";
        case Command::Cascade: return "cascade";
        case Command::Measure: return "measure";
    }
    return "unknown";
}

json amplitudes_json(const TwoQubitState& state) {
    json flat = json::array();
    for (const auto& a : state.amplitudes()) {
        flat.push_back(a.real());
        flat.push_back(a.imag());
    }
    return flat;
}

// ---------------------------------------------------------------------------
// Tabular output. Each command builds one table; JSON and CSV are rendered
// from the same values.

class Csv {
public:
    explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}

    Csv& row() {
        rows_.emplace_back();
        return *this;
    }
    Csv& add(double v) { return cell(format_csv_number(v)); }
    Csv& add(std::uint64_t v) { return cell(std::to_string(v)); }
    Csv& add(int v) { return cell(std::to_string(v)); }
    Csv& add(std::string_view v) { return cell(std::string(v)); }

    void write(std::ostream& out) const {
        write_line(out, header_);
        for (const auto& r : rows_) write_line(out, r);
    }

private:
    Csv& cell(std::string text) {
        rows_.back().push_back(std::move(text));
        return *this;
    }
    static void write_line(std::ostream& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Report {
    json parameters = json::object();
    json results = json::object();
    Csv table{{}};
};

// ---------------------------------------------------------------------------

PhaseAngle first_angle(const RunConfig& config) {
    if (config.theta1.has_value() == config.gamma_l.has_value()) {
        throw ValidationError("exactly one of --theta1 or --gamma-L must specify the first angle");
    }
    if (config.theta1) return PhaseAngle(*config.theta1);
    return theta_from_absorption(*config.gamma_l, 1.0);
}

PhaseAngle second_angle(const RunConfig& config, PhaseAngle first) {
    return config.theta2 ? PhaseAngle(*config.theta2) : first;
}

void describe_angles(json& parameters, const RunConfig& config, PhaseAngle theta1,
                     std::optional<PhaseAngle> theta2) {
    if (config.gamma_l) parameters["gamma_L"] = *config.gamma_l;
    parameters["theta1"] = theta1.radians();
    if (theta2) parameters["theta2"] = theta2->radians();
}

Report run_swap(const RunConfig& config) {
    const PhaseAngle theta1 = first_angle(config);
    const PhaseAngle theta2 = second_angle(config, theta1);
    const SwapResult result =
        config.theta2 ? swap_general(theta1, theta2) : swap_closed_form(theta1);

    Report report;
    describe_angles(report.parameters, config, theta1, theta2);
    report.parameters["bsm"] = to_string(config.bsm);

    report.table = Csv({"label", "probability", "es_after", "hh_re", "hh_im", "hv_re", "hv_im", "vh_re",
                        "vh_im", "vv_re", "vv_im", "mean_es"});
    json outcomes = json::array();
    for (const auto& o : result.outcomes) {
        outcomes.push_back({{"label", to_string(o.label)},
                            {"probability", o.probability},
                            {"es_after", o.es_after.value()},
                            {"post_state", amplitudes_json(*o.post_state)}});
        auto& row = report.table.row().add(to_string(o.label)).add(o.probability).add(o.es_after.value());
        for (const auto& a : o.post_state->amplitudes()) row.add(a.real()).add(a.imag());
        row.add(result.mean_es);
    }

    json classes = json::array();
    for (const auto& c : apply_bsm_mode(result, config.bsm)) {
        classes.push_back({{"class", to_string(c.cls)},
                           {"probability", c.probability},
                           {"post_state", c.post_state ? amplitudes_json(*c.post_state) : json(nullptr)}});
    }

    report.results["outcomes"] = std::move(outcomes);
    report.results["mean_es"] = result.mean_es;
    report.results["classes"] = std::move(classes);
    return report;
}

Report run_sweep(const RunConfig& config) {
    if (config.steps < 1) throw ValidationError("--steps must be at least 1");
    const double lo = std::max(config.theta_min, kSweepMargin);
    const double hi = std::min(config.theta_max, kHalfPi - kSweepMargin);
    if (!(lo <= hi)) throw ValidationError("sweep range is empty after clipping to (0, pi/2)");
    const std::optional<PhaseAngle> purifier =
        config.theta2 ? std::optional<PhaseAngle>(PhaseAngle(*config.theta2)) : std::nullopt;

    Report report;
    report.parameters["theta_min"] = lo;
    report.parameters["theta_max"] = hi;
    report.parameters["steps"] = config.steps;
    if (purifier) report.parameters["theta2"] = purifier->radians();

    report.table = Csv({"theta", "p_phi_plus", "p_phi_minus", "p_psi_plus", "p_psi_minus", "mean_es",
                        "conservation_residual"});
    json rows = json::array();
    for (int i = 0; i < config.steps; ++i) {
        const double t = i == 0 ? lo : i == config.steps - 1 ? hi : lo + (hi - lo) * i / (config.steps - 1);
        const PhaseAngle theta(t);
        const SwapResult result = purifier ? swap_general(theta, *purifier) : swap_closed_form(theta);
        const double target = purifier ? std::min(procrustean_yield(theta).value(), procrustean_yield(*purifier).value())
                                        : procrustean_yield(theta).value();
        const double residual = std::abs(result.mean_es - target);

        json probabilities = json::array();
        auto& row = report.table.row().add(t);
        for (const auto& o : result.outcomes) {
            probabilities.push_back(o.probability);
            row.add(o.probability);
        }
        row.add(result.mean_es).add(residual);
        rows.push_back({{"theta", t},
                        {"probabilities", std::move(probabilities)},
                        {"mean_es", result.mean_es},
                        {"conservation_residual", residual}});
    }
    report.results["rows"] = std::move(rows);
    return report;
}

Report run_ensemble(const RunConfig& config) {
    const PhaseAngle theta1 = first_angle(config);
    const PhaseAngle theta2 = second_angle(config, theta1);
    const std::uint64_t pairs = config.pairs.value_or(100000);
    if (pairs == 0) throw ValidationError("--pairs must be at least 1");
    if (config.workers == 0) throw ValidationError("--workers must be at least 1");

    const EnsembleStats stats = sample_swap({theta1, theta2, pairs, config.seed, config.bsm, config.workers});

    Report report;
    describe_angles(report.parameters, config, theta1, theta2);
    report.parameters["pairs"] = pairs;
    report.parameters["seed"] = config.seed;
    report.parameters["bsm"] = to_string(config.bsm);
    report.parameters["workers"] = config.workers;

    report.table = Csv({"class", "count", "probability", "standard_error", "empirical_mean_es", "bell_fraction"});
    json classes = json::array();
    for (const auto& c : stats.classes) {
        classes.push_back({{"class", to_string(c.cls)},
                           {"count", c.count},
                           {"probability", c.probability},
                           {"standard_error", c.standard_error}});
        report.table.row()
            .add(to_string(c.cls))
            .add(c.count)
            .add(c.probability)
            .add(c.standard_error)
            .add(stats.empirical_mean_es)
            .add(stats.bell_fraction);
    }
    report.results["classes"] = std::move(classes);
    report.results["empirical_mean_es"] = stats.empirical_mean_es;
    report.results["bell_fraction"] = stats.bell_fraction;
    report.results["pairs"] = stats.pairs;
    report.results["workers"] = stats.workers;
    return report;
}

Report run_cascade(const RunConfig& config) {
    const PhaseAngle theta0 = first_angle(config);
    if (config.levels < 1) throw ValidationError("--levels must be at least 1");

    Report report;
    describe_angles(report.parameters, config, theta0, std::nullopt);
    report.parameters["levels"] = config.levels;

    CascadeReport cascade = [&] {
        if (!config.pairs) {
            report.parameters["tol"] = config.tol;
            return cascade_exact(theta0, config.levels, config.tol);
        }
        if (*config.pairs == 0) throw ValidationError("--pairs must be at least 1");
        if (config.workers == 0) throw ValidationError("--workers must be at least 1");
        report.parameters["pairs"] = *config.pairs;
        report.parameters["seed"] = config.seed;
        report.parameters["workers"] = config.workers;
        return cascade_sampled(theta0, *config.pairs, config.seed, config.levels, config.workers);
    }();

    report.table = Csv({"level", "theta", "conditional_yield", "conditional_mean_es", "bell_yield",
                        "residual_fraction", "cumulative_bell_fraction", "entering", "converted", "limit_target"});
    json levels = json::array();
    for (const auto& l : cascade.levels) {
        levels.push_back({{"level", l.level},
                          {"theta", l.theta.radians()},
                          {"conditional_yield", l.conditional_yield},
                          {"conditional_mean_es", l.conditional_mean_es},
                          {"bell_yield", l.bell_yield_this_level},
                          {"residual_fraction", l.residual_fraction},
                          {"cumulative_bell_fraction", l.cumulative_bell_fraction},
                          {"entering", l.entering},
                          {"converted", l.converted}});
        report.table.row()
            .add(l.level)
            .add(l.theta.radians())
            .add(l.conditional_yield)
            .add(l.conditional_mean_es)
            .add(l.bell_yield_this_level)
            .add(l.residual_fraction)
            .add(l.cumulative_bell_fraction)
            .add(l.entering)
            .add(l.converted)
            .add(cascade.limit_target);
    }
    report.results["mode"] = config.pairs ? "sampled" : "exact";
    report.results["limit_target"] = cascade.limit_target;
    report.results["converged_at"] = cascade.converged_at ? json(*cascade.converged_at) : json(nullptr);
    report.results["levels"] = std::move(levels);
    return report;
}

Report run_measure(const RunConfig& config) {
    if (!config.amps) throw ValidationError("measure requires --amps re,im,re,im,re,im,re,im");
    const TwoQubitState state = parse_amplitudes(*config.amps);
    const SchmidtPair pair = schmidt(state);
    const double es = entanglement_es(state);
    const double entropy = entropy_of_entanglement(state);

    Report report;
    report.parameters["amps"] = amplitudes_json(state);
    report.results = {{"es", es}, {"entropy", entropy}, {"lambda1", pair.lambda1}, {"lambda2", pair.lambda2}};
    report.table = Csv({"es", "entropy", "lambda1", "lambda2"});
    report.table.row().add(es).add(entropy).add(pair.lambda1).add(pair.lambda2);
    return report;
}

Report dispatch(const RunConfig& config) {
    switch (config.command) {
        case Command::Swap: return run_swap(config);
        case Command::Sweep: return run_sweep(config);
        case Command::Ensemble: return run_ensemble(config);
        case Command::Cascade: return run_cascade(config);
        case Command::Measure: return run_measure(config);
    }
    throw ValidationError("unknown command");
}

void render(const RunConfig& config, const Report& report, std::ostream& out) {
    if (config.format == Format::Csv) {
        report.table.write(out);
        return;
    }
    json doc;
    doc["command"] = to_string(config.command);
    doc["version"] = ENTSWAP_VERSION;
    doc["basis_order"] = {"HH", "HV", "VH", "VV"};
    doc["parameters"] = report.parameters;
    doc["results"] = report.results;
    out << doc.dump(2) << '\n';
}

}  // namespace

std::string format_csv_number(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_csv_number: conversion failed");
    return std::string(buffer, end);
}

TwoQubitState parse_amplitudes(const std::string& text) {
    std::vector<double> values;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        std::string_view token = rest.substr(0, comma);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (!token.empty() && token.front() == '+') token.remove_prefix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw std::invalid_argument("--amps: cannot parse '" + std::string(token) + "' as a number");
        }
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (values.size() != 2 * TwoQubitState::kDimension) {
        throw std::invalid_argument("--amps expects 8 numbers (re,im for HH, HV, VH, VV), got " +
                                    std::to_string(values.size()));
    }
    TwoQubitState::Amplitudes amps{};
    double norm_squared = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = {values[2 * i], values[2 * i + 1]};
        norm_squared += std::norm(amps[i]);
    }
    if (!(std::abs(norm_squared - 1.0) <= kTypedAmplitudeTolerance)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "--amps is not normalized: norm^2 = " << norm_squared << " (must be within 1e-6 of 1)";
        throw NormalizationError(msg.str(), norm_squared);
    }
    return TwoQubitState::normalized(amps);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement-swapping purification simulator", "entswap"};
    app.set_version_flag("--version", ENTSWAP_VERSION);
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

    RunConfig config;
    const std::map<std::string, Command> commands{{"swap", Command::Swap},
                                                  {"sweep", Command::Sweep},
                                                  {"ensemble", Command::Ensemble},
                                                  {"cascade", Command::Cascade},
                                                  {"measure", Command::Measure}};
    const std::map<std::string, BsmMode> modes{{"full", BsmMode::Full}, {"partial", BsmMode::PartialLinearOptics}};
    const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};

    std::string command_name, bsm_name = "full", format_name = "json";
    app.add_option("command", command_name, "swap | sweep | ensemble | cascade | measure")
        ->required()
        ->check(CLI::IsMember(commands, CLI::ignore_case));
    app.add_option("--theta1", config.theta1, "First pair's phase angle (radians)");
    app.add_option("--theta2", config.theta2, "Second (purifier) pair's phase angle; defaults to --theta1");
    app.add_option("--gamma-L,--gamma_L", config.gamma_l,
                   "Absorption times length of the dichroic filter; alternative to --theta1");
    app.add_option("--theta-min", config.theta_min, "Sweep start (radians)")->capture_default_str();
    app.add_option("--theta-max", config.theta_max, "Sweep end (radians)")->capture_default_str();
    app.add_option("--steps", config.steps, "Sweep grid points, endpoints inclusive")->capture_default_str();
    app.add_option("--pairs", config.pairs, "Ensemble size; makes `cascade` a sampled run");
    app.add_option("--levels", config.levels, "Maximum cascade levels")->capture_default_str();
    app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
    app.add_option("--workers", config.workers, "Parallel sampling shards")->capture_default_str();
    app.add_option("--bsm", bsm_name, "full | partial")
        ->check(CLI::IsMember(modes, CLI::ignore_case))
        ->capture_default_str();
    app.add_option("--tol", config.tol, "Cascade convergence tolerance")->capture_default_str();
    app.add_option("--format", format_name, "json | csv")
        ->check(CLI::IsMember(formats, CLI::ignore_case))
        ->capture_default_str();
    app.add_option("--output,-o", config.output, "Write the report to this file instead of stdout");
    app.add_option("--amps", config.amps, "measure: re,im pairs for HH, HV, VH, VV");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        const auto lower = [](std::string text) {
            std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
            return text;
        };
        config.command = commands.at(lower(command_name));
        config.bsm = modes.at(lower(bsm_name));
        config.format = formats.at(lower(format_name));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForVersion&) {
        out << ENTSWAP_VERSION << '\n';
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    Report report;
    try {
        report = dispatch(config);
    } catch (const std::invalid_argument& e) {
        // ValidationError, DomainError, NormalizationError
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    if (config.output) {
        std::ofstream file(*config.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << *config.output << " for writing\n";
            return kExitIoError;
        }
        render(config, report, file);
        if (!file) {
            err << "error: failed writing " << *config.output << '\n';
            return kExitIoError;
        }
        return kExitSuccess;
    }
    render(config, report, out);
    return kExitSuccess;
}

}  // namespace entswap::cli
