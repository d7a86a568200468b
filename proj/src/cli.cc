// Copyright 2026 The nsgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsgate/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsgate/detector_models.h"
#include "nsgate/errors.h"
#include "nsgate/fidelity_bench.h"
#include "nsgate/ns_gate.h"

namespace nsgate {

namespace {

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double parse_number(const std::string& field) {
    size_t used = 0;
    double value = std::stod(field, &used);
    if (used != field.size()) {
        throw std::invalid_argument("bad number '" + field + "'");
    }
    return value;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepOptions {
    std::string scheme = "dda";
    double eta_min = 0.01;
    double eta_max = 1.0;
    int steps = 100;
    std::string format = "csv";
    std::string out_path;
    uint64_t seed = 0;
    int cross_checks = 2;
};

struct PovmOptions {
    std::string model = "dda";
    double eta = 1.0;
    int cutoff = 3;
};

struct AmplitudeOptions {
    Reflectivities r = Reflectivities::design();
    std::string source = "simulated";
};

constexpr const char* kConfigHelp = "File of key = value lines naming long flags; flags given on the command line win";

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

// Splices the contents of a --config file in front of the subcommand's own
// flags, so that with last-value-wins parsing the command line overrides it.
std::vector<std::string> expand_config(std::span<const std::string> args) {
    std::vector<std::string> rest(args.begin(), args.end());
    std::string path;
    for (size_t i = 1; i < rest.size(); ++i) {
        if (rest[i] == "--config" && i + 1 < rest.size()) {
            path = rest[i + 1];
            rest.erase(rest.begin() + i, rest.begin() + i + 2);
            break;
        }
        if (rest[i].starts_with("--config=")) {
            path = rest[i].substr(9);
            rest.erase(rest.begin() + i);
            break;
        }
    }
    if (path.empty()) {
        return rest;
    }
    std::ifstream file(path);
    if (!file) {
        throw UsageError("cannot read config file " + path);
    }
    std::vector<std::string> flags;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty() || key == "config") {
            throw UsageError(path + ":" + std::to_string(line_no) + ": bad key");
        }
        flags.push_back("--" + key);
        flags.push_back(value);
    }
    rest.insert(rest.begin() + 1, flags.begin(), flags.end());
    return rest;
}

int sweep_threads() {
    const char* env = std::getenv("NSGATE_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) {
        throw UsageError("NSGATE_THREADS must be a positive integer");
    }
    return static_cast<int>(n);
}

// Checks the factored channel against the literal simulated pipeline on
// random inputs drawn from the seed.
void cross_check(const DetectorModel& detector, uint64_t seed, int count) {
    if (count <= 0) {
        return;
    }
    const NsGateConfig config = NsGateConfig::with_detectors(detector);
    const ConditionalChannel channel(config);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < count; ++i) {
        const InputStateParam p{angle(rng), angle(rng), phase(rng), phase(rng)};
        const auto amps = p.amplitudes();
        const ConditionalOutput fast = channel.output(amps);
        const ConditionalOutput slow = conditional_output_simulated(config, p.to_state(config.cutoff));
        const double gap = (fast.unnormalized.matrix() - slow.unnormalized.matrix()).cwiseAbs().maxCoeff();
        if (gap > 1e-10) {
            throw NumericalFailure("factored channel disagrees with the simulated pipeline by " + format_number(gap));
        }
    }
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out) {
    const DetectorScheme scheme = DetectorScheme::parse(opt.scheme);
    if (!(opt.eta_min > 0.0)) {
        throw UsageError("--eta-min must be > 0: fidelity is undefined at eta = 0 (no apparent successes possible)");
    }
    if (!(opt.eta_max <= 1.0 && opt.eta_min <= opt.eta_max)) {
        throw UsageError("need 0 < eta-min <= eta-max <= 1");
    }
    if (opt.steps < 1) {
        throw UsageError("--steps must be at least 1");
    }
    if (opt.format != "csv" && opt.format != "json") {
        throw UsageError("--format must be csv or json");
    }
    std::vector<double> grid;
    for (int i = 0; i < opt.steps; ++i) {
        grid.push_back(opt.steps == 1 ? opt.eta_min
                                      : opt.eta_min + (opt.eta_max - opt.eta_min) * i / (opt.steps - 1));
    }
    const int threads = sweep_threads();
    for (size_t i = 0; i < grid.size(); ++i) {
        cross_check(scheme.at(grid[i]), opt.seed + i, opt.cross_checks);
    }
    const auto points = sweep(scheme, grid, threads);

    std::vector<SweepRecord> records;
    for (const auto& p : points) {
        const auto& m = p.result.minimizer;
        records.push_back({scheme.name(), p.eta, p.result.value, p.result.success_at_one,
                           p.result.success_at_minimizer, {m.theta1, m.theta2, m.phi_beta, m.phi_gamma}});
    }
    const std::string text = opt.format == "csv" ? format_sweep_csv(records) : format_sweep_json(records) + "\n";
    if (opt.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(opt.out_path, std::ios::binary);
        if (!file) {
            throw UsageError("cannot open output file " + opt.out_path);
        }
        file << text;
    }
    return kExitOk;
}

DetectorModel parse_model(const std::string& name, double eta) {
    DetectorScheme scheme = DetectorScheme::parse(name);
    DetectorModel model = scheme.at(eta);
    model.validate();
    return model;
}

int cmd_povm(const PovmOptions& opt, std::ostream& out) {
    if (!(opt.eta >= 0.0 && opt.eta <= 1.0)) {
        throw UsageError("--eta must lie in [0, 1]");
    }
    if (opt.cutoff < 0) {
        throw UsageError("--cutoff must be nonnegative");
    }
    const Povm povm = make_povm(parse_model(opt.model, opt.eta), opt.cutoff);
    out << "outcome";
    for (int n = 0; n <= opt.cutoff; ++n) {
        out << ",n=" << n;
    }
    out << '\n';
    for (const auto& e : povm) {
        out << e.label;
        for (int n = 0; n <= opt.cutoff; ++n) {
            out << ',' << format_number(e.weight(n));
        }
        out << '\n';
    }
    if (completeness_defect(povm, opt.cutoff) > 1e-12) {
        throw NumericalFailure("POVM completeness defect exceeds 1e-12");
    }
    return kExitOk;
}

int cmd_amplitudes(const AmplitudeOptions& opt, std::ostream& out) {
    for (double r : {opt.r.r1, opt.r.r2, opt.r.r3}) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw UsageError("reflectivities must lie in [0, 1]");
        }
    }
    auto emit = [&out](const std::optional<Complex>& c) {
        if (c) {
            out << ',' << format_number(c->real()) << ',' << format_number(c->imag());
        } else {
            out << ",,";
        }
    };
    if (opt.source == "closed" || opt.source == "simulated") {
        const AmplitudeTable table =
            opt.source == "closed" ? closed_form_amplitudes(opt.r) : simulated_amplitudes(opt.r);
        out << "i,j,k,re,im\n";
        for (const auto& [basis, c] : table.entries()) {
            out << basis[0] << ',' << basis[1] << ',' << basis[2];
            emit(c);
            out << '\n';
        }
        return kExitOk;
    }
    if (opt.source != "both") {
        throw UsageError("--source must be closed, simulated or both");
    }
    const AmplitudeTable closed = closed_form_amplitudes(opt.r);
    const AmplitudeTable simulated = simulated_amplitudes(opt.r);
    double discrepancy = 0.0;
    out << "i,j,k,closed_re,closed_im,simulated_re,simulated_im\n";
    for (const auto& [basis, c] : simulated.entries()) {
        const auto cf = closed.find(basis[0], basis[1], basis[2]);
        out << basis[0] << ',' << basis[1] << ',' << basis[2];
        emit(cf);
        emit(c);
        out << '\n';
        if (cf) {
            discrepancy = std::max(discrepancy, std::abs(*cf - c));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", discrepancy);
    out << "# max_abs_discrepancy=" << buf << '\n';
    if (discrepancy > 1e-10) {
        throw NumericalFailure("closed forms disagree with the simulated network");
    }
    return kExitOk;
}

}  // namespace

std::string format_sweep_csv(std::span<const SweepRecord> records) {
    std::string text = "scheme,eta,gate_fidelity,success_at_one,success_at_min\n";
    for (const auto& r : records) {
        text += r.scheme + ',' + format_number(r.eta) + ',' + format_number(r.gate_fidelity) + ',' +
                format_number(r.success_at_one) + ',' + format_number(r.success_at_min) + '\n';
    }
    return text;
}

std::vector<SweepRecord> parse_sweep_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "scheme,eta,gate_fidelity,success_at_one,success_at_min") {
        throw std::invalid_argument("sweep CSV: missing or unexpected header");
    }
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 5) {
            throw std::invalid_argument("sweep CSV: expected 5 fields in '" + line + "'");
        }
        records.push_back({fields[0], parse_number(fields[1]), parse_number(fields[2]), parse_number(fields[3]),
                           parse_number(fields[4]), {}});
    }
    return records;
}

std::string format_sweep_json(std::span<const SweepRecord> records) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& r : records) {
        array.push_back({{"scheme", r.scheme},
                         {"eta", r.eta},
                         {"gate_fidelity", r.gate_fidelity},
                         {"success_at_one", r.success_at_one},
                         {"success_at_min", r.success_at_min},
                         {"minimizer_params", r.minimizer_params}});
    }
    return array.dump(2);
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonlinear-sign gate simulator under realistic photon counters", "nsgate"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    SweepOptions sweep_opt;
    auto* sweep_cmd = app.add_subcommand("sweep", "Gate fidelity and apparent success versus detector efficiency");
    std::string config_path;
    sweep_cmd->add_option("--config", config_path, kConfigHelp);
    sweep_cmd->add_option("--scheme", sweep_opt.scheme, "dda | vlpc | cascade:N | ideal | threshold")
        ->capture_default_str();
    sweep_cmd->add_option("--eta-min", sweep_opt.eta_min, "Smallest efficiency (> 0)")->capture_default_str();
    sweep_cmd->add_option("--eta-max", sweep_opt.eta_max, "Largest efficiency (<= 1)")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep_opt.steps, "Grid points, endpoints included")->capture_default_str();
    sweep_cmd->add_option("--format", sweep_opt.format, "csv | json")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_opt.out_path, "Write to this file instead of standard output");
    sweep_cmd->add_option("--seed", sweep_opt.seed, "Seed for the randomized oracle cross-checks")
        ->capture_default_str();
    sweep_cmd->add_option("--cross-checks", sweep_opt.cross_checks, "Random oracle cross-checks per grid point")
        ->capture_default_str();

    PovmOptions povm_opt;
    auto* povm_cmd = app.add_subcommand("povm", "Print POVM weight tables");
    povm_cmd->add_option("--config", config_path, kConfigHelp);
    povm_cmd->add_option("--model", povm_opt.model, "ideal | threshold | dda | cascade:N | vlpc")
        ->capture_default_str();
    povm_cmd->add_option("--eta", povm_opt.eta, "Detector efficiency in [0, 1]")->capture_default_str();
    povm_cmd->add_option("--cutoff", povm_opt.cutoff, "Largest photon number")->capture_default_str();

    AmplitudeOptions amp_opt;
    auto* amp_cmd = app.add_subcommand("amplitudes", "Print the c_ijk amplitude table of the NS network");
    amp_cmd->add_option("--config", config_path, kConfigHelp);
    amp_cmd->add_option("--r1", amp_opt.r.r1, "First beamsplitter reflectivity")->capture_default_str();
    amp_cmd->add_option("--r2", amp_opt.r.r2, "Second beamsplitter reflectivity")->capture_default_str();
    amp_cmd->add_option("--r3", amp_opt.r.r3, "Third beamsplitter reflectivity")->capture_default_str();
    amp_cmd->add_option("--source", amp_opt.source, "closed | simulated | both")->capture_default_str();

    std::vector<std::string> expanded;
    try {
        expanded = expand_config(args);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*sweep_cmd) {
            return cmd_sweep(sweep_opt, out);
        }
        if (*povm_cmd) {
            return cmd_povm(povm_opt, out);
        }
        return cmd_amplitudes(amp_opt, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const UndefinedFidelityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace nsgate
