#include "sts/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sts/csv.hpp"

namespace sts {

namespace fs = std::filesystem;

std::string default_out_dir() {
    const char* env = std::getenv(kOutDirEnv);
    return env && *env ? std::string(env) : std::string(".");
}

Artifacts run_and_write(const RunSpec& spec, const std::string& out_dir, bool force) {
    const fs::path dir(out_dir.empty() ? default_out_dir() : out_dir);
    std::vector<std::pair<fs::path, fs::path>> targets;
    for (Algo a : spec.algos) {
        const std::string stem = spec.name + "_" + to_string(a);
        targets.emplace_back(dir / (stem + ".csv"), dir / (stem + "_summary.csv"));
    }
    if (!force) {
        for (const auto& [curve, summary] : targets)
            for (const auto& p : {curve, summary})
                if (fs::exists(p))
                    throw std::runtime_error(p.string() + " already exists (use --force to overwrite)");
    }
    fs::create_directories(dir);

    Artifacts out;
    for (std::size_t i = 0; i < spec.algos.size(); ++i) {
        AggregateResult r = run_experiment(spec.config_for(spec.algos[i]));
        write_file(targets[i].first.string(), per_period_csv(r));
        write_file(targets[i].second.string(), summary_csv(r));
        out.files.push_back(targets[i].first.string());
        out.files.push_back(targets[i].second.string());
        out.results.push_back(std::move(r));
    }
    return out;
}

Artifacts cmd_run(const RunOptions& opts) {
    if (opts.config_path.empty()) throw ConfigError(0, "--config is required");
    RunSpec spec = run_spec_from(parse_config_file(opts.config_path), fs::path(opts.config_path).stem().string());
    apply(spec, opts.overrides);
    return run_and_write(spec, opts.out_dir, opts.force);
}

RunSpec figure_spec(const std::string& figure_id) {
    RunSpec spec;
    spec.name = "fig" + figure_id;
    spec.algos = {Algo::TS, Algo::STS};
    ExperimentConfig& c = spec.base;
    c.alpha = 0.99;
    c.horizon = std::size_t{500};
    c.n_reps = 1000;
    c.seed = 1;
    if (figure_id == "1a") {
        c.family = FiniteUniformDeterministic{250};
        c.epsilon = 0.05;
    } else if (figure_id == "1b") {
        c.family = FiniteUniformBernoulli{250};
        c.epsilon = 0.05;
    } else if (figure_id == "1c") {
        c.family = FiniteGaussian{250, 0.0, 1.0, 1.0};
        c.epsilon = 0.5;
    } else if (figure_id == "1d") {
        c.family = LinearGaussian{250, 250, 2.0};
        c.epsilon = 1.0;
    } else {
        throw std::invalid_argument("unknown figure '" + figure_id + "' (expected 1a, 1b, 1c or 1d)");
    }
    return spec;
}

Artifacts cmd_reproduce(const std::string& figure_id, const Overrides& overrides, const std::string& out_dir,
                        bool force) {
    RunSpec spec = figure_spec(figure_id);
    apply(spec, overrides);
    return run_and_write(spec, out_dir, force);
}

double default_alpha(TheoremId id) {
    switch (id) {
        case TheoremId::T1: return 0.9;
        case TheoremId::T2: return 0.99;
        case TheoremId::T4: return 0.98;
        case TheoremId::T5: return 0.9;
    }
    return 0.9;
}

std::size_t default_reps(TheoremId id) { return id == TheoremId::T5 ? 2000 : 10000; }

std::string format_report(const VerificationReport& rep) {
    std::ostringstream os;
    os << "theorem " << to_string(rep.id) << "  alpha=" << format_real(rep.alpha)
       << "  epsilon=" << format_real(rep.epsilon) << "  reps=" << rep.result.n_reps
       << "  horizon=" << rep.result.horizon << "\n";
    for (const auto& c : rep.checks) {
        os << "  " << (c.passed ? "PASS" : "FAIL") << (c.informational ? " (info)" : "") << "  " << c.name
           << ": estimate " << format_real(c.estimate) << " +/- " << format_real(c.stderr_) << " "
           << c.relation << " " << format_real(c.reference) << "\n";
    }
    os << (rep.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string report_csv(const VerificationReport& rep) {
    std::string out = "# theorem=" + to_string(rep.id) + " alpha=" + format_real(rep.alpha) +
                      " epsilon=" + format_real(rep.epsilon) + " n_reps=" + std::to_string(rep.result.n_reps) +
                      " seed=" + std::to_string(rep.result.config.seed) + "\n" +
                      "check,relation,estimate,stderr,reference,passed,informational\n";
    for (const auto& c : rep.checks)
        out += "\"" + c.name + "\"," + c.relation + "," + format_real(c.estimate) + "," + format_real(c.stderr_) +
               "," + format_real(c.reference) + "," + (c.passed ? "1" : "0") + "," +
               (c.informational ? "1" : "0") + "\n";
    return out;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
    const double alpha = opts.alpha.value_or(default_alpha(opts.theorem));
    const std::size_t reps = opts.reps.value_or(default_reps(opts.theorem));
    const VerificationReport rep = verify_theorem(opts.theorem, alpha, reps, opts.seed, opts.epsilon, opts.threads);
    out << format_report(rep);
    if (opts.out_dir) {
        const fs::path dir(*opts.out_dir);
        const fs::path file = dir / ("verify_" + to_string(opts.theorem) + ".csv");
        if (!opts.force && fs::exists(file))
            throw std::runtime_error(file.string() + " already exists (use --force to overwrite)");
        fs::create_directories(dir);
        write_file(file.string(), report_csv(rep));
    }
    return rep.passed() ? 0 : 1;
}

}  // namespace sts
