#include "sts/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace sts {

namespace {

std::string trim(std::string s) {
    const auto ws = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

/// Drops a trailing `#` comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& raw, std::size_t line) {
    if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"')
        throw ConfigError(line, "unterminated string " + raw);
    return raw.substr(1, raw.size() - 2);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "name",
        "environment.family",
        "environment.n_actions",
        "environment.dim",
        "environment.prior_mean",
        "environment.prior_var",
        "environment.noise_var",
        "environment.prior_a",
        "environment.prior_b",
        "agent.algo",
        "agent.epsilon",
        "experiment.alpha",
        "experiment.horizon",
        "experiment.tol",
        "experiment.reps",
        "experiment.seed",
        "experiment.eval_mode",
        "experiment.threads",
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

    const ConfigDocument::Entry* find(const std::string& key) const {
        auto it = doc_.entries.find(key);
        return it == doc_.entries.end() ? nullptr : &it->second;
    }

    std::string string(const std::string& key, const std::string& fallback) const {
        const auto* e = find(key);
        return e ? e->value : fallback;
    }

    double real(const std::string& key, double fallback) const {
        const auto* e = find(key);
        if (!e) return fallback;
        if (e->is_string) throw ConfigError(e->line, key + " must be a number");
        try {
            std::size_t used = 0;
            const double v = std::stod(e->value, &used);
            if (used != e->value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(e->line, key + " must be a number, got '" + e->value + "'");
        }
    }

    std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
        const auto* e = find(key);
        if (!e) return fallback;
        std::uint64_t v = 0;
        const char* first = e->value.data();
        const char* last = first + e->value.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (e->is_string || ec != std::errc() || ptr != last)
            throw ConfigError(e->line, key + " must be a non-negative integer, got '" + e->value + "'");
        return v;
    }

    std::size_t line_of(const std::string& key) const {
        const auto* e = find(key);
        return e ? e->line : 0;
    }

private:
    const ConfigDocument& doc_;
};

EnvFamily family_from(const Reader& r) {
    const auto* fe = r.find("environment.family");
    if (!fe) throw ConfigError(0, "environment.family is required");
    const std::string& name = fe->value;
    const auto n = static_cast<std::size_t>(r.integer("environment.n_actions", 250));
    if (name == "uniform-deterministic") return FiniteUniformDeterministic{n};
    if (name == "uniform-bernoulli") return FiniteUniformBernoulli{n};
    if (name == "gaussian")
        return FiniteGaussian{n, r.real("environment.prior_mean", 0.0), r.real("environment.prior_var", 1.0),
                              r.real("environment.noise_var", 1.0)};
    if (name == "linear-gaussian")
        return LinearGaussian{n, static_cast<std::size_t>(r.integer("environment.dim", 250)),
                              r.real("environment.noise_var", 2.0)};
    if (name == "infinite-deterministic") return InfiniteDeterministic{};
    if (name == "infinite-bernoulli")
        return InfiniteBernoulli{r.real("environment.prior_a", 1.0), r.real("environment.prior_b", 1.0)};
    throw ConfigError(fe->line, "environment.family: unknown family '" + name + "'");
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

ConfigDocument parse_config_text(const std::string& text) {
    ConfigDocument doc;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "malformed section header " + line);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(line_no, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "missing key before '='");
        if (value.empty()) throw ConfigError(line_no, key + " has no value");

        ConfigDocument::Entry entry;
        entry.line = line_no;
        if (value.front() == '[') {
            if (value.back() != ']') throw ConfigError(line_no, "unterminated array for " + key);
            std::string items;
            std::istringstream parts(value.substr(1, value.size() - 2));
            std::string item;
            while (std::getline(parts, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                if (!items.empty()) items += ",";
                items += item.front() == '"' ? unquote(item, line_no) : item;
            }
            entry.value = items;
            entry.is_string = true;
        } else if (value.front() == '"') {
            entry.value = unquote(value, line_no);
            entry.is_string = true;
        } else {
            entry.value = value;
        }

        const std::string full = section.empty() ? key : section + "." + key;
        if (!known_keys().count(full)) throw ConfigError(line_no, "unknown key " + full);
        if (doc.entries.count(full)) throw ConfigError(line_no, "duplicate key " + full);
        doc.entries.emplace(full, std::move(entry));
    }
    return doc;
}

ConfigDocument parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

ExperimentConfig RunSpec::config_for(Algo algo) const {
    ExperimentConfig c = base;
    c.algo = algo;
    if (algo == Algo::TS) c.epsilon = 0.0;
    return c;
}

RunSpec run_spec_from(const ConfigDocument& doc, const std::string& default_name) {
    const Reader r(doc);
    RunSpec spec;
    spec.name = r.string("name", default_name);
    if (spec.name.empty()) throw ConfigError(r.line_of("name"), "name must not be empty");

    spec.base.family = family_from(r);
    try {
        validate(spec.base.family);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(r.line_of("environment.family"), std::string("environment: ") + e.what());
    }

    const auto* algo_entry = r.find("agent.algo");
    if (!algo_entry) throw ConfigError(0, "agent.algo is required");
    std::istringstream algos(algo_entry->value);
    std::string item;
    while (std::getline(algos, item, ',')) {
        try {
            const Algo a = parse_algo(trim(item));
            if (std::find(spec.algos.begin(), spec.algos.end(), a) == spec.algos.end())
                spec.algos.push_back(a);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(algo_entry->line, std::string("agent.algo: ") + e.what());
        }
    }
    if (spec.algos.empty()) throw ConfigError(algo_entry->line, "agent.algo must name at least one algorithm");

    const bool has_sts = std::find(spec.algos.begin(), spec.algos.end(), Algo::STS) != spec.algos.end();
    if (has_sts && !r.find("agent.epsilon"))
        throw ConfigError(algo_entry->line, "agent.epsilon is required when agent.algo includes sts");
    spec.base.epsilon = r.real("agent.epsilon", 0.0);
    if (!(spec.base.epsilon >= 0.0)) throw ConfigError(r.line_of("agent.epsilon"), "agent.epsilon must be >= 0");

    spec.base.alpha = r.real("experiment.alpha", 0.99);
    if (const auto* h = r.find("experiment.horizon"); h && h->value == "auto") {
        AutoHorizon a;
        if (r.find("experiment.tol")) a.tol = r.real("experiment.tol", 0.0);
        spec.base.horizon = a;
    } else {
        spec.base.horizon = static_cast<std::size_t>(r.integer("experiment.horizon", 500));
    }
    spec.base.n_reps = static_cast<std::size_t>(r.integer("experiment.reps", 1000));
    spec.base.seed = r.integer("experiment.seed", 1);
    spec.base.threads = static_cast<unsigned>(r.integer("experiment.threads", 0));
    if (const auto* m = r.find("experiment.eval_mode")) {
        try {
            spec.base.eval_mode = parse_eval_mode(m->value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(m->line, std::string("experiment.eval_mode: ") + e.what());
        }
    }
    try {
        validate(spec.config_for(spec.algos.front()));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, std::string("experiment: ") + e.what());
    }
    return spec;
}

void apply(RunSpec& spec, const Overrides& o) {
    if (o.seed) spec.base.seed = *o.seed;
    if (o.reps) spec.base.n_reps = *o.reps;
    if (o.horizon) spec.base.horizon = *o.horizon;
    if (o.alpha) spec.base.alpha = *o.alpha;
    if (o.epsilon) spec.base.epsilon = *o.epsilon;
    if (o.threads) spec.base.threads = *o.threads;
    try {
        for (Algo a : spec.algos) validate(spec.config_for(a));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
}

}  // namespace sts
