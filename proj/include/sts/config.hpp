#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sts/harness.hpp"

namespace sts {

/// Parse or validation failure; `line` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Flat `section.key -> value` view of a TOML-style file. Supports `[section]`
/// headers, `key = value`, quoted strings, numbers, booleans, string arrays
/// and `#` comments.
struct ConfigDocument {
    struct Entry {
        std::string value;  // unquoted scalar, or comma-joined array items
        std::size_t line = 0;
        bool is_string = false;
    };
    std::map<std::string, Entry> entries;
};

ConfigDocument parse_config_text(const std::string& text);
ConfigDocument parse_config_file(const std::string& path);

/// An experiment file: one environment, one or more algorithms sharing seeds.
struct RunSpec {
    std::string name;
    std::vector<Algo> algos;
    ExperimentConfig base;

    ExperimentConfig config_for(Algo algo) const;
};

/// Builds and validates a RunSpec. Unknown keys, bad types and missing
/// required fields raise ConfigError naming the field.
RunSpec run_spec_from(const ConfigDocument& doc, const std::string& default_name);

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::optional<std::size_t> horizon;
    std::optional<double> alpha;
    std::optional<double> epsilon;
    std::optional<unsigned> threads;
};

void apply(RunSpec& spec, const Overrides& o);

}  // namespace sts
