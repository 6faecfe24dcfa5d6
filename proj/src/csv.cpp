#include "sts/csv.hpp"

#include <charconv>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sts {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& s, std::size_t line, const char* column) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && end == s.data() + s.size() && !s.empty()) return v;
    throw std::runtime_error("line " + std::to_string(line) + ": column " + column +
                             " is not a number: '" + s + "'");
}

std::uint64_t parse_count(const std::string& s, std::size_t line, const char* column) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used == s.size() && !s.empty() && s.front() != '-') return v;
    } catch (const std::exception&) {
    }
    throw std::runtime_error("line " + std::to_string(line) + ": column " + column +
                             " is not a count: '" + s + "'");
}

/// Splits into (echo, header, data lines), checking the header.
struct Sections {
    std::string echo;
    std::vector<std::pair<std::size_t, std::string>> rows;
};

Sections read_sections(const std::string& text, const std::string& header) {
    Sections s;
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (s.echo.empty()) s.echo = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            continue;
        }
        if (!have_header) {
            if (line != header)
                throw std::runtime_error("line " + std::to_string(n) + ": expected header '" + header +
                                         "', got '" + line + "'");
            have_header = true;
            continue;
        }
        s.rows.emplace_back(n, line);
    }
    if (!have_header) throw std::runtime_error("missing header '" + header + "'");
    return s;
}

}  // namespace

std::string format_real(double x) {
    // Shortest representation that parses back to the same double.
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string config_echo(const AggregateResult& r) {
    const ExperimentConfig& c = r.config;
    std::string horizon = std::to_string(r.horizon);
    if (const auto* a = std::get_if<AutoHorizon>(&c.horizon))
        horizon = "auto(" + (a->tol ? format_real(*a->tol) : std::string("default")) + ")=" + horizon;
    return "family=" + describe(c.family) + " algo=" + to_string(c.algo) +
           " epsilon=" + format_real(c.algo == Algo::TS ? 0.0 : c.epsilon) + " alpha=" + format_real(c.alpha) +
           " horizon=" + horizon + " n_reps=" + std::to_string(c.n_reps) + " seed=" + std::to_string(c.seed) +
           " eval_mode=" + to_string(c.eval_mode);
}

std::string per_period_csv(const AggregateResult& r) {
    std::string out = "# " + config_echo(r) + "\n" + kPerPeriodHeader + "\n";
    for (std::size_t t = 0; t < r.per_period_mean.size(); ++t)
        out += std::to_string(t) + "," + format_real(r.per_period_mean[t]) + "," +
               format_real(r.per_period_stderr[t]) + "\n";
    return out;
}

std::string summary_csv(const AggregateResult& r) {
    const ExperimentConfig& c = r.config;
    return "# " + config_echo(r) + "\n" + kSummaryHeader + "\n" + format_real(r.discounted_mean) + "," +
           format_real(r.discounted_stderr) + "," + format_real(c.alpha) + "," +
           format_real(c.algo == Algo::TS ? 0.0 : c.epsilon) + "," + to_string(c.algo) + "," +
           family_name(c.family) + "," + std::to_string(r.n_reps) + "," + std::to_string(c.seed) + "\n";
}

PerPeriodTable parse_per_period_csv(const std::string& text) {
    const Sections s = read_sections(text, kPerPeriodHeader);
    PerPeriodTable table;
    table.echo = s.echo;
    for (const auto& [n, line] : s.rows) {
        const auto cells = split(line);
        if (cells.size() != 3)
            throw std::runtime_error("line " + std::to_string(n) + ": expected 3 columns, got " +
                                     std::to_string(cells.size()));
        table.t.push_back(parse_count(cells[0], n, "t"));
        table.mean_regret.push_back(parse_real(cells[1], n, "mean_regret"));
        table.stderr_.push_back(parse_real(cells[2], n, "stderr"));
    }
    return table;
}

SummaryRow parse_summary_csv(const std::string& text) {
    const Sections s = read_sections(text, kSummaryHeader);
    if (s.rows.size() != 1) throw std::runtime_error("summary must contain exactly one data row");
    const auto& [n, line] = s.rows.front();
    const auto cells = split(line);
    if (cells.size() != 8)
        throw std::runtime_error("line " + std::to_string(n) + ": expected 8 columns, got " +
                                 std::to_string(cells.size()));
    SummaryRow row;
    row.echo = s.echo;
    row.discounted_mean = parse_real(cells[0], n, "discounted_mean");
    row.discounted_stderr = parse_real(cells[1], n, "discounted_stderr");
    row.alpha = parse_real(cells[2], n, "alpha");
    row.epsilon = parse_real(cells[3], n, "epsilon");
    row.algo = cells[4];
    row.family = cells[5];
    row.n_reps = parse_count(cells[6], n, "n_reps");
    row.seed = parse_count(cells[7], n, "seed");
    return row;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("error while writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sts
