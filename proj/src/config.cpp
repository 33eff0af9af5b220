#include "tavis/config.hpp"

#include "tavis/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace tavis {

SectorParams ExperimentConfig::params_for(double omega) const {
    SectorParams p = sector;
    p.omega = omega;
    return p;
}

DriveProtocol ExperimentConfig::drive_for(double omega) const {
    return {sector.delta0, omega, drive};
}

void validate(const ExperimentConfig& c) {
    try {
        c.sector.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (c.frequencies.empty()) throw ConfigError("at least one frequency is required");
    for (double w : c.frequencies) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("frequencies must be positive");
    }
    if (c.cycles < 1) throw ConfigError("cycles must be >= 1 (nothing to average for P = 0)");
    if (c.steps_per_cycle < 1) throw ConfigError("steps_per_cycle must be >= 1");
    if (c.timeseries_cycles < 0) throw ConfigError("timeseries_cycles must be >= 0");
    if (c.samples_per_cycle < 1) throw ConfigError("samples_per_cycle must be >= 1");
    if (c.crosscheck_cycles < 0) throw ConfigError("crosscheck_cycles must be >= 0");
    if (c.output_dir.empty()) throw ConfigError("output directory must not be empty");
}

std::string format_shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "format = " << kConfigFormat << '\n';
    out << "spin = " << format_shortest(c.sector.spin()) << '\n';
    out << "excitations = " << c.sector.m << '\n';
    out << "coupling = " << format_shortest(c.sector.g) << '\n';
    out << "delta0 = " << format_shortest(c.sector.delta0) << '\n';
    out << "frequencies = ";
    for (std::size_t i = 0; i < c.frequencies.size(); ++i) {
        out << (i ? ", " : "") << format_shortest(c.frequencies[i]);
    }
    out << '\n';
    out << "drive = " << (c.drive == DriveProtocol::Form::Cosine ? "cosine" : "constant") << '\n';
    out << "cycles = " << c.cycles << '\n';
    out << "steps_per_cycle = " << c.steps_per_cycle << '\n';
    out << "output = " << c.output_dir << '\n';
    out << "seed = " << c.seed << '\n';
    std::vector<std::string> emit;
    if (c.emit.timeseries) emit.emplace_back("timeseries");
    if (c.emit.strobe_map) emit.emplace_back("strobe_map");
    if (c.emit.weights) emit.emplace_back("weights");
    if (c.emit.classical_crosscheck) emit.emplace_back("classical_crosscheck");
    out << "emit = ";
    for (std::size_t i = 0; i < emit.size(); ++i) out << (i ? ", " : "") << emit[i];
    out << '\n';
    out << "timeseries_cycles = " << c.timeseries_cycles << '\n';
    out << "samples_per_cycle = " << c.samples_per_cycle << '\n';
    out << "crosscheck_cycles = " << c.crosscheck_cycles << '\n';
    out << "convergence_check = " << (c.convergence_check ? "true" : "false") << '\n';
    return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return items;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("invalid boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, std::string, std::less<>> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (!entries.emplace(key, value).second) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }

    auto take = [&](std::string_view key) -> std::optional<std::string> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        std::string v = it->second;
        entries.erase(it);
        return v;
    };

    const auto format = take("format");
    if (!format) throw ConfigError("missing 'format' key (expected " + std::string(kConfigFormat) + ")");
    if (*format != kConfigFormat) {
        throw ConfigError("unsupported config format '" + *format + "'");
    }

    ExperimentConfig c;
    if (auto v = take("spin")) {
        const double spin = parse_number<double>("spin", *v);
        const double twice = 2.0 * spin;
        if (!(twice >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
            throw ConfigError("spin must be a non-negative multiple of 1/2");
        }
        c.sector.two_s = static_cast<int>(std::lround(twice));
    }
    if (auto v = take("excitations")) c.sector.m = parse_number<int>("excitations", *v);
    if (auto v = take("coupling")) c.sector.g = parse_number<double>("coupling", *v);
    if (auto v = take("delta0")) c.sector.delta0 = parse_number<double>("delta0", *v);
    if (auto v = take("frequencies")) {
        c.frequencies.clear();
        for (auto item : split_list(*v)) c.frequencies.push_back(parse_number<double>("frequencies", item));
    }
    if (auto v = take("drive")) {
        if (*v == "cosine") c.drive = DriveProtocol::Form::Cosine;
        else if (*v == "constant") c.drive = DriveProtocol::Form::Constant;
        else throw ConfigError("drive must be 'cosine' or 'constant'");
    }
    if (auto v = take("cycles")) c.cycles = parse_number<long>("cycles", *v);
    if (auto v = take("steps_per_cycle")) c.steps_per_cycle = parse_number<int>("steps_per_cycle", *v);
    if (auto v = take("output")) c.output_dir = *v;
    if (auto v = take("seed")) c.seed = parse_number<std::uint64_t>("seed", *v);
    if (auto v = take("emit")) {
        c.emit = EmitFlags{false, false, false, false};
        for (auto item : split_list(*v)) {
            if (item == "timeseries") c.emit.timeseries = true;
            else if (item == "strobe_map") c.emit.strobe_map = true;
            else if (item == "weights") c.emit.weights = true;
            else if (item == "classical_crosscheck") c.emit.classical_crosscheck = true;
            else throw ConfigError("unknown emit flag '" + std::string(item) + "'");
        }
    }
    if (auto v = take("timeseries_cycles")) c.timeseries_cycles = parse_number<long>("timeseries_cycles", *v);
    if (auto v = take("samples_per_cycle")) c.samples_per_cycle = parse_number<int>("samples_per_cycle", *v);
    if (auto v = take("crosscheck_cycles")) c.crosscheck_cycles = parse_number<long>("crosscheck_cycles", *v);
    if (auto v = take("convergence_check")) c.convergence_check = parse_bool("convergence_check", *v);

    if (!entries.empty()) throw ConfigError("unknown config key '" + entries.begin()->first + "'");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace tavis
