#include "urllc/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "scenarios.hpp"
#include "urllc/csv.hpp"
#include "urllc/parallel.hpp"
#include "urllc/seed.hpp"

namespace urllc::runner {

namespace detail {

ParamReader::ParamReader(const json& in, std::string path) : in_(in), path_(std::move(path)) {
    if (!in_.is_object() && !in_.is_null()) {
        throw ValidationError(path_, "expected an object");
    }
}

void ParamReader::fail(const std::string& key, const std::string& message) const {
    throw ValidationError(path_ + "." + key, message);
}

const json& ParamReader::child_value(const std::string& key) {
    seen_.insert(key);
    static const json empty = json::object();
    return in_.is_object() && in_.contains(key) ? in_.at(key) : empty;
}

namespace {

std::string show(double v) { return csv::format_double(v); }

}  // namespace

double ParamReader::number(const std::string& key, double def, double lo, double hi) {
    seen_.insert(key);
    double v = def;
    if (in_.is_object() && in_.contains(key)) {
        const auto& j = in_.at(key);
        if (!j.is_number()) {
            fail(key, "expected a number");
        }
        v = j.get<double>();
    }
    if (!std::isfinite(v)) {
        fail(key, "must be finite");
    }
    if (v < lo || v > hi) {
        fail(key, "must lie in [" + show(lo) + ", " + show(hi) + "] (got " + show(v) + ")");
    }
    out_[key] = v;
    return v;
}

double ParamReader::positive(const std::string& key, double def) {
    const double v = number(key, def, -HUGE_VAL, HUGE_VAL);
    if (!(v > 0.0)) {
        fail(key, "must be > 0 (got " + show(v) + ")");
    }
    return v;
}

double ParamReader::probability(const std::string& key, double def) { return number(key, def, 0.0, 1.0); }

std::uint64_t ParamReader::integer(const std::string& key, std::uint64_t def, std::uint64_t lo, std::uint64_t hi) {
    seen_.insert(key);
    std::uint64_t v = def;
    if (in_.is_object() && in_.contains(key)) {
        const auto& j = in_.at(key);
        if (j.is_number_integer() && j.get<std::int64_t>() < 0 && !j.is_number_unsigned()) {
            fail(key, "must be >= " + std::to_string(lo) + " (got " + std::to_string(j.get<std::int64_t>()) + ")");
        }
        if (!j.is_number_integer()) {
            fail(key, "expected an integer");
        }
        v = j.get<std::uint64_t>();
    }
    if (v < lo || v > hi) {
        fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] (got " + std::to_string(v) + ")");
    }
    out_[key] = v;
    return v;
}

bool ParamReader::boolean(const std::string& key, bool def) {
    seen_.insert(key);
    bool v = def;
    if (in_.is_object() && in_.contains(key)) {
        if (!in_.at(key).is_boolean()) {
            fail(key, "expected true or false");
        }
        v = in_.at(key).get<bool>();
    }
    out_[key] = v;
    return v;
}

std::string ParamReader::choice(const std::string& key, const std::string& def,
                                const std::vector<std::string>& allowed) {
    seen_.insert(key);
    std::string v = def;
    if (in_.is_object() && in_.contains(key)) {
        if (!in_.at(key).is_string()) {
            fail(key, "expected a string");
        }
        v = in_.at(key).get<std::string>();
    }
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        std::string list;
        for (const auto& a : allowed) {
            list += (list.empty() ? "" : ", ") + a;
        }
        fail(key, "must be one of {" + list + "} (got '" + v + "')");
    }
    out_[key] = v;
    return v;
}

std::vector<double> ParamReader::numbers(const std::string& key, const std::vector<double>& def, double lo,
                                         double hi) {
    seen_.insert(key);
    std::vector<double> v = def;
    if (in_.is_object() && in_.contains(key)) {
        const auto& j = in_.at(key);
        if (!j.is_array()) {
            fail(key, "expected an array of numbers");
        }
        v.clear();
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number()) {
                fail(key + "[" + std::to_string(i) + "]", "expected a number");
            }
            v.push_back(j[i].get<double>());
        }
    }
    if (v.empty()) {
        fail(key, "must not be empty");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] < lo || v[i] > hi) {
            fail(key + "[" + std::to_string(i) + "]",
                 "must lie in [" + show(lo) + ", " + show(hi) + "] (got " + show(v[i]) + ")");
        }
    }
    out_[key] = v;
    return v;
}

std::vector<std::uint64_t> ParamReader::integers(const std::string& key, const std::vector<std::uint64_t>& def,
                                                 std::uint64_t lo, std::uint64_t hi) {
    const std::vector<double> as_double(def.begin(), def.end());
    const auto v = numbers(key, as_double, static_cast<double>(lo), static_cast<double>(hi));
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != std::floor(v[i])) {
            fail(key + "[" + std::to_string(i) + "]", "expected an integer");
        }
        out.push_back(static_cast<std::uint64_t>(v[i]));
    }
    out_[key] = out;
    return out;
}

std::string ParamReader::text(const std::string& key, const std::string& def) {
    seen_.insert(key);
    std::string v = def;
    if (in_.is_object() && in_.contains(key)) {
        if (!in_.at(key).is_string()) {
            fail(key, "expected a string");
        }
        v = in_.at(key).get<std::string>();
    }
    if (v.empty()) {
        fail(key, def.empty() ? "required non-empty string" : "must not be empty");
    }
    out_[key] = v;
    return v;
}

std::vector<std::string> ParamReader::strings(const std::string& key, const std::vector<std::string>& def) {
    seen_.insert(key);
    std::vector<std::string> v = def;
    if (in_.is_object() && in_.contains(key)) {
        const auto& j = in_.at(key);
        if (!j.is_array()) {
            fail(key, "expected an array of strings");
        }
        v.clear();
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_string() || j[i].get<std::string>().empty()) {
                fail(key + "[" + std::to_string(i) + "]", "expected a non-empty string");
            }
            v.push_back(j[i].get<std::string>());
        }
    }
    if (v.empty()) {
        fail(key, "must not be empty");
    }
    out_[key] = v;
    return v;
}

void ParamReader::finish() const {
    if (!in_.is_object()) {
        return;
    }
    for (const auto& [key, value] : in_.items()) {
        if (!seen_.count(key)) {
            throw ValidationError(path_ + "." + key, "unknown key");
        }
    }
}

OutputSink::OutputSink(std::filesystem::path dir) : dir_(std::move(dir)) {}

void OutputSink::write(const std::string& name, const std::string& contents) {
    const std::filesystem::path rel(name);
    if (name.empty() || rel.has_root_path() || rel.has_parent_path() || name == "." || name == "..") {
        throw std::runtime_error("refusing to write outside the output directory: " + name);
    }
    csv::write_atomically(dir_ / rel, contents);
    std::ostringstream digest;
    digest << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(contents);
    files_.push_back({name, contents.size(), digest.str()});
}

void OutputSink::discard() noexcept {
    for (const auto& f : files_) {
        std::error_code ec;
        std::filesystem::remove(dir_ / f.name, ec);
    }
    files_.clear();
}

const Scenario& find_scenario(const std::string& id) {
    for (const auto& s : registry()) {
        if (s.id == id) {
            return s;
        }
    }
    std::string list;
    for (const auto& s : registry()) {
        list += (list.empty() ? "" : ", ") + s.id;
    }
    throw ValidationError("scenario", "unknown scenario '" + id + "' (expected one of {" + list + "})");
}

}  // namespace detail

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
    if (!doc.is_object()) {
        throw ValidationError("config", "expected a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "scenario" && key != "master_seed" && key != "output_dir" && key != "params") {
            throw ValidationError(key, "unknown key");
        }
    }
    ExperimentConfig cfg;
    if (!doc.contains("scenario") || !doc.at("scenario").is_string()) {
        throw ValidationError("scenario", "required string");
    }
    cfg.scenario = doc.at("scenario").get<std::string>();
    const auto& scenario = detail::find_scenario(cfg.scenario);
    if (doc.contains("master_seed")) {
        const auto& seed = doc.at("master_seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
            throw ValidationError("master_seed", "expected a non-negative integer");
        }
        cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) {
            throw ValidationError("output_dir", "expected a string");
        }
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }
    cfg.params = scenario.validate(doc.contains("params") ? doc.at("params") : json::object());
    return cfg;
}

json ExperimentConfig::to_json() const {
    json j;
    j["scenario"] = scenario;
    j["master_seed"] = master_seed;
    if (!output_dir.empty()) {
        j["output_dir"] = output_dir.string();
    }
    j["params"] = params;
    return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("config", "cannot open " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config", std::string("invalid JSON: ") + e.what());
    }
    return ExperimentConfig::from_json(doc);
}

std::vector<std::string> scenario_ids() {
    std::vector<std::string> ids;
    for (const auto& s : detail::registry()) {
        ids.push_back(s.id);
    }
    return ids;
}

json default_params(const std::string& scenario) {
    return detail::find_scenario(scenario).validate(json::object());
}

std::uint64_t scenario_seed(std::uint64_t master_seed, const std::string& scenario, std::uint64_t index) {
    return derive_seed(master_seed, scenario, index);
}

namespace {

std::filesystem::path resolve_output(const ExperimentConfig& config, const RunOptions& options) {
    auto dir = options.output_dir.value_or(config.output_dir);
    if (dir.empty()) {
        throw ValidationError("output_dir", "no output directory given (config output_dir or --out)");
    }
    return dir;
}

json files_json(const std::vector<OutputFile>& files) {
    json arr = json::array();
    for (const auto& f : files) {
        arr.push_back({{"file", f.name}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64}});
    }
    return arr;
}

}  // namespace

RunReport run(const ExperimentConfig& config, const RunOptions& options) {
    const auto& scenario = detail::find_scenario(config.scenario);
    ExperimentConfig effective = config;
    effective.master_seed = options.seed.value_or(config.master_seed);
    effective.params = scenario.validate(config.params);
    const auto dir = resolve_output(config, options);
    effective.output_dir = dir;
    std::filesystem::create_directories(dir);

    const std::uint64_t child = scenario_seed(effective.master_seed, effective.scenario, 0);
    detail::OutputSink sink(dir);
    RunReport report;
    report.output_dir = dir;
    const auto start = std::chrono::steady_clock::now();
    try {
        report.summary = scenario.execute(effective.params, child, std::max(1u, options.jobs), sink);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json summary = json::object();
        for (const auto& [k, v] : report.summary) {
            summary[k] = std::isfinite(v) ? json(v) : json(csv::format_double(v));
        }
        report.manifest = {
            {"tool", "urllc"},
            {"version", "0.1.0"},
            {"scenario", effective.scenario},
            {"master_seed", effective.master_seed},
            {"scenario_seed", child},
            {"jobs", options.jobs},
            {"wall_time_s", wall},
            {"config", effective.to_json()},
            {"outputs", files_json(sink.files())},
            {"summary", summary},
        };
        sink.write("manifest.json", report.manifest.dump(2) + "\n");
    } catch (...) {
        sink.discard();
        throw;
    }
    report.files = sink.files();
    return report;
}

namespace {

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : path) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

RunReport sweep(const ExperimentConfig& config, const std::string& parameter_path, const std::vector<json>& values,
                const RunOptions& options) {
    if (values.empty()) {
        throw ValidationError("--values", "empty value list");
    }
    auto parts = split_path(parameter_path);
    if (parts.front() != "params") {
        parts.insert(parts.begin(), "params");
    }
    std::string dotted;
    for (const auto& p : parts) {
        if (p.empty()) {
            throw ValidationError("--param", "malformed parameter path '" + parameter_path + "'");
        }
        dotted += (dotted.empty() ? "" : ".") + p;
    }

    const std::uint64_t master = options.seed.value_or(config.master_seed);
    const auto dir = resolve_output(config, options);
    const json base = config.to_json();

    std::vector<ExperimentConfig> points;
    for (std::size_t i = 0; i < values.size(); ++i) {
        json doc = base;
        json* node = &doc;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (!node->is_object() || !node->contains(parts[k])) {
                throw ValidationError(dotted, "parameter path does not resolve");
            }
            node = &(*node)[parts[k]];
        }
        *node = values[i];
        doc["master_seed"] = scenario_seed(master, config.scenario, i);
        doc["output_dir"] = (dir / ("point_" + std::to_string(i))).string();
        points.push_back(ExperimentConfig::from_json(doc));
    }

    std::filesystem::create_directories(dir);
    std::vector<std::optional<RunReport>> reports(points.size());
    try {
        parallel_for(points.size(), std::max(1u, options.jobs),
                     [&](std::size_t i) { reports[i] = run(points[i], RunOptions{1, std::nullopt, std::nullopt}); });
    } catch (...) {
        for (auto& r : reports) {
            if (r) {
                for (const auto& f : r->files) {
                    std::error_code ec;
                    std::filesystem::remove(r->output_dir / f.name, ec);
                }
            }
        }
        throw;
    }

    std::vector<std::string> keys;
    for (const auto& r : reports) {
        for (const auto& [k, v] : r->summary) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                keys.push_back(k);
            }
        }
    }
    std::ostringstream table;
    table << "index," << dotted << ",point_seed";
    for (const auto& k : keys) {
        table << ',' << k;
    }
    table << '\n';
    RunReport report;
    report.output_dir = dir;
    for (std::size_t i = 0; i < points.size(); ++i) {
        table << i << ',' << csv::Cell(values[i].is_string() ? values[i].get<std::string>() : values[i].dump()).text()
              << ',' << points[i].master_seed;
        for (const auto& k : keys) {
            table << ',';
            for (const auto& [name, v] : reports[i]->summary) {
                if (name == k) {
                    table << csv::format_double(v);
                }
            }
        }
        table << '\n';
        for (const auto& f : reports[i]->files) {
            report.files.push_back({"point_" + std::to_string(i) + "/" + f.name, f.bytes, f.fnv1a64});
        }
    }
    detail::OutputSink sink(dir);
    sink.write("sweep_summary.csv", table.str());
    report.manifest = {
        {"tool", "urllc"},
        {"version", "0.1.0"},
        {"scenario", config.scenario},
        {"master_seed", master},
        {"parameter", dotted},
        {"values", values},
        {"config", config.to_json()},
        {"points", files_json(report.files)},
    };
    sink.write("sweep_manifest.json", report.manifest.dump(2) + "\n");
    for (const auto& f : sink.files()) {
        report.files.push_back(f);
    }
    return report;
}

std::vector<json> parse_value_list(const std::string& text) {
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (const char c : text) {
        if (c == '[' || c == '{') {
            ++depth;
        } else if (c == ']' || c == '}') {
            --depth;
        }
        if (c == ',' && depth == 0) {
            items.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    items.push_back(cur);

    std::vector<json> out;
    for (auto item : items) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        item = b == std::string::npos ? std::string() : item.substr(b, e - b + 1);
        if (item.empty()) {
            continue;
        }
        try {
            out.push_back(json::parse(item));
        } catch (const json::parse_error&) {
            out.emplace_back(item);
        }
    }
    return out;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::ostringstream digest;
    digest << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(buf.str());
    return digest.str();
}

}  // namespace urllc::runner
