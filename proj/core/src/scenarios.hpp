#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "urllc/runner.hpp"

namespace urllc::runner::detail {

/// Reads one JSON object, applying defaults and range checks, and remembers every key it
/// touched so that unknown keys can be rejected.
class ParamReader {
public:
    ParamReader(const json& in, std::string path);

    double number(const std::string& key, double def, double lo, double hi);
    /// As number() but requires value > lo.
    double positive(const std::string& key, double def);
    double probability(const std::string& key, double def);
    std::uint64_t integer(const std::string& key, std::uint64_t def, std::uint64_t lo, std::uint64_t hi);
    bool boolean(const std::string& key, bool def);
    std::string choice(const std::string& key, const std::string& def, const std::vector<std::string>& allowed);
    std::vector<double> numbers(const std::string& key, const std::vector<double>& def, double lo, double hi);
    std::vector<std::uint64_t> integers(const std::string& key, const std::vector<std::uint64_t>& def,
                                        std::uint64_t lo, std::uint64_t hi);
    /// Non-empty string; `def` empty means the key is required.
    std::string text(const std::string& key, const std::string& def = {});
    std::vector<std::string> strings(const std::string& key, const std::vector<std::string>& def);

    template <class Fn>
    auto nested(const std::string& key, Fn&& fn) {
        ParamReader child(child_value(key), path_ + "." + key);
        auto result = fn(child);
        child.finish();
        out_[key] = child.normalized();
        return result;
    }

    /// Calls fn(reader, index) for every object of the array at `key` (or of `def`).
    template <class Fn>
    void each(const std::string& key, const json& def, Fn&& fn) {
        seen_.insert(key);
        const json& arr = in_.contains(key) ? in_.at(key) : def;
        if (!arr.is_array()) {
            fail(key, "expected an array");
        }
        json normalized = json::array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            ParamReader child(arr[i], path_ + "." + key + "[" + std::to_string(i) + "]");
            fn(child, i);
            child.finish();
            normalized.push_back(child.normalized());
        }
        out_[key] = normalized;
    }

    /// Throws ValidationError naming the first unknown key.
    void finish() const;
    const json& normalized() const { return out_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

private:
    const json& child_value(const std::string& key);

    const json& in_;
    std::string path_;
    json out_ = json::object();
    std::set<std::string> seen_;
};

/// Writes files into one directory and remembers them for cleanup and the manifest.
class OutputSink {
public:
    explicit OutputSink(std::filesystem::path dir);

    /// `name` must be a plain file name; nothing is written outside the directory.
    void write(const std::string& name, const std::string& contents);
    const std::vector<OutputFile>& files() const { return files_; }
    const std::filesystem::path& dir() const { return dir_; }
    /// Removes every file written so far.
    void discard() noexcept;

private:
    std::filesystem::path dir_;
    std::vector<OutputFile> files_;
};

using Summary = std::vector<std::pair<std::string, double>>;

struct Scenario {
    std::string id;
    /// Normalizes and validates a parameter block; throws ValidationError.
    std::function<json(const json& params)> validate;
    /// Runs the scenario on validated parameters.
    std::function<Summary(const json& params, std::uint64_t seed, unsigned jobs, OutputSink& out)> execute;
};

const std::vector<Scenario>& registry();
const Scenario& find_scenario(const std::string& id);

}  // namespace urllc::runner::detail
