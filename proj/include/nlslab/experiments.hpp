#pragma once

#include "nlslab/csv.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nlslab {

// Flat key = value configuration; '#' starts a comment.
class Config {
public:
    static Config from_text(const std::string& text);
    static Config from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    // "key=value" as given on the command line
    void apply_override(const std::string& assignment);
    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, std::string>> defaults; // every accepted key with its default
};

const std::vector<ExperimentInfo>& experiment_catalog();
// Throws PreconditionError listing the valid names.
const ExperimentInfo& find_experiment(const std::string& name);

struct NamedTable {
    std::string name; // file stem
    CsvTable table;
};

struct RunReport {
    std::string experiment;
    std::map<std::string, std::string> resolved; // config after defaults
    std::vector<NamedTable> tables;
    std::vector<std::string> warnings;
    std::vector<std::string> files;
    double wall_seconds = 0.0;
};

std::string version_string();

// Resolves defaults and checks every precondition without running anything.
std::map<std::string, std::string> validate_config(const Config& cfg);
// Runs the pipeline and returns its tables; nothing is written.
RunReport execute_experiment(const Config& cfg);
// execute_experiment, then <output>/<table>.csv for each table and <output>/manifest.json.
RunReport run_experiment(const Config& cfg);

} // namespace nlslab
