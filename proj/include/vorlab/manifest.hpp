// Run manifests: every run directory carries the config, timestamps and a
// checksummed inventory of its outputs.
#pragma once
#include <chrono>
#include <filesystem>

#include "config.hpp"

namespace vorlab {

inline std::string file_checksum(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

struct RunManifest {
    std::string config_hash;
    std::string subcommand;
    std::string started, finished;
    std::vector<std::string> outputs;  // file names relative to the run dir

    static std::string now() {
        const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        return buf;
    }
};

class RunDir {
  public:
    RunDir(const ExperimentConfig& cfg, const std::string& subcommand) : cfg_(cfg) {
        manifest_.config_hash = config_hash(cfg);
        manifest_.subcommand = subcommand;
        manifest_.started = RunManifest::now();
        dir_ = std::filesystem::path(cfg.out_dir) / (subcommand + "-" + manifest_.config_hash);
        std::filesystem::create_directories(dir_);
        std::ofstream os(dir_ / "config.json");
        os << cfg.to_json().dump(2) << "\n";
        manifest_.outputs.push_back("config.json");
    }

    std::string path(const std::string& name) {
        manifest_.outputs.push_back(name);
        return (dir_ / name).string();
    }
    const std::filesystem::path& dir() const { return dir_; }

    void finalize() {
        manifest_.finished = RunManifest::now();
        Json j;
        j["config_hash"] = manifest_.config_hash;
        j["subcommand"] = manifest_.subcommand;
        j["started"] = manifest_.started;
        j["finished"] = manifest_.finished;
        j["version"] = "vorlab 0.1.0";
        Json files = Json::array();
        for (const auto& f : manifest_.outputs) {
            Json e;
            e["file"] = f;
            e["fnv64"] = file_checksum((dir_ / f).string());
            files.push_back(e);
        }
        j["outputs"] = files;
        std::ofstream os(dir_ / "manifest.json");
        os << j.dump(2) << "\n";
    }

  private:
    ExperimentConfig cfg_;
    RunManifest manifest_;
    std::filesystem::path dir_;
};

}  // namespace vorlab
