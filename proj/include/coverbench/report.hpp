#pragma once

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace coverbench {

// Run reports for the CLI and bench harness. Every numeric field is tagged
// with its provenance (computed by the algorithm under test vs. confirmed by
// an oracle), and reports carry everything needed to replay the run.

inline uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct RunReport {
    std::string command;
    std::string instance_digest;  // fnv1a of the canonical instance text
    std::vector<std::pair<std::string, std::string>> params;
    struct Metric {
        std::string name;
        std::string value;
        std::string provenance;  // "computed" or "oracle"
    };
    std::vector<Metric> metrics;
    std::vector<std::string> notes;
    double wall_ms = 0.0;
    uint64_t seed = 0;
    bool has_seed = false;

    void param(const std::string& k, const std::string& v) { params.push_back({k, v}); }
    void computed(const std::string& k, const std::string& v) { metrics.push_back({k, v, "computed"}); }
    void oracle(const std::string& k, const std::string& v) { metrics.push_back({k, v, "oracle"}); }

    std::string to_text() const {
        std::ostringstream out;
        out << "command: " << command << "\n";
        if (!instance_digest.empty()) out << "instance: " << instance_digest << "\n";
        for (const auto& [k, v] : params) out << "param " << k << " = " << v << "\n";
        for (const auto& m : metrics)
            out << m.name << " = " << m.value << " [" << m.provenance << "]\n";
        for (const auto& n : notes) out << "note: " << n << "\n";
        if (has_seed) out << "seed = " << seed << "\n";
        out << "wall_ms = " << wall_ms << "\n";
        return out.str();
    }

    std::string to_json() const {
        nlohmann::json j;
        j["command"] = command;
        if (!instance_digest.empty()) j["instance"] = instance_digest;
        nlohmann::json p = nlohmann::json::object();
        for (const auto& [k, v] : params) p[k] = v;
        j["params"] = std::move(p);
        nlohmann::json ms = nlohmann::json::array();
        for (const auto& m : metrics)
            ms.push_back({{"name", m.name}, {"value", m.value}, {"provenance", m.provenance}});
        j["metrics"] = std::move(ms);
        j["notes"] = notes;
        if (has_seed) j["seed"] = seed;
        j["wall_ms"] = wall_ms;
        return j.dump(2) + "\n";
    }
};

class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace coverbench
