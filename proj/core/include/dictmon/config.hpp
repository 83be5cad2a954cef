#ifndef DICTMON_CONFIG_HPP
#define DICTMON_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dictmon/encoder.hpp"
#include "dictmon/learner.hpp"
#include "dictmon/monitor.hpp"

namespace dictmon {

/// Flat key-value text with [section] headers. Keys may repeat within a
/// section (ordered). Lines starting with '#' are comments.
class KeyValueFile {
public:
    using Entry = std::pair<std::string, std::string>;

    static KeyValueFile parse(const std::filesystem::path& path);
    static KeyValueFile parse_text(const std::string& text);
    std::string serialize() const;
    void save(const std::filesystem::path& path) const;

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, const std::string& value);
    void append(const std::string& section, const std::string& key, const std::string& value);

private:
    std::vector<std::string> order_;                       // section order
    std::map<std::string, std::vector<Entry>> sections_;   // section -> entries
};

struct StageSpec {
    std::string label;
    double duration_s = 0.0;
};

/// Everything a learn run needs; file-backed with CLI overrides.
struct RunConfig {
    // run
    std::string out_dir;
    std::uint32_t sample_rate = 12000;
    double window_seconds = 5.0;
    std::uint64_t seed_signal = 1;
    std::uint64_t seed_dict = 1;

    // dictionary
    std::size_t atom_count = 16;
    std::size_t atom_len = 50;

    StopCondition stop;    // defaults: 0.1 events/sample, 12 dB
    LearnConfig learn;     // defaults: eta 0.01, floor 1e-12
    MonitorConfig monitor; // defaults: delta 600 s, report 10 s

    std::vector<StageSpec> schedule;  // e.g. BL 300, IR7 300, IR14 300

    // source: synthetic presets by stage label unless a manifest is given
    std::string manifest_path;
    double shaft_hz_min = 28.8;
    double shaft_hz_max = 30.0;

    std::size_t window_len() const {
        return static_cast<std::size_t>(window_seconds * static_cast<double>(sample_rate) + 0.5);
    }
    std::size_t windows_in_stage(std::size_t stage) const;
    std::size_t total_windows() const;

    static RunConfig from_file(const std::filesystem::path& path);
    void apply(const KeyValueFile& kv);
    KeyValueFile to_kv() const;
    void validate() const;
};

} // namespace dictmon

#endif
