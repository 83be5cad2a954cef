#include "dictmon/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dictmon/errors.hpp"

namespace dictmon {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("config: bad numeric value '" + s + "' for " + what);
    }
}

std::uint64_t to_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("config: bad integer value '" + s + "' for " + what);
    }
}

bool to_bool(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    throw DataError("config: bad boolean value '" + s + "' for " + what);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

KeyValueFile KeyValueFile::parse(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

KeyValueFile KeyValueFile::parse_text(const std::string& text) {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (!kv.sections_.count(section)) kv.order_.push_back(section);
            kv.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(lineno) +
                            ": expected key = value, got '" + line + "'");
        kv.append(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

std::string KeyValueFile::serialize() const {
    std::ostringstream out;
    for (const auto& section : order_) {
        out << "[" << section << "]\n";
        for (const auto& [k, v] : sections_.at(section)) out << k << " = " << v << "\n";
        out << "\n";
    }
    return out.str();
}

void KeyValueFile::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write config '" + path.string() + "'");
    out << serialize();
    if (!out) throw DataError("write failed for config '" + path.string() + "'");
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](const Entry& e) { return e.first == key; });
}

std::string KeyValueFile::get(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return fallback;
    for (const auto& [k, v] : it->second)
        if (k == key) return v;
    return fallback;
}

std::vector<std::string> KeyValueFile::get_all(const std::string& section,
                                               const std::string& key) const {
    std::vector<std::string> out;
    auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& [k, v] : it->second)
        if (k == key) out.push_back(v);
    return out;
}

void KeyValueFile::set(const std::string& section, const std::string& key,
                       const std::string& value) {
    if (!sections_.count(section)) order_.push_back(section);
    auto& entries = sections_[section];
    for (auto& [k, v] : entries)
        if (k == key) { v = value; return; }
    entries.emplace_back(key, value);
}

void KeyValueFile::append(const std::string& section, const std::string& key,
                          const std::string& value) {
    if (!sections_.count(section)) order_.push_back(section);
    sections_[section].emplace_back(key, value);
}

std::size_t RunConfig::windows_in_stage(std::size_t stage) const {
    const auto& s = schedule.at(stage);
    return static_cast<std::size_t>(std::llround(s.duration_s / window_seconds));
}

std::size_t RunConfig::total_windows() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < schedule.size(); ++i) n += windows_in_stage(i);
    return n;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    RunConfig cfg;
    cfg.apply(KeyValueFile::parse(path));
    return cfg;
}

void RunConfig::apply(const KeyValueFile& kv) {
    auto getd = [&](const char* sec, const char* key, double cur) {
        return kv.has(sec, key) ? to_double(kv.get(sec, key, ""), key) : cur;
    };
    auto getu = [&](const char* sec, const char* key, std::uint64_t cur) {
        return kv.has(sec, key) ? to_u64(kv.get(sec, key, ""), key) : cur;
    };
    out_dir = kv.get("run", "out", out_dir);
    sample_rate = static_cast<std::uint32_t>(getu("run", "sample_rate", sample_rate));
    window_seconds = getd("run", "window_seconds", window_seconds);
    seed_signal = getu("run", "seed_signal", seed_signal);
    seed_dict = getu("run", "seed_dict", seed_dict);

    atom_count = static_cast<std::size_t>(getu("dictionary", "atoms", atom_count));
    atom_len = static_cast<std::size_t>(getu("dictionary", "atom_len", atom_len));

    stop.max_events_per_sample =
        getd("stop", "max_events_per_sample", stop.max_events_per_sample);
    stop.min_srr_db = getd("stop", "min_srr_db", stop.min_srr_db);

    learn.learning_rate = getd("learn", "eta", learn.learning_rate);
    learn.variance_floor = getd("learn", "variance_floor", learn.variance_floor);
    if (kv.has("learn", "renormalize"))
        learn.renormalize = to_bool(kv.get("learn", "renormalize", ""), "renormalize");

    monitor.delta_seconds = getd("monitor", "delta_seconds", monitor.delta_seconds);
    monitor.report_interval_s =
        getd("monitor", "report_interval_s", monitor.report_interval_s);
    monitor.event_rate_window_s =
        getd("monitor", "event_rate_window_s", monitor.event_rate_window_s);
    monitor.alert_threshold = getd("monitor", "alert_threshold", monitor.alert_threshold);
    monitor.alert_hold =
        static_cast<std::uint32_t>(getu("monitor", "alert_hold", monitor.alert_hold));

    const auto stages = kv.get_all("schedule", "stage");
    if (!stages.empty()) {
        schedule.clear();
        for (const auto& st : stages) {
            std::istringstream ss(st);
            StageSpec spec;
            ss >> spec.label >> spec.duration_s;
            if (spec.label.empty() || !(spec.duration_s > 0.0))
                throw DataError("config: bad stage '" + st + "' (want: LABEL SECONDS)");
            schedule.push_back(spec);
        }
    }

    manifest_path = kv.get("source", "manifest", manifest_path);
    shaft_hz_min = getd("source", "shaft_hz_min", shaft_hz_min);
    shaft_hz_max = getd("source", "shaft_hz_max", shaft_hz_max);
}

KeyValueFile RunConfig::to_kv() const {
    KeyValueFile kv;
    kv.set("run", "out", out_dir);
    kv.set("run", "sample_rate", std::to_string(sample_rate));
    kv.set("run", "window_seconds", fmt(window_seconds));
    kv.set("run", "seed_signal", std::to_string(seed_signal));
    kv.set("run", "seed_dict", std::to_string(seed_dict));
    kv.set("dictionary", "atoms", std::to_string(atom_count));
    kv.set("dictionary", "atom_len", std::to_string(atom_len));
    kv.set("stop", "max_events_per_sample", fmt(stop.max_events_per_sample));
    kv.set("stop", "min_srr_db", fmt(stop.min_srr_db));
    kv.set("learn", "eta", fmt(learn.learning_rate));
    kv.set("learn", "variance_floor", fmt(learn.variance_floor));
    kv.set("learn", "renormalize", learn.renormalize ? "true" : "false");
    kv.set("monitor", "delta_seconds", fmt(monitor.delta_seconds));
    kv.set("monitor", "report_interval_s", fmt(monitor.report_interval_s));
    kv.set("monitor", "event_rate_window_s", fmt(monitor.event_rate_window_s));
    kv.set("monitor", "alert_threshold", fmt(monitor.alert_threshold));
    kv.set("monitor", "alert_hold", std::to_string(monitor.alert_hold));
    for (const auto& s : schedule)
        kv.append("schedule", "stage", s.label + " " + fmt(s.duration_s));
    if (!manifest_path.empty()) kv.set("source", "manifest", manifest_path);
    kv.set("source", "shaft_hz_min", fmt(shaft_hz_min));
    kv.set("source", "shaft_hz_max", fmt(shaft_hz_max));
    return kv;
}

void RunConfig::validate() const {
    if (schedule.empty()) throw DataError("run config: empty schedule");
    if (!(window_seconds > 0.0)) throw DataError("run config: window_seconds must be positive");
    if (sample_rate == 0) throw DataError("run config: sample_rate must be positive");
    if (atom_count < 1 || atom_len < 2) throw DataError("run config: bad dictionary shape");
    if (!(learn.learning_rate >= 0.0)) throw DataError("run config: eta must be non-negative");
    if (!(learn.variance_floor > 0.0))
        throw DataError("run config: variance_floor must be positive");
    if (!(monitor.delta_seconds > 0.0))
        throw DataError("run config: delta_seconds must be positive");
    if (!(monitor.report_interval_s > 0.0))
        throw DataError("run config: report_interval_s must be positive");
    if (!std::isfinite(stop.max_events_per_sample) && !std::isfinite(stop.min_srr_db))
        throw DataError("run config: stop condition sets neither bound");
    if (window_len() < atom_len)
        throw DataError("run config: window shorter than an atom");
    for (std::size_t i = 0; i < schedule.size(); ++i)
        if (windows_in_stage(i) == 0)
            throw DataError("run config: stage '" + schedule[i].label +
                            "' is shorter than one window");
}

} // namespace dictmon
