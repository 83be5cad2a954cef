#include "dictmon/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "dictmon/errors.hpp"
#include "dictmon/rng.hpp"
#include "dictmon/synth.hpp"

namespace dictmon {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') { out.push_back(cur); cur.clear(); }
        else cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

// Stream identifiers for the per-ordinal counter draws.
constexpr std::uint64_t kShaftStream = 0x5348414654ull;   // shaft speed per window
constexpr std::uint64_t kWindowStream = 0x57494e444full;  // per-window synth seed
constexpr std::uint64_t kPlanStreamBase = 0x504c414eull;  // manifest window plans

struct StageIndex {
    std::size_t stage = 0;
    std::size_t index_in_stage = 0;
};

StageIndex stage_of(const RunConfig& cfg, std::size_t ordinal) {
    std::size_t start = 0;
    for (std::size_t s = 0; s < cfg.schedule.size(); ++s) {
        const std::size_t n = cfg.windows_in_stage(s);
        if (ordinal < start + n) return {s, ordinal - start};
        start += n;
    }
    throw DataError("window ordinal out of schedule range");
}

/// Deterministic window source: synthetic presets per stage label, or
/// labelled manifest segments.
class WindowSource {
public:
    WindowSource(const RunConfig& cfg) : cfg_(cfg) {
        if (cfg.manifest_path.empty()) {
            for (const auto& st : cfg.schedule)
                if (!is_rig_preset(st.label))
                    throw DataError("stage label '" + st.label +
                                    "' is not a rig preset and no manifest was given");
            return;
        }
        const auto segments = load_manifest(cfg.manifest_path);
        for (const auto& info : segments) {
            Signal sig = load_signal(info.path, info.format, info.sample_rate);
            if (sig.sample_rate != cfg.sample_rate)
                throw DataError("segment '" + info.path + "' sample rate " +
                                std::to_string(sig.sample_rate) + " does not match the run");
            by_label_[info.label].push_back(std::move(sig));
        }
        for (const auto& st : cfg.schedule)
            if (!by_label_.count(st.label))
                throw DataError("schedule stage '" + st.label + "' has no manifest segments");
    }

    Signal window(std::size_t ordinal) const {
        const auto si = stage_of(cfg_, ordinal);
        const auto& label = cfg_.schedule[si.stage].label;
        if (!by_label_.empty()) {
            WindowPlan plan;
            plan.window_len = cfg_.window_len();
            plan.rng_seed = splitmix64(cfg_.seed_signal ^ (kPlanStreamBase + si.stage));
            plan.total_windows = cfg_.windows_in_stage(si.stage);
            return next_window(plan, by_label_.at(label), si.index_in_stage);
        }
        CounterRng shaft_rng(cfg_.seed_signal, kShaftStream);
        shaft_rng.skip_to(ordinal);
        const double shaft = shaft_rng.next_uniform(cfg_.shaft_hz_min, cfg_.shaft_hz_max);
        CounterRng seed_rng(cfg_.seed_signal, kWindowStream);
        seed_rng.skip_to(ordinal);
        RigConfig rig = rig_preset(label, shaft, seed_rng.next_u64());
        rig.sample_rate = cfg_.sample_rate;
        return gen_rig_signal(rig, cfg_.window_seconds);
    }

private:
    const RunConfig& cfg_;
    std::map<std::string, std::vector<Signal>> by_label_;
};

std::string snapshot_filename(std::size_t ordinal) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%08zu.dict", ordinal);
    return buf;
}

struct SnapshotEntry {
    std::size_t ordinal;
    double stream_time;
    std::string file;
};

std::vector<SnapshotEntry> read_snapshot_index(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open snapshot index '" + path.string() + "'");
    std::vector<SnapshotEntry> out;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 3) throw DataError("malformed snapshot index line '" + line + "'");
        out.push_back({static_cast<std::size_t>(std::stoull(f[0])), std::stod(f[1]), f[2]});
    }
    return out;
}

struct MonitorRow {
    double stream_time;
    std::uint32_t atom_id;
    double evolution_rate;
    double center_freq_hz;
    double event_rate;
    bool alert;
};

std::vector<MonitorRow> read_monitor_csv(const std::filesystem::path& path) {
    std::vector<MonitorRow> rows;
    std::ifstream in(path);
    if (!in) return rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 6) throw DataError("malformed monitor report line '" + line + "'");
        rows.push_back({std::stod(f[0]), static_cast<std::uint32_t>(std::stoul(f[1])),
                        std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), f[5] == "1"});
    }
    return rows;
}

void write_monitor_rows(std::ofstream& out, const MonitorReport& rep) {
    for (const auto& a : rep.atoms) {
        out << g17(rep.stream_time) << ',' << a.atom_id << ',' << g17(a.evolution_rate)
            << ',' << g17(a.center_frequency_hz) << ',' << g17(a.event_rate_per_s) << ','
            << (a.alert ? 1 : 0) << "\n";
    }
}

constexpr const char* kEventsHeader = "window,atom,shift,amplitude\n";
constexpr const char* kMonitorHeader =
    "stream_time,atom_id,evolution_rate,center_freq_hz,event_rate,alert\n";

std::string learning_log_header(std::size_t m) {
    std::ostringstream h;
    h << "window,stream_time,events,srr_db";
    for (std::size_t i = 0; i < m; ++i) h << ",count_" << i;
    for (std::size_t i = 0; i < m; ++i) h << ",dphi_" << i;
    h << "\n";
    return h.str();
}

/// Rewrite a CSV keeping the header and the rows accepted by `keep`.
void truncate_csv(const std::filesystem::path& path,
                  const std::function<bool(const std::string&)>& keep) {
    if (!std::filesystem::exists(path)) return;
    std::ifstream in(path);
    std::string line;
    std::vector<std::string> kept;
    if (std::getline(in, line)) kept.push_back(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (keep(line)) kept.push_back(line);
    }
    in.close();
    std::ofstream out(path, std::ios::trunc);
    for (const auto& l : kept) out << l << "\n";
}

/// The learn loop shared by fresh and resumed runs.
class LearnRun {
public:
    LearnRun(RunConfig cfg, RunPaths paths) : cfg_(std::move(cfg)), paths_(std::move(paths)) {}

    void start_fresh(const LearnRunOptions& opts) {
        cfg_.validate();
        namespace fs = std::filesystem;
        if (fs::exists(paths_.meta()) && !opts.force_overwrite)
            throw DataError("output directory '" + paths_.root.string() +
                            "' already contains a run (use force/--force)");
        fs::create_directories(paths_.snapshots_dir());
        for (const auto& p : {paths_.events(), paths_.learning_log(), paths_.monitor_report(),
                              paths_.snapshot_index()})
            fs::remove(p);
        cfg_.to_kv().save(paths_.meta());

        dict_ = init_dictionary(cfg_.atom_count, cfg_.atom_len, cfg_.seed_dict);
        save_dictionary(dict_, paths_.initial_dictionary());
        monitor_ = std::make_unique<Monitor>(cfg_.monitor, cfg_.sample_rate);
        windows_done_ = 0;

        std::ofstream(paths_.events()) << kEventsHeader;
        std::ofstream(paths_.learning_log()) << learning_log_header(cfg_.atom_count);
        std::ofstream(paths_.monitor_report()) << kMonitorHeader;
        write_snapshot(0);
        run(opts);
    }

    void resume(const LearnRunOptions& opts) {
        cfg_.validate();
        const auto index = read_snapshot_index(paths_.snapshot_index());
        if (index.empty()) throw DataError("no snapshots to resume from");
        const auto& last = index.back();
        windows_done_ = last.ordinal;
        dict_ = load_dictionary(paths_.snapshots_dir() / last.file);
        monitor_ = std::make_unique<Monitor>(cfg_.monitor, cfg_.sample_rate);

        const double t_resume = stream_time(windows_done_);
        const double eps = 1e-9;

        // Drop any records past the snapshot, then rebuild monitor state
        // from what is left.
        truncate_csv(paths_.events(), [&](const std::string& line) {
            return std::stoull(split_csv(line)[0]) < windows_done_;
        });
        truncate_csv(paths_.learning_log(), [&](const std::string& line) {
            return std::stoull(split_csv(line)[0]) < windows_done_;
        });
        truncate_csv(paths_.monitor_report(), [&](const std::string& line) {
            return std::stod(split_csv(line)[0]) <= t_resume + eps;
        });

        for (const auto& e : index) {
            if (e.ordinal > windows_done_) continue;
            auto snap = load_dictionary(paths_.snapshots_dir() / e.file);
            monitor_->observe_snapshot(snap, e.stream_time);
        }
        const double horizon = t_resume - cfg_.monitor.event_rate_window_s;
        for (const auto& le : read_event_log(paths_.events())) {
            const double t = stream_time(le.window) +
                             static_cast<double>(le.event.shift) /
                                 static_cast<double>(cfg_.sample_rate);
            if (t >= horizon)
                monitor_->observe_events(le.window, stream_time(le.window), {le.event});
        }
        rebuild_streaks();
        run(opts);
    }

private:
    double stream_time(std::size_t windows) const {
        return static_cast<double>(windows) * cfg_.window_seconds;
    }

    std::size_t report_every_windows() const {
        const double r = cfg_.monitor.report_interval_s / cfg_.window_seconds;
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(r)));
    }

    void rebuild_streaks() {
        // Replay the kept reports in time order to recover the trailing
        // consecutive above-threshold counts per atom.
        auto rows = read_monitor_csv(paths_.monitor_report());
        std::map<double, std::vector<MonitorRow>> by_time;
        for (const auto& r : rows) by_time[r.stream_time].push_back(r);
        std::map<std::uint32_t, std::uint32_t> streaks;
        for (const auto& [t, group] : by_time) {
            for (const auto& r : group) {
                if (r.evolution_rate > cfg_.monitor.alert_threshold)
                    streaks[r.atom_id] += 1;
                else
                    streaks[r.atom_id] = 0;
            }
        }
        std::vector<std::uint32_t> v(cfg_.atom_count, 0);
        for (const auto& [id, s] : streaks)
            if (id < v.size()) v[id] = s;
        monitor_->seed_streaks(v);
    }

    void write_snapshot(std::size_t ordinal) {
        const auto name = snapshot_filename(ordinal);
        save_dictionary(dict_, paths_.snapshots_dir() / name);
        const bool fresh = !std::filesystem::exists(paths_.snapshot_index());
        std::ofstream idx(paths_.snapshot_index(), std::ios::app);
        if (fresh) idx << "ordinal,stream_time,file\n";
        idx << ordinal << ',' << g17(stream_time(ordinal)) << ',' << name << "\n";
        monitor_->observe_snapshot(dict_, stream_time(ordinal));
    }

    void run(const LearnRunOptions& opts) {
        WindowSource source(cfg_);
        const std::size_t total = cfg_.total_windows();
        const std::size_t report_every = report_every_windows();
        std::size_t limit = total;
        if (opts.max_windows) limit = std::min(total, *opts.max_windows);

        std::ofstream events_out(paths_.events(), std::ios::app);
        std::ofstream log_out(paths_.learning_log(), std::ios::app);
        std::ofstream monitor_out(paths_.monitor_report(), std::ios::app);

        for (std::size_t w = windows_done_; w < limit; ++w) {
            const auto si = stage_of(cfg_, w);
            if (opts.log && si.index_in_stage == 0)
                *opts.log << "stage " << cfg_.schedule[si.stage].label << " ("
                          << cfg_.windows_in_stage(si.stage) << " windows)\n";
            const Signal window = source.window(w);
            const auto step = learn_step(window, dict_, cfg_.stop, cfg_.learn);

            for (const auto& ev : step.encode.events)
                events_out << w << ',' << ev.atom_id << ',' << ev.shift << ','
                           << g17(ev.amplitude) << "\n";
            log_out << w << ',' << g17(stream_time(w)) << ',' << step.encode.events.size()
                    << ',' << g17(step.encode.srr_db);
            for (std::size_t m = 0; m < cfg_.atom_count; ++m) log_out << ',' << step.event_counts[m];
            for (std::size_t m = 0; m < cfg_.atom_count; ++m)
                log_out << ',' << g17(step.update.delta_norms[m]);
            log_out << "\n";

            monitor_->observe_events(w, stream_time(w), step.encode.events);

            const std::size_t done = w + 1;
            if (done % report_every == 0 || done == limit) {
                events_out.flush();
                log_out.flush();
                write_snapshot(done);
                if (done > 0) {
                    const auto rep = monitor_->report(dict_, stream_time(done));
                    write_monitor_rows(monitor_out, rep);
                    monitor_out.flush();
                }
            }
            if (opts.log && (done % 25 == 0 || done == limit))
                *opts.log << "  " << done << "/" << total << " windows\n";
        }
        save_dictionary(dict_, paths_.final_dictionary());
    }

    RunConfig cfg_;
    RunPaths paths_;
    Dictionary dict_;
    std::unique_ptr<Monitor> monitor_;
    std::size_t windows_done_ = 0;
};

} // namespace

std::vector<LoggedEvent> read_event_log(const std::filesystem::path& csv) {
    std::ifstream in(csv);
    if (!in) throw DataError("cannot open event log '" + csv.string() + "'");
    std::vector<LoggedEvent> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 4) throw DataError("malformed event log line '" + line + "'");
        LoggedEvent le;
        le.window = std::stoull(f[0]);
        le.event.atom_id = static_cast<std::uint32_t>(std::stoul(f[1]));
        le.event.shift = static_cast<std::size_t>(std::stoull(f[2]));
        le.event.amplitude = std::stod(f[3]);
        out.push_back(le);
    }
    return out;
}

void run_learn(const RunConfig& config, const LearnRunOptions& options) {
    RunPaths paths{config.out_dir};
    LearnRun run(config, paths);
    run.start_fresh(options);
}

void resume_learn(const std::filesystem::path& out_dir, const LearnRunOptions& options) {
    RunPaths paths{out_dir};
    RunConfig cfg = RunConfig::from_file(paths.meta());
    cfg.out_dir = out_dir.string();
    LearnRun run(cfg, paths);
    run.resume(options);
}

void recompute_monitor(const std::filesystem::path& run_dir,
                       const std::optional<MonitorConfig>& override_config,
                       const std::filesystem::path& out_csv) {
    RunPaths paths{run_dir};
    RunConfig cfg = RunConfig::from_file(paths.meta());
    const MonitorConfig mc = override_config.value_or(cfg.monitor);

    const auto index = read_snapshot_index(paths.snapshot_index());
    if (index.empty()) throw DataError("run has no snapshots");
    const auto events = read_event_log(paths.events());

    Monitor monitor(mc, cfg.sample_rate);
    std::ofstream out(out_csv);
    if (!out) throw DataError("cannot write '" + out_csv.string() + "'");
    out << kMonitorHeader;

    std::size_t next_event = 0;
    for (const auto& entry : index) {
        auto dict = load_dictionary(paths.snapshots_dir() / entry.file);
        // Feed events that happened before this snapshot time.
        while (next_event < events.size()) {
            const auto& le = events[next_event];
            const double wt = static_cast<double>(le.window) * cfg.window_seconds;
            if (wt >= entry.stream_time) break;
            monitor.observe_events(le.window, wt, {le.event});
            ++next_event;
        }
        monitor.observe_snapshot(dict, entry.stream_time);
        if (entry.stream_time > 0.0) {
            const auto rep = monitor.report(dict, entry.stream_time);
            write_monitor_rows(out, rep);
        }
    }
}

void write_report_files(const std::filesystem::path& run_dir) {
    RunPaths paths{run_dir};
    RunConfig cfg = RunConfig::from_file(paths.meta());
    const auto rows = read_monitor_csv(paths.monitor_report());
    if (rows.empty()) throw DataError("run has no monitor reports");

    // evolution_rate.csv: stream_time plus one column per atom.
    {
        std::map<double, std::vector<double>> by_time;
        for (const auto& r : rows) {
            auto& v = by_time[r.stream_time];
            if (v.size() <= r.atom_id) v.resize(cfg.atom_count, 0.0);
            v[r.atom_id] = r.evolution_rate;
        }
        std::ofstream out(run_dir / "evolution_rate.csv");
        out << "stream_time";
        for (std::size_t m = 0; m < cfg.atom_count; ++m) out << ",atom_" << m;
        out << "\n";
        for (const auto& [t, v] : by_time) {
            out << g17(t);
            for (std::size_t m = 0; m < cfg.atom_count; ++m)
                out << ',' << g17(m < v.size() ? v[m] : 0.0);
            out << "\n";
        }
    }

    // Stage boundaries in windows and seconds.
    const auto index = read_snapshot_index(paths.snapshot_index());
    const auto events = read_event_log(paths.events());
    std::vector<std::pair<std::string, std::pair<double, double>>> stages;  // label, [t0,t1)
    {
        double t = 0.0;
        for (std::size_t s = 0; s < cfg.schedule.size(); ++s) {
            const double dur =
                static_cast<double>(cfg.windows_in_stage(s)) * cfg.window_seconds;
            stages.emplace_back(cfg.schedule[s].label, std::make_pair(t, t + dur));
            t += dur;
        }
    }

    auto dict_at_or_before = [&](double t) -> Dictionary {
        const SnapshotEntry* best = nullptr;
        for (const auto& e : index)
            if (e.stream_time <= t + 1e-9) best = &e;
        if (!best) throw DataError("no snapshot at or before stage end");
        return load_dictionary(paths.snapshots_dir() / best->file);
    };

    std::ofstream scatter(run_dir / "scatter.csv");
    scatter << "atom,center_freq_hz,event_rate,stage\n";
    std::ofstream table(run_dir / "table1.csv");
    table << "atom";
    for (const auto& [label, tt] : stages) table << ",center_freq_hz_" << label;
    for (const auto& [label, tt] : stages) table << ",event_rate_" << label;
    table << "\n";

    std::vector<std::vector<double>> cf(stages.size()), er(stages.size());
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const auto& [label, span] = stages[s];
        const double t1 = span.second;
        const double rate_window =
            std::min(cfg.monitor.event_rate_window_s, span.second - span.first);
        auto dict = dict_at_or_before(t1);
        cf[s].resize(cfg.atom_count);
        er[s].assign(cfg.atom_count, 0.0);
        for (std::size_t m = 0; m < cfg.atom_count; ++m)
            cf[s][m] = center_frequency(dict.atoms[m], cfg.sample_rate);
        for (const auto& le : events) {
            const double t = static_cast<double>(le.window) * cfg.window_seconds +
                             static_cast<double>(le.event.shift) /
                                 static_cast<double>(cfg.sample_rate);
            if (t >= t1 - rate_window && t < t1 && le.event.atom_id < cfg.atom_count)
                er[s][le.event.atom_id] += 1.0;
        }
        for (auto& v : er[s]) v /= rate_window;
        for (std::size_t m = 0; m < cfg.atom_count; ++m)
            scatter << m << ',' << g17(cf[s][m]) << ',' << g17(er[s][m]) << ',' << label
                    << "\n";
    }
    for (std::size_t m = 0; m < cfg.atom_count; ++m) {
        table << m;
        for (std::size_t s = 0; s < stages.size(); ++s) table << ',' << g17(cf[s][m]);
        for (std::size_t s = 0; s < stages.size(); ++s) table << ',' << g17(er[s][m]);
        table << "\n";
    }
}

} // namespace dictmon
