#ifndef DICTMON_PIPELINE_HPP
#define DICTMON_PIPELINE_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "dictmon/config.hpp"

namespace dictmon {

/// File layout of a run output directory.
struct RunPaths {
    std::filesystem::path root;
    std::filesystem::path meta() const { return root / "run_meta.cfg"; }
    std::filesystem::path events() const { return root / "events.csv"; }
    std::filesystem::path learning_log() const { return root / "learning_log.csv"; }
    std::filesystem::path monitor_report() const { return root / "monitor_report.csv"; }
    std::filesystem::path snapshots_dir() const { return root / "snapshots"; }
    std::filesystem::path snapshot_index() const { return root / "snapshots" / "index.csv"; }
    std::filesystem::path initial_dictionary() const { return root / "dictionary_initial.dict"; }
    std::filesystem::path final_dictionary() const { return root / "dictionary_final.dict"; }
};

struct LearnRunOptions {
    /// Stop after this many windows (snapshot written), for staged/resumable
    /// runs. The run completes normally when unset.
    std::optional<std::size_t> max_windows;
    bool force_overwrite = false;
    std::ostream* log = nullptr;
};

/// Execute a learn run into config.out_dir: window loop, dictionary
/// updates, event/learning logs, snapshots and monitor reports.
void run_learn(const RunConfig& config, const LearnRunOptions& options = {});

/// Continue an interrupted run from its latest snapshot. State is rebuilt
/// from the output files alone, and the continued run's outputs are
/// byte-identical to an uninterrupted run with the same config.
void resume_learn(const std::filesystem::path& out_dir, const LearnRunOptions& options = {});

/// Recompute monitor reports offline from a run directory's snapshots and
/// event log, optionally with a different monitor configuration. Writes to
/// out_csv.
void recompute_monitor(const std::filesystem::path& run_dir,
                       const std::optional<MonitorConfig>& override_config,
                       const std::filesystem::path& out_csv);

/// Produce figure-data files in the run directory: evolution_rate.csv (one
/// column per atom), scatter.csv (atom, center freq, event rate, stage) and
/// table1.csv (per-atom center frequency and event rate per stage).
void write_report_files(const std::filesystem::path& run_dir);

/// Event-log record as stored in events.csv.
struct LoggedEvent {
    std::uint64_t window = 0;
    Event event;
};
std::vector<LoggedEvent> read_event_log(const std::filesystem::path& csv);

} // namespace dictmon

#endif
