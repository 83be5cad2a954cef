#ifndef DICTMON_MONITOR_HPP
#define DICTMON_MONITOR_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "dictmon/dictionary.hpp"
#include "dictmon/encoder.hpp"

namespace dictmon {

struct MonitorConfig {
    double delta_seconds = 600.0;        // drift comparison lag
    double report_interval_s = 10.0;
    double event_rate_window_s = 1800.0; // trailing window for event rates
    double alert_threshold = 0.1;        // evolution-rate level
    std::uint32_t alert_hold = 2;        // consecutive reports above threshold
};

/// Drift of an atom against its own past version: 1 minus the maximum
/// absolute normalized cross-correlation over relative lags up to
/// `max_lag` samples (default: a quarter of the atom length). Identical
/// waveforms give exactly 0; waveforms with disjoint supports farther
/// apart than max_lag give exactly 1. The bounded lag scan absorbs small
/// translations of the waveform within its support without letting any
/// nonzero pair masquerade as fully uncorrelated.
double evolution_rate(const Atom& atom_now, const Atom& atom_past,
                      std::optional<std::size_t> max_lag = std::nullopt);

/// Spectral centroid of the atom's one-sided periodogram, in Hz. The
/// waveform is Hann-tapered and zero-padded to at least 8x its length
/// (next power of two), which keeps the centroid of a pure sinusoid
/// within a small fraction of one padded bin at any phase.
double center_frequency(const Atom& atom, std::uint32_t sample_rate);

/// Padded periodogram size used by center_frequency for an atom of the
/// given length (bin width = sample_rate / this).
std::size_t centroid_fft_size(std::size_t atom_len);

struct TimedEvent {
    double stream_time = 0.0;  // seconds, window start + shift/fs
    std::uint64_t window_ordinal = 0;
    Event event;
};

/// Per-atom activations per second over the trailing window. With
/// per_atom = false, returns a single total rate instead.
std::vector<double> event_rate(const std::deque<TimedEvent>& events,
                               std::size_t atom_count, double window_seconds,
                               bool per_atom = true);

struct AtomReport {
    std::uint32_t atom_id = 0;
    double evolution_rate = 0.0;
    double center_frequency_hz = 0.0;
    double event_rate_per_s = 0.0;
    bool alert = false;
};

struct MonitorReport {
    double stream_time = 0.0;
    std::vector<AtomReport> atoms;
    std::vector<std::uint32_t> alerts;  // atom ids currently flagged
    bool approximate = false;  // lag snapshot missing; nearest earlier used
    double lag_used_s = 0.0;
};

/// Ring of snapshots keyed by stream time, retaining at least `horizon`
/// seconds of history.
class SnapshotBuffer {
public:
    explicit SnapshotBuffer(double horizon_s) : horizon_s_(horizon_s) {}

    void push(Snapshot snapshot);
    /// Latest snapshot with stream_time <= t, if any.
    const Snapshot* at_or_before(double t) const;
    std::size_t size() const { return ring_.size(); }
    bool empty() const { return ring_.empty(); }

private:
    double horizon_s_;
    std::deque<Snapshot> ring_;
};

/// Stateful monitor: owns the snapshot ring, the trailing event history and
/// the per-atom alert streaks.
class Monitor {
public:
    Monitor(MonitorConfig config, std::uint32_t sample_rate)
        : config_(config), sample_rate_(sample_rate),
          snapshots_(2.0 * config.delta_seconds + 4.0 * config.report_interval_s) {}

    const MonitorConfig& config() const { return config_; }

    void observe_snapshot(const Dictionary& dictionary, double stream_time);
    void observe_events(std::uint64_t window_ordinal, double window_start_s,
                        const std::vector<Event>& events);

    /// Restore per-atom alert streak counters (used when resuming a run
    /// from its persisted reports).
    void seed_streaks(std::vector<std::uint32_t> streaks) { streaks_ = std::move(streaks); }

    /// Assemble all metrics at `stream_time` against the snapshot at
    /// stream_time - delta (or the nearest earlier one, flagged
    /// approximate). Throws DataError on an empty buffer.
    MonitorReport report(const Dictionary& current, double stream_time);

private:
    MonitorConfig config_;
    std::uint32_t sample_rate_;
    SnapshotBuffer snapshots_;
    std::deque<TimedEvent> events_;
    std::vector<std::uint32_t> streaks_;
};

} // namespace dictmon

#endif
