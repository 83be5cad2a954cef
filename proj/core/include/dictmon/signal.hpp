#ifndef DICTMON_SIGNAL_HPP
#define DICTMON_SIGNAL_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dictmon {

/// Uniformly sampled real-valued waveform. Samples are dimensionless
/// acceleration units; all values are finite by construction of the loaders.
struct Signal {
    std::vector<double> samples;
    std::uint32_t sample_rate = 12000;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return static_cast<double>(samples.size()) / static_cast<double>(sample_rate);
    }
    double energy() const;
};

enum class SignalFormat { CsvColumn, RawF32le, RawF64le };

/// Parse a format name ("csv-column", "raw-f32le", "raw-f64le").
SignalFormat parse_signal_format(const std::string& name);
std::string signal_format_name(SignalFormat fmt);

/// Load a signal from disk. csv-column accepts one decimal value per line
/// with an optional single header line (auto-detected). Raw formats are
/// packed little-endian IEEE-754 with no header. Rejects NaN/Inf samples
/// (reporting the offending record index) and empty files.
Signal load_signal(const std::filesystem::path& path, SignalFormat format,
                   std::uint32_t sample_rate);

/// Write a signal to disk. Raw formats round-trip bit-exactly; csv uses 17
/// significant digits, which also round-trips doubles exactly.
void write_signal(const Signal& signal, const std::filesystem::path& path,
                  SignalFormat format);

/// One labelled recording in a manifest (e.g. a load/rpm case).
struct SegmentInfo {
    std::string path;
    SignalFormat format = SignalFormat::RawF64le;
    std::uint32_t sample_rate = 12000;
    std::string label;
};

/// Manifest file: [segment] sections with path/format/sample_rate/label keys.
/// Relative segment paths are resolved against the manifest's directory.
std::vector<SegmentInfo> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::vector<SegmentInfo>& segments,
                   const std::filesystem::path& path);

/// Deterministic random-window protocol: window `index` picks a segment
/// uniformly, then a valid offset uniformly, from a counter-based stream.
/// The same (plan, index) always yields the same window, independent of
/// call order.
struct WindowPlan {
    std::size_t window_len = 60000;
    std::uint64_t rng_seed = 0;
    std::size_t total_windows = 0;
};

/// Validate the plan against the segments (window_len must fit in every
/// segment; all segments share one sample rate) and cut window `index`.
Signal next_window(const WindowPlan& plan, const std::vector<Signal>& segments,
                   std::size_t index);

} // namespace dictmon

#endif
