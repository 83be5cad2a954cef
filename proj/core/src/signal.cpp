#include "dictmon/signal.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "dictmon/errors.hpp"
#include "dictmon/rng.hpp"

namespace dictmon {

double Signal::energy() const {
    double e = 0.0;
    for (double s : samples) e += s * s;
    return e;
}

SignalFormat parse_signal_format(const std::string& name) {
    if (name == "csv-column" || name == "csv") return SignalFormat::CsvColumn;
    if (name == "raw-f32le" || name == "f32le") return SignalFormat::RawF32le;
    if (name == "raw-f64le" || name == "f64le") return SignalFormat::RawF64le;
    throw DataError("unknown signal format '" + name + "'");
}

std::string signal_format_name(SignalFormat fmt) {
    switch (fmt) {
        case SignalFormat::CsvColumn: return "csv-column";
        case SignalFormat::RawF32le: return "raw-f32le";
        case SignalFormat::RawF64le: return "raw-f64le";
    }
    return "?";
}

namespace {

bool parse_double(const std::string& text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first != last && std::isspace(static_cast<unsigned char>(*first))) ++first;
    while (last != first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
    if (first == last) return false;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

Signal load_csv(const std::filesystem::path& path, std::uint32_t rate) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    Signal sig;
    sig.sample_rate = rate;
    std::string line;
    std::size_t record = 0;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++record;
        double v;
        if (!parse_double(line, v)) {
            if (first_line) { first_line = false; continue; }  // header line
            if (line.empty() && in.peek() == EOF) break;       // trailing newline
            throw DataError("non-numeric record at line " + std::to_string(record) +
                            " of '" + path.string() + "'");
        }
        first_line = false;
        if (!std::isfinite(v))
            throw DataError("non-finite sample at line " + std::to_string(record) +
                            " of '" + path.string() + "'");
        sig.samples.push_back(v);
    }
    if (sig.samples.empty()) throw DataError("empty signal in '" + path.string() + "'");
    return sig;
}

template <typename Float>
Signal load_raw(const std::filesystem::path& path, std::uint32_t rate) {
    static_assert(std::endian::native == std::endian::little,
                  "raw loaders assume a little-endian host");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    in.seekg(0, std::ios::end);
    const std::streamoff bytes = in.tellg();
    in.seekg(0);
    if (bytes % static_cast<std::streamoff>(sizeof(Float)) != 0)
        throw DataError("'" + path.string() + "' size is not a multiple of " +
                        std::to_string(sizeof(Float)) + " bytes");
    const std::size_t n = static_cast<std::size_t>(bytes) / sizeof(Float);
    if (n == 0) throw DataError("empty signal in '" + path.string() + "'");
    std::vector<Float> buf(n);
    in.read(reinterpret_cast<char*>(buf.data()), bytes);
    if (!in) throw DataError("short read from '" + path.string() + "'");
    Signal sig;
    sig.sample_rate = rate;
    sig.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = static_cast<double>(buf[i]);
        if (!std::isfinite(v))
            throw DataError("non-finite sample at index " + std::to_string(i) +
                            " of '" + path.string() + "'");
        sig.samples[i] = v;
    }
    return sig;
}

} // namespace

Signal load_signal(const std::filesystem::path& path, SignalFormat format,
                   std::uint32_t sample_rate) {
    if (sample_rate == 0) throw DataError("sample_rate must be positive");
    switch (format) {
        case SignalFormat::CsvColumn: return load_csv(path, sample_rate);
        case SignalFormat::RawF32le: return load_raw<float>(path, sample_rate);
        case SignalFormat::RawF64le: return load_raw<double>(path, sample_rate);
    }
    throw DataError("unknown signal format");
}

void write_signal(const Signal& signal, const std::filesystem::path& path,
                  SignalFormat format) {
    if (format == SignalFormat::CsvColumn) {
        std::ofstream out(path);
        if (!out) throw DataError("cannot write '" + path.string() + "'");
        char buf[40];
        for (double s : signal.samples) {
            std::snprintf(buf, sizeof buf, "%.17g\n", s);
            out << buf;
        }
        if (!out) throw DataError("write failed for '" + path.string() + "'");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    if (format == SignalFormat::RawF32le) {
        std::vector<float> buf(signal.samples.begin(), signal.samples.end());
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(float)));
    } else {
        out.write(reinterpret_cast<const char*>(signal.samples.data()),
                  static_cast<std::streamsize>(signal.samples.size() * sizeof(double)));
    }
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

std::vector<SegmentInfo> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest '" + path.string() + "'");
    const auto base = path.parent_path();
    std::vector<SegmentInfo> segments;
    SegmentInfo current;
    bool in_segment = false;
    auto flush = [&] {
        if (!in_segment) return;
        if (current.path.empty())
            throw DataError("manifest segment without a path in '" + path.string() + "'");
        auto p = std::filesystem::path(current.path);
        if (p.is_relative()) current.path = (base / p).string();
        segments.push_back(current);
    };
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[segment]") {
            flush();
            current = SegmentInfo{};
            in_segment = true;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos || !in_segment)
            throw DataError("malformed manifest line '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "path") current.path = val;
        else if (key == "format") current.format = parse_signal_format(val);
        else if (key == "sample_rate") current.sample_rate = static_cast<std::uint32_t>(std::stoul(val));
        else if (key == "label") current.label = val;
        else throw DataError("unknown manifest key '" + key + "'");
    }
    flush();
    if (segments.empty()) throw DataError("manifest '" + path.string() + "' lists no segments");
    return segments;
}

void save_manifest(const std::vector<SegmentInfo>& segments,
                   const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest '" + path.string() + "'");
    for (const auto& seg : segments) {
        out << "[segment]\n"
            << "path = " << seg.path << "\n"
            << "format = " << signal_format_name(seg.format) << "\n"
            << "sample_rate = " << seg.sample_rate << "\n"
            << "label = " << seg.label << "\n\n";
    }
    if (!out) throw DataError("write failed for manifest '" + path.string() + "'");
}

Signal next_window(const WindowPlan& plan, const std::vector<Signal>& segments,
                   std::size_t index) {
    if (plan.window_len == 0) throw DataError("window_len must be positive");
    if (index >= plan.total_windows)
        throw DataError("window index " + std::to_string(index) + " out of range (" +
                        std::to_string(plan.total_windows) + " windows)");
    if (segments.empty()) throw DataError("window plan has no segments");
    for (const auto& seg : segments) {
        if (seg.samples.size() < plan.window_len)
            throw DataError("window_len " + std::to_string(plan.window_len) +
                            " exceeds a segment of " + std::to_string(seg.samples.size()) +
                            " samples");
        if (seg.sample_rate != segments.front().sample_rate)
            throw DataError("segments have mixed sample rates");
    }
    // Two counter positions per window: segment choice, then offset.
    CounterRng rng(plan.rng_seed, /*stream=*/0);
    rng.skip_to(2 * static_cast<std::uint64_t>(index));
    const std::size_t seg_idx = static_cast<std::size_t>(rng.next_below(segments.size()));
    const Signal& seg = segments[seg_idx];
    const std::size_t max_offset = seg.samples.size() - plan.window_len;
    const std::size_t offset = static_cast<std::size_t>(rng.next_below(max_offset + 1));
    Signal out;
    out.sample_rate = seg.sample_rate;
    out.samples.assign(seg.samples.begin() + static_cast<std::ptrdiff_t>(offset),
                       seg.samples.begin() + static_cast<std::ptrdiff_t>(offset + plan.window_len));
    return out;
}

} // namespace dictmon
