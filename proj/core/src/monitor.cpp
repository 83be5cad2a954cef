#include "dictmon/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dictmon/errors.hpp"
#include "dictmon/fft.hpp"

namespace dictmon {

double evolution_rate(const Atom& atom_now, const Atom& atom_past,
                      std::optional<std::size_t> max_lag) {
    const auto& u = atom_now.waveform;
    const auto& v = atom_past.waveform;
    if (u.size() != v.size())
        throw DataError("evolution_rate: atom lengths differ");
    const std::size_t n = u.size();
    const std::size_t lag = std::min(max_lag.value_or(n / 4), n - 1);

    // Energies computed with the same traversal as the lag-0 product so a
    // bitwise-identical pair yields q == su exactly and rate == 0 exactly.
    double su = 0.0, sv = 0.0;
    for (std::size_t k = 0; k < n; ++k) su += u[k] * u[k];
    for (std::size_t k = 0; k < n; ++k) sv += v[k] * v[k];
    if (!(su > 0.0) || !(sv > 0.0))
        throw NumericError("evolution_rate: zero-norm atom");

    double best = 0.0;  // max over lags of q^2 / (su*sv)
    for (std::ptrdiff_t l = -static_cast<std::ptrdiff_t>(lag);
         l <= static_cast<std::ptrdiff_t>(lag); ++l) {
        double q = 0.0;
        const std::size_t k_lo = l < 0 ? static_cast<std::size_t>(-l) : 0;
        const std::size_t k_hi = l > 0 ? n - static_cast<std::size_t>(l) : n;
        for (std::size_t k = k_lo; k < k_hi; ++k)
            q += u[k] * v[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) + l)];
        const double c2 = (q * q) / (su * sv);
        if (c2 > best) best = c2;
    }
    return std::clamp(1.0 - std::sqrt(best), 0.0, 1.0);
}

std::size_t centroid_fft_size(std::size_t atom_len) {
    std::size_t n = 64;
    while (n < 8 * atom_len) n <<= 1;
    return n;
}

double center_frequency(const Atom& atom, std::uint32_t sample_rate) {
    const std::size_t len = atom.length();
    if (len == 0) throw DataError("center_frequency: empty atom");
    if (sample_rate == 0) throw DataError("center_frequency: zero sample rate");
    if (!(atom.norm() > 0.0)) throw NumericError("center_frequency: zero-energy atom");

    // Hann taper; an untapered periodogram leaks enough to bias the
    // centroid of an off-bin sinusoid by several bins.
    std::vector<double> tapered(len);
    const double pi = 3.14159265358979323846;
    for (std::size_t k = 0; k < len; ++k) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(k) /
                                               static_cast<double>(len - 1)));
        tapered[k] = atom.waveform[k] * w;
    }
    const std::size_t nfft = centroid_fft_size(len);
    const auto psd = power_spectrum(tapered, nfft);
    double num = 0.0, den = 0.0;
    const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(nfft);
    for (std::size_t j = 0; j < psd.size(); ++j) {
        num += static_cast<double>(j) * bin_hz * psd[j];
        den += psd[j];
    }
    if (!(den > 0.0)) throw NumericError("center_frequency: zero spectrum");
    return num / den;
}

std::vector<double> event_rate(const std::deque<TimedEvent>& events,
                               std::size_t atom_count, double window_seconds,
                               bool per_atom) {
    if (!(window_seconds > 0.0))
        throw DataError("event_rate: window must be positive");
    std::vector<double> rates(per_atom ? atom_count : 1, 0.0);
    for (const auto& te : events) {
        if (per_atom) {
            if (te.event.atom_id < atom_count)
                rates[te.event.atom_id] += 1.0;
        } else {
            rates[0] += 1.0;
        }
    }
    for (double& r : rates) r /= window_seconds;
    return rates;
}

void SnapshotBuffer::push(Snapshot snapshot) {
    ring_.push_back(std::move(snapshot));
    const double newest = ring_.back().stream_time;
    // Keep one snapshot older than the horizon so at_or_before always has a
    // candidate at the horizon edge.
    while (ring_.size() > 2 && ring_[1].stream_time <= newest - horizon_s_)
        ring_.pop_front();
}

const Snapshot* SnapshotBuffer::at_or_before(double t) const {
    const Snapshot* found = nullptr;
    for (const auto& s : ring_) {
        if (s.stream_time <= t) found = &s;
        else break;
    }
    return found;
}

void Monitor::observe_snapshot(const Dictionary& dictionary, double stream_time) {
    snapshots_.push(take_snapshot(dictionary, stream_time));
}

void Monitor::observe_events(std::uint64_t window_ordinal, double window_start_s,
                             const std::vector<Event>& events) {
    for (const auto& ev : events) {
        TimedEvent te;
        te.window_ordinal = window_ordinal;
        te.stream_time = window_start_s + static_cast<double>(ev.shift) /
                                              static_cast<double>(sample_rate_);
        te.event = ev;
        events_.push_back(te);
    }
}

MonitorReport Monitor::report(const Dictionary& current, double stream_time) {
    if (snapshots_.empty())
        throw DataError("monitor report: no snapshots in the buffer");
    if (streaks_.size() != current.size()) streaks_.assign(current.size(), 0);

    // Trim events outside the trailing rate window.
    const double horizon = stream_time - config_.event_rate_window_s;
    while (!events_.empty() && events_.front().stream_time < horizon)
        events_.pop_front();

    const double want = stream_time - config_.delta_seconds;
    const Snapshot* past = snapshots_.at_or_before(want);
    bool approximate = false;
    if (past == nullptr) {
        past = snapshots_.at_or_before(stream_time);
        if (past == nullptr)
            throw DataError("monitor report: no snapshot at or before the report time");
        approximate = true;
    } else if (past->stream_time != want) {
        approximate = true;
    }

    const double rate_window = std::min(config_.event_rate_window_s, stream_time);
    const auto rates = event_rate(events_, current.size(),
                                  rate_window > 0.0 ? rate_window : config_.event_rate_window_s);

    MonitorReport rep;
    rep.stream_time = stream_time;
    rep.approximate = approximate;
    rep.lag_used_s = stream_time - past->stream_time;
    rep.atoms.reserve(current.size());
    for (std::size_t m = 0; m < current.size(); ++m) {
        AtomReport ar;
        ar.atom_id = static_cast<std::uint32_t>(m);
        ar.evolution_rate = (m < past->dictionary.size())
                                ? evolution_rate(current.atoms[m], past->dictionary.atoms[m])
                                : 1.0;
        ar.center_frequency_hz = center_frequency(current.atoms[m], sample_rate_);
        ar.event_rate_per_s = rates[m];
        if (ar.evolution_rate > config_.alert_threshold) {
            if (streaks_[m] < std::numeric_limits<std::uint32_t>::max()) ++streaks_[m];
        } else {
            streaks_[m] = 0;
        }
        ar.alert = streaks_[m] >= config_.alert_hold;
        if (ar.alert) rep.alerts.push_back(ar.atom_id);
        rep.atoms.push_back(ar);
    }
    return rep;
}

} // namespace dictmon
