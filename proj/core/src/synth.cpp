#include "dictmon/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "dictmon/errors.hpp"
#include "dictmon/rng.hpp"

namespace dictmon {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void validate(const RigConfig& cfg) {
    const double nyquist = 0.5 * static_cast<double>(cfg.sample_rate);
    if (cfg.sample_rate == 0) throw DataError("rig config: zero sample rate");
    for (const auto& t : cfg.tones) {
        if (t.freq_hz >= nyquist)
            throw DataError("rig config: tone above Nyquist");
        if (t.amplitude < 0.0) throw DataError("rig config: negative tone amplitude");
    }
    if (cfg.noise_sigma < 0.0) throw DataError("rig config: negative noise sigma");
    if (cfg.fault) {
        if (cfg.fault->resonance_hz >= nyquist)
            throw DataError("rig config: fault resonance above Nyquist");
        if (!(cfg.fault->decay_tau_s > 0.0))
            throw DataError("rig config: fault decay must be positive");
        if (!(cfg.fault->impulse_rate_hz > 0.0))
            throw DataError("rig config: fault impulse rate must be positive");
    }
}
} // namespace

Signal gen_rig_signal(const RigConfig& config, double duration_s) {
    if (!(duration_s > 0.0)) throw DataError("gen_rig_signal: duration must be positive");
    validate(config);
    const double fs = static_cast<double>(config.sample_rate);
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * fs));
    if (n == 0) throw DataError("gen_rig_signal: duration too short for one sample");

    Signal sig;
    sig.sample_rate = config.sample_rate;
    sig.samples.assign(n, 0.0);

    // Tones carry deterministic per-tone phases drawn from the seed.
    CounterRng phase_rng(config.seed, /*stream=*/1);
    for (const auto& tone : config.tones) {
        const double phase = phase_rng.next_double() * kTwoPi;
        const double w = kTwoPi * tone.freq_hz / fs;
        for (std::size_t i = 0; i < n; ++i)
            sig.samples[i] += tone.amplitude * std::sin(w * static_cast<double>(i) + phase);
    }

    if (config.fault) {
        const auto& f = *config.fault;
        const double period = 1.0 / f.impulse_rate_hz;
        const double ring_len_s = 6.0 * f.decay_tau_s;
        const std::size_t ring_len = std::min(
            n, static_cast<std::size_t>(std::llround(ring_len_s * fs)) + 1);
        CounterRng jitter_rng(config.seed, /*stream=*/2);
        const std::size_t bursts =
            static_cast<std::size_t>(std::floor(duration_s / period)) + 1;
        for (std::size_t b = 0; b < bursts; ++b) {
            jitter_rng.skip_to(b);
            const double jitter = (jitter_rng.next_double() - 0.5) * 0.018 * period;
            const double t0 = static_cast<double>(b) * period + jitter;
            if (t0 < 0.0) continue;
            const std::size_t i0 = static_cast<std::size_t>(std::llround(t0 * fs));
            if (i0 >= n) break;
            const std::size_t stop = std::min(n, i0 + ring_len);
            for (std::size_t i = i0; i < stop; ++i) {
                const double dt = static_cast<double>(i - i0) / fs;
                sig.samples[i] += f.severity * std::exp(-dt / f.decay_tau_s) *
                                  std::sin(kTwoPi * f.resonance_hz * dt);
            }
        }
    }

    if (config.noise_sigma > 0.0) {
        CounterRng noise_rng(config.seed, /*stream=*/3);
        for (std::size_t i = 0; i < n; ++i)
            sig.samples[i] += config.noise_sigma * noise_rng.next_normal();
    }
    return sig;
}

Signal gen_from_dictionary(const Dictionary& dictionary, const std::vector<Event>& events,
                           double noise_sigma, std::size_t length, std::uint64_t seed) {
    if (length == 0) throw DataError("gen_from_dictionary: zero length");
    if (noise_sigma < 0.0) throw DataError("gen_from_dictionary: negative noise sigma");
    Signal sig;
    sig.samples.assign(length, 0.0);
    if (noise_sigma > 0.0) {
        CounterRng rng(seed, /*stream=*/3);
        for (std::size_t i = 0; i < length; ++i)
            sig.samples[i] = noise_sigma * rng.next_normal();
    }
    for (const auto& ev : events) {
        if (ev.atom_id >= dictionary.size())
            throw DataError("gen_from_dictionary: atom id out of range");
        const auto& wave = dictionary.atoms[ev.atom_id].waveform;
        if (ev.shift + wave.size() > length)
            throw DataError("gen_from_dictionary: event does not fit in the signal");
        for (std::size_t k = 0; k < wave.size(); ++k)
            sig.samples[ev.shift + k] += ev.amplitude * wave[k];
    }
    return sig;
}

bool is_rig_preset(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return s == "baseline" || s == "bl" || s == "ir7" || s == "ir14";
}

RigConfig rig_preset(const std::string& name, double shaft_hz, std::uint64_t seed) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    RigConfig cfg;
    cfg.shaft_hz = shaft_hz;
    cfg.seed = seed;
    // Shaft harmonics plus a mild structural resonance keep the healthy
    // spectrum below ~1 kHz, mirroring the low-frequency baseline atoms.
    cfg.tones = {
        {shaft_hz, 0.6}, {2.0 * shaft_hz, 0.4}, {3.0 * shaft_hz, 0.25},
        {600.0, 0.25}, {850.0, 0.15},
    };
    cfg.noise_sigma = 0.12;
    if (s == "baseline" || s == "bl") return cfg;
    // Ball-pass frequency for an inner-race defect is a few multiples of the
    // shaft rate; 5.4x matches a typical geometry.
    FaultConfig fault;
    fault.impulse_rate_hz = 5.4 * shaft_hz;
    if (s == "ir7") {
        fault.resonance_hz = 3000.0;
        fault.decay_tau_s = 0.0015;
        fault.severity = 1.1;
        cfg.fault = fault;
        return cfg;
    }
    if (s == "ir14") {
        fault.resonance_hz = 3400.0;
        fault.decay_tau_s = 0.0012;
        fault.severity = 2.2;
        cfg.fault = fault;
        return cfg;
    }
    throw DataError("unknown rig preset '" + name + "'");
}

} // namespace dictmon
