#ifndef DICTMON_SYNTH_HPP
#define DICTMON_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dictmon/dictionary.hpp"
#include "dictmon/encoder.hpp"
#include "dictmon/signal.hpp"

namespace dictmon {

struct ToneComponent {
    double freq_hz = 0.0;
    double amplitude = 0.0;
};

/// Inner-race-style fault model: periodic exponentially decaying resonant
/// bursts. Burst times jitter by less than 1% of the repetition period.
struct FaultConfig {
    double impulse_rate_hz = 160.0;
    double resonance_hz = 3000.0;
    double decay_tau_s = 0.0015;
    double severity = 1.0;  // impulse amplitude scale
};

struct RigConfig {
    std::uint32_t sample_rate = 12000;
    double shaft_hz = 29.5;  // 1730-1800 rpm maps to 28.8-30 Hz
    std::vector<ToneComponent> tones;
    double noise_sigma = 0.1;
    std::optional<FaultConfig> fault;
    std::uint64_t seed = 0;
};

/// Baseline tones plus Gaussian noise, plus fault bursts when configured.
/// Deterministic per (config, seed).
Signal gen_rig_signal(const RigConfig& config, double duration_s);

/// Eq.-style forward synthesis: noise plus the given events placed from the
/// dictionary.
Signal gen_from_dictionary(const Dictionary& dictionary, const std::vector<Event>& events,
                           double noise_sigma, std::size_t length, std::uint64_t seed);

/// Named presets for the three operating stages: "baseline", "ir7", "ir14"
/// (case-insensitive; "bl" is an alias for "baseline"). Tones are placed at
/// shaft harmonics; fault presets stage severity and resonance.
RigConfig rig_preset(const std::string& name, double shaft_hz, std::uint64_t seed);
bool is_rig_preset(const std::string& name);

} // namespace dictmon

#endif
