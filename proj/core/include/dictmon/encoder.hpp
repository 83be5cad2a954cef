#ifndef DICTMON_ENCODER_HPP
#define DICTMON_ENCODER_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dictmon/dictionary.hpp"
#include "dictmon/signal.hpp"

namespace dictmon {

/// One matching-pursuit activation: atom `atom_id` placed at sample offset
/// `shift` with signed amplitude `amplitude`. The shift keeps the atom's
/// full support inside the window.
struct Event {
    std::uint32_t atom_id = 0;
    std::size_t shift = 0;
    double amplitude = 0.0;
};

/// Pursuit stop bounds; whichever triggers first ends the pursuit. Either
/// bound may be +infinity (unset), but not both.
struct StopCondition {
    double max_events_per_sample = 0.1;
    double min_srr_db = 12.0;
};

struct EncodeResult {
    std::vector<Event> events;   // in extraction order
    Signal residual;
    double srr_db = 0.0;         // +inf when the residual is exactly zero
    double events_per_sample = 0.0;
    std::vector<double> srr_trace;  // SRR after each extraction (tracked energies)
};

enum class CorrelatePath { Auto, Direct, Fft };

/// Direct/FFT crossover for CorrelatePath::Auto: the direct path wins for
/// short atoms, the FFT path for long atoms against long signals.
/// Benchmarked in benchmarks/bench_encode.cpp.
inline constexpr std::size_t kDirectMaxAtomLen = 96;
inline constexpr std::size_t kFftMinSignalLen = 4096;

/// Valid-shift cross-correlation: out[s] = sum_k residual[s+k]*atom[k],
/// length N - len + 1. Direct and FFT paths agree within 1e-9 relative.
std::vector<double> correlate(const Signal& residual, const Atom& atom,
                              CorrelatePath path = CorrelatePath::Auto);

/// The event maximizing |correlation| over all atoms and shifts, signed
/// amplitude. Ties (after rounding correlations to 1e-12) break to the
/// lowest atom id, then the lowest shift. An all-zero residual yields
/// amplitude 0, which callers must treat as a stop.
Event best_event(const Signal& residual, const Dictionary& dictionary);

/// residual minus amplitude*atom over the event's support; elsewhere
/// unchanged.
Signal subtract_event(const Signal& residual, const Event& event,
                      const Dictionary& dictionary);

/// 10*log10(|original|^2 / |residual|^2); +infinity when the residual is
/// exactly zero. Throws NumericError on zero-energy original.
double srr_db(const Signal& original, const Signal& residual);

/// Called once per extracted event with the residual slice over the event's
/// support as it was at the moment of extraction (before subtraction).
using EventObserver =
    std::function<void(const Event&, std::span<const double> residual_at_extraction)>;

/// Shift-invariant matching pursuit over the window. Repeatedly extracts
/// the best event and subtracts it until a stop bound triggers or the best
/// amplitude is zero.
EncodeResult encode(const Signal& window, const Dictionary& dictionary,
                    const StopCondition& stop, const EventObserver& observer = {});

} // namespace dictmon

#endif
