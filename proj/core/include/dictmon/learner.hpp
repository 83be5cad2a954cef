#ifndef DICTMON_LEARNER_HPP
#define DICTMON_LEARNER_HPP

#include <cstdint>
#include <vector>

#include "dictmon/dictionary.hpp"
#include "dictmon/encoder.hpp"
#include "dictmon/signal.hpp"

namespace dictmon {

struct LearnConfig {
    double learning_rate = 0.01;   // eta
    double variance_floor = 1e-12;
    bool renormalize = true;
};

/// Per-atom gradient sums: for atom m, sum over its events of
/// amplitude * residual-slice over the atom's support. Atoms with zero
/// events carry an all-zero gradient.
struct GradientAccumulator {
    std::vector<std::vector<double>> gradients;  // [atom][k], k < atom length
    std::vector<std::size_t> event_counts;

    static GradientAccumulator zeros(const Dictionary& dictionary);
    void add(const Event& event, std::span<const double> residual_slice);
};

/// Sample variance of the residual (population convention), floored.
double residual_variance(const Signal& residual, double floor);

/// Gradient of the approximate log data probability with respect to each
/// atom at fixed events: gradient[m] = sum_{i: m(i)=m} a_i *
/// residual[tau_i .. tau_i+len). `residual` is the final pursuit residual,
/// which makes this the analytic gradient of -|x - x_hat|^2 / 2 at fixed
/// amplitudes and shifts.
GradientAccumulator accumulate(const std::vector<Event>& events, const Signal& original,
                               const Signal& residual, const Dictionary& dictionary);

struct UpdateInfo {
    std::vector<double> delta_norms;          // |phi_new - phi_old| per atom
    std::vector<std::uint32_t> rejected;      // atoms skipped on non-finite gradient
};

/// phi_m <- normalize(phi_m + (eta / residual_var) * gradient[m]) for atoms
/// with at least one event. Zero-event atoms are untouched bit-exactly.
UpdateInfo apply_update(Dictionary& dictionary, const GradientAccumulator& grad,
                        double residual_var, const LearnConfig& config);

struct LearnStepResult {
    EncodeResult encode;
    UpdateInfo update;
    double residual_var = 0.0;
    std::vector<std::size_t> event_counts;  // per atom, this window
};

/// One encode-then-update cycle against the current dictionary. The update
/// uses Hebbian sums collected at extraction time: each event contributes
/// amplitude * (residual slice as it stood when the event was extracted,
/// i.e. still containing the event). The at-extraction sums differ from
/// accumulate()'s final-residual sums only by a component parallel to the
/// atom, so the renormalized update direction matches to first order while
/// strong activations damp the step.
LearnStepResult learn_step(const Signal& window, Dictionary& dictionary,
                           const StopCondition& stop, const LearnConfig& config);

} // namespace dictmon

#endif
