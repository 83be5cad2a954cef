#include "dictmon/learner.hpp"

#include <cmath>

#include "dictmon/errors.hpp"

namespace dictmon {

GradientAccumulator GradientAccumulator::zeros(const Dictionary& dictionary) {
    GradientAccumulator acc;
    acc.gradients.resize(dictionary.size());
    acc.event_counts.assign(dictionary.size(), 0);
    for (std::size_t m = 0; m < dictionary.size(); ++m)
        acc.gradients[m].assign(dictionary.atoms[m].length(), 0.0);
    return acc;
}

void GradientAccumulator::add(const Event& event, std::span<const double> residual_slice) {
    auto& g = gradients.at(event.atom_id);
    if (residual_slice.size() != g.size())
        throw DataError("gradient slice length does not match the atom");
    for (std::size_t k = 0; k < g.size(); ++k)
        g[k] += event.amplitude * residual_slice[k];
    ++event_counts[event.atom_id];
}

double residual_variance(const Signal& residual, double floor) {
    if (residual.samples.empty()) throw DataError("residual_variance: empty residual");
    const double n = static_cast<double>(residual.samples.size());
    double mean = 0.0;
    for (double v : residual.samples) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : residual.samples) var += (v - mean) * (v - mean);
    var /= n;
    return std::max(var, floor);
}

GradientAccumulator accumulate(const std::vector<Event>& events, const Signal& original,
                               const Signal& residual, const Dictionary& dictionary) {
    if (original.size() != residual.size())
        throw DataError("accumulate: original and residual lengths differ");
    auto acc = GradientAccumulator::zeros(dictionary);
    for (const auto& ev : events) {
        if (ev.atom_id >= dictionary.size())
            throw DataError("accumulate: atom id out of range");
        const std::size_t len = dictionary.atoms[ev.atom_id].length();
        if (ev.shift + len > residual.size())
            throw DataError("accumulate: event shift outside the residual");
        acc.add(ev, std::span<const double>(residual.samples.data() + ev.shift, len));
    }
    return acc;
}

UpdateInfo apply_update(Dictionary& dictionary, const GradientAccumulator& grad,
                        double residual_var, const LearnConfig& config) {
    if (!(config.learning_rate >= 0.0))
        throw DataError("apply_update: learning rate must be non-negative");
    if (!(residual_var >= config.variance_floor))
        throw DataError("apply_update: residual variance below the floor");
    if (grad.gradients.size() != dictionary.size())
        throw DataError("apply_update: accumulator does not match the dictionary");

    UpdateInfo info;
    info.delta_norms.assign(dictionary.size(), 0.0);
    const double scale = config.learning_rate / residual_var;
    for (std::size_t m = 0; m < dictionary.size(); ++m) {
        if (grad.event_counts[m] == 0) continue;  // Hebbian locality: untouched
        bool finite = true;
        for (double v : grad.gradients[m])
            if (!std::isfinite(v)) { finite = false; break; }
        if (!finite) {
            info.rejected.push_back(static_cast<std::uint32_t>(m));
            continue;
        }
        Atom& atom = dictionary.atoms[m];
        bool zero_step = true;
        for (double v : grad.gradients[m])
            if (scale * v != 0.0) { zero_step = false; break; }
        if (zero_step) continue;  // eta == 0 or an all-zero gradient: bit-identical
        Atom updated = atom;
        for (std::size_t k = 0; k < atom.length(); ++k)
            updated.waveform[k] += scale * grad.gradients[m][k];
        if (config.renormalize) updated = normalize_atom(updated);
        double d2 = 0.0;
        for (std::size_t k = 0; k < atom.length(); ++k) {
            const double d = updated.waveform[k] - atom.waveform[k];
            d2 += d * d;
        }
        info.delta_norms[m] = std::sqrt(d2);
        atom = std::move(updated);
    }
    dictionary.meta.update_count += 1;
    return info;
}

LearnStepResult learn_step(const Signal& window, Dictionary& dictionary,
                           const StopCondition& stop, const LearnConfig& config) {
    auto hebbian = GradientAccumulator::zeros(dictionary);
    LearnStepResult result;
    result.encode = encode(window, dictionary, stop,
                           [&](const Event& ev, std::span<const double> slice) {
                               hebbian.add(ev, slice);
                           });
    result.residual_var = residual_variance(result.encode.residual, config.variance_floor);
    result.update = apply_update(dictionary, hebbian, result.residual_var, config);
    result.event_counts = hebbian.event_counts;
    return result;
}

} // namespace dictmon
