#include "dictmon/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dictmon/errors.hpp"
#include "dictmon/fft.hpp"

namespace dictmon {

namespace {

// Correlations are compared after rounding to 1e-12 so that the FFT and
// direct paths (and any parallel reduction order) pick identical events.
inline double corr_tick(double c) { return std::nearbyint(std::fabs(c) * 1e12); }

std::vector<double> correlate_direct(const double* r, std::size_t n,
                                     const double* a, std::size_t len) {
    std::vector<double> out(n - len + 1);
    for (std::size_t s = 0; s < out.size(); ++s) {
        double acc = 0.0;
        const double* rs = r + s;
        for (std::size_t k = 0; k < len; ++k) acc += rs[k] * a[k];
        out[s] = acc;
    }
    return out;
}

std::vector<double> correlate_fft_impl(const std::vector<double>& r,
                                       const std::vector<double>& a) {
    // Circular correlation at size n equals the linear valid-shift
    // correlation for shifts 0..n-len, so no extra padding is needed.
    const std::size_t n = r.size();
    auto rs = rfft(r, n);
    auto as = rfft(a, n);
    for (std::size_t i = 0; i < rs.size(); ++i) rs[i] *= std::conj(as[i]);
    auto full = irfft(rs, n);
    full.resize(n - a.size() + 1);
    return full;
}

} // namespace

std::vector<double> correlate(const Signal& residual, const Atom& atom,
                              CorrelatePath path) {
    const std::size_t n = residual.size();
    const std::size_t len = atom.length();
    if (len == 0 || n == 0) throw DataError("correlate: empty input");
    if (len > n)
        throw DataError("correlate: atom of length " + std::to_string(len) +
                        " does not fit a residual of " + std::to_string(n) + " samples");
    bool use_fft = false;
    switch (path) {
        case CorrelatePath::Direct: use_fft = false; break;
        case CorrelatePath::Fft: use_fft = true; break;
        case CorrelatePath::Auto:
            use_fft = len > kDirectMaxAtomLen && n >= kFftMinSignalLen;
            break;
    }
    if (use_fft) return correlate_fft_impl(residual.samples, atom.waveform);
    return correlate_direct(residual.samples.data(), n, atom.waveform.data(), len);
}

Event best_event(const Signal& residual, const Dictionary& dictionary) {
    if (dictionary.atoms.empty()) throw DataError("best_event: empty dictionary");
    Event best;
    double best_tick = -1.0;
    for (const auto& atom : dictionary.atoms) {
        const auto corr = correlate(residual, atom);
        for (std::size_t s = 0; s < corr.size(); ++s) {
            const double tick = corr_tick(corr[s]);
            if (tick > best_tick) {
                best_tick = tick;
                best = Event{atom.id, s, corr[s]};
            }
        }
    }
    if (best_tick == 0.0) best.amplitude = 0.0;
    return best;
}

Signal subtract_event(const Signal& residual, const Event& event,
                      const Dictionary& dictionary) {
    if (event.atom_id >= dictionary.atoms.size())
        throw DataError("subtract_event: atom id out of range");
    const auto& wave = dictionary.atoms[event.atom_id].waveform;
    if (event.shift + wave.size() > residual.size())
        throw DataError("subtract_event: event support exceeds the residual");
    Signal out = residual;
    double* r = out.samples.data() + event.shift;
    for (std::size_t k = 0; k < wave.size(); ++k) r[k] -= event.amplitude * wave[k];
    return out;
}

double srr_db(const Signal& original, const Signal& residual) {
    if (original.size() != residual.size())
        throw DataError("srr_db: length mismatch");
    const double e0 = original.energy();
    if (!(e0 > 0.0)) throw NumericError("srr_db: zero-energy original");
    const double er = residual.energy();
    if (er == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(e0 / er);
}

namespace {

// Incremental pursuit engine. Holds the full correlation map plus per-block
// maxima so each iteration only recomputes the band touched by the last
// subtraction and rescans block heads for the argmax.
class PursuitEngine {
public:
    static constexpr std::size_t kBlock = 1024;

    PursuitEngine(Signal& residual, const Dictionary& dict) : r_(residual), dict_(dict) {
        const std::size_t m = dict.size();
        corr_.resize(m);
        block_tick_.resize(m);
        block_shift_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto& atom = dict.atoms[i];
            corr_[i] = correlate(r_, atom);
            const std::size_t blocks = (corr_[i].size() + kBlock - 1) / kBlock;
            block_tick_[i].resize(blocks);
            block_shift_[i].resize(blocks);
            for (std::size_t b = 0; b < blocks; ++b) rescan_block(i, b);
        }
    }

    // Best event under the quantized-tie ordering: highest tick, then lowest
    // atom id, then lowest shift.
    Event pick() const {
        double best_tick = -1.0;
        std::size_t best_m = 0, best_s = 0;
        for (std::size_t m = 0; m < corr_.size(); ++m) {
            for (std::size_t b = 0; b < block_tick_[m].size(); ++b) {
                if (block_tick_[m][b] > best_tick) {
                    best_tick = block_tick_[m][b];
                    best_m = m;
                    best_s = block_shift_[m][b];
                }
            }
        }
        Event ev{static_cast<std::uint32_t>(best_m), best_s, corr_[best_m][best_s]};
        if (best_tick == 0.0) ev.amplitude = 0.0;
        return ev;
    }

    // Subtract in place and refresh the affected correlation band.
    void subtract(const Event& ev) {
        const auto& wave = dict_.atoms[ev.atom_id].waveform;
        double* r = r_.samples.data() + ev.shift;
        for (std::size_t k = 0; k < wave.size(); ++k) r[k] -= ev.amplitude * wave[k];
        const std::size_t touched_lo = ev.shift;
        const std::size_t touched_hi = ev.shift + wave.size();  // exclusive
        for (std::size_t m = 0; m < corr_.size(); ++m) {
            const auto& atom = dict_.atoms[m].waveform;
            const std::size_t len = atom.size();
            const std::size_t L = corr_[m].size();
            const std::size_t lo = touched_lo >= len - 1 ? touched_lo - (len - 1) : 0;
            const std::size_t hi = std::min(L, touched_hi);  // exclusive
            const double* base = r_.samples.data();
            for (std::size_t s = lo; s < hi; ++s) {
                double acc = 0.0;
                const double* rs = base + s;
                for (std::size_t k = 0; k < len; ++k) acc += rs[k] * atom[k];
                corr_[m][s] = acc;
            }
            for (std::size_t b = lo / kBlock; b <= (hi - 1) / kBlock && b < block_tick_[m].size(); ++b)
                rescan_block(m, b);
        }
    }

private:
    void rescan_block(std::size_t m, std::size_t b) {
        const auto& corr = corr_[m];
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(corr.size(), lo + kBlock);
        double best = -1.0;
        std::size_t best_s = lo;
        for (std::size_t s = lo; s < hi; ++s) {
            const double tick = corr_tick(corr[s]);
            if (tick > best) {
                best = tick;
                best_s = s;
            }
        }
        block_tick_[m][b] = best;
        block_shift_[m][b] = best_s;
    }

    Signal& r_;
    const Dictionary& dict_;
    std::vector<std::vector<double>> corr_;
    std::vector<std::vector<double>> block_tick_;
    std::vector<std::vector<std::size_t>> block_shift_;
};

} // namespace

EncodeResult encode(const Signal& window, const Dictionary& dictionary,
                    const StopCondition& stop, const EventObserver& observer) {
    if (dictionary.atoms.empty()) throw DataError("encode: empty dictionary");
    const std::size_t n = window.size();
    if (n < dictionary.max_atom_length())
        throw DataError("encode: window of " + std::to_string(n) +
                        " samples is shorter than the longest atom");
    const bool has_sparsity = std::isfinite(stop.max_events_per_sample);
    const bool has_srr = std::isfinite(stop.min_srr_db);
    if (!has_sparsity && !has_srr)
        throw DataError("encode: stop condition sets neither bound");

    EncodeResult result;
    result.residual = window;
    const double e0 = window.energy();
    double er = e0;  // tracked residual energy; exact per the energy identity

    const std::size_t max_events =
        has_sparsity ? static_cast<std::size_t>(std::floor(
                           stop.max_events_per_sample * static_cast<double>(n)))
                     : std::numeric_limits<std::size_t>::max();

    const auto srr_now = [&]() {
        if (er <= 0.0) return std::numeric_limits<double>::infinity();
        return 10.0 * std::log10(e0 / er);
    };

    PursuitEngine engine(result.residual, dictionary);
    while (true) {
        if (has_srr && e0 > 0.0 && srr_now() >= stop.min_srr_db) break;
        if (result.events.size() >= max_events) break;
        const Event ev = engine.pick();
        if (ev.amplitude == 0.0) break;
        if (!std::isfinite(ev.amplitude))
            throw NumericError("encode: non-finite correlation encountered");
        if (observer) {
            const auto& wave = dictionary.atoms[ev.atom_id].waveform;
            observer(ev, std::span<const double>(
                             result.residual.samples.data() + ev.shift, wave.size()));
        }
        engine.subtract(ev);
        er = std::max(0.0, er - ev.amplitude * ev.amplitude);
        result.events.push_back(ev);
        result.srr_trace.push_back(srr_now());
    }

    const double er_exact = result.residual.energy();
    result.srr_db = (er_exact == 0.0 || e0 == 0.0)
                        ? std::numeric_limits<double>::infinity()
                        : 10.0 * std::log10(e0 / er_exact);
    result.events_per_sample =
        static_cast<double>(result.events.size()) / static_cast<double>(n);
    return result;
}

} // namespace dictmon
