#include <doctest.h>

#include <cmath>
#include <limits>

#include "dictmon/encoder.hpp"
#include "dictmon/errors.hpp"
#include "dictmon/synth.hpp"
#include "test_util.hpp"

using namespace dictmon;

namespace {

Signal embed(const Dictionary& dict, const std::vector<Event>& events, std::size_t n) {
    return gen_from_dictionary(dict, events, 0.0, n, 0);
}

} // namespace

TEST_CASE("correlate: self-correlation of a unit atom is 1 at shift 0") {
    const Dictionary d = init_dictionary(1, 50, 3);
    Signal sig;
    sig.samples = d.atoms[0].waveform;
    const auto c = correlate(sig, d.atoms[0]);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("correlate: zero residual gives zero output") {
    const Dictionary d = init_dictionary(1, 50, 3);
    Signal sig;
    sig.samples.assign(400, 0.0);
    for (double v : correlate(sig, d.atoms[0])) CHECK(v == 0.0);
}

TEST_CASE("correlate: direct path matches the brute-force oracle") {
    const Dictionary d = init_dictionary(1, 50, 11);
    const Signal sig = testutil::random_signal(1000, 21);
    const auto got = correlate(sig, d.atoms[0], CorrelatePath::Direct);
    const auto want = testutil::correlate_oracle(sig, d.atoms[0]);
    REQUIRE(got.size() == want.size());
    for (std::size_t s = 0; s < got.size(); ++s)
        CHECK(std::fabs(got[s] - want[s]) <= 1e-9 * std::max(1.0, std::fabs(want[s])));
}

TEST_CASE("correlate: fft and direct paths agree within 1e-9 relative") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dictionary d = init_dictionary(1, 50 + 13 * static_cast<std::size_t>(seed), seed + 1);
        const Signal sig = testutil::random_signal(3000 + 111 * static_cast<std::size_t>(seed), seed + 50);
        const auto a = correlate(sig, d.atoms[0], CorrelatePath::Direct);
        const auto b = correlate(sig, d.atoms[0], CorrelatePath::Fft);
        REQUIRE(a.size() == b.size());
        double scale = 0.0;
        for (double v : a) scale = std::max(scale, std::fabs(v));
        for (std::size_t s = 0; s < a.size(); ++s)
            CHECK(std::fabs(a[s] - b[s]) <= 1e-9 * scale);
    }
}

TEST_CASE("correlate: atom longer than residual is an error") {
    const Dictionary d = init_dictionary(1, 50, 3);
    Signal sig;
    sig.samples.assign(10, 1.0);
    CHECK_THROWS_AS(correlate(sig, d.atoms[0]), DataError);
}

TEST_CASE("best_event: exact atom embedding is recovered") {
    const Dictionary d = init_dictionary(8, 50, 17);
    const Signal sig = embed(d, {Event{3, 100, 2.5}}, 500);
    const Event ev = best_event(sig, d);
    CHECK(ev.atom_id == 3);
    CHECK(ev.shift == 100);
    CHECK(ev.amplitude == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("best_event: zero residual yields zero amplitude") {
    const Dictionary d = init_dictionary(4, 50, 17);
    Signal sig;
    sig.samples.assign(200, 0.0);
    CHECK(best_event(sig, d).amplitude == 0.0);
}

TEST_CASE("best_event: matches the exhaustive oracle on random inputs") {
    const Dictionary d = init_dictionary(4, 50, 29);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Signal sig = testutil::random_signal(400, 1000 + seed);
        const Event got = best_event(sig, d);
        const Event want = testutil::best_event_oracle(sig, d);
        CHECK(got.atom_id == want.atom_id);
        CHECK(got.shift == want.shift);
        CHECK(got.amplitude == want.amplitude);
    }
}

TEST_CASE("best_event: empty dictionary is an error") {
    Dictionary d;
    CHECK_THROWS_AS(best_event(testutil::random_signal(100, 1), d), DataError);
}

TEST_CASE("subtract_event: exact embedding cancels to zero") {
    const Dictionary d = init_dictionary(4, 50, 5);
    const Event ev{2, 30, 1.75};
    const Signal sig = embed(d, {ev}, 200);
    const Signal rest = subtract_event(sig, ev, d);
    for (double v : rest.samples) CHECK(v == 0.0);
}

TEST_CASE("subtract_event: zero amplitude leaves the residual unchanged") {
    const Dictionary d = init_dictionary(4, 50, 5);
    const Signal sig = testutil::random_signal(200, 3);
    CHECK(subtract_event(sig, Event{1, 10, 0.0}, d).samples == sig.samples);
}

TEST_CASE("subtract_event: invalid shift is an error") {
    const Dictionary d = init_dictionary(4, 50, 5);
    const Signal sig = testutil::random_signal(200, 3);
    CHECK_THROWS_AS(subtract_event(sig, Event{1, 151, 1.0}, d), DataError);
}

TEST_CASE("subtract_event: energy identity for best-event amplitudes") {
    const Dictionary d = init_dictionary(4, 50, 5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Signal sig = testutil::random_signal(500, 200 + seed);
        const Event ev = best_event(sig, d);
        const Signal rest = subtract_event(sig, ev, d);
        const double e0 = sig.energy();
        const double e1 = rest.energy();
        CHECK(std::fabs(e1 - (e0 - ev.amplitude * ev.amplitude)) <= 1e-9 * e0);
    }
}

TEST_CASE("srr_db definition and sentinels") {
    Signal orig;
    orig.samples = {1.0, 2.0, -1.0};
    CHECK(srr_db(orig, orig) == doctest::Approx(0.0));

    // |r|^2 = |x|^2 / 10^1.2 corresponds to exactly 12 dB.
    Signal scaled = orig;
    const double k = std::sqrt(1.0 / std::pow(10.0, 1.2));
    for (double& v : scaled.samples) v *= k;
    CHECK(srr_db(orig, scaled) == doctest::Approx(12.0).epsilon(1e-12));

    Signal zero;
    zero.samples = {0.0, 0.0, 0.0};
    CHECK(std::isinf(srr_db(orig, zero)));
    CHECK_THROWS_AS(srr_db(zero, orig), NumericError);
    Signal shorter;
    shorter.samples = {1.0};
    CHECK_THROWS_AS(srr_db(orig, shorter), DataError);
}

TEST_CASE("encode: noiseless non-overlapping events are recovered exactly") {
    const Dictionary d = init_dictionary(16, 50, 8);
    CounterRng rng(404, 1);
    std::vector<Event> planted;
    for (std::size_t i = 0; i < 5; ++i) {
        Event ev;
        ev.atom_id = static_cast<std::uint32_t>(rng.next_below(16));
        ev.shift = 10 + i * 90 + static_cast<std::size_t>(rng.next_below(30));
        ev.amplitude = (1.0 + rng.next_double()) * (rng.next_below(2) ? 1.0 : -1.0);
        planted.push_back(ev);
    }
    const Signal sig = embed(d, planted, 520);
    const EncodeResult res = encode(sig, d, StopCondition{0.1, 100.0});
    REQUIRE(res.events.size() == 5);
    // Extraction is greedy by |amplitude|; compare as sets keyed by shift.
    for (const auto& p : planted) {
        bool found = false;
        for (const auto& e : res.events)
            if (e.shift == p.shift && e.atom_id == p.atom_id &&
                std::fabs(e.amplitude - p.amplitude) <= 1e-9 * std::fabs(p.amplitude))
                found = true;
        CHECK(found);
    }
    CHECK(res.srr_db >= 100.0);
}

TEST_CASE("encode: zero window gives no events and a zero residual") {
    const Dictionary d = init_dictionary(4, 50, 8);
    Signal sig;
    sig.samples.assign(300, 0.0);
    const EncodeResult res = encode(sig, d, StopCondition{});
    CHECK(res.events.empty());
    for (double v : res.residual.samples) CHECK(v == 0.0);
    CHECK(std::isinf(res.srr_db));
}

TEST_CASE("encode: srr stop halts just past the threshold") {
    const Dictionary d = init_dictionary(8, 50, 12);
    RigConfig rig = rig_preset("baseline", 29.5, 77);
    const Signal sig = gen_rig_signal(rig, 0.25);
    StopCondition stop;
    stop.max_events_per_sample = std::numeric_limits<double>::infinity();
    stop.min_srr_db = 12.0;
    const EncodeResult res = encode(sig, d, stop);
    REQUIRE(!res.srr_trace.empty());
    CHECK(res.srr_trace.back() >= 12.0);
    if (res.srr_trace.size() > 1)
        CHECK(res.srr_trace[res.srr_trace.size() - 2] < 12.0);
}

TEST_CASE("encode: sparsity stop bounds the event count") {
    const Dictionary d = init_dictionary(8, 50, 12);
    const Signal sig = testutil::random_signal(1000, 31);
    StopCondition stop;
    stop.max_events_per_sample = 0.01;  // 10 events
    stop.min_srr_db = std::numeric_limits<double>::infinity();
    const EncodeResult res = encode(sig, d, stop);
    CHECK(res.events.size() == 10);
    CHECK(res.events_per_sample == doctest::Approx(0.01));
}

TEST_CASE("encode: reconstruction identity and monotone SRR trace") {
    const Dictionary d = init_dictionary(6, 50, 21);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Signal sig = testutil::random_signal(800, 600 + seed);
        const EncodeResult res = encode(sig, d, StopCondition{0.05, 25.0});
        // x == sum of events + residual, pointwise.
        Signal recon = res.residual;
        for (const auto& ev : res.events) {
            const auto& w = d.atoms[ev.atom_id].waveform;
            for (std::size_t k = 0; k < w.size(); ++k)
                recon.samples[ev.shift + k] += ev.amplitude * w[k];
        }
        double scale = 0.0;
        for (double v : sig.samples) scale = std::max(scale, std::fabs(v));
        for (std::size_t i = 0; i < sig.size(); ++i)
            CHECK(std::fabs(recon.samples[i] - sig.samples[i]) <= 1e-9 * scale);
        for (std::size_t i = 1; i < res.srr_trace.size(); ++i)
            CHECK(res.srr_trace[i] >= res.srr_trace[i - 1]);
    }
}

TEST_CASE("encode: each extraction matches the global argmax oracle") {
    const Dictionary d = init_dictionary(3, 20, 33);
    Signal sig = testutil::random_signal(150, 71);
    StopCondition stop;
    stop.max_events_per_sample = 6.0 / 150.0;
    stop.min_srr_db = std::numeric_limits<double>::infinity();
    Signal expected_res = sig;
    std::vector<Event> expected;
    for (int i = 0; i < 6; ++i) {
        const Event ev = testutil::best_event_oracle(expected_res, d);
        if (ev.amplitude == 0.0) break;
        expected_res = subtract_event(expected_res, ev, d);
        expected.push_back(ev);
    }
    const EncodeResult res = encode(sig, d, stop);
    REQUIRE(res.events.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(res.events[i].atom_id == expected[i].atom_id);
        CHECK(res.events[i].shift == expected[i].shift);
        CHECK(res.events[i].amplitude == expected[i].amplitude);
    }
}

TEST_CASE("encode: window shorter than an atom is an error") {
    const Dictionary d = init_dictionary(4, 50, 8);
    CHECK_THROWS_AS(encode(testutil::random_signal(20, 1), d, StopCondition{}), DataError);
}

TEST_CASE("encode: unset stop bounds are rejected") {
    const Dictionary d = init_dictionary(4, 50, 8);
    StopCondition stop;
    stop.max_events_per_sample = std::numeric_limits<double>::infinity();
    stop.min_srr_db = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(encode(testutil::random_signal(200, 1), d, stop), DataError);
}
