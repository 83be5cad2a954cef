// Command line driver: gen / encode / learn / monitor / report.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "dictmon/config.hpp"
#include "dictmon/dictionary.hpp"
#include "dictmon/encoder.hpp"
#include "dictmon/errors.hpp"
#include "dictmon/pipeline.hpp"
#include "dictmon/signal.hpp"
#include "dictmon/synth.hpp"

namespace {

using namespace dictmon;

std::string default_label(const std::string& preset) {
    if (preset == "baseline" || preset == "bl" || preset == "BL") return "BL";
    if (preset == "ir7") return "IR7";
    if (preset == "ir14") return "IR14";
    return preset;
}

int cmd_gen(const std::string& preset, double seconds, std::uint64_t seed,
            double shaft_hz, std::uint32_t rate, const std::string& out_file,
            const std::string& manifest_path, std::string label) {
    RigConfig rig = rig_preset(preset, shaft_hz, seed);
    rig.sample_rate = rate;
    const Signal sig = gen_rig_signal(rig, seconds);
    write_signal(sig, out_file, SignalFormat::RawF64le);
    if (label.empty()) label = default_label(preset);
    if (!manifest_path.empty()) {
        std::vector<SegmentInfo> segments;
        if (std::filesystem::exists(manifest_path))
            segments = load_manifest(manifest_path);
        SegmentInfo info;
        info.path = std::filesystem::absolute(out_file).string();
        info.format = SignalFormat::RawF64le;
        info.sample_rate = rate;
        info.label = label;
        segments.push_back(info);
        save_manifest(segments, manifest_path);
    }
    std::cout << "wrote " << sig.size() << " samples (" << seconds << " s @ " << rate
              << " Hz, preset " << preset << ") to " << out_file << "\n";
    return 0;
}

int cmd_encode(const std::string& signal_path, const std::string& format,
               std::uint32_t rate, const std::string& dict_path,
               const StopCondition& stop, const std::string& events_path,
               const std::string& residual_path) {
    const Signal sig = load_signal(signal_path, parse_signal_format(format), rate);
    const Dictionary dict = load_dictionary(dict_path);
    const EncodeResult res = encode(sig, dict, stop);

    std::ofstream out(events_path);
    if (!out) throw DataError("cannot write '" + events_path + "'");
    out << "window,atom,shift,amplitude\n";
    char buf[40];
    for (const auto& ev : res.events) {
        std::snprintf(buf, sizeof buf, "%.17g", ev.amplitude);
        out << 0 << ',' << ev.atom_id << ',' << ev.shift << ',' << buf << "\n";
    }
    if (!residual_path.empty())
        write_signal(res.residual, residual_path, SignalFormat::RawF64le);
    std::cout << res.events.size() << " events, srr " << res.srr_db << " dB, "
              << res.events_per_sample << " events/sample\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dictmon: online shift-invariant dictionary learning for "
                 "vibration condition monitoring"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "synthesize rig vibration signals");
    std::string gen_preset = "baseline";
    double gen_seconds = 60.0, gen_shaft = 29.5;
    std::uint64_t gen_seed = 1;
    std::uint32_t gen_rate = 12000;
    std::string gen_out, gen_manifest, gen_label;
    gen->add_option("--preset", gen_preset, "baseline | ir7 | ir14")->required();
    gen->add_option("--seconds", gen_seconds, "duration in seconds");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--shaft-hz", gen_shaft, "shaft rotation frequency");
    gen->add_option("--rate", gen_rate, "sample rate in Hz");
    gen->add_option("--out", gen_out, "output raw-f64le file")->required();
    gen->add_option("--manifest", gen_manifest, "manifest to append the segment to");
    gen->add_option("--label", gen_label, "segment label (defaults from preset)");

    // encode
    auto* enc = app.add_subcommand("encode", "matching pursuit on one signal file");
    std::string enc_signal, enc_format = "raw-f64le", enc_dict, enc_events = "events.csv",
                enc_residual;
    std::uint32_t enc_rate = 12000;
    StopCondition enc_stop;
    enc->add_option("--signal", enc_signal, "input signal file")->required();
    enc->add_option("--format", enc_format, "csv-column | raw-f32le | raw-f64le");
    enc->add_option("--rate", enc_rate, "sample rate in Hz");
    enc->add_option("--dictionary", enc_dict, "dictionary file")->required();
    enc->add_option("--min-srr-db", enc_stop.min_srr_db, "SRR stop bound in dB");
    enc->add_option("--max-events-per-sample", enc_stop.max_events_per_sample,
                    "sparsity stop bound");
    enc->add_option("--out-events", enc_events, "event CSV output");
    enc->add_option("--out-residual", enc_residual, "residual raw-f64le output");

    // learn
    auto* learn = app.add_subcommand("learn", "run the learning pipeline");
    std::string learn_config, learn_out, learn_resume;
    std::optional<std::uint64_t> learn_seed_signal, learn_seed_dict;
    std::optional<double> learn_eta, learn_srr, learn_eps, learn_delta;
    std::optional<std::size_t> learn_max_windows;
    bool learn_force = false, learn_quiet = false;
    learn->add_option("--config", learn_config, "run config file");
    learn->add_option("--out", learn_out, "output directory");
    learn->add_option("--resume", learn_resume, "resume from this run directory");
    learn->add_option("--seed-signal", learn_seed_signal, "signal/window seed");
    learn->add_option("--seed-dict", learn_seed_dict, "dictionary init seed");
    learn->add_option("--eta", learn_eta, "learning rate");
    learn->add_option("--min-srr-db", learn_srr, "SRR stop bound in dB");
    learn->add_option("--max-events-per-sample", learn_eps, "sparsity stop bound");
    learn->add_option("--delta-seconds", learn_delta, "evolution-rate lag");
    learn->add_option("--max-windows", learn_max_windows, "stop after N windows");
    learn->add_flag("--force", learn_force, "overwrite an existing run directory");
    learn->add_flag("--quiet", learn_quiet, "suppress progress output");

    // monitor
    auto* mon = app.add_subcommand("monitor", "recompute monitor reports for a run");
    std::string mon_run, mon_out;
    std::optional<double> mon_delta, mon_interval, mon_rate_window;
    mon->add_option("--run", mon_run, "run directory")->required();
    mon->add_option("--out", mon_out, "output CSV (default: <run>/monitor_report.csv)");
    mon->add_option("--delta-seconds", mon_delta, "evolution-rate lag");
    mon->add_option("--report-interval", mon_interval, "report interval in seconds");
    mon->add_option("--event-rate-window", mon_rate_window, "event-rate window in seconds");

    // report
    auto* rep = app.add_subcommand("report", "write figure-data files for a run");
    std::string rep_run;
    rep->add_option("--run", rep_run, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_preset, gen_seconds, gen_seed, gen_shaft, gen_rate, gen_out,
                           gen_manifest, gen_label);
        if (enc->parsed())
            return cmd_encode(enc_signal, enc_format, enc_rate, enc_dict, enc_stop,
                              enc_events, enc_residual);
        if (learn->parsed()) {
            LearnRunOptions opts;
            opts.max_windows = learn_max_windows;
            opts.force_overwrite = learn_force;
            if (!learn_quiet) opts.log = &std::cerr;
            if (!learn_resume.empty()) {
                resume_learn(learn_resume, opts);
                return 0;
            }
            RunConfig cfg;
            if (!learn_config.empty()) cfg = RunConfig::from_file(learn_config);
            if (!learn_out.empty()) cfg.out_dir = learn_out;
            if (learn_seed_signal) cfg.seed_signal = *learn_seed_signal;
            if (learn_seed_dict) cfg.seed_dict = *learn_seed_dict;
            if (learn_eta) cfg.learn.learning_rate = *learn_eta;
            if (learn_srr) cfg.stop.min_srr_db = *learn_srr;
            if (learn_eps) cfg.stop.max_events_per_sample = *learn_eps;
            if (learn_delta) cfg.monitor.delta_seconds = *learn_delta;
            if (cfg.out_dir.empty())
                throw DataError("learn: no output directory (--out or config [run] out)");
            run_learn(cfg, opts);
            return 0;
        }
        if (mon->parsed()) {
            RunPaths paths{mon_run};
            std::optional<MonitorConfig> override_cfg;
            if (mon_delta || mon_interval || mon_rate_window) {
                RunConfig cfg = RunConfig::from_file(paths.meta());
                MonitorConfig mc = cfg.monitor;
                if (mon_delta) mc.delta_seconds = *mon_delta;
                if (mon_interval) mc.report_interval_s = *mon_interval;
                if (mon_rate_window) mc.event_rate_window_s = *mon_rate_window;
                override_cfg = mc;
            }
            const auto out =
                mon_out.empty() ? (paths.monitor_report()).string() : mon_out;
            recompute_monitor(mon_run, override_cfg, out);
            return 0;
        }
        if (rep->parsed()) {
            write_report_files(rep_run);
            return 0;
        }
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
