#include "headway/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "headway/errors.hpp"
#include "headway/headway_filter.hpp"
#include "headway/metrics.hpp"
#include "headway/svg_plot.hpp"
#include "headway/synth.hpp"
#include "headway/trip_data.hpp"

namespace headway::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

std::string sibling_path(const std::string& out, const char* tag) {
    std::filesystem::path p(out);
    const std::string ext = p.extension().string();
    p.replace_extension();
    return p.string() + tag + (ext.empty() ? ".csv" : ext);
}

std::string format_distance(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct FilterFlags {
    std::size_t window = 30;
    double th1 = 2.0;
    double th2 = 1.0;
    std::size_t lookahead = 5;
    std::string order = "0,1,1";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--window", window, "Prediction window size N");
        cmd->add_option("--th1", th1, "Stage-1 prediction threshold (m)");
        cmd->add_option("--th2", th2, "Stage-2 mean threshold (m)");
        cmd->add_option("--lookahead", lookahead,
                        "Readings averaged by stage 2, including M");
        cmd->add_option("--order", order, "Gate model order p,d,q");
    }

    FilterConfig to_config() const {
        FilterConfig cfg;
        cfg.window_size = window;
        cfg.th1 = th1;
        cfg.th2 = th2;
        cfg.lookahead = lookahead;
        cfg.order = ModelOrder::parse(order);
        cfg.validate();
        return cfg;
    }
};

void report_warnings(const ParseResult& parsed, std::ostream& err) {
    for (const ParseWarning& w : parsed.warnings) {
        err << "warning: line " << w.line << ": " << w.message << "\n";
    }
}

int run_convert(const std::string& input, const std::string& out_path,
                std::ostream& out) {
    const std::string text = read_file(input);
    std::string result;
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string::npos)
                                    ? std::string_view(text).substr(pos)
                                    : std::string_view(text).substr(pos, eol - pos);
        pos = (eol == std::string::npos) ? text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (line.empty() && pos >= text.size()) break;
        double width = 0.0;
        auto res = std::from_chars(line.data(), line.data() + line.size(), width);
        if (res.ec != std::errc{} || res.ptr != line.data() + line.size()) {
            throw Error("line " + std::to_string(line_no) +
                        ": cannot parse pulse width '" + std::string(line) + "'");
        }
        double meters;
        try {
            meters = pulse_to_distance(PulseSample{width});
        } catch (const OutOfRange& e) {
            throw Error("line " + std::to_string(line_no) + ": " + e.what());
        }
        result += format_distance(meters);
        result += '\n';
    }
    if (out_path.empty()) {
        out << result;
    } else {
        write_file(out_path, result);
    }
    return 0;
}

int run_synth(std::uint64_t seed, const ApproachConfig& approach,
              double sigma, double weak_prob, double spike_prob,
              const std::string& out_path) {
    NoiseConfig noise;
    noise.gaussian_sigma = sigma;
    noise.weak_signal_prob = weak_prob;
    noise.env_spike_prob = spike_prob;
    noise.seed = seed;

    const auto samples = gen_approach(approach);
    std::vector<double> truth;
    truth.reserve(samples.size());
    for (const TimedGap& s : samples) truth.push_back(s.gap_m);

    const LabeledTrace trace = inject_noise(truth, noise);
    const Trip trip = trace_to_trip(trace.observed, approach.sample_rate_hz,
                                    approach.speed_mph, 1);
    write_file(out_path, write_trip(trip));
    write_file(sibling_path(out_path, ".truth"),
               write_truth_csv(trace.truth, trace.labels));
    return 0;
}

int run_filter(const std::string& input, const FilterConfig& cfg,
               bool keep_warmup, const std::string& out_path,
               std::ostream& err) {
    const ParseResult parsed = parse_trips(read_file(input));
    report_warnings(parsed, err);

    std::string annotated{kTripCsvHeader};
    annotated += ",Classification\n";
    std::vector<Trip> kept_trips;
    for (const Trip& trip : parsed.trips) {
        const auto verdicts = filter_trip(trip, cfg);
        std::vector<Verdict> plain;
        plain.reserve(verdicts.size());
        for (const Classification& c : verdicts) plain.push_back(c.verdict);
        const std::string doc = write_trip(trip, plain);
        annotated.append(doc, doc.find('\n') + 1, std::string::npos);

        Trip kept{trip.trip_id, {}};
        for (std::size_t i = 0; i < trip.readings.size(); ++i) {
            const Verdict v = verdicts[i].verdict;
            const bool accept = v == Verdict::Valid ||
                                v == Verdict::EventChange ||
                                (keep_warmup && v == Verdict::Warmup);
            if (accept) kept.readings.push_back(trip.readings[i]);
        }
        kept_trips.push_back(std::move(kept));
    }
    write_file(out_path, annotated);
    write_file(sibling_path(out_path, ".filtered"), write_trips(kept_trips));
    return 0;
}

std::vector<double> single_trip_distances(const ParseResult& parsed) {
    if (parsed.trips.size() != 1) {
        throw Error("expected exactly one trip in the input, found " +
                    std::to_string(parsed.trips.size()));
    }
    std::vector<double> xs;
    xs.reserve(parsed.trips[0].readings.size());
    for (const RawReading& r : parsed.trips[0].readings) {
        xs.push_back(r.distance_m);
    }
    return xs;
}

int run_evaluate(const std::string& raw_path, const std::string& truth_path,
                 const FilterFlags& flags,
                 const std::vector<std::string>& order_flags, std::ostream& out,
                 std::ostream& err) {
    const ParseResult parsed = parse_trips(read_file(raw_path));
    report_warnings(parsed, err);
    const std::vector<double> raw = single_trip_distances(parsed);
    const TruthSidecar sidecar = parse_truth_csv(read_file(truth_path));
    if (sidecar.truth.size() != raw.size()) {
        throw Error("truth sidecar has " + std::to_string(sidecar.truth.size()) +
                    " samples but the trip has " + std::to_string(raw.size()));
    }

    std::vector<ModelOrder> orders;
    if (order_flags.empty()) {
        const auto& all = supported_orders();
        orders.assign(all.begin(), all.end());
    } else {
        for (const std::string& text : order_flags) {
            orders.push_back(ModelOrder::parse(text));
        }
    }

    FilterConfig cfg = flags.to_config();
    const ComparisonTable table = compare_models(sidecar.truth, raw, orders, cfg);
    out << format_comparison_table(table);
    return 0;
}

int run_plot(const std::string& input, const FilterConfig& cfg,
             const std::string& out_path, std::ostream& err) {
    const ParseResult parsed = parse_trips(read_file(input));
    report_warnings(parsed, err);
    const std::vector<double> raw = single_trip_distances(parsed);
    const auto verdicts = filter_series(raw, cfg);

    std::vector<std::pair<std::size_t, double>> predicted;
    std::vector<std::pair<std::size_t, double>> accepted;
    for (const Classification& c : verdicts) {
        if (c.predicted.has_value()) {
            predicted.emplace_back(c.reading_index, *c.predicted);
        }
        if (c.verdict == Verdict::Valid || c.verdict == Verdict::EventChange) {
            accepted.emplace_back(c.reading_index, raw[c.reading_index]);
        }
    }

    SvgChart chart("Headway filter, gate model " + cfg.order.to_string(),
                   "sample", "meters");
    chart.add_line("raw", raw, "#999999");
    chart.add_points("predicted", std::move(predicted), "#d62728");
    chart.add_points("filtered", std::move(accepted), "#1f77b4");
    write_file(out_path, chart.render());
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Vehicular headway capture pipeline: convert LIDAR pulse "
                 "widths, synthesize benchmark traces, filter noise with the "
                 "two-stage ARIMA/mean gate, evaluate gate models, plot runs"};
    app.name("headway");
    app.require_subcommand(1);

    // convert
    auto* convert = app.add_subcommand(
        "convert", "Pulse-width column file to distances in meters");
    std::string convert_in, convert_out;
    convert->add_option("input", convert_in, "File of pulse widths (us), one per line")
        ->required();
    convert->add_option("--out", convert_out, "Output path (default stdout)");

    // synth
    auto* synth = app.add_subcommand(
        "synth", "Synthesize a controlled-approach trace with labeled noise");
    std::uint64_t seed = 0;
    ApproachConfig approach;
    double sigma = 0.1, weak_prob = 0.02, spike_prob = 0.03;
    std::string synth_out;
    synth->add_option("--seed", seed, "Noise seed (required for reproducibility)")
        ->required();
    synth->add_option("--rate", approach.sample_rate_hz, "Log rate (Hz)");
    synth->add_option("--speed", approach.speed_mph, "Approach speed (mph)");
    synth->add_option("--start-gap", approach.start_gap_m, "First gap (m)");
    synth->add_option("--end-gap", approach.end_gap_m, "Stop gap (m)");
    synth->add_option("--sigma", sigma, "Gaussian jitter sigma (m)");
    synth->add_option("--weak-prob", weak_prob, "Weak-signal probability");
    synth->add_option("--spike-prob", spike_prob, "Environmental-spike probability");
    synth->add_option("--out", synth_out, "Trace CSV path; truth sidecar lands beside it")
        ->required();

    // filter
    auto* filter = app.add_subcommand(
        "filter", "Classify a trip CSV and write annotated and filtered copies");
    std::string filter_in, filter_out;
    FilterFlags filter_flags;
    bool keep_warmup = false;
    filter->add_option("input", filter_in, "Trip CSV")->required();
    filter_flags.add_to(filter);
    filter->add_flag("--keep-warmup", keep_warmup,
                     "Keep warmup rows in the filtered-only output");
    filter->add_option("--out", filter_out, "Annotated CSV path")->required();

    // evaluate
    auto* evaluate = app.add_subcommand(
        "evaluate", "Score gate models against a truth sidecar");
    std::string eval_raw, eval_truth;
    FilterFlags eval_flags;
    std::vector<std::string> eval_orders;
    evaluate->add_option("input", eval_raw, "Trip CSV")->required();
    evaluate->add_option("truth", eval_truth, "Truth sidecar CSV")->required();
    evaluate->add_option("--window", eval_flags.window, "Prediction window size N");
    evaluate->add_option("--th1", eval_flags.th1, "Stage-1 threshold (m)");
    evaluate->add_option("--th2", eval_flags.th2, "Stage-2 threshold (m)");
    evaluate->add_option("--lookahead", eval_flags.lookahead,
                         "Readings averaged by stage 2, including M");
    evaluate->add_option("--order", eval_orders,
                         "Gate order p,d,q (repeatable; default all six)");

    // plot
    auto* plot = app.add_subcommand(
        "plot", "Render raw/predicted/filtered series as a standalone SVG");
    std::string plot_in, plot_out;
    FilterFlags plot_flags;
    plot->add_option("input", plot_in, "Trip CSV")->required();
    plot_flags.add_to(plot);
    plot->add_option("--out", plot_out, "SVG path")->required();

    auto scope_help = [&]() -> std::string {
        const auto parsed_subs = app.get_subcommands();
        return parsed_subs.empty() ? app.help() : parsed_subs.front()->help();
    };
    // CLI11's vector overload consumes the arguments back to front.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << scope_help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << scope_help();
        return 2;
    }

    try {
        if (convert->parsed()) return run_convert(convert_in, convert_out, out);
        if (synth->parsed())
            return run_synth(seed, approach, sigma, weak_prob, spike_prob,
                             synth_out);
        if (filter->parsed())
            return run_filter(filter_in, filter_flags.to_config(), keep_warmup,
                              filter_out, err);
        if (evaluate->parsed())
            return run_evaluate(eval_raw, eval_truth, eval_flags, eval_orders,
                                out, err);
        if (plot->parsed())
            return run_plot(plot_in, plot_flags.to_config(), plot_out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace headway::cli
