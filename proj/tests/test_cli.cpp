#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "headway/cli.hpp"
#include "headway/synth.hpp"
#include "headway/trip_data.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using namespace headway;

namespace {

struct CliResult {
    int status = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("headway_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out);
    out << content;
}

} // namespace

TEST_CASE("usage errors exit 2 with usage text") {
    const CliResult bad = run_cli({"frobnicate"});
    CHECK(bad.status == 2);
    CHECK(bad.err.find("Usage:") != std::string::npos);

    const CliResult none = run_cli({});
    CHECK(none.status == 2);

    const CliResult help = run_cli({"--help"});
    CHECK(help.status == 0);
    CHECK(help.out.find("Subcommands") != std::string::npos);

    // synth requires an explicit seed
    const CliResult seedless = run_cli({"synth", "--out", "/tmp/x.csv"});
    CHECK(seedless.status == 2);
    CHECK(seedless.err.find("--seed") != std::string::npos);
}

TEST_CASE("convert maps pulse widths to meters") {
    const fs::path dir = fresh_dir("convert");
    spit(dir / "pulses.txt", "7740\n1000\n0\n");

    const CliResult to_stdout = run_cli({"convert", (dir / "pulses.txt").string()});
    CHECK(to_stdout.status == 0);
    CHECK(to_stdout.out == "7.74\n1\n0\n");

    const CliResult to_file = run_cli({"convert", (dir / "pulses.txt").string(),
                                       "--out", (dir / "d.txt").string()});
    CHECK(to_file.status == 0);
    CHECK(slurp(dir / "d.txt") == "7.74\n1\n0\n");

    spit(dir / "bad.txt", "7740\nbogus\n");
    const CliResult bad = run_cli({"convert", (dir / "bad.txt").string()});
    CHECK(bad.status == 1);
    CHECK(bad.err.find("line 2") != std::string::npos);

    spit(dir / "oor.txt", "90000\n");
    CHECK(run_cli({"convert", (dir / "oor.txt").string()}).status == 1);

    CHECK(run_cli({"convert", (dir / "missing.txt").string()}).status == 1);
}

TEST_CASE("synth writes a deterministic trace and truth sidecar") {
    const fs::path dir = fresh_dir("synth");
    const std::vector<std::string> args{
        "synth", "--seed", "9", "--out", (dir / "trace.csv").string()};
    REQUIRE(run_cli(args).status == 0);
    const std::string trace1 = slurp(dir / "trace.csv");
    const std::string truth1 = slurp(dir / "trace.truth.csv");

    REQUIRE(run_cli(args).status == 0);
    CHECK(slurp(dir / "trace.csv") == trace1);
    CHECK(slurp(dir / "trace.truth.csv") == truth1);

    const ParseResult parsed = parse_trips(trace1);
    REQUIRE(parsed.trips.size() == 1);
    CHECK(parsed.trips[0].readings.size() == 11); // 3 Hz, 26 m -> 10 m
    CHECK(truth1.rfind("Sample,Truth (m),Label\n", 0) == 0);

    // A different seed gives a different trace.
    REQUIRE(run_cli({"synth", "--seed", "10", "--out",
                     (dir / "other.csv").string()})
                .status == 0);
    CHECK(slurp(dir / "other.csv") != trace1);
}

TEST_CASE("filter annotates and splits accepted rows") {
    const fs::path dir = fresh_dir("filter");
    const Trip fixture =
        trace_to_trip(test::two_event_fixture_trace(), 3.0, 20.0, 1);

    spit(dir / "trip.csv", write_trip(fixture));
    const CliResult run = run_cli({"filter", (dir / "trip.csv").string(),
                                   "--window", "5", "--out",
                                   (dir / "annot.csv").string()});
    REQUIRE(run.status == 0);

    const std::string annotated = slurp(dir / "annot.csv");
    CHECK(annotated.find(",Classification\n") != std::string::npos);

    // The annotated verdict column matches the canonical fixture.
    const auto expected = test::two_event_fixture_expected();
    std::istringstream lines(annotated);
    std::string line;
    std::getline(lines, line); // header
    std::size_t i = 0, noise_rows = 0, event_rows = 0;
    while (std::getline(lines, line)) {
        const std::string verdict = line.substr(line.rfind(',') + 1);
        REQUIRE(i < expected.size());
        CHECK(verdict == to_string(expected[i]));
        if (verdict == "NOISE") ++noise_rows;
        if (verdict == "EVENT_CHANGE") ++event_rows;
        ++i;
    }
    CHECK(i == expected.size());
    CHECK(noise_rows == 4);
    CHECK(event_rows == 2);

    // The filtered-only file holds exactly the accepted rows.
    const ParseResult kept = parse_trips(slurp(dir / "annot.filtered.csv"));
    std::size_t accepted = 0;
    for (const Verdict v : expected) {
        if (v == Verdict::Valid || v == Verdict::EventChange) ++accepted;
    }
    REQUIRE(kept.trips.size() == 1);
    CHECK(kept.trips[0].readings.size() == accepted);

    // --keep-warmup restores the warmup rows.
    REQUIRE(run_cli({"filter", (dir / "trip.csv").string(), "--window", "5",
                     "--keep-warmup", "--out", (dir / "annot2.csv").string()})
                .status == 0);
    const ParseResult kept2 = parse_trips(slurp(dir / "annot2.filtered.csv"));
    std::size_t accepted2 = accepted;
    for (const Verdict v : expected) {
        if (v == Verdict::Warmup) ++accepted2;
    }
    CHECK(kept2.trips[0].readings.size() == accepted2);
}

TEST_CASE("evaluate prints the comparison table") {
    const fs::path dir = fresh_dir("evaluate");
    REQUIRE(run_cli({"synth", "--seed", "3", "--out",
                     (dir / "trace.csv").string()})
                .status == 0);

    const CliResult all = run_cli({"evaluate", (dir / "trace.csv").string(),
                                   (dir / "trace.truth.csv").string(),
                                   "--window", "6"});
    REQUIRE(all.status == 0);
    CHECK(all.out.find("ARIMA Model") != std::string::npos);
    for (const char* name :
         {"(0,0,0)", "(0,1,0)", "(0,1,1)", "(1,0,0)", "(1,1,0)", "(0,2,1)"}) {
        CHECK(all.out.find(name) != std::string::npos);
    }

    const CliResult one = run_cli({"evaluate", (dir / "trace.csv").string(),
                                   (dir / "trace.truth.csv").string(),
                                   "--window", "6", "--order", "0,1,1"});
    REQUIRE(one.status == 0);
    CHECK(one.out.find("(0,1,1)") != std::string::npos);
    CHECK(one.out.find("(0,1,0)") == std::string::npos);

    // Mismatched truth length is a data error.
    spit(dir / "short.truth.csv", "Sample,Truth (m),Label\n0,26,CLEAN\n");
    CHECK(run_cli({"evaluate", (dir / "trace.csv").string(),
                   (dir / "short.truth.csv").string()})
              .status == 1);
}

TEST_CASE("plot emits a deterministic standalone svg") {
    const fs::path dir = fresh_dir("plot");
    const Trip fixture =
        trace_to_trip(test::two_event_fixture_trace(), 3.0, 20.0, 1);
    spit(dir / "trip.csv", write_trip(fixture));

    const std::vector<std::string> args{
        "plot", (dir / "trip.csv").string(), "--window", "5", "--out",
        (dir / "chart.svg").string()};
    REQUIRE(run_cli(args).status == 0);
    const std::string svg1 = slurp(dir / "chart.svg");
    REQUIRE(run_cli(args).status == 0);
    CHECK(slurp(dir / "chart.svg") == svg1);

    CHECK(svg1.rfind("<svg", 0) == 0);
    CHECK(svg1.find(">raw</text>") != std::string::npos);
    CHECK(svg1.find(">predicted</text>") != std::string::npos);
    CHECK(svg1.find(">filtered</text>") != std::string::npos);
}
