#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmb/error.hpp"
#include "qmb/runner/config.hpp"
#include "qmb/runner/csv.hpp"
#include "qmb/runner/experiments.hpp"

using namespace qmb::runner;
namespace fs = std::filesystem;

namespace {

qmb::ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const qmb::Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return qmb::ErrorKind::invariant;
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("qmb-test-config-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(NList, Forms) {
    EXPECT_EQ(parse_n_list("3,1,2"), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(parse_n_list("2..5"), (std::vector<int>{2, 3, 4, 5}));
    EXPECT_EQ(parse_n_list("3..11:odd"), (std::vector<int>{3, 5, 7, 9, 11}));
    EXPECT_EQ(parse_n_list("3..10:even"), (std::vector<int>{4, 6, 8, 10}));
    EXPECT_EQ(parse_n_list("3..64:pow2"), (std::vector<int>{4, 8, 16, 32, 64}));
    EXPECT_EQ(parse_n_list("4..1024:log10"), (std::vector<int>{4, 7, 14, 25, 47, 87, 161, 299, 553, 1024}));
    EXPECT_EQ(parse_n_list("3..41:odd").size(), 20u);
}

TEST(NList, Rejects) {
    for (const char* bad : {"", "a", "5..2", "0,1", "1..8:prime", "1..8:log1", "1,,2"})
        EXPECT_EQ(kind_of([&] { parse_n_list(bad); }), qmb::ErrorKind::config) << bad;
}

TEST(ConfigText, ParsesAndRejects) {
    const auto m = parse_config_text("# comment\n trials = 10 \n\nstrategy=ghz # trailing\n");
    EXPECT_EQ(m.at("trials"), "10");
    EXPECT_EQ(m.at("strategy"), "ghz");
    EXPECT_EQ(kind_of([] { parse_config_text("novalue\n"); }), qmb::ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_config_text("a=1\na=2\n"); }), qmb::ErrorKind::config);
}

TEST(Resolve, DefaultsAndPrecedence) {
    const auto dir = scratch("precedence");
    std::ofstream(dir / "c.cfg") << "experiment = ghz-scaling\ntrials = 50\nrepetitions = 7\nseed = 11\n";
    ConfigSources src;
    src.file = dir / "c.cfg";
    src.flags["trials"] = "60";
    src.env_seed = "5";
    auto cfg = resolve_config("ghz-scaling", src);
    EXPECT_EQ(cfg.integer("trials"), 60);
    EXPECT_EQ(cfg.integer("repetitions"), 7);
    EXPECT_EQ(cfg.text("n_ghz"), "2..64:pow2");
    EXPECT_EQ(cfg.seed, 11u);
    src.seed = "12";
    EXPECT_EQ(resolve_config("ghz-scaling", src).seed, 12u);
    ConfigSources env_only;
    env_only.env_seed = "5";
    EXPECT_EQ(resolve_config("ghz-scaling", env_only).seed, 5u);
    EXPECT_EQ(resolve_config("ghz-scaling", {}).seed, 0u);
}

TEST(Resolve, StrictKeys) {
    ConfigSources src;
    src.flags["bogus"] = "1";
    EXPECT_EQ(kind_of([&] { resolve_config("timing-scaling", src); }), qmb::ErrorKind::config);
    EXPECT_EQ(kind_of([] { resolve_config("no-such-experiment", {}); }), qmb::ErrorKind::usage);
    ConfigSources seed;
    seed.seed = "-3";
    EXPECT_EQ(kind_of([&] { resolve_config("timing-scaling", seed); }), qmb::ErrorKind::config);
    const auto dir = scratch("wrong-experiment");
    std::ofstream(dir / "c.cfg") << "experiment = limits-table\n";
    ConfigSources file;
    file.file = dir / "c.cfg";
    EXPECT_EQ(kind_of([&] { resolve_config("timing-scaling", file); }), qmb::ErrorKind::config);
}

TEST(Csv, FormatsAndQuotes) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    CsvTable t({"a", "b"});
    t.add_row({"x,y", "2"});
    t.add_footer("fit slope=1");
    EXPECT_EQ(t.str(), "a,b\n\"x,y\",2\n# fit slope=1\n");
    EXPECT_THROW(t.add_row({"1"}), qmb::Error);
}

TEST(Csv, AtomicWriteLeavesNoTemporary) {
    const auto dir = scratch("atomic");
    write_atomically(dir / "x.csv", "hello\n");
    write_atomically(dir / "x.csv", "again\n");
    EXPECT_EQ(slurp(dir / "x.csv"), "again\n");
    EXPECT_FALSE(fs::exists(dir / "x.csv.tmp"));
}

TEST(Run, EveryExperimentDeterministicWithHeader) {
    for (const auto& name : experiment_names()) {
        ConfigSources src;
        src.seed = "3";
        if (name == "mz-scaling") src.flags["n"] = "4..64:pow2";
        if (name == "ghz-scaling" || name == "timing-scaling") src.flags["trials"] = "200";
        if (name == "pauli-discrimination") src.flags["trials"] = "500";
        const auto cfg = resolve_config(name, src);
        const auto a = compute(cfg).table.str(), b = compute(cfg).table.str();
        EXPECT_EQ(a, b) << name;
        EXPECT_NE(a.find('\n'), std::string::npos);
        EXPECT_NE(a.substr(0, a.find('\n')).find(','), std::string::npos) << name;
    }
}

TEST(Run, WritesArtifactsAndReplayableManifest) {
    const auto dir = scratch("artifacts");
    ConfigSources src;
    src.output_dir = dir.string();
    src.seed = "9";
    src.flags["trials"] = "300";
    const auto cfg = resolve_config("timing-scaling", src);
    const auto paths = run(cfg);
    EXPECT_TRUE(fs::exists(paths.csv));
    EXPECT_NE(slurp(paths.svg).find("<svg"), std::string::npos);
    ConfigSources replay;
    replay.file = paths.manifest;
    const auto again = resolve_config("timing-scaling", replay);
    EXPECT_EQ(again.params, cfg.params);
    EXPECT_EQ(again.seed, cfg.seed);
    EXPECT_EQ(compute(again).table.str(), slurp(paths.csv));
}

TEST(Run, LimitsTableMaxOps) {
    ConfigSources src;
    src.flags["R"] = "1";
    src.flags["T"] = "1";
    const auto out = compute(resolve_config("limits-table", src));
    bool found = false;
    for (const auto& row : out.table.rows())
        if (row[0] == "max_ops") {
            found = true;
            EXPECT_NEAR(std::stod(row[3]) / 3.65e77, 1.0, 1e-3);
        }
    EXPECT_TRUE(found);
}

TEST(Run, ContractiveBeatsSqlInTrajectory) {
    const auto out = compute(resolve_config("sql-trajectory", {}));
    int naive = 0, contractive = 0;
    for (const auto& row : out.table.rows()) {
        if (row[7] != "true") continue;
        naive += row[0] == "naive";
        contractive += row[0] == "contractive";
    }
    EXPECT_EQ(naive, 0);
    EXPECT_GT(contractive, 0);
}
