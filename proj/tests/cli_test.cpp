// Copyright 2026 The dpdkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the command line binary. The binary path arrives
// via the DPDKIT_CLI_PATH compile definition.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "dpdkit/csv.hpp"
#include "test_util.hpp"

using dpdkit::testutil::TempDir;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(DPDKIT_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write_synth_config(const std::string& path, std::uint64_t seed) {
    std::ofstream out(path);
    out << "seed=" << seed << "\nn_pos=8\nn_neg=8\nwindows_min=8\nwindows_max=10\n"
        << "window_samples=10\nseparation=1.5\nnoise_sd=0.25\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: synth -> fit -> classify happy path, exit code 0") {
    TempDir dir("cli");
    write_synth_config(dir.file("synth.cfg"), 12);

    auto synth = run_cli("synth --config " + dir.file("synth.cfg") + " --out " + dir.file("data"));
    CHECK(synth.exit_code == 0);
    CHECK(synth.output.find("16 trials") != std::string::npos);

    auto fit = run_cli("fit --data " + dir.file("data") + " --model " + dir.file("model") +
                       " --d 3 --window-samples 10 --k 4 --pi 0.05 --lambda -0.2 --gamma 4");
    CHECK(fit.exit_code == 0);

    auto classify = run_cli("classify --model " + dir.file("model") + " --trial " +
                            dir.file("data/am_000.csv") + " --trace " + dir.file("trace.csv"));
    CHECK(classify.exit_code == 0);
    CHECK(classify.output.find("am_000 prediction=") != std::string::npos);
    CHECK(classify.output.find("no_evidence=") != std::string::npos);

    auto trace = dpdkit::csv::read_lines(dir.file("trace.csv"));
    CHECK(trace[0] == "trial_id,window_index,start_sample,delta,mask,class");
    CHECK(trace.size() >= 9);  // 8-10 windows
}

TEST_CASE("cli: cv writes the report set") {
    TempDir dir("clicv");
    write_synth_config(dir.file("synth.cfg"), 3);
    REQUIRE(run_cli("synth --config " + dir.file("synth.cfg") + " --out " + dir.file("data"))
                .exit_code == 0);
    auto cv = run_cli("cv --data " + dir.file("data") + " --out " + dir.file("rep") +
                      " --seed 5 --folds 3 --test-size 2 --inner-folds 3 --inner-test-size 2"
                      " --d 2 --window-samples 10 --grid-k 3 --grid-gamma 4 --grid-lambda -0.2,0");
    CHECK(cv.exit_code == 0);
    CHECK(cv.output.find("mean accuracy:") != std::string::npos);
    for (const char* name : {"report.txt", "metrics.csv", "roc.csv", "predictions.csv"})
        CHECK(!slurp(dir.file(std::string("rep/") + name)).empty());
}

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("synth").exit_code == 2);                       // missing required options
    CHECK(run_cli("fit --data /nope --model /tmp/x").exit_code == 2);  // missing dataset
}

TEST_CASE("cli: malformed input data exits 2 with a diagnostic") {
    TempDir dir("clibad");
    { std::ofstream out(dir.file("manifest.csv")); out << "file,label\nbroken.csv,AM\n"; }
    {
        std::ofstream out(dir.file("broken.csv"));
        out << "t,lw_x,lw_y,lw_z,rw_x,rw_y,rw_z,la_x,la_y,la_z,ra_x,ra_y,ra_z\n";
        out << "0,1,2,oops,4,5,6,7,8,9,10,11,12\n";
    }
    auto r = run_cli("fit --data " + dir.str() + " --model " + dir.file("model"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error") != std::string::npos);
    CHECK(r.output.find("broken.csv") != std::string::npos);
}

TEST_CASE("cli: fit rejects single-class datasets and unlabelled trials") {
    TempDir dir("clione");
    write_synth_config(dir.file("synth.cfg"), 9);
    REQUIRE(run_cli("synth --config " + dir.file("synth.cfg") + " --out " + dir.file("data"))
                .exit_code == 0);
    // Strip the labels of the td trials out of the manifest.
    auto lines = dpdkit::csv::read_lines(dir.file("data/manifest.csv"));
    {
        std::ofstream out(dir.file("data/manifest.csv"), std::ios::trunc);
        for (const auto& line : lines)
            if (line.rfind("td_", 0) != 0) out << line << "\n";
    }
    auto r = run_cli("fit --data " + dir.file("data") + " --model " + dir.file("model") +
                     " --d 2 --window-samples 10");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli: same-seed synth runs are byte-identical, different seeds differ") {
    TempDir dir("cliseed");
    write_synth_config(dir.file("synth.cfg"), 31);
    REQUIRE(run_cli("synth --config " + dir.file("synth.cfg") + " --out " + dir.file("a")).exit_code == 0);
    REQUIRE(run_cli("synth --config " + dir.file("synth.cfg") + " --out " + dir.file("b")).exit_code == 0);
    REQUIRE(run_cli("synth --config " + dir.file("synth.cfg") + " --seed 32 --out " + dir.file("c"))
                .exit_code == 0);
    CHECK(slurp(dir.file("a/am_000.csv")) == slurp(dir.file("b/am_000.csv")));
    CHECK(slurp(dir.file("a/am_000.csv")) != slurp(dir.file("c/am_000.csv")));
}
