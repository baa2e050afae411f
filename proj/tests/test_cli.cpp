#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sdc/sdc.hpp"

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run(const std::string& args, bool with_stderr = false, const std::string& input = "") {
    std::string cmd = std::string(SDC_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    if (!input.empty()) cmd = "printf '%s' '" + input + "' | " + cmd;
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(SDC_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(CliWenum, PaperEnumerators) {
    EXPECT_EQ(run("wenum " + data("h8.json") + " --kind hwe").out, "x^8 + 14x^4y^4 + y^8\n");
    EXPECT_EQ(run("wenum " + data("i2.json") + " --kind cwe").out, "x0^2 + x1^2\n");
    EXPECT_EQ(run("wenum " + data("g24.json") + " --kind hwe").out, "x^24 + 759x^16y^8 + 2576x^12y^12 + 759x^8y^16 + y^24\n");
}

TEST(CliWenum, KindsAndGenus) {
    EXPECT_EQ(run("wenum " + data("i2.json") + " --kind swe").out, "x^2 + y^2\n");
    // codeword pairs of i2: (00,00), (00,11), (11,00), (11,11)
    EXPECT_EQ(run("wenum " + data("i2.json") + " --genus 2").out, "x(0,0)^2 + x(0,1)^2 + x(1,0)^2 + x(1,1)^2\n");
    EXPECT_EQ(run("wenum " + data("i2.json") + " --genus 2 --partition '0|1,2,3'").out, "x^2 + 3y^2\n");
    const CliResult j = run("--json wenum " + data("h8.json") + " --kind hwe");
    EXPECT_EQ(j.code, 0);
    const auto doc = sdc::parse_json(j.out);
    EXPECT_EQ(doc["kind"], "polynomial");
    EXPECT_EQ(sdc::read_polynomial(doc).to_string(), "x^8 + 14x^4y^4 + y^8");
}

TEST(CliWenum, ExitCodes) {
    EXPECT_EQ(run("wenum " + data("g24.json") + " --genus 3").code, 3);  // |C|^3 tuples exceed the budget
    EXPECT_EQ(run("wenum /nonexistent.json").code, 2);
    EXPECT_EQ(run("wenum " + data("h8.json") + " --kind nope").code, 2);
    const CliResult r = run("wenum - --kind hwe", true, R"({"form_ring": "2_I", "length": 2, "generators": [[1, 2]]})");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("/generators/0/1"), std::string::npos) << r.out;
}

TEST(CliDual, MacWilliams) {
    EXPECT_EQ(run("dual --poly 'x^3 + y^3' --q 2 --size 2").out, "x^3 + 3xy^2\n");
    const CliResult r = run("dual " + data("h8.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("hwe: x^8 + 14x^4y^4 + y^8"), std::string::npos);
    EXPECT_NE(r.out.find("size: 16"), std::string::npos);
}

TEST(CliCwgroup, Orders) {
    EXPECT_EQ(run("cwgroup --preset 2_II --order-only").out, "192\n");
    EXPECT_EQ(run("cwgroup --preset 2_I --genus 2 --order-only").out, "2304\n");
    EXPECT_EQ(run("cwgroup --preset 2_I").out, "dimension 2\norder 16\n");
    EXPECT_EQ(run("cwgroup --form-ring " + data("z4_type2.json") + " --order-only").out, "1536\n");
    EXPECT_EQ(run("cwgroup --form-ring " + data("f9_hermitian.json") + " --order-only").out, "192\n");
    EXPECT_EQ(run("cwgroup --preset 9_H --partition '0|1,3,5,7|2,4,6,8' --order-only").out, "48\n");
}

TEST(CliCwgroup, EmitGenerators) {
    const CliResult r = run("--json cwgroup --preset 9_H --emit-generators");
    ASSERT_EQ(r.code, 0);
    const auto gens = sdc::read_group_generators(sdc::parse_json(r.out));
    const auto expect = sdc::clifford_weil_generators(sdc::preset("9_H"));
    ASSERT_EQ(gens.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(gens[i].label, expect[i].label);
        EXPECT_EQ(gens[i].matrix, expect[i].matrix);
    }
}

TEST(CliCwgroup, CapAndIllegalCollapse) {
    const CliResult r = run("cwgroup --preset 9_H --cap 100", true);
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("partial count 101"), std::string::npos) << r.out;
    const CliResult c = run("cwgroup --preset 9_H --partition '0|1,2,3,4,5,6,7,8'", true);
    EXPECT_EQ(c.code, 1);
    EXPECT_NE(c.out.find("generator M2"), std::string::npos) << c.out;
}

TEST(CliMolien, Series) {
    EXPECT_EQ(run("molien --preset 4_II_Z").out, "(1 + t^8 + 2t^16 + 2t^24 + t^32 + t^40)/((1 - t^8)^3(1 - t^24))\n");
    EXPECT_EQ(run("molien --preset 2_I").out, "1/((1 - t^2)(1 - t^8))\n");
    EXPECT_EQ(run("molien --group " + data("trivial_group.json")).out, "1/(1 - t)\n");
    EXPECT_EQ(run("molien --group " + data("clifford_2d.json")).out, "1/((1 - t^8)(1 - t^24))\n");
    EXPECT_EQ(run("molien --preset 2_I --truncate 8").out, "1, 0, 1, 0, 1, 0, 1, 0, 2\n");
}

TEST(CliDecompose, Gleason) {
    EXPECT_EQ(run("decompose --poly 'x^8 + 14x^4y^4 + y^8' --type I").out, "f^4 - 4g\n");
    EXPECT_EQ(run("decompose --poly 'x^24 + 759x^16y^8 + 2576x^12y^12 + 759x^8y^16 + y^24' --type II").out, "f^3 - 42g\n");
    EXPECT_EQ(run("decompose --poly 'x^4 + 8xy^3' --type III").out, "f\n");
    EXPECT_EQ(run("decompose --poly 'x^3 + y^3' --type I").code, 5);
    EXPECT_EQ(run("decompose --poly 'x^3 + y^' --type I").code, 2);
}

TEST(CliVerifySpan, Reports) {
    const CliResult n8 = run("verify-span --preset 2_I --length 8 --genus 1");
    EXPECT_EQ(n8.code, 0);
    EXPECT_NE(n8.out.find("pass, rank 2 = molien 2"), std::string::npos) << n8.out;
    const CliResult n2 = run("verify-span --preset 2_I --length 2");
    EXPECT_NE(n2.out.find("pass, rank 1 = molien 1"), std::string::npos) << n2.out;
    const CliResult n12 = run("--json verify-span --preset 2_I --length 12");
    ASSERT_EQ(n12.code, 0);
    const auto doc = sdc::parse_json(n12.out);
    EXPECT_EQ(doc["rank"], 2);
    EXPECT_EQ(doc["molien"], 2);
    EXPECT_EQ(doc["classes"], 3);
    EXPECT_EQ(doc["codes"], 75735);
    EXPECT_EQ(doc["pass"], true);
    EXPECT_EQ(run("verify-span --preset 9_H --length 4").code, 6);
}

TEST(CliQr, PaperLayout) {
    EXPECT_EQ(run("qr-code --p 7").out, slurp(std::string(SDC_GOLDEN_DIR) + "/qr7_rows.txt"));
    EXPECT_EQ(run("qr-code --p 23").out, slurp(std::string(SDC_GOLDEN_DIR) + "/qr23_rows.txt"));
    EXPECT_EQ(run("qr-code --p 5").code, 2);
}

TEST(CliPresets, ExportRoundTrip) {
    const CliResult list = run("presets list");
    ASSERT_EQ(list.code, 0);
    const std::string dir = ::testing::TempDir();
    for (const auto& name : sdc::preset_names()) {
        EXPECT_NE(list.out.find(name + "\t"), std::string::npos);
        const std::string file = dir + "/sdc_export_" + name + ".json";
        ASSERT_EQ(run("presets export " + name + " -o " + file).code, 0);
        const CliResult a = run("--json cwgroup --form-ring " + file + " --emit-generators");
        const CliResult b = run("--json cwgroup --preset " + name + " --emit-generators");
        ASSERT_EQ(a.code, 0) << name;
        EXPECT_EQ(a.out, b.out) << name;
    }
}

TEST(CliJobs, OutputBytesDoNotDependOnJobs) {
    for (const std::string args : {"--json cwgroup --preset 2_I --genus 2 --emit-generators",
                                   "--json molien --preset 4_II_Z --truncate 16 --exact",
                                   "--json verify-span --preset 2_I --length 10"}) {
        const CliResult one = run("--jobs 1 " + args), three = run("--jobs 3 " + args);
        EXPECT_EQ(one.code, 0) << args;
        EXPECT_EQ(one.out, three.out) << args;
    }
}
