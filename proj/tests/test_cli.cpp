#include "cli.hpp"

#include "dercat/complex.hpp"
#include "dercat/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace dercat;
using cli::Job;
using cli::OutputFormat;
using cli::Report;

namespace {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("dercat_cli_" + std::to_string(counter_++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

const char* kStructureSheafP2 = R"({"n": 2, "terms": {"0": [0]}, "diffs": {}})";
const char* kTwistP2 = R"({"n": 2, "terms": {"0": [-3]}, "diffs": {}})";
const char* kPointP1 = R"({"n": 1, "terms": {"-1": [-1], "0": [0]}, "diffs": {"-1": [["x1"]]}})";

Job job(std::string command, std::vector<std::string> inputs) {
    Job j;
    j.command = std::move(command);
    j.inputs = std::move(inputs);
    return j;
}

}  // namespace

TEST_CASE("every command is registered") {
    CHECK(cli::commands().size() == 15);
}

TEST_CASE("ext and cohomology in text mode") {
    TempDir dir;
    const std::string o = dir.write("o.json", kStructureSheafP2);
    const std::string t = dir.write("t.json", kTwistP2);
    Report r = cli::run(job("ext", {o, o}));
    CHECK(r.exit_code == cli::kOk);
    CHECK(r.out == "Ext^0 = 1\n");
    r = cli::run(job("cohomology", {t}));
    CHECK(r.exit_code == cli::kOk);
    CHECK(r.out == "H^2 = 1\n");
    Job over_fp = job("cohomology", {t});
    over_fp.field = "fp:7";
    CHECK(cli::run(over_fp).out == "H^2 = 1\n");
}

TEST_CASE("structured output carries the full job") {
    TempDir dir;
    const std::string p = dir.write("p.json", kPointP1);
    Job j = job("point-check", {p});
    j.output = OutputFormat::structured;
    j.seed = 9;
    const Report r = cli::run(j);
    REQUIRE(r.exit_code == cli::kOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["operation"] == "point-check");
    CHECK(doc["inputs"][0]["path"] == p);
    CHECK(doc["inputs"][0]["document"]["n"] == 1);
    CHECK(doc["options"]["field"] == "q");
    CHECK(doc["seed"] == 9);
    CHECK(doc["result"]["serre_fixed"] == "yes");
    CHECK(doc["result"]["self_ext"] == nlohmann::json{{"0", 1}, {"1", 1}});
    // identical jobs give identical bytes
    CHECK(cli::run(j).out == r.out);
}

TEST_CASE("reduce output parses back into an equivalent window complex") {
    TempDir dir;
    const std::string t = dir.write("t.json", kTwistP2);
    const Report r = cli::run(job("reduce", {t}));
    REQUIRE(r.exit_code == cli::kOk);
    const LineBundleComplex w = parse_complex(r.out, "stdout");
    CHECK(validate(w).ok);
    CHECK(in_window(w));
    const std::string back = dir.write("w.json", r.out);
    CHECK(cli::run(job("cohomology", {back})).out == "H^2 = 1\n");
}

TEST_CASE("numeric commands") {
    Job h = job("hochschild", {});
    h.pn = 2;
    const Report hr = cli::run(h);
    CHECK(hr.exit_code == cli::kOk);
    CHECK(hr.out.find("HH^2 = 10") != std::string::npos);
    const Report fm = cli::run(job("fm-elliptic", {"1", "-3"}));
    CHECK(fm.exit_code == cli::kOk);
    CHECK(fm.out.find("(-3, -1)") != std::string::npos);
    Job k = job("canonical-ring", {});
    k.pn = 2;
    k.from = 0;
    k.to = 2;
    CHECK(cli::run(k).exit_code == cli::kOk);
}

TEST_CASE("exit codes") {
    TempDir dir;
    SUBCASE("usage") {
        CHECK(cli::run(job("nonsense", {})).exit_code == cli::kUsage);
        CHECK(cli::run(job("ext", {dir.write("o.json", kStructureSheafP2)})).exit_code == cli::kUsage);
        CHECK(cli::run(job("cohomology", {"/nonexistent/file.json"})).exit_code == cli::kUsage);
        Job bad_field = job("cohomology", {dir.write("o.json", kStructureSheafP2)});
        bad_field.field = "fp:8";
        CHECK(cli::run(bad_field).exit_code == cli::kUsage);
    }
    SUBCASE("parse errors cite the location") {
        const std::string broken = dir.write("broken.json", "{\"n\": 2,\n  \"terms\": [}\n");
        const Report r = cli::run(job("cohomology", {broken}));
        CHECK(r.exit_code == cli::kParse);
        CHECK(r.err.find("broken.json:2:") != std::string::npos);

        const std::string field =
            dir.write("field.json", R"({"n": 1, "terms": {"0": [0], "1": [1]}, "diffs": {"0": [["y7"]]}})");
        const Report rf = cli::run(job("cohomology", {field}));
        CHECK(rf.exit_code == cli::kParse);
        CHECK(rf.err.find("diffs") != std::string::npos);
    }
    SUBCASE("validation") {
        const std::string bad = dir.write(
            "bad.json",
            R"({"n": 1, "terms": {"-2": [-2], "-1": [-1], "0": [0]}, "diffs": {"-2": [["x0"]], "-1": [["x0"]]}})");
        const Report v = cli::run(job("validate", {bad}));
        CHECK(v.exit_code == cli::kValidation);
        CHECK(v.out.find("invalid") != std::string::npos);
        CHECK(cli::run(job("cohomology", {bad})).exit_code == cli::kValidation);
        CHECK(cli::run(job("validate", {dir.write("p.json", kPointP1)})).exit_code == cli::kOk);
    }
    SUBCASE("resource") {
        Job j = job("reduce", {dir.write("big.json", R"({"n": 3, "terms": {"0": [5]}, "diffs": {}})")});
        j.max_terms = 40;
        const Report r = cli::run(j);
        CHECK(r.exit_code == cli::kResource);
        CHECK_FALSE(r.err.empty());
    }
}
