#include "relident/cli/model_document.hpp"
#include "relident/cli/pipeline.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace relident;

namespace {

const std::filesystem::path models = RELIDENT_MODELS_DIR;

RunConfig config_for(Command c, const std::string& model, OutputFormat f = OutputFormat::Json) {
    RunConfig cfg;
    cfg.command = c;
    cfg.model_path = models / model;
    cfg.format = f;
    return cfg;
}

std::filesystem::path scratch_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("relident_test_" + name);
    std::ofstream(path) << text;
    return path;
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(RELIDENT_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("tree json has parameters, lists, undetermined and stats") {
    const auto r = run_pipeline(config_for(Command::Tree, "batch_reactor.json"));
    REQUIRE(r.exit_code == exit_code::ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["parameters"] == nlohmann::json({"mu", "K_S", "Y", "m"}));
    CHECK(j["lists"].size() == 3);
    CHECK(j["lists"][0][0] == nlohmann::json({{"name", "mu"}, {"identifiable", true}}));
    CHECK(j["undetermined"].empty());
    CHECK(j["stats"].contains("emptiness_tests"));
    CHECK(j["stats"].contains("cache_hits"));
    CHECK(j["stats"]["bound"] == 28);
}

TEST_CASE("dot output is a shared-prefix digraph") {
    const auto r = run_pipeline(config_for(Command::Tree, "batch_reactor.json", OutputFormat::Dot));
    REQUIRE(r.exit_code == exit_code::ok);
    CHECK(r.out.rfind("digraph identifiability {", 0) == 0);
    CHECK(r.out.find("label=\"/K_S\", style=dashed") != std::string::npos);
    // mu is shared by all three lists: one node.
    std::size_t count = 0;
    for (auto pos = r.out.find("label=\"mu\""); pos != std::string::npos; pos = r.out.find("label=\"mu\"", pos + 1)) ++count;
    CHECK(count == 1);
}

TEST_CASE("summary and io-polys json") {
    const auto io = nlohmann::json::parse(run_pipeline(config_for(Command::IoPolys, "batch_reactor.json")).out);
    CHECK(io["io_polynomials"].size() == 1);
    CHECK(io["io_polynomials"][0]["order"] == 2);
    const auto s = nlohmann::json::parse(run_pipeline(config_for(Command::Summary, "batch_reactor.json")).out);
    CHECK(s["raw_count"] == 4);
    CHECK(s["representative_count"] == 4);
}

TEST_CASE("witness explains a non-identifiable parameter") {
    auto cfg = config_for(Command::Witness, "batch_reactor.json");
    cfg.known = {"mu"};
    cfg.target = "Y";
    const auto r = run_pipeline(cfg);
    REQUIRE(r.exit_code == exit_code::ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "NotIdentifiable");
    CHECK(j["witness"]["theta"]["mu"] == j["witness"]["theta_tilde"]["mu"]);
    CHECK(j["witness"]["theta"]["Y"] != j["witness"]["theta_tilde"]["Y"]);
    cfg.target = "K_S";
    CHECK(nlohmann::json::parse(run_pipeline(cfg).out)["status"] == "NotIdentifiable");
    cfg.known = {};
    cfg.target = "mu";
    CHECK(nlohmann::json::parse(run_pipeline(cfg).out)["status"] == "Identifiable");
}

TEST_CASE("model documents round-trip") {
    for (const char* name : {"batch_reactor.json", "chikungunya.json"}) {
        const auto doc = load_model_document(models / name);
        const auto again = parse_model_document(model_to_json(doc.model).dump());
        CHECK(model_to_json(again.model) == model_to_json(doc.model));
    }
}

TEST_CASE("exit codes") {
    const auto bad_json = scratch_file("bad.json", "{\"states\": [\"x\"],\n  \"params\": [\"a\"\n");
    RunConfig cfg;
    cfg.model_path = bad_json;
    auto r = run_pipeline(cfg);
    CHECK(r.exit_code == exit_code::parse_error);
    CHECK(r.err.find("line") != std::string::npos);

    const auto undeclared = scratch_file(
        "undeclared.json", R"({"states": ["x"], "params": ["a"], "odes": {"x": "a*x*zeta"}, "outputs": {"y": "x"}})");
    cfg.model_path = undeclared;
    r = run_pipeline(cfg);
    CHECK(r.exit_code == exit_code::parse_error);
    CHECK(r.err.find("zeta") != std::string::npos);

    cfg = config_for(Command::IoPolys, "batch_reactor.json");
    cfg.max_prolong = 1;
    CHECK(run_pipeline(cfg).exit_code == exit_code::elimination_failure);

    cfg = config_for(Command::Tree, "batch_reactor.json");
    cfg.budget_secs = 1e-9;
    r = run_pipeline(cfg);
    CHECK(r.exit_code == exit_code::tree_partial);
    CHECK(!nlohmann::json::parse(r.out)["undetermined"].empty());

    const std::string batch = (models / "batch_reactor.json").string();
    CHECK(run_binary("tree " + batch) == exit_code::ok);
    CHECK(run_binary("tree " + bad_json.string()) == exit_code::parse_error);
    CHECK(run_binary("io-polys " + batch + " --max-prolong 1") == exit_code::elimination_failure);
    CHECK(run_binary("tree " + batch + " --budget-secs 1e-9") == exit_code::tree_partial);
    CHECK(run_binary("tree " + batch + " --format yaml") == exit_code::parse_error);
    CHECK(run_binary("check-wronskian " + batch) == exit_code::ok);
}
