#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "detkit/report.hpp"

using namespace detkit;
using nlohmann::json;

namespace {

const char* kNodal2 = "vars: x y\nideal: x*y - t^2\n";
const char* kNodal2Pair =
    "vars: x y\nideal: x*y - t^2\nperturbed: x*y - t^2 - t^9\nk: 9\n";

json parsed(const RunResult& rr) { return json::parse(rr.json); }

} // namespace

TEST_CASE("t1 envelope carries schema, inputs, results and a hash") {
    auto rr = run("t1", kNodal2);
    CHECK(rr.exit_code == 0);
    auto j = parsed(rr);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "t1");
    CHECK(j["inputs"]["vars"] == json::array({"x", "y"}));
    CHECK(j["results"]["rank"] == 1);
    CHECK(j["results"]["is_zero"] == false);
    CHECK(j["results"].contains("annihilator"));
    CHECK(j["certificates"].contains("generators"));
    CHECK(j["run_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    CHECK(j["timestamp"].get<std::string>().size() == 20);
    CHECK_FALSE(rr.summary.empty());
}

TEST_CASE("results and hashes are byte-identical across reruns") {
    for (const char* cmd : {"t1", "bound", "lift"}) {
        auto a = run(cmd, kNodal2Pair);
        auto b = run(cmd, kNodal2Pair);
        auto ja = parsed(a), jb = parsed(b);
        CHECK(ja["results"].dump() == jb["results"].dump());
        CHECK(ja["certificates"].dump() == jb["certificates"].dump());
        CHECK(ja["run_hash"] == jb["run_hash"]);
        ja.erase("timestamp");
        jb.erase("timestamp");
        CHECK(ja.dump() == jb.dump());
    }
}

TEST_CASE("box options surface boxed dimensions") {
    CliOptions opts;
    opts.box = std::pair<std::uint32_t, std::uint32_t>{4, 3};
    auto j = parsed(run("t1", kNodal2, opts));
    CHECK(j["results"]["box_dimension"] == 2);
}

TEST_CASE("bound reports the frozen invariants of the order-two family") {
    auto rr = run("bound", kNodal2);
    CHECK(rr.exit_code == 0);
    auto j = parsed(rr);
    CHECK(j["results"]["N"] == 2);
    CHECK(j["results"]["N1"] == 2);
    CHECK(j["results"]["threshold_k"] == 9);
    CHECK(j["results"]["precision_loss"] == 4);
    CHECK(j["certificates"].contains("n1_certificate"));
    CHECK(rr.summary.find("N = 2") != std::string::npos);
}

TEST_CASE("t2 of a hypersurface is the zero module") {
    auto rr = run("t2", kNodal2);
    CHECK(rr.exit_code == 0);
    CHECK(parsed(rr)["results"]["is_zero"] == true);
}

TEST_CASE("support answers both ways with exit 0") {
    auto yes = run("support", kNodal2);
    CHECK(yes.exit_code == 0);
    CHECK(parsed(yes)["results"]["within"] == true);

    auto no = run("support", "vars: x y w\nideal: x*y - w^2*t\n");
    CHECK(no.exit_code == 0);
    auto j = parsed(no);
    CHECK(j["results"]["within"] == false);
    CHECK(j["results"]["cutouts"] == json::array({"t"}));

    auto div = run("support", "vars: x y w\nideal: x*y - w^2*t\ndivisor: w\nr: 1\n");
    CHECK(parsed(div)["results"]["within"] == true);
}

TEST_CASE("lift then verify round-trips through the JSON certificate") {
    auto lift = run("lift", kNodal2Pair);
    REQUIRE(lift.exit_code == 0);
    auto j = parsed(lift);
    CHECK(j["results"]["N"] == 2);
    CHECK(j["results"]["target"] == 9);
    CHECK(j["certificates"]["lift"].contains("generators"));

    auto ver = run("verify", lift.json);
    CHECK(ver.exit_code == 0);
    CHECK(parsed(ver)["results"]["ok"] == true);
}

TEST_CASE("verify rejects a tampered certificate with the failing index") {
    CliOptions opts;
    opts.order = 16;
    auto lift = run("lift", kNodal2Pair, opts);
    REQUIRE(lift.exit_code == 0);

    auto j = parsed(lift);
    std::string cof = j["certificates"]["lift"]["generators"][0]["cofactor"];
    j["certificates"]["lift"]["generators"][0]["cofactor"] = "1 + (" + cof + ")";
    auto ver = run("verify", j.dump());
    CHECK(ver.exit_code == 1);
    auto vj = parsed(ver);
    CHECK(vj["results"]["ok"] == false);
    CHECK(vj["results"].contains("failing_index"));
    CHECK(vj["results"].contains("what"));
}

TEST_CASE("artin-system emits the solved system") {
    auto rr = run("artin-system", kNodal2Pair);
    CHECK(rr.exit_code == 0);
    auto j = parsed(rr);
    CHECK(j["results"]["order"] == 9);
    CHECK(j["results"]["equations"].size() == 1);
    CHECK(j["certificates"]["a_solution"].size() == 2);
    CHECK(j["certificates"]["b_solution"].size() == 1);
    CHECK(j["certificates"]["residual_cofactors"].size() == 1);
}

TEST_CASE("oracle cross-checks the main pipeline inside the box") {
    CliOptions opts;
    opts.box = std::pair<std::uint32_t, std::uint32_t>{4, 3};
    auto rr = run("oracle", kNodal2, opts);
    CHECK(rr.exit_code == 0);
    auto j = parsed(rr);
    CHECK(j["results"]["t1_dimension"] == 2);
    CHECK(j["results"]["t1_main_dimension"] == 2);
    CHECK(j["results"]["t1_agree"] == true);
    CHECK(j["results"]["t2_dimension"] == 0);

    // with a perturbed family the search for a coordinate change runs too
    std::string spec = std::string(kNodal2Pair) + "order: 12\nbox: 20,6\n";
    auto iso = run("oracle", spec);
    CHECK(iso.exit_code == 0);
    auto ji = parsed(iso);
    CHECK(ji["results"]["iso_search"]["found"] == true);
}

TEST_CASE("exit code 2 on malformed input") {
    auto rr = run("t1", "vars: x\nideal: x*y\n");
    CHECK(rr.exit_code == 2);
    auto j = parsed(rr);
    CHECK(j["results"]["error"]["kind"] == "parse");
    CHECK(j["results"]["error"]["line"] == 2);

    CHECK(run("frobnicate", kNodal2).exit_code == 2);
    CHECK(run("divisor-bound", kNodal2).exit_code == 2);
    CHECK(run("lift", kNodal2).exit_code == 2);
    CHECK(run("verify", "definitely not json").exit_code == 2);
}

TEST_CASE("exit code 1 on mathematical failure") {
    auto rr = run("bound", "vars: x y w\nideal: x*y - w^2*t\ncap: 16\n");
    CHECK(rr.exit_code == 1);
    auto j = parsed(rr);
    CHECK(j["results"]["error"]["kind"] == "math");

    // agreement order below the threshold
    auto low = run("lift", "vars: x y\nideal: x*y - t^2\nperturbed: x*y - t^2 - t^5\nk: 5\n");
    CHECK(low.exit_code == 1);
}

TEST_CASE("exit code 3 when a resource cap is exhausted") {
    auto rr = run("t1", "vars: x\nideal: x - t^600\n");
    CHECK(rr.exit_code == 3);
    CHECK(parsed(rr)["results"]["error"]["kind"] == "cap");
}

TEST_CASE("every gallery problem file runs clean") {
    const std::pair<const char*, const char*> files[] = {
        {"nodal.detkit", "bound"},          {"nodal_pair.detkit", "lift"},
        {"divisor_wall.detkit", "divisor-bound"}, {"rigid_lines.detkit", "oracle"},
        {"cusp.detkit", "bound"},           {"triple_product.detkit", "t1"},
    };
    for (const auto& [name, cmd] : files) {
        std::ifstream in(std::string(DETKIT_GALLERY_DIR) + "/" + name);
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        auto rr = run(cmd, ss.str());
        INFO(name << " " << cmd << ": " << rr.summary);
        CHECK(rr.exit_code == 0);
    }
}
