#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include <akvgit/json_io.hpp>

#include "fixtures.hpp"

using namespace akvgit;
namespace fs = std::filesystem;

namespace {

const std::string corpus = AKVGIT_CORPUS_DIR;

std::pair<int, std::string> cli(const std::string& args) {
    std::string cmd = std::string("\"") + AKVGIT_CLI_PATH + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int st = pclose(pipe);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = (fs::temp_directory_path() / name).string();
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST(RoundTrip, CorpusDocuments) {
    int count = 0;
    for (const auto& dir : {"curves", "systems"})
        for (const auto& entry : fs::directory_iterator(corpus + "/" + dir)) {
            auto doc = read_json_file(entry.path().string());
            std::ifstream in(entry.path());
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            if (std::string(dir) == "curves") {
                auto c = curve_from_json(doc);
                EXPECT_EQ(curve_from_json(to_json(c)), c);
                EXPECT_EQ(dump(to_json(c)), text) << entry.path();
            } else {
                auto ws = weight_system_from_json(doc);
                EXPECT_EQ(weight_system_from_json(to_json(ws)), ws);
                EXPECT_EQ(dump(to_json(ws)), text) << entry.path();
            }
            ++count;
        }
    EXPECT_GE(count, 24);
}

TEST(RoundTrip, Crimping) {
    CrimpingVector c{Parity::even, 3, {Rational(1, 2), Rational(-3)}};
    EXPECT_EQ(crimping_from_json(to_json(c)), c);
    EXPECT_EQ(to_json(c)["entries"], Json::array({"1/2", "-3"}));
    ValuedCrimping v{Parity::odd, 3, {{-2, Rational(5, 3)}, {std::nullopt, 0}}};
    EXPECT_EQ(valued_crimping_from_json(to_json(v)), v);
    EXPECT_EQ(to_json(v)["entries"][1]["val"], "inf");
}

TEST(RoundTrip, StrataAndDerivedPoints) {
    auto ws = ramphoid_system();
    auto u = plus_locus(ws);
    EXPECT_EQ(to_json(ws, u), Json::parse(R"({"strata": [["c", "n"]]})"));
    EXPECT_EQ(stratum_union_from_json(ws, to_json(ws, u)), u);

    auto c = curve_from_json(Json::parse(
        R"({"components": [{"id": "X", "genus": 0}], "singularities": [{"k": 2, "branches": [["X", "x"]]}],
            "marks": [["X", "p"]]})"));
    EXPECT_EQ(c, fixtures::cuspidal_11());
}

TEST(Errors, Pointers) {
    auto bad_genus = Json::parse(R"({"components": [{"id": "X"}]})");
    EXPECT_NE(error_of([&] { curve_from_json(bad_genus); }).find("/components/0/genus"), std::string::npos);
    auto bad_rational = Json::parse(
        R"({"components": [{"id": "X", "genus": 0}], "singularities": [{"k": 4, "branches": [["X", "x"]], "crimping": ["1/0x"]}]})");
    EXPECT_NE(error_of([&] { curve_from_json(bad_rational); }).find("/singularities/0/crimping/0"), std::string::npos);
    auto bad_weights = Json::parse(R"({"rank": 2, "character": [1, 1], "coords": [{"label": "x", "weights": [1]}]})");
    EXPECT_NE(error_of([&] { weight_system_from_json(bad_weights); }).find("/coords/0/weights"), std::string::npos);
    auto bad_point = Json::parse(R"({"components": [{"id": "X", "genus": 1}], "marks": [["Y", "p"]]})");
    EXPECT_NE(error_of([&] { curve_from_json(bad_point); }).find("/marks/0"), std::string::npos);
    auto bad_valued = Json::parse(R"({"parity": "even", "m": 2, "entries": [{"val": "x", "lead": "1"}]})");
    EXPECT_NE(error_of([&] { valued_crimping_from_json(bad_valued); }).find("/entries/0/val"), std::string::npos);
}

TEST(Cli, Chambers) {
    auto [code, out] = cli("chambers --json \"" + corpus + "/systems/ramphoid.json\"");
    EXPECT_EQ(code, 0);
    auto j = Json::parse(out);
    EXPECT_EQ(j["minus"]["strata"], Json::parse(R"([["s_0", "s_1", "s_2", "s_3"]])"));
    EXPECT_EQ(j["plus"]["strata"], Json::parse(R"([["c", "n"]])"));
}

TEST(Cli, StabilityVerdict) {
    auto [code, out] = cli("stability \"" + corpus + "/curves/elliptic_tail.json\" --k 2 --variant plus");
    EXPECT_EQ(code, 1);
    EXPECT_NE(out.find("destabilizing H_{1,1}-tail, nodal attaching"), std::string::npos);
    EXPECT_EQ(cli("stability \"" + corpus + "/curves/elliptic_tail.json\" --k 2").first, 0);
}

TEST(Cli, Closed) {
    auto [code, out] = cli("closed \"" + corpus + "/curves/cuspidal_11.json\" --k 2");
    EXPECT_EQ(code, 0);
    EXPECT_NE(out.find("maximally degenerate: yes"), std::string::npos);
    EXPECT_EQ(cli("closed \"" + corpus + "/curves/nodal_11.json\" --k 2").first, 1);
    EXPECT_EQ(cli("closed \"" + corpus + "/curves/internal_tacnode.json\" --k 4").first, 3);
}

TEST(Cli, InputErrors) {
    auto broken = temp_file("akvgit_broken.json", R"({"components": [{"id": "X", "genus": "two"}]})");
    auto [code, out] = cli("stability \"" + broken + "\" --k 2");
    EXPECT_EQ(code, 2);
    EXPECT_NE(out.find("/components/0/genus"), std::string::npos);
    auto garbage = temp_file("akvgit_garbage.json", "{ not json");
    EXPECT_EQ(cli("chambers \"" + garbage + "\"").first, 2);
    std::string big = R"({"rank": 1, "character": [1], "coords": [)";
    for (int i = 0; i < 30; ++i) big += std::string(i ? "," : "") + "{\"label\": \"x" + std::to_string(i) + "\", \"weights\": [1]}";
    big += "]}";
    EXPECT_EQ(cli("chambers \"" + temp_file("akvgit_big.json", big) + "\"").first, 2);
}

TEST(Cli, CrosscheckAndControls) {
    auto path = "\"" + corpus + "/curves/core_link_3.json\"";
    EXPECT_EQ(cli("crosscheck " + path + " --k 3").first, 0);
    auto [code, out] = cli("crosscheck --json " + path + " --k 3 --flip-node");
    EXPECT_EQ(code, 1);
    EXPECT_FALSE(Json::parse(out)["pass"].get<bool>());
    EXPECT_EQ(cli("weights \"" + corpus + "/curves/elliptic_tail.json\" --k 2").first, 1);
}

TEST(Cli, LimitAndChain) {
    auto valued = temp_file("akvgit_valued.json", R"({"parity": "even", "m": 3, "entries": [{"val": -1, "lead": "2"}, {"val": -6, "lead": "5/7"}]})");
    auto [code, out] = cli("limit-crimp --json \"" + valued + "\"");
    EXPECT_EQ(code, 0);
    auto j = Json::parse(out);
    EXPECT_EQ(j["b"], 2);
    EXPECT_EQ(j["limit"]["entries"], Json::parse(R"(["0", "5/7"])"));
    auto chain = cli("chain-formula --json --r 2 --m 1");
    EXPECT_EQ(Json::parse(chain.second)["plus"]["strata"], Json::parse(R"([["n_0", "n_1"], ["n_1", "n_2"]])"));
}

TEST(Cli, Deterministic) {
    auto path = "\"" + corpus + "/curves/core_two_links.json\" --k 3";
    for (const auto& cmd : {"decompose --json ", "weights --json ", "degenerate --json "})
        EXPECT_EQ(cli(cmd + path).second, cli(cmd + path).second);
}
