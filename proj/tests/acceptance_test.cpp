#include <cstdio>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include <akvgit/acceptance.hpp>

using namespace akvgit;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    Run r;
    std::string cmd = std::string("\"") + AKVGIT_CLI_PATH + "\" " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

// The CLI summary must pass and be byte-stable across two invocations.
acceptance::CriterionResult cli_criterion(const acceptance::Corpus& corpus) {
    auto r = acceptance::determinism(corpus);
    auto args = std::string("corpus-run --json --corpus \"") + AKVGIT_CORPUS_DIR + "\"";
    auto first = run_cli(args), second = run_cli(args);
    bool listed = true;
    try {
        auto j = Json::parse(first.out);
        listed = j.at("criteria").size() == 10;
    } catch (const std::exception&) {
        listed = false;
    }
    bool cli_ok = first.status == 0 && second.status == 0 && listed && first.out == second.out;
    r.detail += cli_ok ? "; corpus-run exits 0 with byte-identical JSON on two runs"
                       : "; corpus-run exit codes " + std::to_string(first.status) + "/" + std::to_string(second.status) +
                             (first.out == second.out ? "" : ", outputs differ") + (listed ? "" : ", criteria missing");
    r.pass = r.pass && cli_ok;
    return r;
}

} // namespace

int main() {
    acceptance::Corpus corpus(AKVGIT_CORPUS_DIR);
    auto fs = acceptance::criteria();
    fs.back() = cli_criterion;
    int failed = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        auto r = acceptance::run(static_cast<int>(i + 1), fs[i], corpus);
        failed += !r.pass;
        std::printf("criterion %2d %s: %s (%s; %.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(),
                    r.detail.c_str(), r.seconds);
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
