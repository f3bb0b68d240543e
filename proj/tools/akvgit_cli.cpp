#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include <CLI11.hpp>

#include <akvgit/acceptance.hpp>

using namespace akvgit;

namespace {

struct Output {
    bool json = false;
    bool color = false;

    std::string mark(bool ok) const {
        if (!color) return ok ? "PASS" : "FAIL";
        return ok ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
    }
};

std::string variant_name(int k, Variant v) {
    return "A_" + std::to_string(k) + (v == Variant::minus ? "^-" : v == Variant::plus ? "^+" : "");
}

CurveGraph load_curve(const std::string& path) {
    auto c = curve_from_json(read_json_file(path));
    auto v = validate(c);
    if (!v.pass) {
        std::string msg = path + ": invalid curve";
        for (const auto& x : v.violations) msg += "\n  " + x.rule + ": " + x.witness;
        throw Error(ErrorKind::invalid_input, msg);
    }
    return c;
}

void print_strata(const std::string& name, const std::vector<std::vector<std::string>>& strata) {
    std::cout << name << ":";
    if (strata.empty()) std::cout << " (empty)";
    for (const auto& j : strata) {
        std::cout << " V(";
        for (std::size_t i = 0; i < j.size(); ++i) std::cout << (i ? "," : "") << j[i];
        std::cout << ")";
    }
    std::cout << "\n";
}

int exit_code(ErrorKind kind) {
    return kind == ErrorKind::not_stable || kind == ErrorKind::not_maximally_degenerate ? 1 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"A_k-stable curves and local variation of GIT"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    bool want_json = false, want_text = false;
    app.add_flag("--json", want_json, "Emit machine-readable JSON");
    app.add_flag("--text", want_text, "Emit human-readable text (default)");

    std::string file, corpus_dir = AKVGIT_CORPUS_DIR;
    int k = 2, r = 1, m = 1, kore = -1;
    std::string variant = "plain";
    bool flip = false;

    auto curve_command = [&](const std::string& name, const std::string& help, bool with_variant) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("curve", file, "Curve JSON file")->required();
        sub->add_option("--k", k, "Singularity bound")->check(CLI::Range(2, 4));
        if (with_variant)
            sub->add_option("--variant", variant, "Stability variant")->check(CLI::IsMember({"minus", "plain", "plus"}));
        return sub;
    };
    auto* stability_cmd = curve_command("stability", "Check A_k stability", true);
    auto* decompose_cmd = curve_command("decompose", "Canonical decomposition", false);
    auto* closed_cmd = curve_command("closed", "Decide maximal degeneracy", false);
    auto* degenerate_cmd = curve_command("degenerate", "Isotrivial degeneration to a closed point", false);
    auto* weights_cmd = curve_command("weights", "Weight system on first-order deformations", false);
    weights_cmd->add_option("--kore", kore, "Number of weight-zero core coordinates")->check(CLI::NonNegativeNumber);
    auto* crosscheck_cmd = curve_command("crosscheck", "Compare chambers with the expected loci", false);
    crosscheck_cmd->add_option("--kore", kore, "Number of weight-zero core coordinates")->check(CLI::NonNegativeNumber);
    crosscheck_cmd->add_flag("--flip-node", flip, "Negate one node weight (negative control)");
    auto* chambers_cmd = app.add_subcommand("chambers", "Minus and plus chambers of a weight system");
    chambers_cmd->add_option("system", file, "Weight-system JSON file")->required();
    auto* chain_cmd = app.add_subcommand("chain-formula", "Chain chambers from the index formula");
    chain_cmd->add_option("--r", r, "Chain length")->check(CLI::Range(1, 64));
    chain_cmd->add_option("--m", m, "Bridge genus")->check(CLI::Range(1, 64));
    auto* limit_cmd = app.add_subcommand("limit-crimp", "Limit of a crimping over a DVR");
    limit_cmd->add_option("valued", file, "Valued crimping JSON file")->required();
    auto* corpus_cmd = app.add_subcommand("corpus-run", "Run the golden corpus and report every criterion");
    corpus_cmd->add_option("--corpus", corpus_dir, "Corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    out.json = want_json && !want_text;
    out.color = !out.json && isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
    ChartOptions chart;
    if (kore >= 0) chart.kore = kore;

    try {
        if (stability_cmd->parsed()) {
            auto v = parse_variant(variant);
            auto verdict = stability(load_curve(file), k, v);
            if (out.json) {
                auto j = to_json(verdict);
                j["k"] = k;
                j["variant"] = variant;
                std::cout << dump(j);
            } else {
                std::cout << variant_name(k, v) << "-stable: " << (verdict.pass ? "yes" : "no") << "\n";
                for (const auto& x : verdict.violations) std::cout << "  " << x.rule << ": " << x.witness << "\n";
            }
            return verdict.pass ? 0 : 1;
        }
        if (decompose_cmd->parsed()) {
            auto d = canonical_decomposition(load_curve(file), k);
            if (out.json) {
                std::cout << dump(to_json(d));
                return 0;
            }
            std::cout << "case " << to_string(d.kind) << "\n";
            std::cout << "core: " << d.core.components.size() << " components, genus "
                      << (d.core.components.empty() ? 0 : arithmetic_genus(d.core)) << ", " << d.core.marks.size()
                      << " marks\n";
            for (const auto& a : d.appendages) {
                std::cout << (a.is_tail ? "tail" : "link");
                if (!a.is_tail) std::cout << " of length " << a.bridge_count() << (a.closed ? " (closed)" : "");
                std::cout << ":";
                for (const auto& c : a.piece.components) std::cout << " " << c.id;
                std::cout << "\n";
            }
            return 0;
        }
        if (closed_cmd->parsed()) {
            auto rep = is_maximally_degenerate(load_curve(file), k);
            if (out.json) std::cout << dump(to_json(rep));
            else {
                std::cout << "maximally degenerate: " << to_string(rep.verdict) << "\n";
                for (const auto& why : rep.reasons) std::cout << "  " << why << "\n";
            }
            return rep.verdict == Tri::yes ? 0 : rep.verdict == Tri::no ? 1 : 3;
        }
        if (degenerate_cmd->parsed()) {
            auto d = maximal_degeneration(load_curve(file), k);
            auto rep = is_maximally_degenerate(d, k);
            if (out.json) std::cout << dump({{"curve", to_json(d)}, {"maximally_degenerate", to_string(rep.verdict)}});
            else {
                std::cout << "limit: " << d.components.size() << " components, " << d.singularities.size()
                          << " singularities, genus " << arithmetic_genus(d) << "\n";
                std::cout << "maximally degenerate: " << to_string(rep.verdict) << "\n";
                std::cout << dump(to_json(d));
            }
            return 0;
        }
        if (weights_cmd->parsed()) {
            auto lws = build_weight_system(load_curve(file), k, chart);
            if (out.json) std::cout << dump(to_json(lws));
            else {
                std::cout << "case " << to_string(lws.kind) << ", rank " << lws.system.rank << "\n";
                for (std::size_t i = 0; i < lws.system.size(); ++i) {
                    std::cout << "  " << lws.system.coords[i].label << " (" << to_string(lws.tags[i]) << "):";
                    for (auto w : lws.system.coords[i].weights) std::cout << " " << w;
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (crosscheck_cmd->parsed()) {
            auto lws = build_weight_system(load_curve(file), k, chart);
            if (flip) lws = flip_node_weight(lws);
            auto rep = crosscheck(lws);
            if (out.json) std::cout << dump(to_json(rep));
            else {
                std::cout << out.mark(rep.pass) << " case " << to_string(rep.kind) << "\n";
                for (const auto& [name, d] : {std::pair{"minus", rep.minus_diff}, std::pair{"plus", rep.plus_diff}}) {
                    if (!d.missing.empty()) print_strata(std::string("  ") + name + " missing", d.missing);
                    if (!d.extra.empty()) print_strata(std::string("  ") + name + " extra", d.extra);
                }
            }
            return rep.pass ? 0 : 1;
        }
        if (chambers_cmd->parsed()) {
            auto ws = weight_system_from_json(read_json_file(file));
            auto minus = minus_locus(ws), plus = plus_locus(ws);
            if (out.json) std::cout << dump({{"minus", to_json(ws, minus)}, {"plus", to_json(ws, plus)}});
            else {
                print_strata("minus", labeled(ws, minus));
                print_strata("plus", labeled(ws, plus));
            }
            return 0;
        }
        if (chain_cmd->parsed()) {
            auto ws = chain_system(r, m);
            auto plus = chain_chamber_formula(r, m), minus = chain_minus_formula(r, m);
            if (out.json)
                std::cout << dump({{"system", to_json(ws)}, {"minus", to_json(ws, minus)}, {"plus", to_json(ws, plus)}});
            else {
                print_strata("minus", labeled(ws, minus));
                print_strata("plus", labeled(ws, plus));
            }
            return 0;
        }
        if (limit_cmd->parsed()) {
            auto lim = limit_crimping(valued_crimping_from_json(read_json_file(file)));
            if (out.json) std::cout << dump(to_json(lim));
            else {
                std::cout << "b = " << lim.b << "\nlimit:";
                for (const auto& x : lim.limit.entries) std::cout << " " << to_string(x);
                std::cout << (lim.limit.monomial() ? " (monomial)" : "") << "\n";
            }
            return 0;
        }
        if (corpus_cmd->parsed()) {
            acceptance::Corpus corpus(corpus_dir);
            auto results = acceptance::run_all(corpus);
            bool all = true;
            for (const auto& res : results) all = all && res.pass;
            if (out.json) std::cout << dump(acceptance::to_json(results));
            else {
                for (const auto& res : results)
                    std::printf("criterion %2d  %s  %-38s %s (%.2f s)\n", res.id, out.mark(res.pass).c_str(),
                                res.title.c_str(), res.detail.c_str(), res.seconds);
                std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
            }
            return all ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
