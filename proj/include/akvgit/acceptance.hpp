#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "json_io.hpp"

namespace akvgit::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;  // deterministic summary, no timings
    double seconds = 0;
};

class Corpus {
public:
    explicit Corpus(std::string dir) : dir_(std::move(dir)), manifest_(read_json_file(dir_ + "/manifest.json")) {}

    const Json& manifest() const { return manifest_; }
    const Json& section(const std::string& name) const { return manifest_.at(name); }
    Json document(const std::string& file) const { return read_json_file(dir_ + "/" + file); }
    CurveGraph curve(const std::string& file) const { return curve_from_json(document(file)); }
    WeightSystem system(const std::string& file) const { return weight_system_from_json(document(file)); }

    const Json& entry(const std::string& section_name, const std::string& name) const {
        for (const auto& e : section(section_name))
            if (e.at("name") == name) return e;
        throw Error(ErrorKind::invalid_input, "corpus has no " + section_name + " entry " + name);
    }

    // Every curve file the manifest mentions, in sorted order.
    std::vector<std::string> curve_files() const {
        std::set<std::string> files;
        for (const auto& [key, items] : manifest_.items()) {
            if (key == "systems") continue;
            for (const auto& e : items) {
                files.insert(e.at("file").get<std::string>());
                if (e.contains("limit")) files.insert(e.at("limit").get<std::string>());
            }
        }
        return {files.begin(), files.end()};
    }

private:
    std::string dir_;
    Json manifest_;
};

namespace detail {

class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++total_;
        if (!ok && failures_.size() < 4) failures_.push_back(what);
        if (!ok) ++failed_;
    }

    bool pass() const { return failed_ == 0 && total_ > 0; }

    std::string summary(const std::string& noun) const {
        std::ostringstream out;
        out << total_ - failed_ << "/" << total_ << " " << noun;
        for (const auto& f : failures_) out << "; failed: " << f;
        return out.str();
    }

private:
    int total_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

inline bool golden_system(const Corpus& corpus, const std::string& name) {
    const auto& e = corpus.entry("systems", name);
    auto ws = corpus.system(e.at("file"));
    auto minus = make_union(ws, e.at("minus").get<std::vector<std::vector<std::string>>>());
    auto plus = make_union(ws, e.at("plus").get<std::vector<std::vector<std::string>>>());
    return minus_locus(ws) == minus && plus_locus(ws) == plus;
}

inline double elapsed(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

} // namespace detail

inline CriterionResult ramphoid_example(const Corpus& corpus) {
    CriterionResult r{1, "ramphoid worked example"};
    auto start = std::chrono::steady_clock::now();
    bool ok = detail::golden_system(corpus, "ramphoid");
    r.seconds = detail::elapsed(start);
    r.pass = ok && r.seconds < 0.1;
    r.detail = ok ? "V- = V(s_0,s_1,s_2,s_3), V+ = V(c,n)" : "chambers differ from the expected strata";
    if (ok && !r.pass) r.detail += "; runtime limit exceeded";
    return r;
}

inline CriterionResult monomial_chambers(const Corpus& corpus) {
    CriterionResult r{2, "monomial-curve chambers"};
    detail::Tally t;
    for (const char* name : {"monomial_h11", "monomial_h21", "monomial_h31"}) t.check(detail::golden_system(corpus, name), name);
    r.pass = t.pass();
    r.detail = t.summary("monomial systems for m = 1, 2, 3");
    return r;
}

inline CriterionResult chain_chambers(const Corpus& corpus) {
    CriterionResult r{3, "chain-chamber formula"};
    auto start = std::chrono::steady_clock::now();
    detail::Tally t;
    EnumerationOptions wide{40};
    for (int m = 1; m <= 2; ++m)
        for (int len = 1; len <= 5; ++len) {
            auto ws = chain_system(len, m);
            t.check(plus_locus(ws, wide) == chain_chamber_formula(len, m) &&
                        minus_locus(ws, wide) == chain_minus_formula(len, m),
                    "r=" + std::to_string(len) + " m=" + std::to_string(m));
        }
    for (const auto& e : corpus.section("systems")) {
        auto name = e.at("name").get<std::string>();
        if (name.rfind("chain_", 0) == 0) t.check(detail::golden_system(corpus, name), name);
    }
    r.seconds = detail::elapsed(start);
    r.pass = t.pass() && r.seconds < 10;
    r.detail = t.summary("chain systems (r <= 5, m in {1,2}, plus corpus chains)");
    if (t.pass() && !r.pass) r.detail += "; runtime limit exceeded";
    return r;
}

inline CriterionResult local_vgit(const Corpus& corpus) {
    CriterionResult r{4, "local VGIT crosscheck"};
    detail::Tally t;
    std::set<std::string> cases;
    std::size_t longest = 0;
    for (const auto& e : corpus.section("local_charts")) {
        auto name = e.at("name").get<std::string>();
        auto c = corpus.curve(e.at("file"));
        int k = e.at("k");
        auto lws = build_weight_system(c, k);
        auto report = crosscheck(lws);
        t.check(report.pass && to_string(report.kind) == e.at("case").get<std::string>(), name);
        cases.insert(to_string(report.kind));
        for (const auto& run : lws.runs) longest = std::max(longest, run.factors.size());
    }
    t.check(t.pass() && cases.size() == 6, "all six cases present");
    t.check(longest <= 4, "links up to length 4");
    for (const auto& e : corpus.section("controls")) {
        auto lws = flip_node_weight(build_weight_system(corpus.curve(e.at("file")), e.at("k")));
        t.check(!crosscheck(lws).pass, e.at("name").get<std::string>() + " should fail");
    }
    r.pass = t.pass();
    r.detail = t.summary("checks over " + std::to_string(corpus.section("local_charts").size()) + " curves, " +
                         std::to_string(cases.size()) + " cases, " +
                         std::to_string(corpus.section("controls").size()) + " negative controls");
    return r;
}

inline WeightSystem random_system(std::mt19937_64& rng, int max_rank, int max_n, int max_w) {
    std::uniform_int_distribution<int> rank(1, max_rank), count(0, max_n), w(-max_w, max_w);
    WeightSystem ws;
    ws.rank = rank(rng);
    for (int i = 0; i < ws.rank; ++i) ws.character.push_back(w(rng));
    int n = count(rng);
    for (int j = 0; j < n; ++j) {
        Coord c{"x" + std::to_string(j), {}};
        for (int i = 0; i < ws.rank; ++i) c.weights.push_back(w(rng));
        ws.coords.push_back(std::move(c));
    }
    return ws;
}

inline CriterionResult oracle_equivalence(const Corpus& corpus) {
    CriterionResult r{5, "oracle equivalence and chamber laws"};
    std::mt19937_64 rng(20240611);
    detail::Tally t;
    for (int i = 0; i < 200; ++i) {
        auto ws = random_system(rng, 3, 8, 6);
        auto bound = certified_box_bound(ws);
        auto label = "system " + std::to_string(i);
        auto minus = minus_locus(ws), plus = plus_locus(ws);
        t.check(minus == brute_force_locus(ws, Side::minus, bound) && plus == brute_force_locus(ws, Side::plus, bound),
                label);
        std::uniform_int_distribution<std::uint32_t> mask(0, (1u << ws.size()) - 1);
        for (int s = 0; s < 4; ++s) {
            SupportPattern sp;
            auto bits = mask(rng);
            for (std::size_t j = 0; j < ws.size(); ++j)
                if (bits >> j & 1u) sp.support.push_back(j);
            auto mm = in_minus(ws, sp);
            bool witness_ok = !mm.member || limit_exists(ws, sp, *mm.witness);
            t.check(mm.member == minus.contains(sp) && witness_ok, label + " point query");
        }
        for (Side side : {Side::minus, Side::plus}) {
            std::set<std::vector<std::size_t>> supports;
            for (const auto& a : semi_invariant_monomials(ws, side, 6)) {
                std::vector<std::size_t> sp;
                for (std::size_t j = 0; j < a.exponents.size(); ++j)
                    if (a.exponents[j] > 0) sp.push_back(j);
                supports.insert(std::move(sp));
            }
            for (const auto& sp : supports)
                t.check(!in_chamber(ws, {sp}, side).member, label + " monomial obstruction");
        }
    }
    for (int i = 0; i < 100; ++i) {
        auto a = random_system(rng, 2, 5, 6), b = random_system(rng, 2, 5, 6);
        for (auto& c : b.coords) c.label = "y" + c.label.substr(1);
        auto p = product_system(a, b);
        for (Side side : {Side::minus, Side::plus}) {
            auto la = side == Side::minus ? minus_locus(a) : plus_locus(a);
            auto lb = side == Side::minus ? minus_locus(b) : plus_locus(b);
            std::vector<std::vector<std::size_t>> strata = la.strata;
            for (auto j : lb.strata) {
                for (auto& x : j) x += a.size();
                strata.push_back(j);
            }
            t.check((side == Side::minus ? minus_locus(p) : plus_locus(p)) == make_union(strata),
                    "product law " + std::to_string(i));
        }
        std::vector<std::size_t> z, keep;
        std::bernoulli_distribution pick(0.3);
        for (std::size_t j = 0; j < a.size(); ++j) (pick(rng) ? z : keep).push_back(j);
        auto restricted = restrict_system(a, z);
        for (Side side : {Side::minus, Side::plus}) {
            auto full = side == Side::minus ? minus_locus(a) : plus_locus(a);
            std::vector<std::vector<std::size_t>> strata;
            for (const auto& j : full.strata) {
                std::vector<std::size_t> rest;
                for (auto x : j) {
                    auto it = std::find(keep.begin(), keep.end(), x);
                    if (it != keep.end()) rest.push_back(static_cast<std::size_t>(it - keep.begin()));
                }
                strata.push_back(std::move(rest));
            }
            t.check((side == Side::minus ? minus_locus(restricted) : plus_locus(restricted)) == make_union(strata),
                    "restriction law " + std::to_string(i));
        }
    }
    for (const char* name : {"ramphoid_pair", "zero_character", "opposed_rank2"})
        t.check(detail::golden_system(corpus, name), name);
    r.pass = t.pass();
    r.detail = t.summary("checks (200 random systems, 100 random pairs, 3 golden systems)");
    return r;
}

inline CriterionResult stability_table(const Corpus& corpus) {
    CriterionResult r{6, "stability truth table"};
    detail::Tally t;
    for (const auto& e : corpus.section("stability")) {
        auto v = parse_variant(e.at("variant"));
        t.check(stability(corpus.curve(e.at("file")), e.at("k"), v).pass == e.at("pass").get<bool>(),
                e.at("name").get<std::string>());
    }
    r.pass = t.pass();
    r.detail = t.summary("stability verdicts");
    return r;
}

inline CriterionResult closed_points(const Corpus& corpus) {
    CriterionResult r{7, "closed points of the (1,1) family"};
    detail::Tally t;
    int yes = 0;
    for (const auto& e : corpus.section("closed_family")) {
        auto name = e.at("name").get<std::string>();
        auto c = corpus.curve(e.at("file"));
        auto verdict = is_maximally_degenerate(c, 2).verdict;
        yes += verdict == Tri::yes;
        t.check(to_string(verdict) == e.at("maximally_degenerate").get<std::string>(), name + " verdict");
        t.check(curves_isomorphic(maximal_degeneration(c, 2), corpus.curve(e.at("limit"))), name + " limit");
    }
    t.check(yes == 1, "exactly one closed point");
    r.pass = t.pass();
    r.detail = t.summary("checks on " + std::to_string(corpus.section("closed_family").size()) + " curves");
    return r;
}

inline CriterionResult degeneration_properties(const Corpus& corpus) {
    CriterionResult r{8, "degeneration properties"};
    detail::Tally t;
    int pairs = 0;
    for (const auto& file : corpus.curve_files()) {
        auto c = corpus.curve(file);
        for (int k = 2; k <= 4; ++k) {
            if (!stability(c, k, Variant::plain).pass) continue;
            ++pairs;
            auto tag = file + " k=" + std::to_string(k);
            auto d = maximal_degeneration(c, k);
            t.check(arithmetic_genus(d) == arithmetic_genus(c), tag + " genus");
            t.check(d.marks.size() == c.marks.size(), tag + " marks");
            t.check(stability(d, k, Variant::plain).pass, tag + " stable");
            t.check(is_maximally_degenerate(d, k).verdict != Tri::no, tag + " degenerate");
            t.check(curves_isomorphic(maximal_degeneration(d, k), d), tag + " idempotent");
        }
    }
    for (const auto& e : corpus.section("degenerations")) {
        if (!e.contains("limit")) continue;
        t.check(curves_isomorphic(maximal_degeneration(corpus.curve(e.at("file")), e.at("k")),
                                  corpus.curve(e.at("limit"))),
                e.at("name").get<std::string>() + " limit");
    }
    r.pass = t.pass();
    r.detail = t.summary("checks over " + std::to_string(pairs) + " stable (curve, k) pairs");
    return r;
}

inline CriterionResult crimping_checks(const Corpus& corpus) {
    CriterionResult r{9, "crimping limits, orbits and tables"};
    std::mt19937_64 rng(7741);
    detail::Tally t;
    std::uniform_int_distribution<int> m_dist(2, 5), val(-9, 9), num(-9, 9), den(1, 6);
    std::bernoulli_distribution coin(0.5), rare(0.2);
    auto nonzero = [&] {
        int p = 0;
        while (p == 0) p = num(rng);
        return Rational(p, den(rng));
    };
    for (int i = 0; i < 50; ++i) {
        ValuedCrimping v{coin(rng) ? Parity::even : Parity::odd, m_dist(rng), {}};
        for (int l = 1; l < v.m; ++l) {
            if (rare(rng)) v.entries.push_back({std::nullopt, 0});
            else v.entries.push_back({val(rng), nonzero()});
        }
        auto lim = limit_crimping(v);
        auto w = crimping_weights(v.m, v.parity);
        auto holds = [&](std::int64_t b) {
            for (std::size_t l = 0; l < w.size(); ++l)
                if (v.entries[l].val && w[l] * b + *v.entries[l].val < 0) return false;
            return true;
        };
        bool ok = lim.b >= 0 && holds(lim.b) && (lim.b == 0 || !holds(lim.b - 1));
        for (std::size_t l = 0; l < w.size(); ++l) {
            const auto& e = v.entries[l];
            Rational expect = e.val && w[l] * lim.b + *e.val == 0 ? e.lead : Rational(0);
            ok = ok && lim.limit.entries[l] == expect;
        }
        t.check(ok && lim.limit.m == v.m && lim.limit.parity == v.parity, "limit " + std::to_string(i));
    }
    for (int i = 0; i < 50; ++i) {
        CrimpingVector c{coin(rng) ? Parity::even : Parity::odd, m_dist(rng), {}};
        for (int l = 1; l < c.m; ++l) c.entries.push_back(rare(rng) ? Rational(0) : nonzero());
        auto a = scale_crimping(c, nonzero()), b = scale_crimping(c, nonzero());
        auto refl = crimping_equivalent(a, a);
        auto ab = crimping_equivalent(a, b), ba = crimping_equivalent(b, a);
        auto ca = crimping_equivalent(c, a);
        auto cb = crimping_equivalent(c, b);
        bool ok = refl && ab && ba && ca && cb;
        ok = ok && scale_crimping(a, *ab) == b && scale_crimping(b, *ba) == a;
        ok = ok && scale_crimping(c, *ca * *ab) == b;
        auto off = c;
        bool has_nonzero = !c.monomial();
        if (has_nonzero) {
            for (auto& x : off.entries)
                if (x != 0) {
                    x = 0;
                    break;
                }
            ok = ok && !crimping_equivalent(c, off);
        }
        t.check(ok, "orbit " + std::to_string(i));
    }
    t.check(h_weight_table(2, Parity::even) == IntVec{-4, -6, -8, -10}, "H_{2,1} table");
    t.check(h_weight_table(1, Parity::odd) == IntVec{-2, -3, -4}, "H_{1,2} table");
    t.check(crimping_weights(2, Parity::even) == IntVec{1}, "S_{2,1} table");
    t.check(crimping_weights(3, Parity::even) == IntVec{1, 3}, "S_{3,1} table");
    t.check(crimping_weights(1, Parity::even).empty(), "S_{1,1} table");
    t.check(crimping_weights(4, Parity::odd) == IntVec{1, 2, 3}, "S_{4,2} table");
    for (int m = 1; m <= 5; ++m)
        for (Parity p : {Parity::even, Parity::odd}) {
            IntVec h, s;
            for (std::int64_t x = (p == Parity::even ? -4 : -2); x >= (p == Parity::even ? -(4 * m + 2) : -(2 * m + 2));
                 x -= (p == Parity::even ? 2 : 1))
                h.push_back(x);
            for (std::int64_t x = 1; x <= (p == Parity::even ? 2 * m - 3 : m - 1); x += (p == Parity::even ? 2 : 1))
                s.push_back(x);
            auto tag = std::string(to_string(p)) + " m=" + std::to_string(m);
            t.check(h_weight_table(m, p) == h && crimping_weights(m, p) == s, tag + " tables");
            for (const auto& table : {h, s}) {
                WeightSystem ws;
                ws.character = {1};
                for (std::size_t i = 0; i < table.size(); ++i) ws.coords.push_back({"x" + std::to_string(i), {table[i]}});
                t.check(unique_closed_point(ws), tag + " closed point");
            }
        }
    for (const char* name : {"h21_table", "s31_table"}) {
        const auto& e = corpus.entry("systems", name);
        t.check(detail::golden_system(corpus, name) &&
                    unique_closed_point(corpus.system(e.at("file"))) == e.at("unique_closed_point").get<bool>(),
                name);
    }
    r.pass = t.pass();
    r.detail = t.summary("checks (50 limits, 50 orbits, weight tables)");
    return r;
}

// Per-item JSON reports for the whole corpus; the CLI subcommands emit the same documents.
inline Json corpus_reports(const Corpus& corpus) {
    Json out = Json::object();
    for (const auto& e : corpus.section("systems")) {
        auto ws = corpus.system(e.at("file"));
        out["chambers/" + e.at("name").get<std::string>()] = {{"minus", to_json(ws, minus_locus(ws))},
                                                              {"plus", to_json(ws, plus_locus(ws))}};
    }
    for (const auto& e : corpus.section("local_charts")) {
        auto c = corpus.curve(e.at("file"));
        auto lws = build_weight_system(c, e.at("k"));
        auto name = e.at("name").get<std::string>();
        out["weights/" + name] = to_json(lws);
        out["crosscheck/" + name] = to_json(crosscheck(lws));
        out["decompose/" + name] = to_json(canonical_decomposition(c, e.at("k")));
    }
    for (const auto& e : corpus.section("stability")) {
        auto v = parse_variant(e.at("variant"));
        out["stability/" + e.at("name").get<std::string>()] = to_json(stability(corpus.curve(e.at("file")), e.at("k"), v));
    }
    for (const auto& e : corpus.section("degenerations"))
        out["degenerate/" + e.at("name").get<std::string>()] =
            to_json(maximal_degeneration(corpus.curve(e.at("file")), e.at("k")));
    return out;
}

inline CriterionResult determinism(const Corpus& corpus) {
    CriterionResult r{10, "deterministic reports"};
    auto first = corpus_reports(corpus);
    auto a = dump(first), b = dump(corpus_reports(corpus));
    detail::Tally t;
    t.check(a == b, "byte-identical corpus reports");
    for (const auto& file : corpus.curve_files()) {
        auto doc = corpus.document(file);
        t.check(to_json(curve_from_json(doc)) == doc, file + " round trip");
    }
    for (const auto& e : corpus.section("systems")) {
        auto doc = corpus.document(e.at("file"));
        t.check(to_json(weight_system_from_json(doc)) == doc, e.at("file").get<std::string>() + " round trip");
    }
    r.pass = t.pass();
    r.detail = t.summary("checks (" + std::to_string(first.size()) + " reports rendered twice, document round trips)");
    return r;
}

inline std::vector<std::function<CriterionResult(const Corpus&)>> criteria() {
    return {ramphoid_example, monomial_chambers, chain_chambers, local_vgit,     oracle_equivalence,
            stability_table,  closed_points,     degeneration_properties, crimping_checks, determinism};
}

// Runs one criterion; a thrown error counts as a failure with the message as detail.
inline CriterionResult run(int id, const std::function<CriterionResult(const Corpus&)>& f, const Corpus& corpus) {
    auto start = std::chrono::steady_clock::now();
    try {
        auto r = f(corpus);
        if (r.seconds == 0) r.seconds = detail::elapsed(start);
        return r;
    } catch (const std::exception& e) {
        return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), detail::elapsed(start)};
    }
}

inline std::vector<CriterionResult> run_all(const Corpus& corpus) {
    std::vector<CriterionResult> out;
    auto fs = criteria();
    for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(run(static_cast<int>(i + 1), fs[i], corpus));
    return out;
}

inline Json to_json(const std::vector<CriterionResult>& results) {
    Json items = Json::array();
    bool all = true;
    for (const auto& r : results) {
        items.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
    }
    return {{"criteria", items}, {"pass", all}};
}

} // namespace akvgit::acceptance
