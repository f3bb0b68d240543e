#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chambers.hpp"
#include "degeneration.hpp"
#include "isomorphism.hpp"

namespace akvgit {

enum class CoordTag { kore, crimping, singularity, node };

inline const char* to_string(CoordTag t) {
    switch (t) {
    case CoordTag::kore: return "kore";
    case CoordTag::crimping: return "crimping";
    case CoordTag::singularity: return "singularity";
    case CoordTag::node: return "node";
    }
    return "?";
}

// Bridges of one link in order, with the node coordinates between and around them.
// Open runs have factors.size()+1 node slots; closed runs have one slot per bridge,
// slot j sitting between bridge j and bridge j+1 (cyclically).
struct LinkRun {
    std::vector<std::size_t> factors;
    std::vector<std::optional<std::size_t>> nodes;
    bool closed = false;
};

struct LabeledWeightSystem {
    WeightSystem system;
    DecompositionCase kind = DecompositionCase::I;
    int k = 2;
    std::vector<CoordTag> tags;
    std::vector<std::vector<std::size_t>> s_blocks;   // per torus factor
    std::vector<std::vector<std::size_t>> c_blocks;   // per torus factor, even k only
    std::vector<std::optional<std::size_t>> tail_nodes;  // per torus factor, even k only
    std::vector<LinkRun> runs;                        // odd k only
};

struct ChartOptions {
    std::optional<int> kore;  // default: 3g-3+n summed over core pieces
};

namespace detail {

inline int default_kore(const Decomposition& d) {
    if (d.core.components.empty()) return 0;
    int total = 0;
    for (const auto& piece : connected_pieces(d.core))
        total += std::max(0, 3 * arithmetic_genus(piece) - 3 + static_cast<int>(piece.marks.size()));
    return total;
}

struct ChartBuilder {
    LabeledWeightSystem out;

    std::size_t add(std::string label, IntVec w, CoordTag tag) {
        out.system.coords.push_back({std::move(label), std::move(w)});
        out.tags.push_back(tag);
        return out.system.coords.size() - 1;
    }

    IntVec unit(std::size_t i, std::int64_t x = 1) const {
        IntVec w(out.system.rank, 0);
        w[i] = x;
        return w;
    }
};

} // namespace detail

inline LabeledWeightSystem build_weight_system(const CurveGraph& c, int k, const ChartOptions& opt = {}) {
    auto report = is_maximally_degenerate(c, k);
    if (report.verdict == Tri::no || !report.structural)
        throw Error(ErrorKind::not_maximally_degenerate,
                    "curve is not maximally degenerate" +
                        (report.reasons.empty() ? std::string() : ": " + report.reasons.front()));
    auto d = canonical_decomposition(c, k);
    const int m = k / 2;

    detail::ChartBuilder b;
    b.out.kind = d.kind;
    b.out.k = k;
    std::size_t rank = 0;
    for (const auto& a : d.appendages) rank += a.is_tail ? 1 : a.bridge_count();
    if (rank == 0) throw Error(ErrorKind::not_maximally_degenerate, "curve has no appendages; the torus is trivial");
    b.out.system.rank = static_cast<int>(rank);
    b.out.system.character.assign(rank, 1);

    int kore = opt.kore ? *opt.kore : detail::default_kore(d);
    if (kore < 0) throw Error(ErrorKind::invalid_input, "kore size must be nonnegative");
    for (int i = 1; i <= kore; ++i) b.add("k_" + std::to_string(i), IntVec(rank, 0), CoordTag::kore);

    const bool single = rank == 1;
    if (k % 2 == 0) {
        for (std::size_t i = 0; i < d.appendages.size(); ++i) {
            auto name = [&](const std::string& stem, int l) {
                return single ? stem + "_" + std::to_string(l)
                              : stem + "_{" + std::to_string(i + 1) + "," + std::to_string(l) + "}";
            };
            std::vector<std::size_t> s, cr;
            for (int l = 0; l <= 2 * m - 1; ++l)
                s.push_back(b.add(name("s", l), b.unit(i, 2 * l - 4 * m - 2), CoordTag::singularity));
            for (int l = 1; l <= m - 1; ++l) cr.push_back(b.add(name("c", l), b.unit(i, 2 * l - 1), CoordTag::crimping));
            b.out.s_blocks.push_back(std::move(s));
            b.out.c_blocks.push_back(std::move(cr));
        }
        b.out.tail_nodes.assign(rank, std::nullopt);
        if (d.kind == DecompositionCase::I) {
            for (std::size_t i = 0; i < rank; ++i)
                b.out.tail_nodes[i] = b.add(single ? "n" : "n_" + std::to_string(i + 1), b.unit(i), CoordTag::node);
        } else if (d.kind == DecompositionCase::I_prime) {
            IntVec w(rank, 1);
            auto n = b.add("n", w, CoordTag::node);
            b.out.tail_nodes = {n, n};
        }
        return b.out;
    }

    const bool one_link = d.appendages.size() == 1;
    std::size_t factor = 0;
    for (std::size_t i = 0; i < d.appendages.size(); ++i) {
        const auto& a = d.appendages[i];
        const std::size_t r = a.bridge_count();
        auto tag = [&](std::size_t j) {
            return one_link ? std::to_string(j) : std::to_string(i + 1) + "," + std::to_string(j);
        };
        auto node_name = [&](std::size_t j) { return one_link ? "n_" + std::to_string(j) : "n_{" + tag(j) + "}"; };
        LinkRun run;
        run.closed = a.closed;
        for (std::size_t j = 1; j <= r; ++j) {
            std::vector<std::size_t> s;
            for (int l = 0; l <= 2 * m; ++l)
                s.push_back(b.add("s_{" + tag(j) + "," + std::to_string(l) + "}", b.unit(factor + j - 1, l - 2 * m - 2),
                                  CoordTag::singularity));
            b.out.s_blocks.push_back(std::move(s));
            run.factors.push_back(factor + j - 1);
        }
        if (a.closed) {
            for (std::size_t j = 1; j <= r; ++j) {
                IntVec w(rank, 0);
                w[factor + j - 1] += 1;
                w[factor + j % r] += 1;
                run.nodes.push_back(b.add(node_name(j), w, CoordTag::node));
            }
        } else {
            for (std::size_t j = 0; j <= r; ++j) {
                int att = j == 0 ? a.link.start_attaching() : j == r ? a.link.finish_attaching() : 1;
                if (att == 0) {
                    run.nodes.push_back(std::nullopt);
                    continue;
                }
                IntVec w(rank, 0);
                if (j > 0) w[factor + j - 1] += 1;
                if (j < r) w[factor + j] += 1;
                run.nodes.push_back(b.add(node_name(j), w, CoordTag::node));
            }
        }
        b.out.runs.push_back(std::move(run));
        factor += r;
    }
    return b.out;
}

inline StratumUnion expected_s_locus(const LabeledWeightSystem& lws) {
    return make_union(lws.s_blocks);
}

namespace detail {

inline std::vector<std::vector<std::size_t>> run_strata(const LabeledWeightSystem& lws, const LinkRun& run) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t r = run.factors.size();
    auto push_node = [&](std::vector<std::size_t>& j, std::size_t slot) {
        if (run.nodes[slot]) j.push_back(*run.nodes[slot]);
    };
    auto push_block = [&](std::vector<std::size_t>& j, std::size_t bridge) {  // bridge is 1-based
        const auto& s = lws.s_blocks[run.factors[(bridge - 1) % r]];
        j.insert(j.end(), s.begin(), s.end());
    };
    if (!run.closed) {
        for (std::size_t mu = 1; 2 * mu - 1 <= r; ++mu)
            for (std::size_t nu = 0; nu + 2 * mu - 1 <= r; ++nu) {
                std::vector<std::size_t> j;
                push_node(j, nu);
                for (std::size_t b = nu + 2; b <= nu + 2 * mu - 2; b += 2) push_block(j, b);
                push_node(j, nu + 2 * mu - 1);
                out.push_back(std::move(j));
            }
        return out;
    }
    // Cyclic: arcs of 2mu-1 consecutive bridges starting after slot a.
    auto slot = [&](std::size_t s) { return (s + r - 1) % r; };  // slot s between bridge s and s+1
    for (std::size_t mu = 1; 2 * mu - 1 <= r; ++mu)
        for (std::size_t a = 0; a < r; ++a) {
            std::vector<std::size_t> j;
            push_node(j, slot(a));
            for (std::size_t b = a + 2; b <= a + 2 * mu - 2; b += 2) push_block(j, b);
            push_node(j, slot(a + 2 * mu - 1));
            out.push_back(std::move(j));
        }
    return out;
}

} // namespace detail

inline StratumUnion expected_h_locus(const LabeledWeightSystem& lws) {
    std::vector<std::vector<std::size_t>> strata;
    if (lws.k % 2 == 0) {
        for (std::size_t i = 0; i < lws.c_blocks.size(); ++i) {
            auto j = lws.c_blocks[i];
            if (lws.tail_nodes[i]) j.push_back(*lws.tail_nodes[i]);
            strata.push_back(std::move(j));
        }
    } else {
        for (const auto& run : lws.runs) {
            auto s = detail::run_strata(lws, run);
            strata.insert(strata.end(), s.begin(), s.end());
        }
    }
    return make_union(std::move(strata));
}

inline StratumUnion expected_s_locus(const CurveGraph& c, int k) { return expected_s_locus(build_weight_system(c, k)); }
inline StratumUnion expected_h_locus(const CurveGraph& c, int k) { return expected_h_locus(build_weight_system(c, k)); }

struct StrataDiff {
    std::vector<std::vector<std::string>> missing;  // expected but not computed
    std::vector<std::vector<std::string>> extra;    // computed but not expected
    bool empty() const { return missing.empty() && extra.empty(); }
};

inline StrataDiff strata_diff(const WeightSystem& ws, const StratumUnion& expected, const StratumUnion& computed) {
    auto e = labeled(ws, expected), c = labeled(ws, computed);
    StrataDiff d;
    std::set_difference(e.begin(), e.end(), c.begin(), c.end(), std::back_inserter(d.missing));
    std::set_difference(c.begin(), c.end(), e.begin(), e.end(), std::back_inserter(d.extra));
    return d;
}

struct CrosscheckReport {
    bool pass = false;
    DecompositionCase kind = DecompositionCase::I;
    StrataDiff minus_diff;  // against the S-locus
    StrataDiff plus_diff;   // against the H-locus
};

inline CrosscheckReport crosscheck(const LabeledWeightSystem& lws, const EnumerationOptions& opt = {}) {
    CrosscheckReport r;
    r.kind = lws.kind;
    r.minus_diff = strata_diff(lws.system, expected_s_locus(lws), minus_locus(lws.system, opt));
    r.plus_diff = strata_diff(lws.system, expected_h_locus(lws), plus_locus(lws.system, opt));
    r.pass = r.minus_diff.empty() && r.plus_diff.empty();
    return r;
}

inline CrosscheckReport crosscheck_local_vgit(const CurveGraph& c, int k, const ChartOptions& opt = {}) {
    return crosscheck(build_weight_system(c, k, opt));
}

// Negative control: the first node coordinate with its weight negated.
inline LabeledWeightSystem flip_node_weight(LabeledWeightSystem lws) {
    for (std::size_t i = 0; i < lws.tags.size(); ++i)
        if (lws.tags[i] == CoordTag::node) {
            for (auto& w : lws.system.coords[i].weights) w = -w;
            return lws;
        }
    throw Error(ErrorKind::invalid_input, "weight system has no node coordinate");
}

// Rank-r chain of H_{m,2}-bridges attached at both ends.
inline WeightSystem chain_system(int r, int m) {
    if (r < 1 || m < 1) throw Error(ErrorKind::invalid_input, "chain needs r >= 1 and m >= 1");
    WeightSystem ws;
    ws.rank = r;
    ws.character.assign(r, 1);
    for (int j = 1; j <= r; ++j)
        for (int l = 0; l <= 2 * m; ++l) {
            IntVec w(r, 0);
            w[j - 1] = l - 2 * m - 2;
            ws.coords.push_back({"s_{" + std::to_string(j) + "," + std::to_string(l) + "}", w});
        }
    for (int j = 0; j <= r; ++j) {
        IntVec w(r, 0);
        if (j > 0) w[j - 1] = 1;
        if (j < r) w[j] = 1;
        ws.coords.push_back({"n_" + std::to_string(j), w});
    }
    return ws;
}

// V+ of the chain system from the index formula, in chain_system coordinates.
inline StratumUnion chain_chamber_formula(int r, int m) {
    if (r < 1 || m < 1) throw Error(ErrorKind::invalid_input, "chain needs r >= 1 and m >= 1");
    const std::size_t block = 2 * m + 1;
    auto node = [&](int j) { return static_cast<std::size_t>(r) * block + j; };
    std::vector<std::vector<std::size_t>> strata;
    for (int mu = 1; 2 * mu - 1 <= r; ++mu)
        for (int nu = 0; nu <= r - 2 * mu + 1; ++nu) {
            std::vector<std::size_t> j{node(nu)};
            for (int b = nu + 2; b <= nu + 2 * mu - 2; b += 2)
                for (std::size_t l = 0; l < block; ++l) j.push_back((b - 1) * block + l);
            j.push_back(node(nu + 2 * mu - 1));
            strata.push_back(std::move(j));
        }
    return make_union(std::move(strata));
}

inline StratumUnion chain_minus_formula(int r, int m) {
    const std::size_t block = 2 * m + 1;
    std::vector<std::vector<std::size_t>> strata;
    for (int j = 0; j < r; ++j) {
        std::vector<std::size_t> s;
        for (std::size_t l = 0; l < block; ++l) s.push_back(j * block + l);
        strata.push_back(std::move(s));
    }
    return make_union(std::move(strata));
}

} // namespace akvgit
