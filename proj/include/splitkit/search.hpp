#pragma once

// Exact-cover search over groups and quotients.
//
// Deciding "does M split the ambient relative to K" is exact cover: choosing
// s puts the block {m*s : m in M} into the tiling; blocks must partition
// ambient\K. A block is admissible only if its |M| products are pairwise
// distinct and none lands in K. Branching is on the uncovered element with
// the fewest admissible blocks left.
//
// Two verdicts are not enough here: nonexistence claims feed theorem
// cross-checks, so running out of time budget reports `inconclusive`, never
// `none`.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splitkit/errors.hpp"
#include "splitkit/group.hpp"
#include "splitkit/splitting.hpp"

namespace splitkit {

struct SearchConfig {
    std::optional<int64_t> max_solutions;        // nullopt = unlimited
    bool prune_with_structure = true;            // restrict candidate M in enumeration
    bool canonicalize = true;                    // kept for completeness; output sets are always ordered
    std::chrono::duration<double> time_budget = std::chrono::seconds(300);
    int64_t enumeration_ceiling = 64;

    void validate() const {
        if (time_budget <= std::chrono::duration<double>::zero())
            throw validation_error("search: time budget must be positive");
        if (max_solutions && *max_solutions <= 0)
            throw validation_error("search: max_solutions must be positive");
        if (enumeration_ceiling <= 0) throw validation_error("search: enumeration ceiling must be positive");
    }
};

enum class SearchStatus { found, none, inconclusive };

struct SplitSearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<std::set<Element>> witness; // S, present iff status == found
};

namespace detail {

struct CoverProblem {
    std::vector<Element> ambient;              // index -> element
    std::vector<char> in_target;               // per element
    int target_count = 0;
    std::vector<std::vector<int>> blocks;      // admissible blocks, element indices
    std::vector<int> seeds;                    // seed element index per block
    std::vector<std::vector<int>> covering;    // element index -> block ids
};

template <typename Act>
CoverProblem build_cover(std::vector<Element> ambient, const std::vector<int64_t>& M,
                         const std::set<Element>& K, Act&& act) {
    CoverProblem cp;
    cp.ambient = std::move(ambient);
    std::map<Element, int> index;
    for (std::size_t i = 0; i < cp.ambient.size(); ++i) index[cp.ambient[i]] = static_cast<int>(i);

    cp.in_target.assign(cp.ambient.size(), 1);
    for (const Element& e : K) {
        auto it = index.find(e);
        if (it == index.end()) throw validation_error("search: K contains " + to_string(e) + " outside the ambient");
        cp.in_target[it->second] = 0;
    }
    for (char t : cp.in_target) cp.target_count += t;

    cp.covering.assign(cp.ambient.size(), {});
    for (std::size_t s = 0; s < cp.ambient.size(); ++s) {
        std::set<int> prod;
        bool ok = true;
        for (int64_t m : M) {
            const Element g = act(m, cp.ambient[s]);
            auto it = index.find(g);
            if (it == index.end()) throw internal_error("search: scalar action left the ambient");
            if (!cp.in_target[it->second] || !prod.insert(it->second).second) { ok = false; break; }
        }
        if (!ok) continue;
        const int id = static_cast<int>(cp.blocks.size());
        cp.blocks.emplace_back(prod.begin(), prod.end());
        cp.seeds.push_back(static_cast<int>(s));
        for (int e : cp.blocks.back()) cp.covering[e].push_back(id);
    }
    return cp;
}

enum class CoverOutcome { exhausted, stopped, budget };

/// Enumerates exact covers of the target by admissible blocks. The sink gets
/// the chosen block ids and returns false to stop early.
class CoverSearch {
public:
    CoverSearch(const CoverProblem& cp, std::chrono::steady_clock::time_point deadline)
        : cp_(cp), deadline_(deadline), covered_(cp.ambient.size(), 0) {}

    CoverOutcome run(const std::function<bool(const std::vector<int>&)>& sink) {
        sink_ = &sink;
        uncovered_ = cp_.target_count;
        const CoverOutcome out = descend();
        sink_ = nullptr;
        return out;
    }

private:
    bool block_alive(int id) const {
        for (int e : cp_.blocks[id])
            if (covered_[e]) return false;
        return true;
    }

    CoverOutcome descend() {
        if ((++nodes_ & 0xFF) == 0 && std::chrono::steady_clock::now() > deadline_) return CoverOutcome::budget;
        if (uncovered_ == 0) return (*sink_)(chosen_) ? CoverOutcome::exhausted : CoverOutcome::stopped;

        // branch on the uncovered element with the fewest live blocks
        int pivot = -1;
        std::size_t best = 0;
        for (std::size_t e = 0; e < cp_.ambient.size(); ++e) {
            if (!cp_.in_target[e] || covered_[e]) continue;
            std::size_t live = 0;
            for (int id : cp_.covering[e])
                if (block_alive(id)) ++live;
            if (pivot < 0 || live < best) {
                pivot = static_cast<int>(e);
                best = live;
                if (best == 0) return CoverOutcome::exhausted; // dead end
            }
        }

        for (int id : cp_.covering[pivot]) {
            if (!block_alive(id)) continue;
            for (int e : cp_.blocks[id]) covered_[e] = 1;
            uncovered_ -= static_cast<int>(cp_.blocks[id].size());
            chosen_.push_back(id);
            const CoverOutcome out = descend();
            chosen_.pop_back();
            uncovered_ += static_cast<int>(cp_.blocks[id].size());
            for (int e : cp_.blocks[id]) covered_[e] = 0;
            if (out != CoverOutcome::exhausted) return out;
        }
        return CoverOutcome::exhausted;
    }

    const CoverProblem& cp_;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<char> covered_;
    std::vector<int> chosen_;
    const std::function<bool(const std::vector<int>&)>* sink_ = nullptr;
    int uncovered_ = 0;
    std::uint64_t nodes_ = 0;
};

inline SplitSearchResult first_witness(const CoverProblem& cp, const SearchConfig& cfg) {
    SplitSearchResult out;
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(cfg.time_budget);
    CoverSearch search(cp, deadline);
    const CoverOutcome oc = search.run([&](const std::vector<int>& chosen) {
        std::set<Element> S;
        for (int id : chosen) S.insert(cp.ambient[cp.seeds[id]]);
        out.witness = std::move(S);
        return false; // first witness suffices
    });
    if (out.witness) {
        out.status = SearchStatus::found;
    } else {
        out.status = oc == CoverOutcome::budget ? SearchStatus::inconclusive : SearchStatus::none;
    }
    return out;
}

inline std::vector<int64_t> canonical_multipliers(const std::set<int64_t>& M, int64_t exponent) {
    if (M.empty()) throw validation_error("search: M must be nonempty");
    std::set<int64_t> canon;
    for (int64_t m : M)
        if (!canon.insert(canonical_mod(m, exponent)).second)
            throw validation_error("search: multipliers collide modulo the exponent " + std::to_string(exponent));
    return {canon.begin(), canon.end()};
}

} // namespace detail

/// First S (if any) making (G, M, S, K) verify, with exhaustive "none" and
/// budget-limited "inconclusive" kept apart.
inline SplitSearchResult split_exists(const std::set<int64_t>& M, const Group& G, const std::set<Element>& K,
                                      const SearchConfig& cfg = {}) {
    cfg.validate();
    const std::vector<int64_t> mult = detail::canonical_multipliers(M, G.exponent());
    for (const Element& e : K) G.require_valid(e);
    if ((G.order() - static_cast<int64_t>(K.size())) % static_cast<int64_t>(mult.size()) != 0)
        return {SearchStatus::none, std::nullopt};
    const auto cp = detail::build_cover(G.elements(), mult, K,
                                        [&](int64_t m, const Element& e) { return G.scalar_mul(m, e); });
    return detail::first_witness(cp, cfg);
}

/// Same over a quotient: elements are the canonical coset representatives.
inline SplitSearchResult split_exists(const std::set<int64_t>& M, const QuotientView& Q,
                                      const std::set<Element>& K, const SearchConfig& cfg = {}) {
    cfg.validate();
    const std::vector<int64_t> mult = detail::canonical_multipliers(M, Q.parent().exponent());
    std::set<Element> K_reps;
    for (const Element& e : K) K_reps.insert(Q.rep_of(e));
    if ((Q.order() - static_cast<int64_t>(K_reps.size())) % static_cast<int64_t>(mult.size()) != 0)
        return {SearchStatus::none, std::nullopt};
    const auto cp = detail::build_cover(Q.coset_reps(), mult, K_reps,
                                        [&](int64_t m, const Element& e) { return Q.scalar_mul(m, e); });
    return detail::first_witness(cp, cfg);
}

/// Every complete splitting of G in canonical form (M reduced mod exp(G) and
/// sorted, S sorted), streamed to the sink; returning false stops the
/// enumeration. With prune_with_structure, candidate multiplier sets are
/// restricted to complete residue systems modulo a divisor t of exp(G)
/// containing some m with gcd(m, exp(G)) = t, which every complete splitting
/// satisfies; the unpruned mode tries all subsets of [0, exp(G)).
inline SearchStatus enumerate_complete_splittings(const Group& G, const SearchConfig& cfg,
                                                  const std::function<bool(const Certificate&)>& sink) {
    cfg.validate();
    if (G.order() > cfg.enumeration_ceiling)
        throw validation_error("enumerate: group order " + std::to_string(G.order()) +
                               " exceeds the ceiling " + std::to_string(cfg.enumeration_ceiling) +
                               "; raise the ceiling to confirm this is intended");

    const int64_t exp = G.exponent();
    const std::vector<Element> elems = G.elements();
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(cfg.time_budget);

    int64_t emitted = 0;
    bool stopped = false;
    bool budget_hit = false;

    const auto try_multiplier_set = [&](const std::vector<int64_t>& mult) {
        if (G.order() % static_cast<int64_t>(mult.size()) != 0) return;
        const auto cp = detail::build_cover(elems, mult, {},
                                            [&](int64_t m, const Element& e) { return G.scalar_mul(m, e); });
        detail::CoverSearch search(cp, deadline);
        const auto oc = search.run([&](const std::vector<int>& chosen) {
            std::set<Element> S;
            for (int id : chosen) S.insert(cp.ambient[cp.seeds[id]]);
            Certificate cert(G, Kind::complete, {}, {mult.begin(), mult.end()}, std::move(S));
            if (!verify(cert).valid)
                throw internal_error("enumerate: emitted certificate fails verification");
            ++emitted;
            if (!sink(cert)) return false;
            if (cfg.max_solutions && emitted >= *cfg.max_solutions) return false;
            return true;
        });
        if (oc == detail::CoverOutcome::stopped) stopped = true;
        if (oc == detail::CoverOutcome::budget) budget_hit = true;
    };

    if (cfg.prune_with_structure) {
        for (int64_t t : divisors(exp)) {
            if (stopped || budget_hit) break;
            // complete residue systems mod t inside [0, exp): one representative
            // per class, odometer order
            const int64_t reps_per_class = exp / t;
            std::vector<int64_t> pick(static_cast<std::size_t>(t), 0);
            while (true) {
                std::vector<int64_t> mult(static_cast<std::size_t>(t));
                bool has_anchor = false;
                for (int64_t r = 0; r < t; ++r) {
                    mult[static_cast<std::size_t>(r)] = r + pick[static_cast<std::size_t>(r)] * t;
                    // std::gcd(0, exp) = exp, matching the kernel convention
                    if (std::gcd(mult[static_cast<std::size_t>(r)], exp) == t) has_anchor = true;
                }
                std::sort(mult.begin(), mult.end());
                if (has_anchor) try_multiplier_set(mult);
                if (stopped || budget_hit) break;
                int64_t i = t - 1;
                while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == reps_per_class) pick[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
            }
        }
    } else {
        if (exp > 24)
            throw validation_error("enumerate: unpruned mode is for micro-scale validation (exponent <= 24)");
        for (std::uint64_t mask = 1; mask < (1ULL << exp) && !stopped && !budget_hit; ++mask) {
            std::vector<int64_t> mult;
            for (int64_t m = 0; m < exp; ++m)
                if (mask >> m & 1) mult.push_back(m);
            try_multiplier_set(mult);
        }
    }

    if (budget_hit) return SearchStatus::inconclusive;
    return SearchStatus::found; // enumeration ran to completion (or sink stopped it)
}

/// Convenience form collecting the stream.
inline std::vector<Certificate> enumerate_complete_splittings(const Group& G, const SearchConfig& cfg = {}) {
    std::vector<Certificate> out;
    const SearchStatus st = enumerate_complete_splittings(G, cfg, [&](const Certificate& c) {
        out.push_back(c);
        return true;
    });
    if (st == SearchStatus::inconclusive)
        throw inapplicable_error("enumerate: time budget exhausted before the enumeration completed");
    return out;
}

} // namespace splitkit
