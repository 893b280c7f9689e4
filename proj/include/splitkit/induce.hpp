#pragma once

// Passing a complete splitting down to a subgroup, and cutting a splitting of
// a cyclic group down to a partial splitting away from the multiples of a
// prime.
//
// When M also splits G/H, the restriction (H, M, S n H) is guaranteed to be a
// complete splitting of H with |S n H| = |H| / |M|. The quotient hypothesis
// can be witnessed, searched for, or absent: the restriction is still built
// and verified extensionally (it can hold without the hypothesis, e.g. when
// |M| does not divide |G/H| - 1), and the result records which way it went.
// When the element pairing with zero lies outside H, no splitting of the
// quotient and no induced splitting exist, and the obstruction is reported.

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "splitkit/errors.hpp"
#include "splitkit/group.hpp"
#include "splitkit/search.hpp"
#include "splitkit/splitting.hpp"

namespace splitkit {

enum class QuotientHypothesis { witnessed, search_found, not_established };

inline std::string to_string(QuotientHypothesis h) {
    switch (h) {
        case QuotientHypothesis::witnessed: return "witnessed";
        case QuotientHypothesis::search_found: return "search_found";
        case QuotientHypothesis::not_established: return "not_established";
    }
    return "?";
}

struct InduceResult {
    Certificate induced;
    QuotientHypothesis hypothesis = QuotientHypothesis::not_established;
    int64_t s_cap_h = 0;
};

/// Does (M, T) split the quotient? T is given by coset representatives.
inline bool witness_splits_quotient(const std::set<int64_t>& M, const QuotientView& Q,
                                    const std::set<Element>& T) {
    std::map<Element, int> hits;
    for (const Element& t : T) Q.parent().require_valid(t);
    for (int64_t m : M)
        for (const Element& t : T) ++hits[Q.scalar_mul(m, Q.rep_of(t))];
    if (hits.count(Q.zero())) return false;
    int64_t covered = 0;
    for (const auto& [rep, n] : hits) {
        if (n != 1) return false;
        ++covered;
    }
    return covered == Q.order() - 1;
}

inline InduceResult induce_subgroup(const Certificate& cert, const Subgroup& H,
                                    const std::optional<std::set<Element>>& witness = std::nullopt,
                                    const SearchConfig& cfg = {}) {
    if (cert.kind() != Kind::complete)
        throw precondition_error("induce_subgroup: certificate kind is " + to_string(cert.kind()) +
                                 ", requires complete");
    if (cert.carrier()) throw precondition_error("induce_subgroup: certificate already restricted to a carrier");
    if (!(H.parent() == cert.group())) throw validation_error("induce_subgroup: subgroup of a different group");
    if (!verify(cert).valid) throw precondition_error("induce_subgroup: certificate does not verify");

    const Group& G = cert.group();

    // restriction to the whole group is the certificate itself; the trivial
    // quotient is split by the empty set
    if (H.order() == G.order()) {
        return {cert, QuotientHypothesis::search_found, static_cast<int64_t>(cert.S().size())};
    }

    const QuotientView Q(G, H);
    QuotientHypothesis hyp = QuotientHypothesis::not_established;
    if (witness) {
        if (!witness_splits_quotient(cert.M(), Q, *witness))
            throw validation_error("induce_subgroup: supplied witness does not split the quotient");
        hyp = QuotientHypothesis::witnessed;
    } else {
        const SplitSearchResult r = split_exists(cert.M(), Q, {G.zero()}, cfg);
        if (r.status == SearchStatus::found) hyp = QuotientHypothesis::search_found;
    }

    if (hyp == QuotientHypothesis::not_established) {
        // zero's representation 0 = m0*g0 must restrict; g0 outside H kills it
        for (int64_t m : cert.M())
            for (const Element& s : cert.S())
                if (G.scalar_mul(m, s) == G.zero() && !H.contains(s))
                    throw inapplicable_error("induce_subgroup: M does not split G/H (the element pairing with "
                                             "zero lies outside the subgroup, so no induced splitting exists)");
    }

    std::set<Element> S_H;
    for (const Element& s : cert.S())
        if (H.contains(s)) S_H.insert(s);

    Certificate induced(G, Kind::complete, {}, cert.M(), S_H, H.elements());
    const bool valid = verify(induced).valid;
    const bool size_ok =
        H.order() % static_cast<int64_t>(cert.M().size()) == 0 &&
        static_cast<int64_t>(S_H.size()) == H.order() / static_cast<int64_t>(cert.M().size());

    if (hyp != QuotientHypothesis::not_established) {
        if (!valid || !size_ok)
            throw internal_error("induce_subgroup: M splits G/H but the restriction failed; this is a library bug");
    } else if (!valid || !size_ok) {
        throw inapplicable_error("induce_subgroup: M does not split G/H and the restriction to the subgroup "
                                 "is not a complete splitting");
    }
    return {std::move(induced), hyp, static_cast<int64_t>(S_H.size())};
}

/// From a splitting of cyclic Z_n, keep the multipliers and elements coprime
/// to a prime p; they split Z_n away from K = p*Z_n (the multiples of p).
inline Certificate derive_partial_from_splitting(const Certificate& cert, int64_t p) {
    if (cert.kind() != Kind::splitting)
        throw precondition_error("derive_partial: certificate kind is " + to_string(cert.kind()) +
                                 ", requires splitting");
    if (!cert.group().is_cyclic()) throw precondition_error("derive_partial: group must be cyclic");
    if (cert.carrier()) throw precondition_error("derive_partial: carrier certificates are not supported");
    if (!is_prime(p)) throw validation_error("derive_partial: p = " + std::to_string(p) + " is not prime");
    if (!verify(cert).valid) throw precondition_error("derive_partial: certificate does not verify");

    const Group& G = cert.group();
    std::set<int64_t> M;
    for (int64_t m : cert.M())
        if (std::gcd(m, p) == 1) M.insert(m);
    std::set<Element> S;
    for (const Element& s : cert.S())
        if (std::gcd(s.c.empty() ? 0 : s.c[0], p) == 1) S.insert(s);
    std::set<Element> K;
    for (const Element& g : G.elements())
        if ((g.c.empty() ? 0 : g.c[0]) % p == 0) K.insert(g);

    Certificate out(G, Kind::partial, std::move(K), M, std::move(S));
    if (!verify(out).valid)
        throw inapplicable_error("derive_partial: the filtered sets do not form a partial splitting "
                                 "(this arises only when p does not divide the group order)");
    return out;
}

} // namespace splitkit
