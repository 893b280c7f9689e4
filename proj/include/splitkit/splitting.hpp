#pragma once

// Splitting certificates and their verifier.
//
// A certificate claims that a multiplier set M and an element set S split a
// finite abelian group G relative to an exception set K:
//   complete   K = {}     every g in G has exactly one representation g = m*s
//   splitting  K = {0}    every nonzero g exactly once, 0 never represented
//   packing    K >= {0}   every g outside K exactly once
//   partial    K free     every g outside K exactly once
// By default a representation landing inside K is a violation for all kinds
// with nonempty K; VerifyPolicy::lenient_K ignores K entirely for packing and
// partial certificates (the splitting kind keeps its definition).
//
// A certificate may carry an explicit `carrier` subgroup of its group, in
// which case it claims a splitting of that subgroup (in parent coordinates).
// This is how induced subgroup splittings are represented without
// re-coordinatizing the subgroup.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splitkit/arith.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/group.hpp"

namespace splitkit {

enum class Kind { complete, splitting, packing, partial };

inline std::string to_string(Kind k) {
    switch (k) {
        case Kind::complete: return "complete";
        case Kind::splitting: return "splitting";
        case Kind::packing: return "packing";
        case Kind::partial: return "partial";
    }
    return "?";
}

inline std::optional<Kind> kind_from_string(const std::string& s) {
    if (s == "complete") return Kind::complete;
    if (s == "splitting") return Kind::splitting;
    if (s == "packing") return Kind::packing;
    if (s == "partial") return Kind::partial;
    return std::nullopt;
}

class Certificate {
public:
    Certificate(Group group, Kind kind, std::set<Element> K, const std::set<int64_t>& M, std::set<Element> S,
                std::optional<std::set<Element>> carrier = std::nullopt)
        : group_(std::move(group)), kind_(kind), K_(std::move(K)), S_(std::move(S)), carrier_(std::move(carrier)) {
        const int64_t exp = group_.exponent();
        for (int64_t m : M) {
            if (!M_.insert(canonical_mod(m, exp)).second)
                throw validation_error("certificate: multipliers " + std::to_string(m) +
                                       " collide modulo the exponent " + std::to_string(exp));
        }
        for (const Element& e : K_) group_.require_valid(e);
        for (const Element& e : S_) group_.require_valid(e);

        switch (kind_) {
            case Kind::complete:
                if (!K_.empty()) throw validation_error("certificate: complete kind requires empty K");
                break;
            case Kind::splitting:
                if (K_ != std::set<Element>{ambient_zero()})
                    throw validation_error("certificate: splitting kind requires K = {0}");
                break;
            case Kind::packing:
                if (!K_.count(ambient_zero()))
                    throw validation_error("certificate: packing kind requires 0 in K");
                break;
            case Kind::partial: break;
        }

        if (carrier_) {
            // the carrier must itself be a subgroup so the scalar action stays inside
            Subgroup::from_elements(group_, *carrier_);
            for (const Element& e : K_)
                if (!carrier_->count(e)) throw validation_error("certificate: K is not contained in the carrier");
            for (const Element& e : S_)
                if (!carrier_->count(e)) throw validation_error("certificate: S is not contained in the carrier");
        }
    }

    const Group& group() const { return group_; }
    Kind kind() const { return kind_; }
    const std::set<Element>& K() const { return K_; }
    const std::set<int64_t>& M() const { return M_; }
    const std::set<Element>& S() const { return S_; }
    const std::optional<std::set<Element>>& carrier() const { return carrier_; }

    /// Elements of the ambient (carrier if present, else the whole group).
    std::vector<Element> ambient_elements() const {
        if (carrier_) return {carrier_->begin(), carrier_->end()};
        return group_.elements();
    }

    int64_t ambient_order() const {
        return carrier_ ? static_cast<int64_t>(carrier_->size()) : group_.order();
    }

    friend bool operator==(const Certificate&, const Certificate&) = default;
    friend auto operator<=>(const Certificate& a, const Certificate& b) {
        auto key = [](const Certificate& c) {
            return std::tie(c.group_.invariant_factors(), c.kind_, c.K_, c.M_, c.S_, c.carrier_);
        };
        return key(a) <=> key(b);
    }

private:
    Element ambient_zero() const { return group_.zero(); }

    Group group_;
    Kind kind_;
    std::set<Element> K_;
    std::set<int64_t> M_;
    std::set<Element> S_;
    std::optional<std::set<Element>> carrier_;
};

struct Collision {
    Element element;
    std::pair<int64_t, Element> first;
    std::pair<int64_t, Element> second;
};

struct VerificationReport {
    bool valid = false;
    int64_t covered = 0;                 // elements of ambient\K hit exactly once
    std::vector<Collision> collisions;   // elements with two or more representations
    std::vector<Element> missed;         // elements of ambient\K with none
    std::vector<Element> forbidden_hits; // elements of K that received one
};

struct VerifyPolicy {
    bool lenient_K = false; // ignore K for packing/partial certificates
};

inline VerificationReport verify(const Certificate& cert, const VerifyPolicy& policy = {}) {
    const Group& G = cert.group();
    std::map<Element, std::vector<std::pair<int64_t, Element>>> reps;
    for (int64_t m : cert.M())
        for (const Element& s : cert.S()) reps[G.scalar_mul(m, s)].push_back({m, s});

    const bool k_is_free =
        policy.lenient_K && (cert.kind() == Kind::packing || cert.kind() == Kind::partial);

    VerificationReport out;
    for (const Element& g : cert.ambient_elements()) {
        auto it = reps.find(g);
        const std::size_t hits = it == reps.end() ? 0 : it->second.size();
        if (cert.K().count(g)) {
            if (hits > 0 && !k_is_free) out.forbidden_hits.push_back(g);
            continue;
        }
        if (hits == 0)
            out.missed.push_back(g);
        else if (hits == 1)
            ++out.covered;
        else
            out.collisions.push_back({g, it->second[0], it->second[1]});
    }
    out.valid = out.collisions.empty() && out.missed.empty() && out.forbidden_hits.empty();
    return out;
}

enum class ResidueMode { complete, reduced };

/// complete: |vals| = modulus, pairwise incongruent.
/// reduced:  |vals| = phi(modulus), all units, pairwise incongruent.
inline bool residue_system_check(const std::set<int64_t>& vals, int64_t modulus, ResidueMode mode) {
    if (modulus < 1) throw validation_error("residue_system_check: modulus must be positive");
    const int64_t want = mode == ResidueMode::complete ? modulus : euler_phi(modulus);
    if (static_cast<int64_t>(vals.size()) != want) return false;
    std::set<int64_t> residues;
    for (int64_t v : vals) {
        if (mode == ResidueMode::reduced && std::gcd(canonical_mod(v, modulus), modulus) != 1) return false;
        if (!residues.insert(canonical_mod(v, modulus)).second) return false;
    }
    return true;
}

// For every valid complete splitting G = MS with 0 = m0*g0:
//   m0*S = m0*G, g0 is supported only in the last coordinate, M*g0 = <g0>,
//   |M| = gcd(m0, n_k), M is a complete residue system mod ord(g0), and S
//   meets every coset of <g0> exactly once. On cyclic groups additionally
//   both M and S are complete residue systems (mod gcd(m0,n) and n/gcd(m0,n)).
struct StructureChecks {
    bool mS_eq_mG = false;
    bool g_form = false;
    bool Mg_eq_cyclic = false;
    bool M_size_eq_gcd = false;
    bool M_residue_system = false;
    bool S_transversal = false;
};

struct StructureReport {
    int64_t m0 = 0;
    Element g0;
    int64_t ord_g0 = 1;
    StructureChecks checks;
    std::optional<bool> cyclic_M_residues; // set only for cyclic groups
    std::optional<bool> cyclic_S_residues;

    bool all_passed() const {
        return checks.mS_eq_mG && checks.g_form && checks.Mg_eq_cyclic && checks.M_size_eq_gcd &&
               checks.M_residue_system && checks.S_transversal && cyclic_M_residues.value_or(true) &&
               cyclic_S_residues.value_or(true);
    }
};

namespace detail {
inline int64_t gcd_with_modulus(int64_t m, int64_t n) {
    // gcd(0, n) = n, matching the kernel-size formula
    return m == 0 ? n : std::gcd(m, n);
}
} // namespace detail

/// Structure analysis of a verified complete certificate. These identities
/// are theorems, so a failed check on verified data is reported as an
/// internal error, not returned quietly.
inline StructureReport analyze_structure(const Certificate& cert) {
    if (cert.kind() != Kind::complete)
        throw precondition_error("analyze_structure: certificate kind is " + to_string(cert.kind()) +
                                 ", requires complete");
    if (cert.carrier())
        throw precondition_error("analyze_structure: carrier certificates are not analyzable; "
                                 "the checks reference the ambient group's invariant factors");
    if (!verify(cert).valid) throw precondition_error("analyze_structure: certificate does not verify");

    const Group& G = cert.group();
    StructureReport r;

    // the unique pair with m0*g0 = 0 (unique because 0 is covered exactly once)
    bool found = false;
    for (int64_t m : cert.M())
        for (const Element& s : cert.S())
            if (G.scalar_mul(m, s) == G.zero()) {
                r.m0 = m;
                r.g0 = s;
                found = true;
            }
    if (!found) throw internal_error("analyze_structure: no (m, s) pair represents 0 in a valid certificate");
    r.ord_g0 = G.element_order(r.g0);

    const int64_t nk = G.exponent();
    const int64_t t = detail::gcd_with_modulus(r.m0, nk);

    // m0*S = m0*G
    {
        std::set<Element> mS, mG;
        for (const Element& s : cert.S()) mS.insert(G.scalar_mul(r.m0, s));
        for (const Element& g : G.elements()) mG.insert(G.scalar_mul(r.m0, g));
        r.checks.mS_eq_mG = mS == mG;
    }

    // g0 = (0, ..., 0, y * nk/t) with gcd(y, t) = 1
    {
        bool ok = true;
        const int k = G.rank();
        for (int i = 0; i + 1 < k; ++i)
            if (r.g0.c[i] != 0) ok = false;
        if (k >= 1 && ok) {
            const int64_t u = nk / t;
            const int64_t last = r.g0.c[k - 1];
            if (last % u != 0)
                ok = false;
            else
                ok = std::gcd(last / u, t) == 1;
        }
        r.checks.g_form = ok;
    }

    // M*g0 = <g0>
    {
        std::set<Element> Mg;
        for (int64_t m : cert.M()) Mg.insert(G.scalar_mul(m, r.g0));
        r.checks.Mg_eq_cyclic = Mg == Subgroup::closure(G, {r.g0}).elements();
    }

    r.checks.M_size_eq_gcd = static_cast<int64_t>(cert.M().size()) == t;
    r.checks.M_residue_system = residue_system_check(cert.M(), r.ord_g0, ResidueMode::complete);

    // S meets each coset of <g0> exactly once
    {
        const Subgroup H0 = Subgroup::closure(G, {r.g0});
        const QuotientView Q(G, H0);
        std::set<Element> reps;
        for (const Element& s : cert.S()) reps.insert(Q.rep_of(s));
        r.checks.S_transversal =
            static_cast<int64_t>(reps.size()) == static_cast<int64_t>(cert.S().size()) &&
            static_cast<int64_t>(cert.S().size()) == G.order() / H0.order();
    }

    if (G.is_cyclic()) {
        const int64_t n = G.order();
        const int64_t tc = detail::gcd_with_modulus(r.m0, n);
        std::set<int64_t> s_vals;
        for (const Element& s : cert.S()) s_vals.insert(s.c.empty() ? 0 : s.c[0]);
        r.cyclic_M_residues = residue_system_check(cert.M(), tc, ResidueMode::complete);
        r.cyclic_S_residues = residue_system_check(s_vals, n / tc, ResidueMode::complete);
    }

    if (!r.all_passed()) {
        std::string failing;
        auto note = [&](bool ok, const char* name) { if (!ok) { if (!failing.empty()) failing += ", "; failing += name; } };
        note(r.checks.mS_eq_mG, "mS=mG");
        note(r.checks.g_form, "g-form");
        note(r.checks.Mg_eq_cyclic, "Mg=<g>");
        note(r.checks.M_size_eq_gcd, "|M|=(m,n_k)");
        note(r.checks.M_residue_system, "M residue system");
        note(r.checks.S_transversal, "S transversal");
        note(r.cyclic_M_residues.value_or(true), "cyclic M residues");
        note(r.cyclic_S_residues.value_or(true), "cyclic S residues");
        throw internal_error("analyze_structure: structural identity failed on a verified certificate (" +
                             failing + "); this is a library bug");
    }
    return r;
}

} // namespace splitkit
