#pragma once

// Finite abelian groups in invariant-factor form: Z_{n_1} + ... + Z_{n_k}
// with n_1 | n_2 | ... | n_k. Elements are coordinate vectors with
// coordinate i reduced into [0, n_i). The trivial group is k = 0.

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "splitkit/arith.hpp"
#include "splitkit/errors.hpp"

namespace splitkit {

struct Element {
    std::vector<int64_t> c;
    auto operator<=>(const Element&) const = default;
};

inline std::string to_string(const Element& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e.c[i]);
    }
    return s + ")";
}

class Group {
public:
    Group() = default; // trivial group

    explicit Group(std::vector<int64_t> factors) : factors_(std::move(factors)) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2)
                throw validation_error("group: invariant factor " + std::to_string(factors_[i]) +
                                       " is below 2");
            if (i > 0 && factors_[i] % factors_[i - 1] != 0)
                throw validation_error("group: " + std::to_string(factors_[i - 1]) + " does not divide " +
                                       std::to_string(factors_[i]) + "; not an invariant-factor chain");
        }
    }

    const std::vector<int64_t>& invariant_factors() const { return factors_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    bool is_cyclic() const { return rank() <= 1; }

    int64_t order() const {
        int64_t n = 1;
        for (int64_t f : factors_) n *= f;
        return n;
    }

    /// Largest invariant factor; 1 for the trivial group.
    int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

    Element zero() const { return Element{std::vector<int64_t>(factors_.size(), 0)}; }

    bool is_valid(const Element& e) const {
        if (e.c.size() != factors_.size()) return false;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (e.c[i] < 0 || e.c[i] >= factors_[i]) return false;
        return true;
    }

    void require_valid(const Element& e) const {
        if (e.c.size() != factors_.size())
            throw validation_error("element has " + std::to_string(e.c.size()) + " coordinates, group has rank " +
                                   std::to_string(factors_.size()));
        if (!is_valid(e)) throw validation_error("element " + to_string(e) + " has a coordinate out of range");
    }

    /// Reduce arbitrary integer coordinates into canonical range.
    Element reduce(std::vector<int64_t> raw) const {
        if (raw.size() != factors_.size())
            throw validation_error("element has " + std::to_string(raw.size()) + " coordinates, group has rank " +
                                   std::to_string(factors_.size()));
        for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = canonical_mod(raw[i], factors_[i]);
        return Element{std::move(raw)};
    }

    Element add(const Element& a, const Element& b) const {
        require_valid(a);
        require_valid(b);
        Element out = a;
        for (std::size_t i = 0; i < factors_.size(); ++i) out.c[i] = (out.c[i] + b.c[i]) % factors_[i];
        return out;
    }

    Element neg(const Element& a) const {
        require_valid(a);
        Element out = a;
        for (std::size_t i = 0; i < factors_.size(); ++i) out.c[i] = out.c[i] == 0 ? 0 : factors_[i] - out.c[i];
        return out;
    }

    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

    /// Integer scalar action, m may be any integer.
    Element scalar_mul(int64_t m, const Element& e) const {
        require_valid(e);
        Element out = e;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const int64_t mi = canonical_mod(m, factors_[i]);
            out.c[i] = mul_mod(mi, e.c[i], factors_[i]);
        }
        return out;
    }

    /// Least l >= 1 with l*e = 0, i.e. lcm_i n_i / gcd(e_i, n_i).
    int64_t element_order(const Element& e) const {
        require_valid(e);
        int64_t ord = 1;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            ord = std::lcm(ord, factors_[i] / std::gcd(e.c[i], factors_[i]));
        return ord;
    }

    /// All elements in lexicographic order (first coordinate most significant).
    std::vector<Element> elements() const {
        std::vector<Element> out;
        out.reserve(static_cast<std::size_t>(order()));
        Element cur = zero();
        while (true) {
            out.push_back(cur);
            std::size_t i = factors_.size();
            while (i > 0) {
                --i;
                if (++cur.c[i] < factors_[i]) break;
                cur.c[i] = 0;
                if (i == 0) return out;
            }
            if (factors_.empty()) return out;
        }
    }

    friend bool operator==(const Group&, const Group&) = default;

private:
    std::vector<int64_t> factors_;
};

class Subgroup {
public:
    /// Smallest subgroup of G containing the generators.
    static Subgroup closure(const Group& G, const std::vector<Element>& gens) {
        for (const Element& g : gens) G.require_valid(g);
        std::set<Element> elems{G.zero()};
        std::vector<Element> frontier{G.zero()};
        while (!frontier.empty()) {
            std::vector<Element> next;
            for (const Element& e : frontier)
                for (const Element& g : gens) {
                    Element s = G.add(e, g);
                    if (elems.insert(s).second) next.push_back(s);
                }
            frontier = std::move(next);
        }
        return Subgroup(G, std::move(elems), gens);
    }

    /// Wraps an explicit element set, validating closure under the group laws.
    static Subgroup from_elements(const Group& G, const std::set<Element>& elems) {
        if (!elems.count(G.zero())) throw validation_error("subgroup: element set does not contain zero");
        for (const Element& a : elems) {
            G.require_valid(a);
            if (!elems.count(G.neg(a)))
                throw validation_error("subgroup: not closed under negation at " + to_string(a));
            for (const Element& b : elems)
                if (!elems.count(G.add(a, b)))
                    throw validation_error("subgroup: not closed under addition at " + to_string(a) + " + " +
                                           to_string(b));
        }
        return Subgroup(G, elems, {});
    }

    const Group& parent() const { return parent_; }
    const std::set<Element>& elements() const { return elements_; }
    const std::vector<Element>& generators() const { return generators_; }
    int64_t order() const { return static_cast<int64_t>(elements_.size()); }
    bool contains(const Element& e) const { return elements_.count(e) != 0; }

    /// lcm of element orders.
    int64_t exponent() const {
        int64_t e = 1;
        for (const Element& x : elements_) e = std::lcm(e, parent_.element_order(x));
        return e;
    }

private:
    Subgroup(Group parent, std::set<Element> elems, std::vector<Element> gens)
        : parent_(std::move(parent)), elements_(std::move(elems)), generators_(std::move(gens)) {}

    Group parent_;
    std::set<Element> elements_;
    std::vector<Element> generators_;
};

/// G/H materialized as canonical coset representatives. Each representative
/// is the lexicographically smallest element of its coset, so the zero coset
/// is represented by 0. Scalar action and zero tests go through rep_of.
class QuotientView {
public:
    QuotientView(const Group& G, const Subgroup& H) : parent_(G), subgroup_(H) {
        if (!(H.parent() == G)) throw validation_error("quotient: subgroup belongs to a different group");
        if (G.order() % H.order() != 0)
            throw internal_error("quotient: subgroup order does not divide group order");
        for (const Element& e : G.elements()) {
            if (to_rep_.count(e)) continue;
            // first unseen member in lex order is the coset's lex minimum
            reps_.push_back(e);
            for (const Element& h : H.elements()) to_rep_[G.add(e, h)] = e;
        }
    }

    const Group& parent() const { return parent_; }
    const Subgroup& subgroup() const { return subgroup_; }
    const std::vector<Element>& coset_reps() const { return reps_; }
    int64_t order() const { return static_cast<int64_t>(reps_.size()); }

    Element rep_of(const Element& e) const {
        auto it = to_rep_.find(e);
        if (it == to_rep_.end()) throw validation_error("quotient: " + to_string(e) + " is not a parent element");
        return it->second;
    }

    Element zero() const { return rep_of(parent_.zero()); }

    Element scalar_mul(int64_t m, const Element& rep) const { return rep_of(parent_.scalar_mul(m, rep)); }

private:
    Group parent_;
    Subgroup subgroup_;
    std::vector<Element> reps_;
    std::map<Element, Element> to_rep_;
};

} // namespace splitkit
