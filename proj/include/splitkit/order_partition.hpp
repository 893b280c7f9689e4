#pragma once

// The order partition of a group and the associated multiplier-transfer
// bookkeeping: for classes A, B the set q(A,B) = {m in M : m*B <= A}, the
// divisibility preorder it generates, and the class-counting identities a
// splitting must satisfy. Also the bottom-up recursion predicting |S n A|
// per class from M alone.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "splitkit/errors.hpp"
#include "splitkit/group.hpp"
#include "splitkit/splitting.hpp"

namespace splitkit {

struct OrderClass {
    int64_t order = 1;
    std::vector<Element> elements; // sorted
};

/// Partition of G by common element order, classes ascending by order.
inline std::vector<OrderClass> order_partition(const Group& G) {
    std::map<int64_t, std::vector<Element>> by_order;
    for (const Element& e : G.elements()) by_order[G.element_order(e)].push_back(e);
    std::vector<OrderClass> out;
    for (auto& [ord, elems] : by_order) out.push_back({ord, std::move(elems)});
    return out;
}

struct QProfile {
    std::vector<OrderClass> classes;
    // q[a][b] = multipliers m with m * classes[b] <= classes[a], sorted
    std::vector<std::vector<std::vector<int64_t>>> q;
    // divides[b][a]: classes[b] divides classes[a] (reflexive-transitive
    // closure of single steps m*B <= A)
    std::vector<std::vector<bool>> divides;
    std::vector<int64_t> s_count; // |S n class|
    bool divides_is_partial_order = false;

    int index_of_order(int64_t ord) const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].order == ord) return static_cast<int>(i);
        throw validation_error("q_profile: no class of order " + std::to_string(ord));
    }
};

namespace detail {

inline std::vector<std::vector<std::vector<int64_t>>> q_matrix(const Group& G,
                                                               const std::vector<OrderClass>& classes,
                                                               const std::set<int64_t>& M) {
    const std::size_t n = classes.size();
    std::map<Element, std::size_t> class_of;
    for (std::size_t i = 0; i < n; ++i)
        for (const Element& e : classes[i].elements) class_of[e] = i;

    std::vector<std::vector<std::vector<int64_t>>> q(n, std::vector<std::vector<int64_t>>(n));
    for (std::size_t b = 0; b < n; ++b) {
        for (int64_t m : M) {
            // the image of a class under one multiplier lands inside one class;
            // verify that extensionally rather than by the order formula
            std::set<std::size_t> targets;
            for (const Element& e : classes[b].elements) targets.insert(class_of.at(G.scalar_mul(m, e)));
            if (targets.size() != 1)
                throw internal_error("q_profile: a multiplier scattered an order class; "
                                     "the order partition must be M-compatible");
            q[*targets.begin()][b].push_back(m);
        }
    }
    return q;
}

inline std::vector<std::vector<bool>> divides_closure(
    const std::vector<std::vector<std::vector<int64_t>>>& q) {
    const std::size_t n = q.size();
    std::vector<std::vector<bool>> d(n, std::vector<bool>(n, false));
    for (std::size_t b = 0; b < n; ++b) {
        d[b][b] = true;
        for (std::size_t a = 0; a < n; ++a)
            if (!q[a][b].empty()) d[b][a] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] && d[k][j]) d[i][j] = true;
    return d;
}

inline bool antisymmetric(const std::vector<std::vector<bool>>& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d[i][j] && d[j][i]) return false;
    return true;
}

} // namespace detail

inline QProfile q_profile(const Certificate& cert) {
    if (cert.carrier())
        throw precondition_error("q_profile: carrier certificates are not profiled; "
                                 "the order partition is taken over the whole group");
    const Group& G = cert.group();
    QProfile p;
    p.classes = order_partition(G);
    p.q = detail::q_matrix(G, p.classes, cert.M());
    p.divides = detail::divides_closure(p.q);
    p.divides_is_partial_order = detail::antisymmetric(p.divides);

    p.s_count.assign(p.classes.size(), 0);
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        for (const Element& e : p.classes[i].elements) p.s_count[i] += cert.S().count(e);

    // q(A,A) must contain every multiplier coprime to the class order
    for (std::size_t a = 0; a < p.classes.size(); ++a) {
        bool has_coprime = false;
        for (int64_t m : cert.M())
            if (std::gcd(m, p.classes[a].order) == 1) has_coprime = true;
        if (has_coprime && p.q[a][a].empty())
            throw internal_error("q_profile: q(A,A) empty although M has a multiplier coprime to the class order");
    }
    return p;
}

/// Per-class counting identity: for a complete splitting
/// |A| = sum_B |q(A,B)| * |S n B|; for an ordinary splitting the left side
/// is c(A) = |A| minus one if 0 lies in A.
inline bool counting_check(const Certificate& cert, const QProfile& p) {
    if (cert.kind() != Kind::complete && cert.kind() != Kind::splitting)
        throw precondition_error("counting_check: defined for complete and splitting kinds only");
    if (!verify(cert).valid) throw precondition_error("counting_check: certificate does not verify");

    const Element zero = cert.group().zero();
    for (std::size_t a = 0; a < p.classes.size(); ++a) {
        int64_t lhs = static_cast<int64_t>(p.classes[a].elements.size());
        if (cert.kind() == Kind::splitting &&
            std::binary_search(p.classes[a].elements.begin(), p.classes[a].elements.end(), zero))
            lhs -= 1;
        int64_t rhs = 0;
        for (std::size_t b = 0; b < p.classes.size(); ++b)
            rhs += static_cast<int64_t>(p.q[a][b].size()) * p.s_count[b];
        if (lhs != rhs) return false;
    }
    return true;
}

struct ClassCountPrediction {
    enum class Verdict { counts, no_complete_splitting, not_m_partition };
    Verdict verdict = Verdict::counts;
    std::string reason;
    std::map<int64_t, int64_t> counts; // class order -> predicted |S n A|
};

/// Predicts |S n A| for every order class from M alone, by evaluating
///   |S n A| = (|A| - sum_{B < A} |q(A,B)| * |S n B|) / |q(A,A)|
/// over the divisibility order, proper divisors first (ties broken by
/// ascending class order). A non-integer or negative value along the way, or
/// an order class no multiplier maps into itself, means no complete
/// splitting with this M exists.
inline ClassCountPrediction recursive_class_counts(const std::set<int64_t>& M_in, const Group& G) {
    if (M_in.empty()) throw validation_error("recursive_class_counts: M must be nonempty");
    std::set<int64_t> M;
    for (int64_t m : M_in) M.insert(canonical_mod(m, G.exponent()));

    ClassCountPrediction out;
    const std::vector<OrderClass> classes = order_partition(G);
    const auto q = detail::q_matrix(G, classes, M);
    const auto divides = detail::divides_closure(q);

    if (!detail::antisymmetric(divides)) {
        out.verdict = ClassCountPrediction::Verdict::not_m_partition;
        out.reason = "divisibility on the order classes is not antisymmetric";
        return out;
    }

    const std::size_t n = classes.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (q[a][a].empty()) {
            out.verdict = ClassCountPrediction::Verdict::no_complete_splitting;
            out.reason = "no multiplier maps the class of order " + std::to_string(classes[a].order) +
                         " into itself";
            return out;
        }
    }

    std::vector<bool> done(n, false);
    std::vector<int64_t> count(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        // ready: all proper divisors processed; pick the smallest class order
        std::size_t pick = n;
        for (std::size_t a = 0; a < n; ++a) {
            if (done[a]) continue;
            bool ready = true;
            for (std::size_t b = 0; b < n; ++b)
                if (b != a && divides[b][a] && !done[b]) ready = false;
            if (ready && (pick == n || classes[a].order < classes[pick].order)) pick = a;
        }
        if (pick == n) throw internal_error("recursive_class_counts: no ready class in a partial order");

        int64_t val = static_cast<int64_t>(classes[pick].elements.size());
        for (std::size_t b = 0; b < n; ++b)
            if (b != pick && divides[b][pick]) val -= static_cast<int64_t>(q[pick][b].size()) * count[b];
        const int64_t qaa = static_cast<int64_t>(q[pick][pick].size());
        if (val < 0 || val % qaa != 0) {
            out.verdict = ClassCountPrediction::Verdict::no_complete_splitting;
            out.reason = "the recursion yields " + std::to_string(val) + "/" + std::to_string(qaa) +
                         " for the class of order " + std::to_string(classes[pick].order);
            return out;
        }
        count[pick] = val / qaa;
        done[pick] = true;
    }

    for (std::size_t a = 0; a < n; ++a) out.counts[classes[a].order] = count[a];
    return out;
}

} // namespace splitkit
