#pragma once

// The finite side: SL2(Z/NZ) and its quotient by the scalars {a I : a^2 = 1},
// congruence subgroups containing that kernel, their coset actions and
// permutation characters, the gamma_nu normal forms and their classes.

#include "matrix_corr.hpp"
#include "numeric.hpp"
#include "pell_units.hpp"
#include "quadforms.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arith_selberg {

inline constexpr std::size_t default_group_bound = 1'000'000;
inline constexpr std::size_t default_coset_bound = 100'000;

// ---------------------------------------------------------------------------
// ModMatrix

/// [[a, b], [c, d]] with entries in [0, N).
struct ModMatrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    std::int64_t N = 1;

    static ModMatrix make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                          std::int64_t N) {
        if (N < 1) throw invalid_input("modulus must be positive");
        auto m = [N](std::int64_t x) { return floor_mod<std::int64_t>(x, N); };
        return {m(a), m(b), m(c), m(d), N};
    }
    static ModMatrix identity(std::int64_t N) { return make(1, 0, 0, 1, N); }

    std::int64_t det() const {
        return floor_mod<std::int64_t>(mod_mul(a, d, N) - mod_mul(b, c, N), N);
    }
    std::int64_t trace() const { return (a + d) % N; }
    std::uint64_t key() const {
        auto n = static_cast<std::uint64_t>(N);
        return ((static_cast<std::uint64_t>(a) * n + static_cast<std::uint64_t>(b)) * n +
                static_cast<std::uint64_t>(c)) * n + static_cast<std::uint64_t>(d);
    }
    friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
};

inline ModMatrix operator*(const ModMatrix& x, const ModMatrix& y) {
    if (x.N != y.N) throw invalid_input("ModMatrix levels differ");
    const std::int64_t N = x.N;
    return {(mod_mul(x.a, y.a, N) + mod_mul(x.b, y.c, N)) % N,
            (mod_mul(x.a, y.b, N) + mod_mul(x.b, y.d, N)) % N,
            (mod_mul(x.c, y.a, N) + mod_mul(x.d, y.c, N)) % N,
            (mod_mul(x.c, y.b, N) + mod_mul(x.d, y.d, N)) % N, N};
}

inline ModMatrix scalar_times(std::int64_t lambda, const ModMatrix& m) {
    return ModMatrix::make(mod_mul(lambda, m.a, m.N), mod_mul(lambda, m.b, m.N),
                           mod_mul(lambda, m.c, m.N), mod_mul(lambda, m.d, m.N), m.N);
}

/// Inverse of a determinant-one matrix.
inline ModMatrix inverse(const ModMatrix& m) { return ModMatrix::make(m.d, -m.b, -m.c, m.a, m.N); }

inline ModMatrix mod_matrix_pow(ModMatrix base, std::uint64_t e) {
    ModMatrix r = ModMatrix::identity(base.N);
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

inline ModMatrix reduce_mod(const Mat2& m, std::int64_t N) {
    return {mod_of(m.a, N), mod_of(m.b, N), mod_of(m.c, N), mod_of(m.d, N), N};
}

inline ModMatrix reduce_mod(const ModMatrix& m, std::int64_t M) {
    if (m.N % M != 0) throw invalid_input("reduce_mod: target level does not divide source level");
    return ModMatrix::make(m.a, m.b, m.c, m.d, M);
}

inline std::ostream& operator<<(std::ostream& os, const ModMatrix& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]] mod " << m.N;
}

inline ModMatrix gen_S(std::int64_t N) { return ModMatrix::make(0, -1, 1, 0, N); }
inline ModMatrix gen_T(std::int64_t N) { return ModMatrix::make(1, 1, 0, 1, N); }

// ---------------------------------------------------------------------------
// residues

/// { a in (Z/NZ)* : a^2 = 1 }.
inline std::vector<std::int64_t> scalar_sqrt_one(std::int64_t N) {
    if (N < 1) throw invalid_input("scalar_sqrt_one: N must be positive");
    if (N == 1) return {0};
    std::vector<std::int64_t> out;
    for (std::int64_t a = 1; a < N; ++a)
        if (mod_mul(a, a, N) == 1 % N) out.push_back(a);
    return out;
}

/// Representatives of (Z/NZ)* modulo squares, each the least member of its class; 1 first.
inline std::vector<std::int64_t> square_class_reps(std::int64_t N) {
    if (N < 1) throw invalid_input("square_class_reps: N must be positive");
    if (N == 1) return {0};
    std::vector<std::int64_t> units;
    for (std::int64_t a = 1; a < N; ++a)
        if (std::gcd(a, N) == 1) units.push_back(a);
    std::set<std::int64_t> squares;
    for (std::int64_t a : units) squares.insert(mod_mul(a, a, N));
    std::set<std::int64_t> covered;
    std::vector<std::int64_t> reps;
    for (std::int64_t a : units) {
        if (covered.count(a)) continue;
        reps.push_back(a);
        for (std::int64_t s : squares) covered.insert(mod_mul(a, s, N));
    }
    return reps;
}

/// |SL2(Z/NZ)| = N^3 prod_{p | N} (1 - 1/p^2).
inline std::int64_t sl2_order(std::int64_t N) {
    std::int64_t order = 1;
    for (const prime_power& pp : factor(N)) order *= pp.value * pp.value * pp.value / (pp.p * pp.p) * (pp.p * pp.p - 1);
    return order;
}

/// [SL2(Z) : kernel of SL2(Z) -> PSL2(Z/NZ)] = prod p^{3r-2}(p^2-1) / #{a : a^2 = 1}.
inline std::int64_t index_hat(std::int64_t N) {
    if (N < 2) throw invalid_input("index_hat: N must be at least 2");
    std::int64_t num = 1;
    for (const prime_power& pp : factor(N)) {
        std::int64_t q = 1;
        for (int i = 0; i < 3 * pp.r - 2; ++i) q *= pp.p;
        num *= q * (pp.p * pp.p - 1);
    }
    return num / static_cast<std::int64_t>(scalar_sqrt_one(N).size());
}

// ---------------------------------------------------------------------------
// SL2(Z/NZ) as an explicit finite group

class SL2ModGroup {
public:
    /// Shared, cached instance for level N.
    static std::shared_ptr<const SL2ModGroup> get(std::int64_t N,
                                                  std::size_t bound = default_group_bound) {
        if (N < 1) throw invalid_input("SL2ModGroup: level must be positive");
        if (static_cast<std::size_t>(sl2_order(N)) > bound)
            throw bound_exceeded("|SL2(Z/" + std::to_string(N) + ")| = " +
                                 std::to_string(sl2_order(N)) + " exceeds bound " +
                                 std::to_string(bound));
        static std::mutex mu;
        static std::map<std::int64_t, std::shared_ptr<const SL2ModGroup>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
        auto g = std::shared_ptr<const SL2ModGroup>(new SL2ModGroup(N));
        cache.emplace(N, g);
        return g;
    }

    std::int64_t level() const { return N_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<ModMatrix>& elements() const { return elements_; }
    const ModMatrix& element(std::uint32_t i) const { return elements_[i]; }
    const std::vector<std::int64_t>& scalars() const { return scalars_; }

    std::uint32_t index_of(const ModMatrix& m) const {
        if (m.N != N_) throw invalid_input("element level does not match group level");
        std::uint32_t i = npos;
        if (!flat_.empty()) {
            i = flat_[m.key()];
        } else {
            auto it = sparse_.find(m.key());
            if (it != sparse_.end()) i = it->second;
        }
        if (i == npos) throw invalid_input("matrix is not in SL2(Z/NZ)");
        return i;
    }

    /// Label of the PSL2(Z/NZ)-conjugacy class of each element (scalar
    /// multiples by square roots of one share a label).
    const std::vector<std::uint32_t>& psl_class_labels() const {
        std::call_once(class_once_, [this] { build_classes(); });
        return class_labels_;
    }
    std::size_t psl_class_count() const {
        psl_class_labels();
        return class_count_;
    }

    static constexpr std::uint32_t npos = static_cast<std::uint32_t>(-1);

private:
    explicit SL2ModGroup(std::int64_t N) : N_(N), scalars_(scalar_sqrt_one(N)) {
        const std::uint64_t keyspace = static_cast<std::uint64_t>(N) * N * N * N;
        if (keyspace <= (std::uint64_t{1} << 24)) flat_.assign(keyspace, npos);
        const ModMatrix gens[2] = {gen_T(N), gen_S(N)};
        insert(ModMatrix::identity(N));
        for (std::size_t i = 0; i < elements_.size(); ++i)
            for (const ModMatrix& x : gens) {
                ModMatrix y = elements_[i] * x;
                if (lookup(y) == npos) insert(y);
            }
    }

    std::uint32_t lookup(const ModMatrix& m) const {
        if (!flat_.empty()) return flat_[m.key()];
        auto it = sparse_.find(m.key());
        return it == sparse_.end() ? npos : it->second;
    }

    void insert(const ModMatrix& m) {
        auto i = static_cast<std::uint32_t>(elements_.size());
        elements_.push_back(m);
        if (!flat_.empty())
            flat_[m.key()] = i;
        else
            sparse_.emplace(m.key(), i);
    }

    // Conjugacy classes as orbits under conjugation by the generators S, T.
    void build_classes() const {
        class_labels_.assign(elements_.size(), npos);
        const ModMatrix gens[2] = {gen_S(N_), gen_T(N_)};
        const ModMatrix gens_inv[2] = {inverse(gens[0]), inverse(gens[1])};
        std::uint32_t next = 0;
        std::vector<std::uint32_t> stack;
        for (std::uint32_t i = 0; i < elements_.size(); ++i) {
            if (class_labels_[i] != npos) continue;
            auto label_coset = [&](const ModMatrix& g) {
                for (std::int64_t lam : scalars_) {
                    std::uint32_t j = index_of(scalar_times(lam, g));
                    if (class_labels_[j] == npos) {
                        class_labels_[j] = next;
                        stack.push_back(j);
                    }
                }
            };
            label_coset(elements_[i]);
            while (!stack.empty()) {
                std::uint32_t j = stack.back();
                stack.pop_back();
                for (int k = 0; k < 2; ++k) {
                    ModMatrix y = gens_inv[k] * elements_[j] * gens[k];
                    if (class_labels_[index_of(y)] == npos) label_coset(y);
                }
            }
            ++next;
        }
        class_count_ = next;
    }

    std::int64_t N_;
    std::vector<std::int64_t> scalars_;
    std::vector<ModMatrix> elements_;
    std::vector<std::uint32_t> flat_;
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
    mutable std::once_flag class_once_;
    mutable std::vector<std::uint32_t> class_labels_;
    mutable std::size_t class_count_ = 0;
};

/// true iff h^-1 g1 h = lambda g2 for some h in SL2(Z/NZ) and lambda^2 = 1.
inline bool psl_conjugate(std::int64_t N, const ModMatrix& g1, const ModMatrix& g2,
                          std::size_t bound = default_group_bound) {
    auto G = SL2ModGroup::get(N, bound);
    const auto& labels = G->psl_class_labels();
    return labels[G->index_of(g1)] == labels[G->index_of(g2)];
}

// ---------------------------------------------------------------------------
// cycle types

/// Multiset of cycle lengths: length -> multiplicity.
struct CycleType {
    std::map<std::int64_t, std::int64_t> counts;

    std::int64_t points() const {
        std::int64_t n = 0;
        for (auto [m, k] : counts) n += m * k;
        return n;
    }
    std::int64_t cycles() const {
        std::int64_t n = 0;
        for (auto [m, k] : counts) n += k;
        return n;
    }
    std::int64_t fixed_points() const {
        auto it = counts.find(1);
        return it == counts.end() ? 0 : it->second;
    }
    /// Fixed points of the j-th power: sum of m * n_m over m | j.
    std::int64_t fixed_points_of_power(std::int64_t j) const {
        std::int64_t n = 0;
        for (auto [m, k] : counts)
            if (j % m == 0) n += m * k;
        return n;
    }
    /// e.g. "(1,5)", "(1^2,3^2)".
    std::string str() const {
        std::string s = "(";
        bool first = true;
        for (auto [m, k] : counts) {
            if (!first) s += ",";
            first = false;
            s += std::to_string(m);
            if (k != 1) s += "^" + std::to_string(k);
        }
        return s + ")";
    }
    friend bool operator==(const CycleType&, const CycleType&) = default;
};

inline CycleType cycle_type_of(const std::vector<std::uint32_t>& perm) {
    CycleType ct;
    std::vector<char> seen(perm.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::int64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        ++ct.counts[len];
    }
    return ct;
}

// ---------------------------------------------------------------------------
// subgroups and coset actions

enum class SubgroupKind { gamma0, gamma1pm, gammahat, full, custom };

inline std::string kind_name(SubgroupKind k) {
    switch (k) {
        case SubgroupKind::gamma0: return "gamma0";
        case SubgroupKind::gamma1pm: return "gamma1pm";
        case SubgroupKind::gammahat: return "gammahat";
        case SubgroupKind::full: return "full";
        case SubgroupKind::custom: return "custom";
    }
    return "custom";
}

/// Right cosets H g of a subgroup H of SL2(Z/NZ), with right multiplication.
struct CosetAction {
    std::shared_ptr<const SL2ModGroup> group;
    std::vector<ModMatrix> cosets;       // representatives, discovery order
    std::vector<std::uint32_t> label;    // coset of each group element

    std::size_t size() const { return cosets.size(); }

    /// Permutation i -> j with H g_i gamma = H g_j.
    std::vector<std::uint32_t> act(const ModMatrix& gamma) const {
        std::vector<std::uint32_t> perm(cosets.size());
        for (std::size_t i = 0; i < cosets.size(); ++i) perm[i] = label[group->index_of(cosets[i] * gamma)];
        return perm;
    }
};

class CongruenceSubgroup;
CosetAction build_coset_action(const CongruenceSubgroup& g, std::size_t bound);

/// A subgroup of SL2(Z) containing the kernel of SL2(Z) -> PSL2(Z/NZ),
/// represented by its image in SL2(Z/NZ).
class CongruenceSubgroup {
public:
    using Predicate = std::function<bool(const ModMatrix&)>;

    CongruenceSubgroup(std::int64_t N, SubgroupKind kind, std::string name, const Predicate& member,
                       std::size_t group_bound = default_group_bound)
        : N_(N), kind_(kind), name_(std::move(name)), group_(SL2ModGroup::get(N, group_bound)),
          cache_(std::make_shared<action_cache>()) {
        flags_.assign(group_->order(), 0);
        for (std::uint32_t i = 0; i < group_->order(); ++i)
            if (member(group_->element(i))) {
                flags_[i] = 1;
                ++members_;
            }
        validate();
    }

    std::int64_t level() const { return N_; }
    SubgroupKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::shared_ptr<const SL2ModGroup>& group() const { return group_; }
    std::size_t order() const { return members_; }
    std::size_t index() const { return group_->order() / members_; }

    bool contains(const ModMatrix& m) const { return flags_[group_->index_of(m)] != 0; }
    bool contains_index(std::uint32_t i) const { return flags_[i] != 0; }

    std::vector<std::uint32_t> member_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(members_);
        for (std::uint32_t i = 0; i < flags_.size(); ++i)
            if (flags_[i]) out.push_back(i);
        return out;
    }

    /// Cached coset action; built on first use.
    const CosetAction& action(std::size_t bound = default_coset_bound) const {
        std::call_once(cache_->once, [&] { cache_->value = build_coset_action(*this, bound); });
        return cache_->value;
    }

private:
    struct action_cache {
        std::once_flag once;
        CosetAction value;
    };

    // Scalars must be members and the member set must be closed. Closure is
    // decided by growing <g_1, ..., g_k> from members outside the current
    // span: the span ends up equal to <members>, which must not leave the set.
    void validate() const {
        for (std::int64_t lam : group_->scalars())
            if (!contains(scalar_times(lam, ModMatrix::identity(N_))))
                throw invalid_input(name_ + ": does not contain the scalar kernel at level " +
                                    std::to_string(N_));
        std::vector<char> span(flags_.size(), 0);
        std::vector<std::uint32_t> span_list;
        std::vector<ModMatrix> gens;
        const std::uint32_t id = group_->index_of(ModMatrix::identity(N_));
        span[id] = 1;
        span_list.push_back(id);
        for (std::uint32_t i = 0; i < flags_.size(); ++i) {
            if (!flags_[i] || span[i]) continue;
            gens.push_back(group_->element(i));
            for (std::size_t k = 0; k < span_list.size(); ++k)
                for (const ModMatrix& x : gens) {
                    std::uint32_t j = group_->index_of(group_->element(span_list[k]) * x);
                    if (span[j]) continue;
                    if (!flags_[j]) throw invalid_input(name_ + ": member set is not closed under multiplication");
                    span[j] = 1;
                    span_list.push_back(j);
                }
        }
    }

    std::int64_t N_;
    SubgroupKind kind_;
    std::string name_;
    std::shared_ptr<const SL2ModGroup> group_;
    std::vector<char> flags_;
    std::size_t members_ = 0;
    std::shared_ptr<action_cache> cache_;
};

/// Breadth-first from the identity coset over the generators T, S.
inline CosetAction build_coset_action(const CongruenceSubgroup& g, std::size_t bound) {
    if (g.index() > bound)
        throw bound_exceeded(g.name() + ": coset count " + std::to_string(g.index()) +
                             " exceeds bound " + std::to_string(bound));
    const auto& G = g.group();
    const std::int64_t N = g.level();
    CosetAction act;
    act.group = G;
    act.label.assign(G->order(), SL2ModGroup::npos);
    const std::vector<std::uint32_t> members = g.member_indices();
    auto add_coset = [&](const ModMatrix& rep) {
        auto id = static_cast<std::uint32_t>(act.cosets.size());
        act.cosets.push_back(rep);
        for (std::uint32_t h : members) act.label[G->index_of(G->element(h) * rep)] = id;
    };
    add_coset(ModMatrix::identity(N));
    const ModMatrix gens[2] = {gen_T(N), gen_S(N)};
    for (std::size_t i = 0; i < act.cosets.size(); ++i)
        for (const ModMatrix& x : gens) {
            ModMatrix y = act.cosets[i] * x;
            if (act.label[G->index_of(y)] == SL2ModGroup::npos) add_coset(y);
        }
    return act;
}

inline CosetAction coset_action(const CongruenceSubgroup& g, std::size_t bound = default_coset_bound) {
    return build_coset_action(g, bound);
}

inline CongruenceSubgroup make_subgroup(SubgroupKind kind, std::int64_t N) {
    if (N < 1) throw invalid_input("make_subgroup: level must be positive");
    const std::string name = kind_name(kind) + "(" + std::to_string(N) + ")";
    switch (kind) {
        case SubgroupKind::gamma0:
            return {N, kind, name, [](const ModMatrix& m) { return m.c == 0; }};
        case SubgroupKind::gamma1pm:
            return {N, kind, name, [](const ModMatrix& m) { return m.c == 0 && m.a == m.d; }};
        case SubgroupKind::gammahat:
            return {N, kind, name, [](const ModMatrix& m) { return m.b == 0 && m.c == 0 && m.a == m.d; }};
        case SubgroupKind::full:
            return {N, kind, name, [](const ModMatrix&) { return true; }};
        case SubgroupKind::custom:
            break;
    }
    throw invalid_input("make_subgroup: custom subgroups need a predicate or generators");
}

inline CongruenceSubgroup make_custom_subgroup(std::int64_t N, const CongruenceSubgroup::Predicate& member,
                                               std::string name = "custom") {
    return {N, SubgroupKind::custom, std::move(name), member};
}

/// The subgroup generated by the given matrices together with the scalar kernel.
inline CongruenceSubgroup subgroup_from_generators(std::int64_t N, const std::vector<ModMatrix>& gens,
                                                   std::string name = "custom") {
    auto G = SL2ModGroup::get(N);
    std::vector<char> in(G->order(), 0);
    std::vector<std::uint32_t> list;
    auto push = [&](const ModMatrix& m) {
        std::uint32_t i = G->index_of(m);
        if (!in[i]) {
            in[i] = 1;
            list.push_back(i);
        }
    };
    for (std::int64_t lam : G->scalars()) push(scalar_times(lam, ModMatrix::identity(N)));
    for (const ModMatrix& g : gens) {
        if (g.N != N) throw invalid_input("generator level does not match");
        if (g.det() != 1 % N) throw invalid_input("generator does not have determinant 1");
    }
    for (std::size_t k = 0; k < list.size(); ++k)
        for (const ModMatrix& x : gens) push(G->element(list[k]) * x);
    auto set = std::make_shared<std::vector<char>>(std::move(in));
    return make_custom_subgroup(
        N, [G, set](const ModMatrix& m) { return (*set)[G->index_of(m)] != 0; }, std::move(name));
}

// ---------------------------------------------------------------------------
// permutation characters

inline ModMatrix to_level(const HyperbolicMatrix& g, std::int64_t N) { return reduce_mod(g.matrix(), N); }

inline ModMatrix to_level(const ModMatrix& g, std::int64_t N) {
    if (g.N != N) throw invalid_input("matrix level does not match subgroup level");
    return g;
}

/// Number of cosets fixed by gamma, the induced trivial character at gamma.
template <class M>
std::int64_t char_trace(const CongruenceSubgroup& G, const M& gamma) {
    const CosetAction& act = G.action();
    const ModMatrix g = to_level(gamma, G.level());
    std::int64_t fixed = 0;
    for (std::size_t i = 0; i < act.size(); ++i)
        if (act.label[act.group->index_of(act.cosets[i] * g)] == i) ++fixed;
    return fixed;
}

template <class M>
CycleType cycle_type(const CongruenceSubgroup& G, const M& gamma) {
    return cycle_type_of(G.action().act(to_level(gamma, G.level())));
}

// ---------------------------------------------------------------------------
// normal forms gamma_nu

namespace detail {

/// x / den modulo N for an integer x: exact division when den | x, otherwise
/// multiplication by den^{-1} (N odd in that case).
inline std::int64_t div_mod(const Int& x, std::int64_t den, std::int64_t N) {
    if (x % den == 0) return mod_of(x / den, N);
    return mod_mul(mod_of(x, N), mod_inverse(den, N), N);
}

}  // namespace detail

/// [[(t + delta u)/2, (D - delta^2)/4 nu^-1 u], [nu u, (t - delta u)/2]] mod N,
/// delta = D (mod 2) for even N and delta = 0 for odd N.
inline ModMatrix gamma_nu(const Int& t, const Int& u, const Int& D, std::int64_t nu, std::int64_t N) {
    if (N < 1) throw invalid_input("gamma_nu: level must be positive");
    if (std::gcd(floor_mod<std::int64_t>(nu, N), N) != 1) throw invalid_input("gamma_nu: nu is not a unit modulo N");
    if (t * t - D * u * u != 4) throw invalid_input("gamma_nu: (t,u) does not solve t^2 - D u^2 = 4");
    const std::int64_t tm = mod_of(t, N), um = mod_of(u, N);
    if (um == 0 && (tm == 2 % N || tm == floor_mod<std::int64_t>(-2, N)))
        throw invalid_input("gamma_nu: (t,u) = (+-2, 0) modulo N");
    const Int delta = (N % 2 == 0) ? floor_mod(D, Int(2)) : Int(0);
    const std::int64_t nu_inv = mod_inverse(nu, N);
    const std::int64_t a = detail::div_mod(t + delta * u, 2, N);
    const std::int64_t d = detail::div_mod(t - delta * u, 2, N);
    const std::int64_t q = detail::div_mod(D - delta * delta, 4, N);
    const std::int64_t b = mod_mul(mod_mul(q, nu_inv, N), um, N);
    const std::int64_t c = mod_mul(floor_mod<std::int64_t>(nu, N), um, N);
    return ModMatrix::make(a, b, c, d, N);
}

/// Partition of the classes with invariants (t, u) by the PSL2(Z/NZ)-class of
/// the gamma_nu they are conjugate to.
struct NuClassSet {
    Int D, t, u;
    std::int64_t N = 1;
    std::vector<std::int64_t> nus;              // one nu per realized class, 1 first
    std::int64_t mu = 0;
    std::vector<std::vector<std::size_t>> parts;  // indices into class_list(t,u)
    std::vector<std::size_t> unmatched;           // classes conjugate to no gamma_nu
    std::int64_t h = 0;

    bool every_class_matched() const { return unmatched.empty(); }
    bool parts_equal() const {
        if (mu == 0 || h % mu != 0) return false;
        for (const auto& p : parts)
            if (static_cast<std::int64_t>(p.size()) != h / mu) return false;
        return true;
    }
};

inline NuClassSet nu_classes(const Int& t, const Int& u, std::int64_t N,
                             std::size_t bound = default_group_bound) {
    NuClassSet out;
    out.t = t;
    out.u = u;
    out.N = N;
    const std::vector<HyperbolicMatrix> classes = class_list(t, u);
    out.D = (t * t - 4) / (u * u);
    out.h = static_cast<std::int64_t>(classes.size());
    auto G = SL2ModGroup::get(N, bound);
    const auto& labels = G->psl_class_labels();

    const std::int64_t tm = mod_of(t, N), um = mod_of(u, N);
    const bool degenerate = um == 0 && (tm == 2 % N || tm == floor_mod<std::int64_t>(-2, N));

    // nu-classes: square-class representatives grouped by conjugacy of gamma_nu
    std::vector<std::pair<std::uint32_t, std::int64_t>> nu_label;  // (label, first nu)
    if (degenerate) {
        nu_label.emplace_back(labels[G->index_of(to_level(classes.front(), N))], 1 % N);
    } else {
        for (std::int64_t nu : square_class_reps(N)) {
            std::uint32_t lab = labels[G->index_of(gamma_nu(t, u, out.D, nu, N))];
            bool known = false;
            for (const auto& [l, n] : nu_label) known = known || l == lab;
            if (!known) nu_label.emplace_back(lab, nu);
        }
    }
    std::vector<std::vector<std::size_t>> by_class(nu_label.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::uint32_t lab = labels[G->index_of(to_level(classes[i], N))];
        bool found = false;
        for (std::size_t k = 0; k < nu_label.size() && !found; ++k)
            if (nu_label[k].first == lab) {
                by_class[k].push_back(i);
                found = true;
            }
        if (!found) out.unmatched.push_back(i);
    }
    for (std::size_t k = 0; k < nu_label.size(); ++k) {
        if (by_class[k].empty()) continue;
        out.nus.push_back(nu_label[k].second);
        out.parts.push_back(std::move(by_class[k]));
    }
    out.mu = static_cast<std::int64_t>(out.nus.size());
    return out;
}

// ---------------------------------------------------------------------------
// non-residue shift and the predicted relations between gamma_nu

/// Least l with 1 + alpha l^2 a quadratic non-residue modulo the prime p >= 5.
inline std::int64_t nonresidue_shift(std::int64_t alpha, std::int64_t p) {
    if (p < 5 || !is_prime(p)) throw invalid_input("nonresidue_shift: p must be a prime >= 5");
    if (floor_mod<std::int64_t>(alpha, p) == 0) throw invalid_input("nonresidue_shift: p divides alpha");
    for (std::int64_t l = 0; l < p; ++l) {
        std::int64_t v = floor_mod<std::int64_t>(1 + mod_mul(floor_mod<std::int64_t>(alpha, p), l * l % p, p), p);
        if (v != 0 && legendre(Int(v), p) == -1) return l;
    }
    throw std::logic_error("nonresidue_shift: no shift found");
}

/// Least quadratic non-residue modulo an odd prime.
inline std::int64_t least_nonresidue(std::int64_t p) {
    for (std::int64_t a = 2; a < p; ++a)
        if (legendre(Int(a), p) == -1) return a;
    throw invalid_input("least_nonresidue: p must be an odd prime");
}

/// gamma_{lhs_nu}^{lhs_pow} ~ gamma_{rhs_nu}^{rhs_pow} in PSL2(Z/p^r Z).
struct Relation {
    std::int64_t lhs_nu = 1, lhs_pow = 1, rhs_nu = 1, rhs_pow = 1;
    std::string residue_class;

    std::string str() const {
        auto side = [](std::int64_t nu, std::int64_t k) {
            std::string s = "gamma_" + std::to_string(nu);
            if (k != 1) s += "^" + std::to_string(k);
            return s;
        };
        return side(lhs_nu, lhs_pow) + " ~ " + side(rhs_nu, rhs_pow);
    }
};

/// D itself when the squarefree part of D is 1 mod 4, D/4 otherwise.
inline Int two_adic_normalization(const Int& D) {
    Int core = D;
    for (Int q = 2; q * q <= core; ++q)
        while (core % (q * q) == 0) core /= q * q;
    return floor_mod(core, Int(4)) == 1 ? D : Int(D / 4);
}

/// The relations predicted between the gamma_nu at level p^r.
inline std::vector<Relation> conj2_relations(std::int64_t p, int r, const Int& t, const Int& u, const Int& D) {
    (void)t;
    (void)u;
    if (!is_prime(p) || r < 1) throw invalid_input("conj2_relations: need a prime p and r >= 1");
    std::vector<Relation> rel;
    if (p == 2) {
        const Int d = two_adic_normalization(D);
        const std::int64_t d8 = mod_of(d, 8);
        auto add = [&](std::int64_t ln, std::int64_t lp, std::int64_t rn, std::int64_t rp, const std::string& cls) {
            rel.push_back({ln, lp, rn, rp, cls});
        };
        if (d8 % 4 == 1) {
            for (std::int64_t nu : {3, 5, 7}) add(1, 1, nu, 1, "d=1 mod 4");
        } else if (d8 % 4 == 3) {
            add(1, 1, 5, 1, "d=3 mod 4");
            add(3, 1, 7, 1, "d=3 mod 4");
            add(1, 3, 3, 1, "d=3 mod 4");
            add(3, 3, 1, 1, "d=3 mod 4");
        } else if (d8 == 2) {
            add(1, 1, 7, 1, "d=2 mod 8");
            add(3, 1, 5, 1, "d=2 mod 8");
            add(1, 3, 3, 1, "d=2 mod 8");
            add(3, 3, 1, 1, "d=2 mod 8");
        } else if (d8 == 6) {
            add(1, 1, 3, 1, "d=6 mod 8");
            add(5, 1, 7, 1, "d=6 mod 8");
            add(1, 5, 5, 1, "d=6 mod 8");
            add(5, 5, 1, 1, "d=6 mod 8");
        } else if (d8 == 4) {
            add(1, 1, 5, 1, "d=4 mod 8");
            add(3, 1, 7, 1, "d=4 mod 8");
            add(1, 3, 3, 1, "d=4 mod 8");
            add(3, 3, 1, 1, "d=4 mod 8");
        } else {
            for (std::int64_t nu : {3, 5, 7}) {
                add(1, nu, nu, 1, "d=0 mod 8");
                add(nu, nu, 1, 1, "d=0 mod 8");
            }
        }
        return rel;
    }
    std::int64_t pr = 1;
    for (int i = 0; i < r; ++i) pr *= p;
    const std::int64_t eta = least_nonresidue(p);
    if (D % p != 0) {
        rel.push_back({1, 1, eta, 1, "p does not divide D"});
    } else {
        const std::int64_t mu = mod_inverse(eta, pr);
        rel.push_back({1, eta, eta, 1, "p divides D"});
        rel.push_back({eta, mu, 1, 1, "p divides D"});
    }
    return rel;
}

/// Decide a relation by exhaustive conjugacy in PSL2(Z/NZ).
inline bool relation_holds(const Relation& rel, const Int& t, const Int& u, const Int& D, std::int64_t N) {
    ModMatrix lhs = mod_matrix_pow(gamma_nu(t, u, D, rel.lhs_nu, N), static_cast<std::uint64_t>(rel.lhs_pow));
    ModMatrix rhs = mod_matrix_pow(gamma_nu(t, u, D, rel.rhs_nu, N), static_cast<std::uint64_t>(rel.rhs_pow));
    return psl_conjugate(N, lhs, rhs);
}

// ---------------------------------------------------------------------------
// prime-power decomposition

/// The subgroups Gamma * kernel(p^r), one per prime power p^r || N, as
/// subgroups of level p^r. Throws when their intersection is larger than
/// Gamma, i.e. when the image of Gamma is not the product of its projections.
inline std::vector<CongruenceSubgroup> decompose_level(const CongruenceSubgroup& G) {
    const std::vector<prime_power> fa = factor(G.level());
    if (fa.size() <= 1) return {G};
    std::vector<CongruenceSubgroup> out;
    std::size_t product = 1;
    const std::vector<std::uint32_t> members = G.member_indices();
    for (const prime_power& pp : fa) {
        auto Gp = SL2ModGroup::get(pp.value);
        auto image = std::make_shared<std::vector<char>>(Gp->order(), 0);
        for (std::uint32_t i : members) (*image)[Gp->index_of(reduce_mod(G.group()->element(i), pp.value))] = 1;
        out.push_back(make_custom_subgroup(
            pp.value, [Gp, image](const ModMatrix& m) { return (*image)[Gp->index_of(m)] != 0; },
            G.name() + " mod " + std::to_string(pp.value)));
        product *= out.back().order();
    }
    if (product != G.order())
        throw std::domain_error(G.name() + ": image is not the product of its prime-power projections");
    return out;
}

}  // namespace arith_selberg
