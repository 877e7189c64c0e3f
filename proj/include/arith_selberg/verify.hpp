#pragma once

// Verification suites: each compares a main code path against an oracle or an
// exhaustive check over a parameter range and returns one report per check.

#include "congruence.hpp"
#include "matrix_corr.hpp"
#include "oracles.hpp"
#include "pell_units.hpp"
#include "quadforms.hpp"
#include "zeta.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace arith_selberg::verify {

/// Parsed "key=lo..hi;key=a,b,c" parameter ranges.
class Range {
public:
    Range() = default;

    static Range parse(const std::string& text) {
        Range r;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) throw invalid_input("range: expected key=values, got '" + item + "'");
            const std::string key = item.substr(0, eq), body = item.substr(eq + 1);
            std::vector<std::int64_t> values;
            auto dots = body.find("..");
            try {
                if (dots != std::string::npos) {
                    std::int64_t lo = std::stoll(body.substr(0, dots)), hi = std::stoll(body.substr(dots + 2));
                    if (hi < lo) throw invalid_input("range: empty interval in '" + item + "'");
                    if (hi - lo > 10'000'000) throw invalid_input("range: interval too long in '" + item + "'");
                    for (std::int64_t v = lo; v <= hi; ++v) values.push_back(v);
                } else {
                    std::stringstream vs(body);
                    std::string v;
                    while (std::getline(vs, v, ',')) values.push_back(std::stoll(v));
                }
            } catch (const std::logic_error& e) {
                if (dynamic_cast<const invalid_input*>(&e)) throw;
                throw invalid_input("range: malformed number in '" + item + "'");
            }
            if (values.empty()) throw invalid_input("range: no values in '" + item + "'");
            r.values_[key] = std::move(values);
        }
        return r;
    }

    std::vector<std::int64_t> get(const std::string& key, std::vector<std::int64_t> fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }
    std::vector<std::int64_t> get(const std::string& key, std::int64_t lo, std::int64_t hi) const {
        auto it = values_.find(key);
        if (it != values_.end()) return it->second;
        std::vector<std::int64_t> v;
        for (std::int64_t x = lo; x <= hi; ++x) v.push_back(x);
        return v;
    }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::vector<std::int64_t>>& values() const { return values_; }

private:
    std::map<std::string, std::vector<std::int64_t>> values_;
};

inline std::string span(const std::string& key, const std::vector<std::int64_t>& v) {
    if (v.empty()) return key + "=";
    bool contiguous = v.size() > 2;
    for (std::size_t i = 1; i < v.size() && contiguous; ++i) contiguous = v[i] == v[i - 1] + 1;
    if (contiguous) return key + "=" + std::to_string(v.front()) + ".." + std::to_string(v.back());
    std::string s = key + "=";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// ---------------------------------------------------------------------------
// pell

inline std::vector<OracleReport> pell(const Range& range, std::int64_t scan_bound = 20000) {
    const auto Ds = range.get("D", 2, 5000);
    OracleReport r{"pell_fundamental_vs_ascending", span("D", Ds)};
    OracleReport pw{"pell_powers_relation", span("D", Ds) + ";j=1..8"};
    for (std::int64_t D : Ds) {
        if (!is_discriminant(D)) continue;
        const PellSolution cf = fundamental_solution(Discriminant(D));
        const auto asc = oracle::pell_ascending(D, scan_bound);
        if (asc) {
            if (!(*asc == cf))
                r.fail("D=" + std::to_string(D) + ": continued fraction (" + cf.t.str() + "," + cf.u.str() +
                       ") vs scan (" + asc->t.str() + "," + asc->u.str() + ")");
        } else if (cf.u <= scan_bound) {
            r.fail("D=" + std::to_string(D) + ": scan found nothing up to u=" + std::to_string(scan_bound) +
                   " but continued fraction gives u=" + cf.u.str());
        }
        for (unsigned j = 1; j <= 8; ++j)
            if (!pell_pow(cf, j).satisfies_relation()) pw.fail("D=" + std::to_string(D) + ", j=" + std::to_string(j));
    }
    return {r, pw};
}

// ---------------------------------------------------------------------------
// forms

inline std::vector<OracleReport> forms(const Range& range) {
    const auto Ds = range.get("D", 2, 200);
    OracleReport axioms{"class_group_axioms", span("D", Ds)};
    OracleReport order{"class_group_order", span("D", Ds)};
    OracleReport indep{"composition_representative_independence", span("D", Ds) + ";D<=120"};
    for (std::int64_t Dv : Ds) {
        if (!is_discriminant(Dv)) continue;
        const Discriminant D(Dv);
        const ClassGroup g = class_group(D);
        const GroupAxiomReport ax = check_group_axioms(g);
        if (!ax.ok()) axioms.fail("D=" + std::to_string(Dv));
        if (static_cast<std::int64_t>(g.order()) != class_number(D) ||
            static_cast<std::int64_t>(g.order()) != oracle::zagier_class_number(Dv))
            order.fail("D=" + std::to_string(Dv) + ": |group|=" + std::to_string(g.order()));
        if (Dv > 120) continue;
        // every pair of reduced forms, i.e. every pair of cycle members
        for (const auto& [f1, c1] : g.reduced_index)
            for (const auto& [f2, c2] : g.reduced_index) {
                const std::size_t got = g.class_of(compose(f1, f2));
                if (got != g.table[c1][c2]) {
                    indep.fail("D=" + std::to_string(Dv) + ": " + to_string(f1) + "*" + to_string(f2));
                    break;
                }
            }
    }
    return {axioms, order, indep};
}

// ---------------------------------------------------------------------------
// hd: class counts per trace against the Zagier oracle

inline std::vector<OracleReport> hd(const Range& range) {
    const auto ts = range.get("t", 3, 200);
    OracleReport r{"trace_class_count", span("t", ts)};
    OracleReport distinct{"class_list_pairwise_inequivalent", span("t", ts)};
    for (std::int64_t t : ts) {
        if (t < 3) {
            r.fail("t=" + std::to_string(t) + " is below 3");
            continue;
        }
        std::int64_t oracle_total = 0, main_total = 0;
        for (const auto& [key, count] : oracle::trace_class_count(t)) {
            oracle_total += count;
            const auto [u, D] = key;
            main_total += class_number(Discriminant(D));
            const auto part = detail::partition_cycles(D);
            std::set<std::size_t> seen;
            for (const HyperbolicMatrix& g : class_list(Int(t), Int(u))) {
                const QuadForm q = reduce(invariants_of(g).Q);
                const basic_quad_form<std::int64_t> f{q.a.convert_to<std::int64_t>(), q.b.convert_to<std::int64_t>(),
                                                      q.c.convert_to<std::int64_t>()};
                const auto it = std::lower_bound(part.forms.begin(), part.forms.end(), f);
                if (it == part.forms.end() || !(*it == f) ||
                    !seen.insert(part.class_of[static_cast<std::size_t>(it - part.forms.begin())]).second)
                    distinct.fail("t=" + std::to_string(t) + ", u=" + std::to_string(u));
            }
        }
        if (oracle_total != main_total)
            r.fail("t=" + std::to_string(t) + ": oracle " + std::to_string(oracle_total) + " vs " +
                   std::to_string(main_total));
    }
    return {r, distinct};
}

// ---------------------------------------------------------------------------
// lemma24 / lemma25

/// (t, u) pairs: the fundamental solution and its square for each discriminant.
inline std::vector<PellSolution> solutions_up_to(std::int64_t D_max) {
    std::vector<PellSolution> out;
    for (std::int64_t D = 5; D <= D_max; ++D) {
        if (!is_discriminant(D)) continue;
        const PellSolution s = fundamental_solution(Discriminant(D));
        out.push_back(s);
        out.push_back(pell_mul(s, s));
    }
    return out;
}

inline std::string tuN(const PellSolution& s, std::int64_t N) {
    return "D=" + s.D.str() + ", (t,u)=(" + s.t.str() + "," + s.u.str() + "), N=" + std::to_string(N);
}

inline std::vector<OracleReport> lemma24(const Range& range) {
    const auto Ns = range.get("N", 2, 25);
    const auto Dmax = range.get("D", {500}).back();
    OracleReport r{"every_class_conjugate_to_some_gamma_nu", span("N", Ns) + ";D<=" + std::to_string(Dmax)};
    OracleReport one{"gamma_1_realized", r.range};
    for (const PellSolution& s : solutions_up_to(Dmax))
        for (std::int64_t N : Ns) {
            const NuClassSet ncs = nu_classes(s.t, s.u, N);
            if (!ncs.every_class_matched()) r.fail(tuN(s, N));
            if (ncs.nus.empty() || ncs.nus.front() != 1 % N) one.fail(tuN(s, N));
        }
    return {r, one};
}

inline std::vector<OracleReport> lemma25(const Range& range) {
    const auto Ns = range.get("N", 2, 25);
    const auto Dmax = range.get("D", {500}).back();
    OracleReport r{"nu_parts_equal_size", span("N", Ns) + ";D<=" + std::to_string(Dmax)};
    for (const PellSolution& s : solutions_up_to(Dmax))
        for (std::int64_t N : Ns) {
            const NuClassSet ncs = nu_classes(s.t, s.u, N);
            if (!ncs.every_class_matched() || !ncs.parts_equal()) {
                std::string sizes;
                for (const auto& p : ncs.parts) sizes += (sizes.empty() ? "" : ",") + std::to_string(p.size());
                r.fail(tuN(s, N) + ", h=" + std::to_string(ncs.h) + ", parts=" + sizes);
            }
        }
    return {r};
}

// ---------------------------------------------------------------------------
// lemma26

/// Pairs (t, u) with t in ts and D = (t^2-4)/u^2 a discriminant.
inline std::vector<PellSolution> trace_pairs(const std::vector<std::int64_t>& ts) {
    std::vector<PellSolution> out;
    for (std::int64_t t : ts) {
        if (t < 3) continue;
        const std::int64_t n = t * t - 4;
        for (std::int64_t u = 1; u * u <= n; ++u)
            if (n % (u * u) == 0 && is_discriminant(n / (u * u)))
                out.push_back({Int(t), Int(u), Int(n / (u * u))});
    }
    return out;
}

struct RelationTally {
    std::int64_t confirmed = 0;
    std::int64_t failed = 0;
    std::string first_failure;
};

struct Lemma26Result {
    std::map<std::string, RelationTally> by_class;  // "p^r=..;<residue class>;<relation>"
    std::vector<std::string> uncovered;              // realized nu-classes not linked to nu = 1
    std::vector<OracleReport> reports;
};

/// The square-class representative of nu modulo N.
inline std::int64_t square_class_of(std::int64_t nu, std::int64_t N) {
    nu = floor_mod(nu, N);
    for (std::int64_t rep : square_class_reps(N))
        for (std::int64_t a = 1; a < N; ++a)
            if (std::gcd(a, N) == 1 && mod_mul(rep, mod_mul(a, a, N), N) == nu) return rep;
    throw invalid_input("square_class_of: not a unit");
}

inline Lemma26Result lemma26_detail(const Range& range) {
    const auto ps = range.get("p", {2, 3, 5, 7});
    const std::int64_t level_max = range.get("max", {27}).back();
    const auto ts = range.get("t", 3, 50);
    Lemma26Result out;
    OracleReport cover{"relations_cover_nu_classes", span("p", ps) + ";p^r<=" + std::to_string(level_max) + ";" + span("t", ts)};
    const auto pairs = trace_pairs(ts);
    for (std::int64_t p : ps) {
        if (!is_prime(p)) throw invalid_input("lemma26: p must be prime");
        std::int64_t pr = p;
        for (int r = 1; pr <= level_max; ++r, pr *= p) {
            for (const PellSolution& s : pairs) {
                const std::int64_t tm = mod_of(s.t, pr), um = mod_of(s.u, pr);
                if (um == 0 && (tm == 2 % pr || tm == pr - 2)) continue;
                // union-find over square classes linked by confirmed relations
                const auto reps = square_class_reps(pr);
                std::map<std::int64_t, std::int64_t> parent;
                for (std::int64_t v : reps) parent[v] = v;
                std::function<std::int64_t(std::int64_t)> find = [&](std::int64_t v) {
                    return parent[v] == v ? v : parent[v] = find(parent[v]);
                };
                for (const Relation& rel : conj2_relations(p, r, s.t, s.u, s.D)) {
                    const bool ok = relation_holds(rel, s.t, s.u, s.D, pr);
                    RelationTally& tally = out.by_class["p^r=" + std::to_string(pr) + ";" + rel.residue_class + ";" + rel.str()];
                    if (ok) {
                        ++tally.confirmed;
                        parent[find(square_class_of(rel.lhs_nu, pr))] = find(square_class_of(rel.rhs_nu, pr));
                    } else {
                        ++tally.failed;
                        if (tally.first_failure.empty()) tally.first_failure = tuN(s, pr);
                    }
                }
                // every realized nu-class must be joined to nu = 1 by confirmed
                // relations or by direct conjugacy
                auto G = SL2ModGroup::get(pr);
                const auto& labels = G->psl_class_labels();
                const std::uint32_t l1 = labels[G->index_of(gamma_nu(s.t, s.u, s.D, 1, pr))];
                for (std::int64_t v : nu_classes(s.t, s.u, pr).nus) {
                    if (find(v) == find(reps.front())) continue;
                    if (labels[G->index_of(gamma_nu(s.t, s.u, s.D, v, pr))] == l1) continue;
                    out.uncovered.push_back(tuN(s, pr) + ", nu=" + std::to_string(v));
                    cover.fail(out.uncovered.back() + " not linked to nu=1");
                }
            }
        }
    }
    OracleReport rels{"predicted_relations", cover.range};
    for (const auto& [key, tally] : out.by_class)
        if (tally.failed > 0 && tally.confirmed == 0)
            rels.fail(key + ": never holds, e.g. " + tally.first_failure);
    out.reports = {cover, rels};
    return out;
}

inline std::vector<OracleReport> lemma26(const Range& range) { return lemma26_detail(range).reports; }

// ---------------------------------------------------------------------------
// vz: coset actions, characters, decomposition, nu-invariance, index formula

inline Mat2 random_hyperbolic(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> k(-4, 4), len(2, 6);
    const Mat2 S{0, -1, 1, 0};
    for (;;) {
        Mat2 g;
        const int n = len(rng);
        for (int i = 0; i < n; ++i) g = g * Mat2{1, k(rng), 0, 1} * S;
        if (abs_value(g.trace()) > 2) return g;
    }
}

inline std::vector<CongruenceSubgroup> test_subgroups(const std::vector<std::int64_t>& Ns) {
    std::vector<CongruenceSubgroup> out;
    for (std::int64_t N : Ns)
        for (SubgroupKind k : {SubgroupKind::gamma0, SubgroupKind::gamma1pm, SubgroupKind::gammahat})
            out.push_back(make_subgroup(k, N));
    return out;
}

inline std::vector<OracleReport> vz(const Range& range, std::size_t samples = 1000, std::uint64_t seed = 20240611) {
    const auto Ns = range.get("N", 2, 24);
    OracleReport structure{"cycle_lengths_sum_to_index", span("N", Ns)};
    OracleReport fixed{"char_trace_is_fixed_point_count", span("N", Ns)};
    OracleReport hom{"coset_action_homomorphism", span("N", Ns)};
    OracleReport p1{"gamma0_p_matches_projective_line", "p=3,5,7,11,13"};
    std::mt19937_64 rng(seed);
    std::vector<Mat2> gammas;
    for (std::size_t i = 0; i < samples; ++i) gammas.push_back(random_hyperbolic(rng));

    for (const CongruenceSubgroup& G : test_subgroups(Ns)) {
        const CosetAction& act = G.action();
        if (act.size() != G.index()) structure.fail(G.name() + ": coset count");
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            const ModMatrix g = reduce_mod(gammas[i], G.level());
            const auto perm = act.act(g);
            const CycleType ct = cycle_type_of(perm);
            if (ct.points() != static_cast<std::int64_t>(G.index())) structure.fail(G.name());
            if (char_trace(G, g) != ct.fixed_points()) fixed.fail(G.name());
            if (i % 10 == 0) {
                const ModMatrix h = reduce_mod(gammas[(i + 1) % gammas.size()], G.level());
                const auto ph = act.act(h), pgh = act.act(g * h);
                for (std::size_t c = 0; c < perm.size(); ++c)
                    if (ph[perm[c]] != pgh[c]) {
                        hom.fail(G.name());
                        break;
                    }
            }
        }
    }
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        const CongruenceSubgroup G = make_subgroup(SubgroupKind::gamma0, p);
        for (std::size_t i = 0; i < 100; ++i)
            if (cycle_type_of(oracle::p1_action(p, gammas[i])) != cycle_type(G, reduce_mod(gammas[i], p)))
                p1.fail("p=" + std::to_string(p));
    }

    OracleReport mult{"char_multiplicative_over_prime_powers", "N=6,10,12,15"};
    for (std::int64_t N : {6, 10, 12, 15})
        for (SubgroupKind k : {SubgroupKind::gamma0, SubgroupKind::gamma1pm, SubgroupKind::gammahat}) {
            const CongruenceSubgroup G = make_subgroup(k, N);
            const auto parts = decompose_level(G);
            for (const Mat2& m : gammas) {
                std::int64_t prod = 1;
                for (const CongruenceSubgroup& P : parts) prod *= char_trace(P, reduce_mod(m, P.level()));
                if (prod != char_trace(G, reduce_mod(m, N))) {
                    mult.fail(G.name());
                    break;
                }
            }
        }

    OracleReport idx{"index_hat_equals_coset_count", "N=2,3,4,5,6,8,9,12"};
    for (std::int64_t N : {2, 3, 4, 5, 6, 8, 9, 12})
        if (index_hat(N) != static_cast<std::int64_t>(coset_action(make_subgroup(SubgroupKind::gammahat, N)).size()))
            idx.fail("N=" + std::to_string(N));

    const auto tmax = range.get("t", {20}).back();
    OracleReport nu{"cycle_type_nu_invariance", span("N", Ns) + ";t<=" + std::to_string(tmax)};
    std::vector<std::int64_t> ts;
    for (std::int64_t t = 3; t <= tmax; ++t) ts.push_back(t);
    const auto pairs = trace_pairs(ts);
    for (const CongruenceSubgroup& G : test_subgroups(Ns)) {
        const std::int64_t N = G.level();
        for (const PellSolution& s : pairs) {
            const std::int64_t tm = mod_of(s.t, N), um = mod_of(s.u, N);
            if (um == 0 && (tm == 2 % N || tm == floor_mod<std::int64_t>(-2, N))) continue;
            const NuClassSet ncs = nu_classes(s.t, s.u, N);
            const CycleType ref = cycle_type(G, gamma_nu(s.t, s.u, s.D, 1, N));
            for (std::int64_t v : ncs.nus)
                if (cycle_type(G, gamma_nu(s.t, s.u, s.D, v, N)) != ref)
                    nu.fail(G.name() + ", " + tuN(s, N) + ", nu=" + std::to_string(v));
        }
    }
    return {structure, fixed, hom, p1, mult, idx, nu};
}

// ---------------------------------------------------------------------------
// example1: closed form against the coset path, and the log-derivative

inline Real relative_difference(const Complex& a, const Complex& b) {
    const Real den = abs(b);
    return den == 0 ? abs(a - b) : Real(abs(a - b) / den);
}

inline std::vector<OracleReport> example1(const Range& range) {
    const auto ps = range.get("p", {3, 5, 7, 11});
    const double X = static_cast<double>(range.get("X", {30}).back());
    ZetaConfig cfg;
    cfg.X = X;
    cfg.n_max = 10;
    precision_scope scope(cfg.precision);
    const std::vector<Complex> ss = {Complex(Real(2)), Complex(Real(5) / 2), Complex(Real(3), Real(1))};
    OracleReport agree{"gamma0p_closed_form_agreement", span("p", ps) + ";s=2,2.5,3+i;X=" + std::to_string(static_cast<int>(X))};
    OracleReport pattern{"gamma0p_cycle_patterns", agree.range};
    for (std::int64_t p : ps) {
        const CongruenceSubgroup G = make_subgroup(SubgroupKind::gamma0, p);
        const SpectralTable table = spectral_table(G, X, cfg.precision);
        for (const SpectralRecord& r : table.records)
            if (r.ct != example1_pattern(p, r.unit))
                pattern.fail("p=" + std::to_string(p) + ", D=" + r.D.str() + ": " + r.ct.str() + " vs " +
                             example1_pattern(p, r.unit).str());
        for (const Complex& s : ss) {
            const SeriesValue a = zeta_from_table(table, s, cfg.n_max);
            const SeriesValue b = gamma0p_closed_form(p, s, cfg);
            const Real rel = relative_difference(a.value, b.value);
            if (rel > Real("1e-12"))
                agree.fail("p=" + std::to_string(p) + ", s=" + format_complex(s, 4) + ": relative difference " +
                           format_real(rel, 3));
        }
    }
    return {agree, pattern};
}

/// Central difference of log Z against the series for the derivative.
inline Real log_deriv_gap(const std::optional<CongruenceSubgroup>& G, const Real& s, double X,
                          const Real& step = Real("1e-5")) {
    ZetaConfig cfg;
    cfg.X = X;
    cfg.n_max = 40;
    cfg.j_max = 120;
    precision_scope scope(cfg.precision);
    const SpectralTable table = G ? spectral_table(*G, X, cfg.precision) : spectral_table(X, cfg.precision);
    const Real zp = zeta_from_table(table, Complex(Real(s + step)), cfg.n_max).value.re;
    const Real zm = zeta_from_table(table, Complex(Real(s - step)), cfg.n_max).value.re;
    const Real fd = (boost::multiprecision::log(zp) - boost::multiprecision::log(zm)) / (2 * step);
    const Real series = log_deriv_from_table(table, Complex(s), cfg.j_max).value.re;
    return boost::multiprecision::abs(fd - series);
}

inline std::vector<OracleReport> log_derivative(const Range& range) {
    const double X = static_cast<double>(range.get("X", {20}).back());
    OracleReport r{"log_deriv_finite_difference", "group=full,gamma0(5),gamma0(7);s=2,2.5,3;X=" + std::to_string(static_cast<int>(X))};
    precision_scope scope(default_precision_bits);
    const std::vector<std::optional<CongruenceSubgroup>> groups = {
        std::nullopt, make_subgroup(SubgroupKind::gamma0, 5), make_subgroup(SubgroupKind::gamma0, 7)};
    for (const auto& G : groups)
        for (const Real& s : {Real(2), Real(5) / 2, Real(3)}) {
            const Real gap = log_deriv_gap(G, s, X);
            if (gap > Real("1e-8"))
                r.fail((G ? G->name() : std::string("full")) + ", s=" + format_real(s, 3) + ": gap " + format_real(gap, 3));
        }
    return {r};
}

// ---------------------------------------------------------------------------
// pgt-band

struct BandPoint {
    double x;
    std::int64_t classnum;
    Real ratio;
};

inline std::vector<BandPoint> pgt_band_points(const std::vector<std::int64_t>& xs) {
    precision_scope scope(default_precision_bits);
    std::vector<BandPoint> pts;
    for (std::int64_t x : xs) {
        const std::int64_t cs = classnum_sum(static_cast<double>(x));
        const Real l = li(Real(x) * Real(x));
        pts.push_back({static_cast<double>(x), cs, Real(Real(cs) / l)});
    }
    return pts;
}

inline std::vector<OracleReport> pgt_band(const Range& range) {
    const auto xs = range.get("x", {200, 500, 1000});
    OracleReport band{"classnum_sum_over_li_in_band", span("x", xs)};
    OracleReport mono{"classnum_sum_over_li_approaches_one", band.range};
    precision_scope scope(default_precision_bits);
    const auto pts = pgt_band_points(xs);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].ratio < Real("0.8") || pts[i].ratio > Real("1.2"))
            band.fail("x=" + std::to_string(static_cast<std::int64_t>(pts[i].x)) + ": ratio " + format_real(pts[i].ratio, 6));
        if (i > 0 && boost::multiprecision::abs(pts[i].ratio - 1) > boost::multiprecision::abs(pts[i - 1].ratio - 1))
            mono.fail("x=" + std::to_string(static_cast<std::int64_t>(pts[i].x)) + ": ratio " + format_real(pts[i].ratio, 6) +
                      " farther from 1 than at x=" + std::to_string(static_cast<std::int64_t>(pts[i - 1].x)));
    }
    return {band, mono};
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"pell",    "forms", "hd",       "lemma24", "lemma25",
                                                   "lemma26", "vz",    "example1", "pgt-band"};
    return names;
}

inline std::vector<OracleReport> run_suite(const std::string& name, const std::string& range_text) {
    const Range range = Range::parse(range_text);
    if (name == "pell") return pell(range);
    if (name == "forms") return forms(range);
    if (name == "hd") return hd(range);
    if (name == "lemma24") return lemma24(range);
    if (name == "lemma25") return lemma25(range);
    if (name == "lemma26") return lemma26(range);
    if (name == "vz") return vz(range);
    if (name == "example1") {
        auto out = example1(range);
        for (auto& r : log_derivative(range)) out.push_back(std::move(r));
        return out;
    }
    if (name == "pgt-band") return pgt_band(range);
    throw invalid_input("unknown suite '" + name + "'");
}

}  // namespace arith_selberg::verify
