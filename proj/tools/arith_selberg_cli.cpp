// arith-selberg: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or input error, 3 domain error.

#include "arith_selberg/arith_selberg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace as = arith_selberg;
using Json = nlohmann::ordered_json;

namespace {

enum class Format { csv, json };

struct Output {
    Format format = Format::json;
    bool header_done = false;

    static std::string cell(const Json& v) {
        std::string s;
        if (v.is_null()) return "";
        if (v.is_string()) {
            s = v.get<std::string>();
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell(v[i]);
        } else {
            s = v.dump();
        }
        for (char& c : s)
            if (c == ',' || c == '\n') c = ';';
        return s;
    }

    void emit(const Json& rec) {
        if (format == Format::json) {
            std::cout << rec.dump() << "\n";
            return;
        }
        if (!header_done) {
            std::string h;
            for (auto it = rec.begin(); it != rec.end(); ++it) h += (h.empty() ? "" : ",") + it.key();
            std::cout << h << "\n";
            header_done = true;
        }
        std::string line;
        bool first = true;
        for (auto it = rec.begin(); it != rec.end(); ++it) {
            line += (first ? "" : ",") + cell(it.value());
            first = false;
        }
        std::cout << line << "\n";
    }
};

unsigned resolve_precision(const std::optional<unsigned>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ARITH_SELBERG_PRECISION")) {
        try {
            std::size_t pos = 0;
            const unsigned long v = std::stoul(env, &pos);
            if (pos == std::string(env).size() && v >= 64 && v <= 1u << 16) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw as::invalid_input("ARITH_SELBERG_PRECISION must be an integer between 64 and 65536");
    }
    return as::default_precision_bits;
}

as::Int parse_int(const std::string& text) {
    static const std::regex re("[+-]?[0-9]+");
    if (!std::regex_match(text, re)) throw as::invalid_input("not an integer: '" + text + "'");
    return as::Int(text);
}

/// "2", "2.5", "3+i", "3+1i", "3-0.5i", "2i".
as::Complex parse_complex(const std::string& text) {
    static const std::string num = "[0-9]+(?:\\.[0-9]*)?(?:[eE][+-]?[0-9]+)?";
    static const std::regex real_only("([+-]?" + num + ")");
    static const std::regex both("([+-]?" + num + ")([+-])(" + num + ")?i");
    static const std::regex imag_only("([+-]?" + num + ")?i");
    std::smatch m;
    if (std::regex_match(text, m, real_only)) return {as::Real(m[1].str()), as::Real(0)};
    if (std::regex_match(text, m, both)) {
        as::Real im = m[3].matched ? as::Real(m[3].str()) : as::Real(1);
        if (m[2].str() == "-") im = -im;
        return {as::Real(m[1].str()), im};
    }
    if (std::regex_match(text, m, imag_only)) {
        std::string c = m[1].matched ? m[1].str() : "1";
        if (c == "+" || c == "-") c += "1";
        return {as::Real(0), as::Real(c)};
    }
    throw as::invalid_input("not a number: '" + text + "'");
}

std::string form_text(const as::QuadForm& q) { return as::to_string(q); }

struct GroupChoice {
    std::string kind = "sl2z";
    std::int64_t level = 1;
    std::optional<as::CongruenceSubgroup> group;  // empty for the full modular group

    std::string label() const { return group ? group->name() : std::string("sl2z"); }
};

std::vector<as::ModMatrix> read_generators(const std::string& path, std::int64_t N) {
    std::ifstream in(path);
    if (!in) throw as::invalid_input("cannot open generator file '" + path + "'");
    std::vector<as::ModMatrix> gens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok.size() != 4)
            throw as::invalid_input(path + ":" + std::to_string(lineno) + ": expected four integers");
        std::int64_t e[4];
        for (int i = 0; i < 4; ++i) e[i] = as::mod_of(parse_int(tok[static_cast<std::size_t>(i)]), N);
        gens.push_back(as::ModMatrix::make(e[0], e[1], e[2], e[3], N));
    }
    return gens;
}

GroupChoice make_group(const std::string& kind, std::int64_t level) {
    GroupChoice g;
    g.kind = kind;
    g.level = level;
    if (kind == "sl2z" || kind == "full") {
        if (kind == "full" && level > 1) g.group = as::make_subgroup(as::SubgroupKind::full, level);
        return g;
    }
    if (level < 1) throw as::invalid_input("--level must be a positive integer");
    if (kind == "gamma0") g.group = as::make_subgroup(as::SubgroupKind::gamma0, level);
    else if (kind == "gamma1pm") g.group = as::make_subgroup(as::SubgroupKind::gamma1pm, level);
    else if (kind == "gammahat") g.group = as::make_subgroup(as::SubgroupKind::gammahat, level);
    else if (kind.rfind("custom:", 0) == 0)
        g.group = as::subgroup_from_generators(level, read_generators(kind.substr(7), level), "custom(" + std::to_string(level) + ")");
    else
        throw as::invalid_input("unknown group '" + kind + "' (sl2z, gamma0, gamma1pm, gammahat, custom:<file>)");
    return g;
}

as::Mat2 parse_matrix(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 4) throw as::invalid_input("--matrix expects a,b,c,d");
    as::Mat2 m{parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]), parse_int(parts[3])};
    if (m.det() != 1) throw as::invalid_input("--matrix must have determinant 1");
    return m;
}

Json matrix_json(const as::Mat2& m) { return Json::array({m.a.str(), m.b.str(), m.c.str(), m.d.str()}); }

Json cycles_json(const as::CycleType& ct) {
    Json arr = Json::array();
    for (auto [m, n] : ct.counts) arr.push_back(std::to_string(m) + "^" + std::to_string(n));
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selberg zeta functions of congruence subgroups via class numbers and fundamental units"};
    app.require_subcommand(1);

    std::string format_name = "json";
    std::optional<unsigned> precision_flag;
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--precision", precision_flag, "Working precision in bits (default 128, or ARITH_SELBERG_PRECISION)")
        ->check(CLI::Range(64u, 1u << 16));

    std::string D_text;
    auto* classnum = app.add_subcommand("classnum", "Narrow class number and reduced representatives");
    classnum->add_option("D", D_text, "Discriminant")->required();

    auto* unit = app.add_subcommand("unit", "Fundamental solution and fundamental unit");
    unit->add_option("D", D_text, "Discriminant")->required();

    std::string group_kind = "sl2z", s_text = "2";
    std::int64_t level = 1;
    double trunc_eps = 30.0;
    int n_max = 10, j_max = 60;
    bool closed_form = false, want_log_deriv = false;
    auto* zeta = app.add_subcommand("zeta", "Truncated zeta value with tail bound");
    zeta->add_option("--group", group_kind, "sl2z, gamma0, gamma1pm, gammahat or custom:<file>");
    zeta->add_option("--level", level, "Level N");
    zeta->add_option("--s", s_text, "Point s, e.g. 2, 2.5, 3+1i");
    zeta->add_option("--trunc-eps", trunc_eps, "Keep discriminants with eps(D) below this bound");
    zeta->add_option("--n-max", n_max, "Largest n in the inner product")->check(CLI::NonNegativeNumber);
    zeta->add_option("--j-max", j_max, "Largest power j in the log-derivative")->check(CLI::PositiveNumber);
    zeta->add_flag("--closed-form", closed_form, "Use the Gamma0(p) closed form");
    zeta->add_flag("--log-deriv", want_log_deriv, "Also print the logarithmic derivative");

    std::vector<double> xs;
    auto* pgt = app.add_subcommand("pgt", "Primitive geodesic count against li(x^2)");
    pgt->add_option("--group", group_kind, "sl2z, gamma0, gamma1pm, gammahat or custom:<file>");
    pgt->add_option("--level", level, "Level N");
    pgt->add_option("--x", xs, "Bound(s) x")->required();

    std::string suite, range_text;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "pell, forms, hd, lemma24, lemma25, lemma26, vz, example1, pgt-band")->required();
    verify->add_option("--range", range_text, "Parameter range, e.g. t=3..200 or p=2,3,5,7");

    std::string matrix_text;
    auto* chr = app.add_subcommand("char", "Induced permutation character at a matrix");
    chr->add_option("--group", group_kind, "gamma0, gamma1pm, gammahat or custom:<file>");
    chr->add_option("--level", level, "Level N");
    chr->add_option("--matrix", matrix_text, "a,b,c,d")->required();

    auto* ctype = app.add_subcommand("cycle-type", "Cycle type of a matrix on the cosets");
    ctype->add_option("--group", group_kind, "gamma0, gamma1pm, gammahat or custom:<file>");
    ctype->add_option("--level", level, "Level N");
    ctype->add_option("--matrix", matrix_text, "a,b,c,d")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Output out;
    out.format = format_name == "csv" ? Format::csv : Format::json;

    try {
        const unsigned bits = resolve_precision(precision_flag);
        const unsigned digits = as::bits_to_digits10(bits) - 1;
        as::precision_scope scope(bits);

        if (*classnum) {
            const as::Discriminant D(parse_int(D_text));
            Json reps = Json::array();
            for (const auto& q : as::class_representatives(D)) reps.push_back(form_text(q));
            out.emit(Json{{"command", "classnum"}, {"D", D.value().str()}, {"h", reps.size()}, {"reps", reps}});
        } else if (*unit) {
            const as::Discriminant D(parse_int(D_text));
            const as::UnitValue v = as::epsilon(D, bits);
            out.emit(Json{{"command", "unit"},
                          {"D", D.value().str()},
                          {"t", v.solution.t.str()},
                          {"u", v.solution.u.str()},
                          {"epsilon", as::format_real(v.real_view, digits)},
                          {"log_epsilon", as::format_real(v.log_view, digits)},
                          {"precision_bits", bits}});
        } else if (*zeta) {
            const GroupChoice g = make_group(group_kind, level);
            const as::Complex s = parse_complex(s_text);
            as::ZetaConfig cfg;
            cfg.X = trunc_eps;
            cfg.n_max = n_max;
            cfg.j_max = j_max;
            cfg.precision = bits;
            cfg.validate();
            std::string method = "coset";
            as::SeriesValue z;
            if (closed_form) {
                if (!g.group || g.group->kind() != as::SubgroupKind::gamma0 || !as::is_prime(level) || level < 3)
                    throw as::invalid_input("--closed-form needs --group gamma0 with an odd prime level");
                z = as::gamma0p_closed_form(level, s, cfg);
                method = "closed-form";
            } else {
                z = g.group ? as::zeta_congruence(*g.group, s, cfg) : as::zeta_sl2z(s, cfg);
            }
            auto record = [&](const std::string& quantity, const as::SeriesValue& v, const std::string& how) {
                return Json{{"command", "zeta"},
                            {"quantity", quantity},
                            {"group", g.label()},
                            {"level", g.group ? g.level : 1},
                            {"s_re", as::format_real(s.re, digits)},
                            {"s_im", as::format_real(s.im, digits)},
                            {"trunc_eps", trunc_eps},
                            {"n_max", n_max},
                            {"j_max", j_max},
                            {"method", how},
                            {"value_re", as::format_real(v.value.re, digits)},
                            {"value_im", as::format_real(v.value.im, digits)},
                            {"tail_bound", as::format_real(v.tail_bound, 6)},
                            {"tail_heuristic", v.tail_heuristic},
                            {"precision_bits", bits}};
            };
            out.emit(record("zeta", z, method));
            if (want_log_deriv) {
                const as::SeriesValue d = g.group ? as::log_deriv(*g.group, s, cfg) : as::log_deriv_sl2z(s, cfg);
                out.emit(record("log_deriv", d, "coset"));
            }
        } else if (*pgt) {
            const GroupChoice g = make_group(group_kind, level);
            for (double x : xs) {
                const as::PgtRow row = as::pgt_row(g.group, x, bits);
                out.emit(Json{{"command", "pgt"},
                              {"group", g.label()},
                              {"level", g.group ? g.level : 1},
                              {"x", x},
                              {"pi", row.pi},
                              {"classnum_sum", row.classnum},
                              {"li_x2", as::format_real(row.li_x2, digits)},
                              {"ratio", as::format_real(row.ratio, digits)}});
            }
        } else if (*verify) {
            bool ok = true;
            for (const as::OracleReport& r : as::verify::run_suite(suite, range_text)) {
                ok = ok && r.pass;
                out.emit(Json{{"command", "verify"},
                              {"suite", suite},
                              {"check", r.check},
                              {"range", r.range},
                              {"pass", r.pass},
                              {"counterexample", r.counterexample ? Json(*r.counterexample) : Json(nullptr)}});
            }
            return ok ? 0 : 1;
        } else if (*chr || *ctype) {
            const GroupChoice g = make_group(group_kind, level);
            if (!g.group) throw as::invalid_input("char and cycle-type need a congruence subgroup (--group, --level)");
            const as::Mat2 m = parse_matrix(matrix_text);
            const as::ModMatrix mm = as::reduce_mod(m, g.level);
            const as::CycleType ct = as::cycle_type(*g.group, mm);
            Json rec{{"command", *chr ? "char" : "cycle-type"},
                     {"group", g.label()},
                     {"level", g.level},
                     {"matrix", matrix_json(m)},
                     {"index", g.group->index()}};
            if (*chr) {
                rec["trace"] = as::char_trace(*g.group, mm);
            } else {
                rec["cycle_type"] = ct.str();
                rec["cycles"] = cycles_json(ct);
            }
            out.emit(rec);
        }
    } catch (const as::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const as::bound_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
