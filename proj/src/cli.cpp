#include "archimedea/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "archimedea/analytic.hpp"
#include "archimedea/characters.hpp"
#include "archimedea/coeffs.hpp"
#include "archimedea/errors.hpp"
#include "archimedea/reduction.hpp"
#include "archimedea/selberg.hpp"
#include "archimedea/whittaker.hpp"

namespace archimedea::cli {

using json = nlohmann::json;
using Cx = std::complex<double>;

namespace {

// ---- parsing ---------------------------------------------------------------

// complex with rational parts: "a", "bi", "a+bi", "a-bi"
CRat parse_crat(std::string s) {
    std::string t;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) t += c;
    if (t.empty()) fail("invalid-argument", "empty complex literal");
    if (t.back() != 'i') return CRat{Rational::parse(t)};
    t.pop_back();
    // locate the split between the real part and the imaginary coefficient
    size_t split = std::string::npos;
    for (size_t i = 1; i < t.size(); ++i) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != '/' && t[i - 1] != '+' && t[i - 1] != '-')
            split = i;
    }
    auto parse_coeff = [](std::string c) {
        if (c.empty() || c == "+") return Rational(1);
        if (c == "-") return Rational(-1);
        return Rational::parse(c);
    };
    if (split == std::string::npos) return CRat{Rational(0), parse_coeff(t)};
    return CRat{Rational::parse(t.substr(0, split)), parse_coeff(t.substr(split))};
}

// whitespace-separated atoms GR(shift) GC(shift) G(lambda,shift)
arch::ArchExpr parse_gamma_product(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isspace((unsigned char)c)) {
            if (!cur.empty()) { tokens.push_back(cur); cur.clear(); }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    if (tokens.empty()) fail("invalid-argument", "empty gamma expression");
    arch::ArchExpr acc;
    bool first = true;
    for (auto& tok : tokens) {
        auto open = tok.find('(');
        if (open == std::string::npos || tok.back() != ')')
            fail("invalid-argument", "bad gamma atom: " + tok);
        std::string head = tok.substr(0, open);
        std::string body = tok.substr(open + 1, tok.size() - open - 2);
        arch::ArchExpr factor;
        if (head == "GR") {
            factor = arch::build(arch::BuildKind::gamma_r, parse_crat(body));
        } else if (head == "GC") {
            factor = arch::build(arch::BuildKind::gamma_c, parse_crat(body));
        } else if (head == "G") {
            auto comma = body.find(',');
            if (comma == std::string::npos)
                fail("invalid-argument", "plain atom needs G(lambda,shift): " + tok);
            Rational lambda = Rational::parse(body.substr(0, comma));
            factor = arch::build(arch::BuildKind::plain, parse_crat(body.substr(comma + 1)), lambda);
        } else {
            fail("invalid-argument", "unknown atom kind: " + head);
        }
        acc = first ? factor : arch::combine(acc, factor, arch::CombineOp::mul);
        first = false;
    }
    return acc;
}

arch::ArchExpr parse_gamma_quotient(const std::string& num, const std::string& den) {
    arch::ArchExpr n = parse_gamma_product(num);
    if (den.empty()) return n;
    return arch::combine(n, parse_gamma_product(den), arch::CombineOp::div);
}

dirichlet::DirichletCharacter parse_character(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) fail("invalid-argument", "character spec must be <q>:<index>");
    return dirichlet::character_by_index(std::stoull(spec.substr(0, colon)),
                                         std::stoull(spec.substr(colon + 1)));
}

Poly parse_poly(const std::string& spec) {
    // comma-separated complex coefficients, low degree first
    std::vector<Cx> cs;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (!cur.empty()) cs.push_back(parse_crat(cur).value());
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (cs.empty()) fail("invalid-argument", "empty polynomial");
    return Poly(cs);
}

// ---- serialization ----------------------------------------------------------

json cx_json(Cx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json atom_json(const arch::GammaAtom& a) {
    json j;
    j["lambda"] = a.lambda.str();
    j["mu"] = cx_json(a.mu);
    j["kind"] = a.kind == arch::AtomKind::GammaR ? "GR"
                : a.kind == arch::AtomKind::GammaC ? "GC"
                                                   : "plain";
    j["display"] = a.display();
    return j;
}

json arch_json(const arch::ArchExpr& e) {
    json j;
    j["prefactor"] = {{"constant", cx_json(e.pref.constant())}, {"base", e.pref.base()}};
    j["num_atoms"] = json::array();
    for (auto& a : e.num) j["num_atoms"].push_back(atom_json(a));
    j["den_atoms"] = json::array();
    for (auto& a : e.den) j["den_atoms"].push_back(atom_json(a));
    json nr = json::array(), dr = json::array();
    for (auto& r : e.ratio.num_roots()) nr.push_back(cx_json(r));
    for (auto& r : e.ratio.den_roots()) dr.push_back(cx_json(r));
    j["ratio"] = {{"num_roots", nr}, {"den_roots", dr}};
    return j;
}

json gl2_json(const arch::GL2ArchType& t) {
    if (auto* ps = std::get_if<arch::PrincipalSeries>(&t)) {
        return json{{"type", "principal_series"}, {"eps1", ps->eps1}, {"eps2", ps->eps2},
                    {"nu", cx_json(ps->nu)},      {"b1", ps->b1},     {"b2", ps->b2}};
    }
    const auto& ds = std::get<arch::DiscreteSeries>(t);
    return json{{"type", "discrete_series"}, {"k", ds.k}, {"b3", ds.b3}};
}

json verdict_json(const arch::ReductionVerdict& v) {
    if (auto* fin = std::get_if<arch::FinitelyManyZeros>(&v)) {
        json j;
        j["verdict"] = "finitely_many_zeros";
        j["gl2"] = gl2_json(fin->gl2);
        json nr = json::array(), dr = json::array();
        for (auto& r : fin->ratio.num_roots()) nr.push_back(cx_json(r));
        for (auto& r : fin->ratio.den_roots()) dr.push_back(cx_json(r));
        j["ratio"] = {{"num_roots", nr}, {"den_roots", dr}};
        j["prefactor"] = {{"constant", cx_json(fin->prefactor.constant())},
                          {"base", fin->prefactor.base()}};
        return j;
    }
    const auto& inf = std::get<arch::InfinitelyManyZeros>(v);
    return json{{"verdict", "infinitely_many_zeros"}, {"witness", atom_json(inf.witness)}};
}

json series_json(const coeffs::CoefficientSeries& s) {
    json j;
    j["label"] = s.label;
    j["degree"] = s.degree;
    j["fe_known"] = s.fe_known;
    j["conductor"] = s.conductor;
    j["omega"] = cx_json(s.omega);
    j["theta_bound"] = s.theta_bound;
    return j;
}

std::string status_name(selberg::CheckStatus c) {
    switch (c) {
    case selberg::CheckStatus::pass: return "pass";
    case selberg::CheckStatus::fail: return "fail";
    case selberg::CheckStatus::heuristic_pass: return "heuristic-pass";
    default: return "heuristic-fail";
    }
}

// ---- command wiring ----------------------------------------------------------

struct Ctx {
    json config;       // echo of every effective option
    json payload;
    bool ran = false;
};

std::string cache_dir() {
    const char* env = std::getenv("ARCHIMEDEA_CACHE_DIR");
    return env && *env ? env : ".";
}

coeffs::CoefficientSeries series_from_spec(const std::string& spec) {
    return coeffs::builtin_series(spec);
}

arch::GL2ArchType rep_from_flags(const std::string& type, int eps1, int eps2,
                                 const std::string& nu, double b1, double b2, int k, double b3) {
    if (type == "ps")
        return arch::PrincipalSeries{eps1, eps2, parse_crat(nu).value(), b1, b2};
    if (type == "ds") return arch::DiscreteSeries{k, b3};
    fail("invalid-argument", "representation type must be ps or ds");
}

} // namespace

CommandResult run(const std::vector<std::string>& args) {
    auto t_start = std::chrono::steady_clock::now();
    CLI::App app{"archimedea: gamma-factor calculus and completed L-function numerics"};
    app.require_subcommand(1);
    Ctx ctx;

    // ---- gamma -----------------------------------------------------------
    auto* gamma = app.add_subcommand("gamma", "symbolic gamma-factor calculus");
    gamma->require_subcommand(1);
    std::string g_num, g_den, g_kind = "gr", g_shift = "0", g_scale = "1", g_point = "2";
    int g_eps = 1;

    auto add_expr_opts = [&](CLI::App* c, bool den_too = true) {
        c->add_option("--num", g_num, "numerator atoms, e.g. \"GR(0) GC(11)\"")->required();
        if (den_too) c->add_option("--den", g_den, "denominator atoms");
    };

    auto* g_build = gamma->add_subcommand("build", "build a single gamma factor");
    g_build->add_option("--kind", g_kind, "gr | gc | plain");
    g_build->add_option("--shift", g_shift, "shift a+bi with rational a, b");
    g_build->add_option("--scale", g_scale, "scale lambda (plain only)");
    g_build->callback([&] {
        ctx.config = {{"kind", g_kind}, {"shift", g_shift}, {"scale", g_scale}};
        arch::BuildKind k = g_kind == "gr"      ? arch::BuildKind::gamma_r
                            : g_kind == "gc"    ? arch::BuildKind::gamma_c
                            : g_kind == "plain" ? arch::BuildKind::plain
                                                : throw DomainError("invalid-argument",
                                                                    "kind must be gr|gc|plain");
        ctx.payload = arch_json(arch::build(k, parse_crat(g_shift), Rational::parse(g_scale)));
        ctx.ran = true;
    });

    auto* g_degree = gamma->add_subcommand("degree", "degree of a gamma quotient");
    add_expr_opts(g_degree);
    g_degree->callback([&] {
        ctx.config = {{"num", g_num}, {"den", g_den}};
        auto e = parse_gamma_quotient(g_num, g_den);
        ctx.payload = {{"degree", arch::degree(e).str()}, {"degree_value", arch::degree(e).value()}};
        ctx.ran = true;
    });

    auto* g_twist = gamma->add_subcommand("twist", "parity twist of the Gamma_R factors");
    add_expr_opts(g_twist);
    g_twist->add_option("--eps", g_eps, "character parity 0|1");
    g_twist->callback([&] {
        ctx.config = {{"num", g_num}, {"den", g_den}, {"eps", g_eps}};
        ctx.payload = arch_json(arch::twist_parity(parse_gamma_quotient(g_num, g_den), g_eps));
        ctx.ran = true;
    });

    auto* g_reduce = gamma->add_subcommand("reduce", "reduce a degree-2 quotient to GL(2) form");
    add_expr_opts(g_reduce);
    g_reduce->callback([&] {
        ctx.config = {{"num", g_num}, {"den", g_den}};
        auto v = arch::reduce_quotient(parse_gamma_quotient(g_num, g_den));
        ctx.payload = verdict_json(arch::normalize_rational(v));
        ctx.ran = true;
    });

    auto* g_stirling = gamma->add_subcommand("stirling", "Stirling profile constants");
    add_expr_opts(g_stirling);
    g_stirling->callback([&] {
        ctx.config = {{"num", g_num}, {"den", g_den}};
        auto p = arch::stirling_profile(parse_gamma_quotient(g_num, g_den));
        ctx.payload = {{"D", cx_json(p.D)}, {"Kprime", p.Kprime}, {"mu", cx_json(p.mu)},
                       {"c1", cx_json(p.c1)}};
        ctx.ran = true;
    });

    auto* g_eval = gamma->add_subcommand("eval", "evaluate a gamma expression");
    add_expr_opts(g_eval);
    g_eval->add_option("--point", g_point, "evaluation point a+bi");
    g_eval->callback([&] {
        ctx.config = {{"num", g_num}, {"den", g_den}, {"point", g_point}};
        ctx.payload = {{"value", cx_json(arch::eval_arch(parse_gamma_quotient(g_num, g_den),
                                                         parse_crat(g_point).value()))}};
        ctx.ran = true;
    });

    // ---- char ------------------------------------------------------------
    auto* chr = app.add_subcommand("char", "Dirichlet characters and epsilon factors");
    chr->require_subcommand(1);
    std::uint64_t c_mod = 1, c_idx = 0, c_mod2 = 1, c_idx2 = 0;
    int c_n = 3;
    std::string c_opi = "1:0", c_oro = "1:0", c_chi0 = "1:0", c_chi = "1:0";

    auto* c_table = chr->add_subcommand("table", "all characters mod q");
    c_table->add_option("--modulus", c_mod, "modulus q")->required();
    c_table->callback([&] {
        ctx.config = {{"modulus", c_mod}};
        json chars = json::array();
        for (auto& chi : dirichlet::character_table(c_mod)) {
            chars.push_back({{"index", chi.index()},
                             {"exponents", chi.exponents()},
                             {"order", chi.order()},
                             {"parity", chi.parity()},
                             {"conductor", chi.conductor()},
                             {"primitive", chi.is_primitive()}});
        }
        ctx.payload = {{"modulus", c_mod}, {"characters", chars}};
        ctx.ran = true;
    });

    auto* c_gauss = chr->add_subcommand("gauss", "Gauss sum of a primitive character");
    c_gauss->add_option("--modulus", c_mod)->required();
    c_gauss->add_option("--index", c_idx)->required();
    c_gauss->callback([&] {
        ctx.config = {{"modulus", c_mod}, {"index", c_idx}};
        auto chi = dirichlet::character_by_index(c_mod, c_idx);
        ctx.payload = {{"value", cx_json(dirichlet::gauss_sum(chi))}};
        ctx.ran = true;
    });

    auto* c_eps = chr->add_subcommand("eps", "global and archimedean epsilon factors");
    c_eps->add_option("--modulus", c_mod)->required();
    c_eps->add_option("--index", c_idx)->required();
    c_eps->callback([&] {
        ctx.config = {{"modulus", c_mod}, {"index", c_idx}};
        auto chi = dirichlet::character_by_index(c_mod, c_idx);
        auto e = dirichlet::eps_global(chi);
        ctx.payload = {{"r", cx_json(e.r)}, {"K", e.K}, {"infty", cx_json(dirichlet::eps_infty(chi))}};
        ctx.ran = true;
    });

    auto* c_prod = chr->add_subcommand("eps-product", "epsilon of a coprime product");
    c_prod->add_option("--modulus1", c_mod)->required();
    c_prod->add_option("--index1", c_idx)->required();
    c_prod->add_option("--modulus2", c_mod2)->required();
    c_prod->add_option("--index2", c_idx2)->required();
    c_prod->callback([&] {
        ctx.config = {{"modulus1", c_mod}, {"index1", c_idx}, {"modulus2", c_mod2}, {"index2", c_idx2}};
        auto e = dirichlet::eps_product_coprime(dirichlet::character_by_index(c_mod, c_idx),
                                                dirichlet::character_by_index(c_mod2, c_idx2));
        ctx.payload = {{"r", cx_json(e.r)}, {"K", e.K}};
        ctx.ran = true;
    });

    auto* c_weil = chr->add_subcommand("weil-eps", "stable epsilon quotient descriptor");
    c_weil->add_option("--n", c_n, "ambient degree, >= 3");
    c_weil->add_option("--omega-pi", c_opi, "character spec q:index");
    c_weil->add_option("--omega-rho", c_oro, "character spec q:index");
    c_weil->add_option("--chi0", c_chi0, "character spec q:index")->required();
    c_weil->add_option("--chi", c_chi, "character spec q:index");
    c_weil->callback([&] {
        ctx.config = {{"n", c_n}, {"omega_pi", c_opi}, {"omega_rho", c_oro}, {"chi0", c_chi0},
                      {"chi", c_chi}};
        auto d = dirichlet::weil_eps_descriptor(c_n, parse_character(c_opi), parse_character(c_oro),
                                                parse_character(c_chi0), parse_character(c_chi));
        ctx.payload = {{"constant", cx_json(d.constant)},
                       {"evaluated_char", cx_json(d.evaluated_char)},
                       {"N", d.N},
                       {"chi_at_N", cx_json(d.chi_at_N)},
                       {"eps_chi_sq", {{"r", cx_json(d.eps_chi_sq.r)}, {"K", d.eps_chi_sq.K}}}};
        ctx.ran = true;
    });

    // ---- coeffs -----------------------------------------------------------
    auto* cf = app.add_subcommand("coeffs", "Dirichlet coefficient providers");
    cf->require_subcommand(1);
    std::string s_series = "zeta", s_b = "zeta", s_op = "product", s_primes, s_out, s_chi = "1:0";
    std::uint64_t s_n = 10, s_p = 2;

    auto* cf_list = cf->add_subcommand("list", "coefficients a_1..a_N");
    cf_list->add_option("--series", s_series)->required();
    cf_list->add_option("--n", s_n);
    cf_list->callback([&] {
        ctx.config = {{"series", s_series}, {"n", s_n}};
        auto s = series_from_spec(s_series);
        json arr = json::array();
        for (auto& c : coeffs::dirichlet_coeffs(s, s_n)) arr.push_back(cx_json(c));
        ctx.payload = series_json(s);
        ctx.payload["coefficients"] = arr;
        ctx.ran = true;
    });

    auto* cf_dump = cf->add_subcommand("dump", "write the coefficient cache file");
    cf_dump->add_option("--series", s_series)->required();
    cf_dump->add_option("--n", s_n);
    cf_dump->add_option("--out", s_out, "output path (default in ARCHIMEDEA_CACHE_DIR)");
    cf_dump->callback([&] {
        auto s = series_from_spec(s_series);
        std::string path = s_out.empty()
                               ? cache_dir() + "/" + s.label + "-" + std::to_string(s_n) + ".coeffs"
                               : s_out;
        ctx.config = {{"series", s_series}, {"n", s_n}, {"out", path}};
        coeffs::write_cache(s, s_n, path);
        ctx.payload = {{"path", path}, {"n", s_n}, {"label", s.label}};
        ctx.ran = true;
    });

    auto* cf_twist = cf->add_subcommand("twist", "twist by a Dirichlet character");
    cf_twist->add_option("--series", s_series)->required();
    cf_twist->add_option("--chi", s_chi, "character spec q:index")->required();
    cf_twist->add_option("--n", s_n);
    cf_twist->callback([&] {
        ctx.config = {{"series", s_series}, {"chi", s_chi}, {"n", s_n}};
        auto t = coeffs::twist(series_from_spec(s_series), parse_character(s_chi));
        json arr = json::array();
        for (auto& c : coeffs::dirichlet_coeffs(t, s_n)) arr.push_back(cx_json(c));
        ctx.payload = series_json(t);
        ctx.payload["coefficients"] = arr;
        ctx.ran = true;
    });

    auto* cf_comb = cf->add_subcommand("combine", "product / quotient / partial");
    cf_comb->add_option("--a", s_series)->required();
    cf_comb->add_option("--b", s_b, "second series (product/quotient)");
    cf_comb->add_option("--op", s_op, "product | quotient | partial");
    cf_comb->add_option("--primes", s_primes, "comma-separated primes for partial");
    cf_comb->add_option("--n", s_n);
    cf_comb->callback([&] {
        ctx.config = {{"a", s_series}, {"b", s_b}, {"op", s_op}, {"primes", s_primes}, {"n", s_n}};
        coeffs::CoefficientSeries out;
        if (s_op == "partial") {
            std::set<std::uint64_t> ps;
            std::string cur;
            for (char c : s_primes + ",") {
                if (c == ',') {
                    if (!cur.empty()) ps.insert(std::stoull(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            out = coeffs::partial(series_from_spec(s_series), ps);
        } else if (s_op == "product" || s_op == "quotient") {
            out = coeffs::combine(series_from_spec(s_series), series_from_spec(s_b),
                                  s_op == "product" ? coeffs::SeriesOp::product
                                                    : coeffs::SeriesOp::quotient);
        } else {
            fail("invalid-argument", "op must be product|quotient|partial");
        }
        json arr = json::array();
        for (auto& c : coeffs::dirichlet_coeffs(out, s_n)) arr.push_back(cx_json(c));
        ctx.payload = series_json(out);
        ctx.payload["coefficients"] = arr;
        ctx.ran = true;
    });

    auto* cf_local = cf->add_subcommand("local", "local Euler factor at p");
    cf_local->add_option("--series", s_series)->required();
    cf_local->add_option("--p", s_p)->required();
    cf_local->callback([&] {
        ctx.config = {{"series", s_series}, {"p", s_p}};
        auto lf = series_from_spec(s_series).local_factor(s_p);
        json roots = json::array();
        for (auto& r : lf.inverse_roots) roots.push_back(cx_json(r));
        ctx.payload = {{"prime", lf.prime}, {"inverse_roots", roots}, {"js_bound_ok", lf.js_bound_ok}};
        ctx.ran = true;
    });

    // ---- lfun -------------------------------------------------------------
    auto* lf = app.add_subcommand("lfun", "completed L-function numerics");
    lf->require_subcommand(1);
    std::string l_series = "zeta", l_num = "sym2delta", l_den = "zeta", l_point = "2";
    std::uint64_t l_terms = 0;
    double l_from = 10.0, l_to = 26.0, l_step = 0.01;
    std::vector<double> l_range;

    auto* lf_eval = lf->add_subcommand("eval", "Lambda(s)");
    lf_eval->add_option("--series", l_series)->required();
    lf_eval->add_option("--point", l_point, "s = a+bi");
    lf_eval->add_option("--terms", l_terms, "series length N (0 = automatic)");
    lf_eval->callback([&] {
        ctx.config = {{"series", l_series}, {"point", l_point}, {"terms", l_terms}};
        auto s = series_from_spec(l_series);
        analytic::QuadratureSpec q;
        Cx z = parse_crat(l_point).value();
        Cx v = l_terms == 0 ? analytic::completed_eval_auto(s, z, q)
                            : analytic::completed_eval(s, z, l_terms, q);
        ctx.payload = {{"value", cx_json(v)}};
        ctx.ran = true;
    });

    auto* lf_fe = lf->add_subcommand("fe-check", "functional-equation residual");
    lf_fe->add_option("--series", l_series)->required();
    lf_fe->add_option("--point", l_point);
    lf_fe->callback([&] {
        ctx.config = {{"series", l_series}, {"point", l_point}};
        ctx.payload = {{"residual",
                        analytic::fe_residual(series_from_spec(l_series), parse_crat(l_point).value())}};
        ctx.ran = true;
    });

    auto* lf_zeros = lf->add_subcommand("zeros", "critical-line zero scan");
    lf_zeros->add_option("--series", l_series)->required();
    lf_zeros->add_option("--from", l_from);
    lf_zeros->add_option("--to", l_to);
    lf_zeros->add_option("--step", l_step);
    lf_zeros->callback([&] {
        ctx.config = {{"series", l_series}, {"from", l_from}, {"to", l_to}, {"step", l_step}};
        auto zs = analytic::scan_zeros(series_from_spec(l_series), l_from, l_to, l_step);
        ctx.payload = {{"zeros", zs}};
        ctx.ran = true;
    });

    auto* lf_poles = lf->add_subcommand("poles", "certified quotient poles at den zeros");
    lf_poles->add_option("--num", l_num)->required();
    lf_poles->add_option("--den", l_den)->required();
    lf_poles->add_option("--range", l_range, "t0 t1")->expected(2);
    lf_poles->callback([&] {
        double t0 = l_range.size() == 2 ? l_range[0] : 14.0;
        double t1 = l_range.size() == 2 ? l_range[1] : 22.0;
        ctx.config = {{"num", l_num}, {"den", l_den}, {"range", {t0, t1}}};
        auto rep = analytic::quotient_pole_report(series_from_spec(l_num), series_from_spec(l_den),
                                                  t0, t1);
        json entries = json::array();
        for (auto& e : rep.entries)
            entries.push_back({{"t", e.t},
                               {"den_zero_order", e.den_zero_order},
                               {"num_abs", e.num_abs},
                               {"certified", e.certified}});
        ctx.payload = {{"entries", entries}, {"grid_max", rep.grid_max}, {"margin", rep.margin}};
        ctx.ran = true;
    });

    // ---- whittaker ---------------------------------------------------------
    auto* wh = app.add_subcommand("whittaker", "GL(2,R) test-vector machinery");
    wh->require_subcommand(1);
    std::string w_type = "ps", w_nu = "0", w_poly = "1", w_nu_b = "0", w_s = "2";
    int w_eps1 = 0, w_eps2 = 0, w_k = 12, w_n = 0, w_epschi = 0;
    double w_b1 = 0.0, w_b2 = 0.0, w_b3 = 0.0;

    auto add_rep_opts = [&](CLI::App* c) {
        c->add_option("--type", w_type, "ps | ds");
        c->add_option("--eps1", w_eps1);
        c->add_option("--eps2", w_eps2);
        c->add_option("--nu", w_nu, "complex a+bi");
        c->add_option("--b1", w_b1);
        c->add_option("--b2", w_b2);
        c->add_option("--k", w_k, "weight (ds)");
        c->add_option("--b3", w_b3);
    };
    auto rep_config = [&] {
        return json{{"type", w_type}, {"eps1", w_eps1}, {"eps2", w_eps2}, {"nu", w_nu},
                    {"b1", w_b1},     {"b2", w_b2},     {"k", w_k},       {"b3", w_b3}};
    };

    auto* wh_q = wh->add_subcommand("qpoly", "Psi(s, W_n) / L(s, tau)");
    add_rep_opts(wh_q);
    wh_q->add_option("--n", w_n)->required();
    wh_q->callback([&] {
        ctx.config = rep_config();
        ctx.config["n"] = w_n;
        auto rep = rep_from_flags(w_type, w_eps1, w_eps2, w_nu, w_b1, w_b2, w_k, w_b3);
        auto q = whittaker::q_poly(rep, w_n);
        json cs = json::array();
        for (auto& c : q.poly.coeffs()) cs.push_back(cx_json(c));
        ctx.payload = {{"poly_coeffs", cs}, {"prefactor", cx_json(q.prefactor)},
                       {"degree", q.poly.degree()}};
        ctx.ran = true;
    });

    auto* wh_tv = wh->add_subcommand("testvec", "solve for a prescribed polynomial");
    add_rep_opts(wh_tv);
    wh_tv->add_option("--poly", w_poly, "coefficients c0,c1,... (complex)")->required();
    wh_tv->callback([&] {
        ctx.config = rep_config();
        ctx.config["poly"] = w_poly;
        auto rep = rep_from_flags(w_type, w_eps1, w_eps2, w_nu, w_b1, w_b2, w_k, w_b3);
        auto w = whittaker::test_vector(rep, parse_poly(w_poly));
        json entries = json::array();
        for (auto& [n, c] : w.entries) entries.push_back({{"n", n}, {"c", cx_json(c)}});
        ctx.payload = {{"entries", entries}};
        ctx.ran = true;
    });

    auto* wh_b = wh->add_subcommand("bessel-check", "Mellin-Bessel closed form");
    wh_b->add_option("--nu", w_nu_b);
    wh_b->add_option("--s", w_s);
    wh_b->callback([&] {
        ctx.config = {{"nu", w_nu_b}, {"s", w_s}};
        auto [lhs, rhs] =
            whittaker::mellin_bessel_check(parse_crat(w_nu_b).value(), parse_crat(w_s).value());
        ctx.payload = {{"lhs", cx_json(lhs)}, {"rhs", cx_json(rhs)},
                       {"rel_err", std::abs(lhs - rhs) / std::abs(rhs)}};
        ctx.ran = true;
    });

    auto* wh_g = wh->add_subcommand("gl2", "archimedean L-factor and epsilon constant");
    add_rep_opts(wh_g);
    wh_g->add_option("--eps-chi", w_epschi, "twisting parity 0|1");
    wh_g->callback([&] {
        ctx.config = rep_config();
        ctx.config["eps_chi"] = w_epschi;
        auto rep = rep_from_flags(w_type, w_eps1, w_eps2, w_nu, w_b1, w_b2, w_k, w_b3);
        auto [l, e] = whittaker::gl2_l_and_eps(rep, w_epschi);
        ctx.payload = {{"arch", arch_json(l)}, {"eps", cx_json(e)}};
        ctx.ran = true;
    });

    // ---- selberg -----------------------------------------------------------
    auto* sel = app.add_subcommand("selberg", "degree arithmetic and axiom audits");
    sel->require_subcommand(1);
    std::string se_series = "zeta", se_degree = "3";
    std::uint64_t se_n = 200;

    auto* se_ax = sel->add_subcommand("axioms", "audit (G1)/(G3)/(G4) and the local bounds");
    se_ax->add_option("--series", se_series)->required();
    se_ax->add_option("--n", se_n);
    se_ax->callback([&] {
        ctx.config = {{"series", se_series}, {"n", se_n}};
        auto s = std::make_shared<coeffs::CoefficientSeries>(series_from_spec(se_series));
        selberg::FEData fe;
        fe.Q = std::sqrt(s->conductor);
        fe.omega = s->omega;
        fe.arch = s->arch_factor;
        fe.series = s;
        fe.theta = s->theta_bound;
        auto r = selberg::axiom_report(fe, se_n);
        ctx.payload = {{"g1", status_name(r.g1)},
                       {"sigma_a_estimate", r.sigma_a_estimate},
                       {"g3", status_name(r.g3)},
                       {"g4", status_name(r.g4)},
                       {"theta_estimate", r.theta_estimate},
                       {"js_bound", status_name(r.js_bound)}};
        if (r.g3_witness) ctx.payload["g3_witness"] = atom_json(*r.g3_witness);
        if (r.js_bound == selberg::CheckStatus::fail) {
            ctx.payload["js_prime"] = r.js_prime;
            ctx.payload["js_alpha"] = cx_json(r.js_alpha);
        }
        ctx.ran = true;
    });

    auto* se_part = sel->add_subcommand("partitions", "admissible degree factorizations");
    se_part->add_option("--degree", se_degree, "rational degree");
    se_part->callback([&] {
        ctx.config = {{"degree", se_degree}};
        auto parts = selberg::factorization_partitions(Rational::parse(se_degree));
        json arr = json::array();
        for (auto& p : parts) {
            json parts_j = json::array(), ann = json::array();
            for (auto& x : p.parts) parts_j.push_back(x.str());
            for (auto& a : p.annotations) ann.push_back(a);
            arr.push_back({{"parts", parts_j}, {"annotations", ann}});
        }
        ctx.payload = {{"partitions", arr}};
        ctx.ran = true;
    });

    auto* se_prim = sel->add_subcommand("primitivity", "refutation jobs for degree-3 factorizations");
    se_prim->add_option("--series", se_series)->required();
    se_prim->callback([&] {
        ctx.config = {{"series", se_series}};
        auto s = std::make_shared<coeffs::CoefficientSeries>(series_from_spec(se_series));
        selberg::FEData fe;
        fe.arch = s->arch_factor;
        fe.series = s;
        auto rep = selberg::primitivity_obstruction(fe);
        json shapes = json::array();
        for (auto& sh : rep.shapes) {
            json parts = json::array();
            for (auto& p : sh.partition) parts.push_back(p.str());
            json jobs = json::array();
            for (auto& jb : sh.jobs)
                jobs.push_back({{"operation", jb.operation}, {"description", jb.description}});
            shapes.push_back({{"partition", parts}, {"quotient", sh.quotient}, {"jobs", jobs}});
        }
        ctx.payload = {{"shapes", shapes}};
        ctx.ran = true;
    });

    // ---- dispatch ----------------------------------------------------------
    json doc;
    doc["schema_version"] = 1;
    std::vector<const char*> argv;
    argv.push_back("archimedea");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
        doc["status"] = "ok";
        doc["payload"] = ctx.payload;
        doc["config_echo"] = ctx.config;
    } catch (const CLI::CallForHelp&) {
        doc["status"] = "ok";
        doc["payload"] = {{"help", app.help()}};
        doc["config_echo"] = json::object();
    } catch (const CLI::ParseError& e) {
        doc["status"] = "error";
        doc["payload"] = {{"error", "usage"}, {"message", e.what()}, {"help", app.help()}};
        doc["config_echo"] = json::object();
        doc["timing_ms"] = 0.0;
        return {2, doc.dump(2)};
    } catch (const DomainError& e) {
        doc["status"] = "error";
        doc["payload"] = {{"error", e.code()}, {"message", e.what()}};
        doc["config_echo"] = ctx.config;
        doc["timing_ms"] = 0.0;
        return {1, doc.dump(2)};
    }
    auto t_end = std::chrono::steady_clock::now();
    doc["timing_ms"] = std::chrono::duration<double, std::milli>(t_end - t_start).count();
    return {0, doc.dump(2)};
}

} // namespace archimedea::cli
