#include "rittkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rittkit/constant_expr.hpp"
#include "rittkit/conjugacy.hpp"
#include "rittkit/decompose.hpp"
#include "rittkit/dml.hpp"
#include "rittkit/errors.hpp"
#include "rittkit/msclass.hpp"
#include "rittkit/parse.hpp"
#include "rittkit/semiconj.hpp"
#include "rittkit/symmetry.hpp"

namespace rittkit::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string field = "Q";
    std::string f, g, p, eta, a, b, c, d, curve, f1, f2, x0, y0, start;
    std::vector<std::string> fs;
    std::vector<std::uint64_t> primes;
    std::uint64_t prime_max = 50;
    std::vector<int> set;
    int nmax = 0, deg_cap = 0, iter_bound = 0, deg_bound = 0, n = 0, horizon = 0, degree_cap = kCurveDegreeCap;
    std::size_t height_cap = kDefaultHeightCap;
    std::size_t threshold = kExactBitThreshold;
    long bound_d = 0, bound_n = 0;
};

struct Context {
    Options o;
    Field K;
    json doc;
    json& input() { return doc["input"]; }
    json& result() { return doc["result"]; }
    json& cert() { return doc["certificates"]; }
    Poly poly(const std::string& name, const std::string& text) {
        input()[name] = text;
        return parse_poly(text, K);
    }
    BivarCurve curve(const std::string& text) {
        input()["curve"] = text;
        return parse_curve(text, K);
    }
    Scalar scalar(const std::string& name, const std::string& text) {
        input()[name] = text;
        return parse_scalar(text, K);
    }
};

std::string str(const Poly& p) { return p.to_string(); }
std::string str(const LinearPoly& l) { return l.to_string(); }
std::string str(const BivarCurve& c) { return c.to_string(); }

json strs(const std::vector<Poly>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(str(p));
    return out;
}

json ints(const std::vector<int>& v) {
    json out = json::array();
    for (int i : v) out.push_back(i);
    return out;
}

json extension_notes(const std::vector<ExtensionNote>& notes) {
    json out = json::array();
    for (const auto& e : notes) {
        json j{{"what", e.what}, {"equation", e.equation}};
        j["cyclotomic_hint"] = e.cyclotomic_hint ? json(*e.cyclotomic_hint) : json(nullptr);
        out.push_back(j);
    }
    return out;
}

Poly xpow(const Field& K, int k) { return Poly::monomial(Scalar(K, 1L), static_cast<std::size_t>(k)); }

json constant_json(const ConstantExpr& c) {
    json j;
    if (c.kind() == ConstantExpr::Kind::Exact) {
        j["kind"] = "exact";
        j["value"] = c.value().get_str();
        j["bits"] = c.value() == 0 ? 0 : mpz_sizeinbase(c.value().get_mpz_t(), 2);
    } else {
        j["kind"] = "symbolic";
        j["expression"] = c.to_string();
        j["log2_estimate"] = c.log2_estimate();
        j["log2_log2_estimate"] = c.log2_log2_estimate();
    }
    return j;
}

// Handlers.

void classify_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f);
    const ShapeReport r = classify(f);
    json& res = ctx.result();
    res["degree"] = r.degree;
    res["disintegrated"] = r.disintegrated;
    res["cyclic"] = r.is_cyclic;
    res["dihedral"] = r.is_dihedral;
    res["conjugate_to_power"] = r.conjugate_to_power;
    res["conjugate_to_chebyshev"] = r.conjugate_to_chebyshev;
    res["extensions"] = extension_notes(r.extensions);
    json& cert = ctx.cert();
    cert = json::object();
    if (r.conj_to_power) {
        const Poly lhs = compose(compose(*r.conj_to_power, f), r.conj_to_power->inverse());
        cert["power_conjugacy"] = {{"ell", str(*r.conj_to_power)}, {"conjugate", str(lhs)}, {"verified", lhs == xpow(f.field(), r.degree)}};
    }
    if (r.conj_to_pm_chebyshev) {
        const auto& [sign, ell] = *r.conj_to_pm_chebyshev;
        const Poly lhs = compose(compose(ell, f), ell.inverse());
        const Poly T = chebyshev(static_cast<std::size_t>(r.degree), f.field()) * Scalar(f.field(), static_cast<long>(sign));
        cert["chebyshev_conjugacy"] = {{"sign", sign}, {"ell", str(ell)}, {"conjugate", str(lhs)}, {"verified", lhs == T}};
    }
}

void decompose_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f);
    ctx.input()["deg_cap"] = ctx.o.deg_cap;
    const Decompositions ds = complete_decompositions(f, ctx.o.deg_cap);
    json chains = json::array(), checks = json::array();
    for (const auto& ch : ds.chains) {
        chains.push_back({{"factors", strs(ch.factors)}, {"degrees", ints(ch.degrees())}});
        bool indecomposable = true;
        for (const auto& fac : ch.factors) indecomposable = indecomposable && is_indecomposable(fac);
        checks.push_back({{"recomposes", ch.recompose() == f}, {"factors_indecomposable", indecomposable}});
    }
    json seqs = json::array();
    for (const auto& s : ds.degree_sequences) seqs.push_back(ints(s));
    ctx.result() = {{"indecomposable", is_indecomposable(f)}, {"chains", chains}, {"degree_sequences", seqs}};
    ctx.cert()["chains"] = checks;
}

void engstrom_cmd(Context& ctx) {
    const Poly a = ctx.poly("a", ctx.o.a), b = ctx.poly("b", ctx.o.b), c = ctx.poly("c", ctx.o.c), d = ctx.poly("d", ctx.o.d);
    const EngstromCertificate e = engstrom_refine(a, b, c, d);
    json& res = ctx.result();
    res = {{"g", str(e.g)}, {"h", str(e.h)}, {"a_hat", str(e.a_hat)}, {"b_hat", str(e.b_hat)}, {"c_hat", str(e.c_hat)}, {"d_hat", str(e.d_hat)}};
    res["ell"] = e.ell ? json(str(*e.ell)) : json(nullptr);
    json& cert = ctx.cert();
    cert["a = g o a_hat"] = compose(e.g, e.a_hat) == a;
    cert["c = g o c_hat"] = compose(e.g, e.c_hat) == c;
    cert["b = b_hat o h"] = compose(e.b_hat, e.h) == b;
    cert["d = d_hat o h"] = compose(e.d_hat, e.h) == d;
    cert["a_hat o b_hat = c_hat o d_hat"] = compose(e.a_hat, e.b_hat) == compose(e.c_hat, e.d_hat);
    cert["deg g = gcd(deg a, deg c), deg h = gcd(deg b, deg d)"] =
        e.g.degree() == std::gcd(a.degree(), c.degree()) && e.h.degree() == std::gcd(b.degree(), d.degree());
    if (e.ell) cert["a = c o ell, b = ell^-1 o d"] = compose(c, *e.ell) == a && compose(e.ell->inverse(), d) == b;
}

void gamma_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f);
    const LinearGroup G = gamma_group(f);
    json& res = ctx.result();
    res["kind"] = G.kind == LinearGroup::Kind::Infinite ? "infinite" : "finite";
    res["closure_order"] = G.closure_order;
    json els = json::array(), checks = json::array();
    for (std::size_t i = 0; i < G.elements.size(); ++i) {
        els.push_back({{"ell", str(G.elements[i])}, {"companion", str(G.companions[i])}});
        checks.push_back(compose(f, G.elements[i]) == compose(G.companions[i], f));
    }
    res["generator"] = G.generator ? json(str(*G.generator)) : json(nullptr);
    res["elements"] = els;
    json& cert = ctx.cert();
    cert["f o ell = L o f"] = checks;
    if (G.kind == LinearGroup::Kind::Finite) cert["group_axioms"] = verify_finite_group(G);
    else cert["f_is_cyclic"] = is_cyclic(f);
}

void m_infinity_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f);
    ctx.input()["iter_bound"] = ctx.o.iter_bound;
    const LinearGroup M = m_infinity(f, ctx.o.iter_bound);
    json els = json::array(), checks = json::array();
    for (std::size_t i = 0; i < M.elements.size(); ++i) {
        els.push_back({{"ell", str(M.elements[i])}, {"commuting_index", M.commuting_index[i]}});
        checks.push_back(commutes_with_iterate(f, M.elements[i].to_poly(), M.commuting_index[i]) == M.commuting_index[i]);
    }
    ctx.result() = {{"order", M.elements.size()}, {"trivial", M.elements.size() == 1}, {"elements", els}, {"stable", M.stable}};
    ctx.result()["generator"] = M.generator ? json(str(*M.generator)) : json(nullptr);
    ctx.cert()["ell o f^k = f^k o ell"] = checks;
    if (!M.elements.empty()) ctx.cert()["group_axioms"] = verify_finite_group(M);
}

void semiconj_check_cmd(Context& ctx) {
    const SemiconjWitness w{ctx.poly("f", ctx.o.f), ctx.poly("p", ctx.o.p), ctx.poly("eta", ctx.o.eta)};
    ctx.result()["semiconjugate"] = semiconj_check(w);
    ctx.cert() = {{"f o p", str(compose(w.f, w.p))}, {"p o eta", str(compose(w.p, w.eta))}};
}

void solve_eta_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f), p = ctx.poly("p", ctx.o.p);
    const auto etas = solve_eta_all(f, p);
    ctx.result() = {{"count", etas.size()}, {"eta", strs(etas)}};
    json checks = json::array();
    for (const auto& e : etas) checks.push_back(semiconj_check({f, p, e}));
    ctx.cert()["f o p = p o eta"] = checks;
}

void solve_p_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f), eta = ctx.poly("eta", ctx.o.eta);
    ctx.input()["deg_bound"] = ctx.o.deg_bound;
    std::vector<ExtensionNote> skipped;
    const auto ps = solve_p(f, eta, ctx.o.deg_bound, &skipped);
    ctx.result() = {{"count", ps.size()}, {"p", strs(ps)}, {"skipped", extension_notes(skipped)}};
    json checks = json::array();
    for (const auto& p : ps) checks.push_back(semiconj_check({f, p, eta}));
    ctx.cert()["f o p = p o eta"] = checks;
}

void inou_cmd(Context& ctx) {
    const SemiconjWitness w{ctx.poly("f", ctx.o.f), ctx.poly("p", ctx.o.p), ctx.poly("eta", ctx.o.eta)};
    const InouNormalForm r = inou_normal_form(w);
    ctx.result() = {{"l1", str(r.l1)}, {"l2", str(r.l2)}, {"b", r.b}, {"c", r.c}, {"P", str(r.P)},
                    {"c = b mod deg f", r.congruence_flag}, {"c = deg f mod b", r.degree_congruence_flag}};
    const Field& K = w.f.field();
    const Poly xb = xpow(K, r.b), xc = xpow(K, r.c);
    json& cert = ctx.cert();
    cert["l1 o f o l1^-1 = x^c P(x)^b"] = compose(compose(r.l1, w.f), r.l1.inverse()) == xc * r.P.pow(static_cast<std::size_t>(r.b));
    cert["l1 o p o l2^-1 = x^b"] = compose(compose(r.l1, w.p), r.l2.inverse()) == xb;
    cert["l2 o eta o l2^-1 = x^c P(x^b)"] = compose(compose(r.l2, w.eta), r.l2.inverse()) == xc * compose(r.P, xb);
    cert["P(0) != 0"] = !r.P.coeff(0).is_zero();
}

json common_json(const CommonWitness& w) { return {{"N", w.N}, {"eta", str(w.eta)}, {"p", str(w.p)}, {"q", str(w.q)}}; }

void common_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f), g = ctx.poly("g", ctx.o.g);
    ctx.input()["nmax"] = ctx.o.nmax;
    ctx.input()["deg_cap"] = ctx.o.deg_cap;
    const CommonSearch s = common_semiconjugate_search(f, g, ctx.o.nmax, ctx.o.deg_cap);
    ctx.result()["found"] = s.witness.has_value();
    ctx.result()["witness"] = s.witness ? common_json(*s.witness) : json(nullptr);
    ctx.result()["transcript"] = s.transcript;
    if (s.witness) ctx.cert()["f^N o p = p o eta, g^N o q = q o eta"] = verify_common(f, g, *s.witness);
    else ctx.cert() = json::object();
}

void approx_cmd(Context& ctx) {
    std::vector<Poly> fs;
    json in = json::array();
    for (const auto& t : ctx.o.fs) {
        in.push_back(t);
        fs.push_back(parse_poly(t, ctx.K));
    }
    ctx.input()["f"] = in;
    ctx.input()["nmax"] = ctx.o.nmax;
    ctx.input()["deg_cap"] = ctx.o.deg_cap;
    const ApproxClasses A = approx_classes(fs, ctx.o.nmax, ctx.o.deg_cap);
    json classes = json::array(), checks = json::array();
    for (std::size_t k = 0; k < A.classes.size(); ++k) {
        json c{{"members", ints(A.classes[k])}};
        const auto& w = A.witnesses[k];
        c["witness"] = w ? json{{"N", w->N}, {"theta", str(w->theta)}, {"p", strs(w->ps)}} : json(nullptr);
        classes.push_back(c);
        if (!w) continue;
        bool ok = true;
        for (std::size_t i = 0; i < A.classes[k].size(); ++i) {
            const Poly fN = iterate(fs[A.classes[k][i]], static_cast<std::size_t>(w->N));
            ok = ok && compose(fN, w->ps[i]) == compose(w->ps[i], w->theta);
        }
        checks.push_back(ok);
    }
    ctx.result() = {{"classes", classes}, {"at_caps", A.at_caps}};
    ctx.cert()["f_i^N o p_i = p_i o theta"] = checks;
}

void curve_image_cmd(Context& ctx) {
    const BivarCurve C = ctx.curve(ctx.o.curve);
    const Poly f = ctx.poly("f", ctx.o.f), g = ctx.poly("g", ctx.o.g);
    const BivarCurve img = curve_image(C, f, g);
    ctx.result() = {{"image", str(img)}, {"degree_x", img.degree_x()}, {"degree_y", img.degree_y()}};
    // Rational points of C above small x, pushed forward.
    json pts = json::array();
    bool all = true;
    if (C.degree_y() > 0) {
        for (long x = -3; x <= 3; ++x) {
            const Scalar X(ctx.K, x);
            const Poly fiber = C.poly().at_x(X);
            if (fiber.degree() < 1) continue;
            for (const auto& y : rational_roots(fiber)) {
                const bool ok = img.contains(f(X), g(y));
                all = all && ok;
                pts.push_back({{"x", X.to_string()}, {"y", y.to_string()}, {"image_on_curve", ok}});
            }
        }
    }
    ctx.cert() = {{"sampled_points", pts}, {"all_on_image", all}};
}

void curve_period_cmd(Context& ctx) {
    const BivarCurve C = ctx.curve(ctx.o.curve);
    const Poly f = ctx.poly("f", ctx.o.f), g = ctx.poly("g", ctx.o.g);
    ctx.input()["nmax"] = ctx.o.nmax;
    ctx.input()["degree_cap"] = ctx.o.degree_cap;
    const auto cert = curve_period(C, f, g, ctx.o.nmax, ctx.o.degree_cap);
    ctx.result()["periodic"] = cert.has_value();
    ctx.result()["period"] = cert ? json(cert->period) : json(nullptr);
    json chain = json::array();
    if (cert)
        for (const auto& c : cert->image_chain) chain.push_back(str(c));
    ctx.result()["image_chain"] = chain;
    if (cert) ctx.cert()["chain_recomputed"] = verify_period_certificate(*cert, f, g);
    else ctx.cert() = json::object();
}

void ms_diagonal_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f);
    ctx.input()["deg_cap"] = ctx.o.deg_cap;
    ctx.input()["iter_bound"] = ctx.o.iter_bound;
    const auto curves = ms_diagonal_curves(f, ctx.o.deg_cap, ctx.o.iter_bound);
    json out = json::array(), checks = json::array();
    for (const auto& d : curves) {
        out.push_back({{"curve", str(d.curve)}, {"g", str(d.g)}, {"mirrored", d.mirrored}, {"commuting_iterate", d.commuting_iterate},
                       {"period", d.certificate.period}});
        checks.push_back(verify_period_certificate(d.certificate, f, f));
    }
    ctx.result() = {{"count", curves.size()}, {"curves", out}};
    ctx.cert()["period_certificates"] = checks;
}

void bound_c1_cmd(Context& ctx) {
    const long d = ctx.o.bound_d, n = ctx.o.bound_n;
    ctx.input() = {{"d", d}, {"n", n}, {"threshold_bits", ctx.o.threshold}};
    ctx.result() = constant_json(bound_c1(d, n, ctx.o.threshold));
    json trace = json::array();
    for (long k = 2; k <= n; ++k) trace.push_back({{"n", k}, {"c1", constant_json(bound_c1(d, k, ctx.o.threshold))}});
    ctx.cert()["recursion"] = "c1(d, 2) = 2 d^4; c1(d, n) = c1(d, n - 1) * 2 * d^(4 c1(d, n - 1))";
    ctx.cert()["trace"] = trace;
}

void bound_c_cmd(Context& ctx) {
    const long d = ctx.o.bound_d, n = ctx.o.bound_n;
    ctx.input() = {{"d", d}, {"n", n}, {"threshold_bits", ctx.o.threshold}};
    const ConstantExpr c = bound_c(d, n, ctx.o.threshold);
    ctx.result() = constant_json(c);
    json trace = json::array();
    for (long k = 1; k <= n; ++k) {
        json step{{"n", k}, {"c", constant_json(bound_c(d, k, ctx.o.threshold))}};
        if (k >= 2) step["c1"] = constant_json(bound_c1(d, k, ctx.o.threshold));
        trace.push_back(step);
    }
    ctx.cert()["recursion"] = "c(d, 1) = 1; c(d, n) = max{c(d, n - 1)^(n - 1), floor(d^c1(d, n) / 2)}";
    ctx.cert()["trace"] = trace;
    if (n == 2) ctx.cert()["closed_form_d^(2 d^4) / 2"] = c == bound_c_closed_form_n2(d, ctx.o.threshold);
}

Point start_point(Context& ctx) { return {ctx.scalar("x0", ctx.o.x0), ctx.scalar("y0", ctx.o.y0)}; }

json point_json(const OrbitPoint& p) { return {{"index", p.index}, {"x", p.point.first.to_string()}, {"y", p.point.second.to_string()}}; }

void orbit_cmd(Context& ctx) {
    const Poly F1 = ctx.poly("f1", ctx.o.f1), F2 = ctx.poly("f2", ctx.o.f2);
    const Point alpha = start_point(ctx);
    ctx.input()["n"] = ctx.o.n;
    ctx.input()["height_cap"] = ctx.o.height_cap;
    const Orbit o = orbit(F1, F2, alpha, ctx.o.n, ctx.o.height_cap);
    json pts = json::array();
    for (const auto& p : o.points) pts.push_back(point_json(p));
    ctx.result() = {{"points", pts}};
    ctx.result()["truncated_at"] = o.truncated_at ? json(*o.truncated_at) : json(nullptr);
    ctx.cert() = json::object();
}

void return_set_cmd(Context& ctx) {
    const Poly F1 = ctx.poly("f1", ctx.o.f1), F2 = ctx.poly("f2", ctx.o.f2);
    const Point alpha = start_point(ctx);
    const BivarCurve C = ctx.curve(ctx.o.curve);
    ctx.input()["n"] = ctx.o.n;
    ctx.input()["height_cap"] = ctx.o.height_cap;
    const ReturnSet r = return_set_exact(F1, F2, alpha, C, ctx.o.n, ctx.o.height_cap);
    ctx.result() = {{"indices", ints(r.indices)}, {"horizon", r.horizon}};
    ctx.result()["truncated_at"] = r.truncated_at ? json(*r.truncated_at) : json(nullptr);
    const auto ps = progression_decompose(r.indices, r.horizon);
    json prog = json(nullptr);
    if (ps) {
        prog = json::array();
        for (const auto& p : *ps) prog.push_back({{"a", p.a}, {"b", p.b}});
    }
    ctx.result()["progressions"] = prog;
    ctx.cert()["evaluation"] = "exact";
}

void return_set_modp_cmd(Context& ctx) {
    const Poly F1 = ctx.poly("f1", ctx.o.f1), F2 = ctx.poly("f2", ctx.o.f2);
    const Point alpha = start_point(ctx);
    const BivarCurve C = ctx.curve(ctx.o.curve);
    std::vector<std::uint64_t> primes = ctx.o.primes;
    if (primes.empty())
        for (std::uint64_t p = 3; p <= ctx.o.prime_max; p += 2) {
            bool prime = true;
            for (std::uint64_t q = 3; q * q <= p; q += 2) prime = prime && p % q != 0;
            if (prime) primes.push_back(p);
        }
    ctx.input()["primes"] = primes;
    ctx.input()["n"] = ctx.o.n;
    const ModpSurvey s = return_set_modp_survey(F1, F2, alpha, C, primes, ctx.o.n);
    if (s.good.empty() && !s.rejected.empty()) throw BadReduction(s.rejected.front().first, s.rejected.front().second);
    json good = json::array(), rejected = json::array();
    for (const auto& r : s.good) {
        json j{{"prime", r.prime}, {"indices", ints(r.indices)}};
        j["cycle"] = r.cycle ? json{{"tail", r.cycle->first}, {"period", r.cycle->second}} : json(nullptr);
        good.push_back(j);
    }
    for (const auto& [p, why] : s.rejected) rejected.push_back({{"prime", p}, {"condition", why}});
    ctx.result() = {{"per_prime", good}, {"rejected", rejected}};
    ctx.result()["intersection"] = s.running_intersection.empty() ? json(nullptr) : ints(s.running_intersection.back());
    // Soundness against the exact set where the exact orbit is available.
    ctx.input()["height_cap"] = ctx.o.height_cap;
    const ReturnSet exact = return_set_exact(F1, F2, alpha, C, ctx.o.n, ctx.o.height_cap);
    bool sound = true;
    for (const auto& r : s.good) sound = sound && std::includes(r.indices.begin(), r.indices.end(), exact.indices.begin(), exact.indices.end());
    ctx.cert() = {{"exact_indices", ints(exact.indices)}, {"exact_horizon", exact.horizon}, {"exact_subset_of_every_prime", sound}};
}

void progressions_cmd(Context& ctx) {
    ctx.input() = {{"set", ctx.o.set}, {"horizon", ctx.o.horizon}};
    std::vector<int> S = ctx.o.set;
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    const auto ps = progression_decompose(S, ctx.o.horizon);
    ctx.result()["found"] = ps.has_value();
    json prog = json(nullptr);
    if (ps) {
        prog = json::array();
        for (const auto& p : *ps) prog.push_back({{"a", p.a}, {"b", p.b}});
    }
    ctx.result()["progressions"] = prog;
    if (ps) ctx.cert()["union_reproduces_set"] = expand_progressions(*ps, ctx.o.horizon) == S;
    else ctx.cert() = json::object();
}

void preperiodic_cmd(Context& ctx) {
    const Poly f = ctx.poly("f", ctx.o.f);
    const Scalar a = ctx.scalar("a", ctx.o.start);
    ctx.input()["n"] = ctx.o.n;
    ctx.input()["height_cap"] = ctx.o.height_cap;
    const PreperiodicResult r = preperiodic_check(f, a, ctx.o.n, ctx.o.height_cap);
    json& res = ctx.result();
    res["kind"] = to_string(r.kind);
    if (r.kind == PreperiodicResult::Kind::Preperiodic) {
        res["tail"] = r.tail;
        res["period"] = r.period;
    }
    json orb = json::array();
    for (const auto& x : r.orbit) orb.push_back(x.to_string());
    res["orbit"] = orb;
    ctx.cert() = json::object();
    if (r.escape) {
        ctx.cert()["escape"] = {{"index", r.escape->index},
                                {"point", r.escape->point.to_string()},
                                {"growth_lower_bound", r.escape->growth.get_str()},
                                {"reverified_5_steps", verify_escape(f, *r.escape, 5)}};
    }
    if (r.kind == PreperiodicResult::Kind::Preperiodic)
        ctx.cert()["repeat"] = {{"first", r.orbit[r.tail].to_string()}, {"again_at", r.tail + r.period}};
}

struct Command {
    std::string name;
    std::string help;
    std::function<void(CLI::App&, Options&)> options;
    std::function<void(Context&)> run;
};

void opt(CLI::App& app, const std::string& name, std::string& target, const std::string& help) { app.add_option(name, target, help)->required(); }

const std::vector<Command>& commands() {
    static const std::vector<Command> list = {
        {"classify", "Shape of f: cyclic, dihedral, disintegrated",
         [](CLI::App& a, Options& o) { opt(a, "--f", o.f, "polynomial"); }, classify_cmd},
        {"decompose", "All complete decompositions of f",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "polynomial");
             a.add_option("--deg-cap", o.deg_cap, "degree cap")->capture_default_str();
         },
         decompose_cmd},
        {"engstrom", "Common refinement of a o b = c o d",
         [](CLI::App& a, Options& o) {
             opt(a, "--a", o.a, "a");
             opt(a, "--b", o.b, "b");
             opt(a, "--c", o.c, "c");
             opt(a, "--d", o.d, "d");
         },
         engstrom_cmd},
        {"gamma", "Linear symmetry group of f", [](CLI::App& a, Options& o) { opt(a, "--f", o.f, "polynomial"); }, gamma_cmd},
        {"m-infinity", "Linear maps commuting with an iterate of f",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "polynomial");
             a.add_option("--iter-bound", o.iter_bound, "largest iterate")->capture_default_str();
         },
         m_infinity_cmd},
        {"semiconj-check", "Check f o p = p o eta",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "f");
             opt(a, "--p", o.p, "p");
             opt(a, "--eta", o.eta, "eta");
         },
         semiconj_check_cmd},
        {"solve-eta", "All eta with f o p = p o eta",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "f");
             opt(a, "--p", o.p, "p");
         },
         solve_eta_cmd},
        {"solve-p", "All p with f o p = p o eta up to a degree bound",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "f");
             opt(a, "--eta", o.eta, "eta");
             a.add_option("--deg-bound", o.deg_bound, "degree bound for p")->capture_default_str();
         },
         solve_p_cmd},
        {"inou", "Normal form of a semiconjugacy f o p = p o eta",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "f");
             opt(a, "--p", o.p, "p");
             opt(a, "--eta", o.eta, "eta");
         },
         inou_cmd},
        {"common-semiconj", "Common polynomial semiconjugate to f^N and g^N",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "f");
             opt(a, "--g", o.g, "g");
             a.add_option("--nmax", o.nmax, "largest N")->capture_default_str();
             a.add_option("--deg-cap", o.deg_cap, "degree cap for p and q")->capture_default_str();
         },
         common_cmd},
        {"approx-classes", "Classes of the approximate-semiconjugacy relation",
         [](CLI::App& a, Options& o) {
             a.add_option("--f", o.fs, "polynomial (repeat)")->required();
             a.add_option("--nmax", o.nmax, "largest N")->capture_default_str();
             a.add_option("--deg-cap", o.deg_cap, "degree cap")->capture_default_str();
         },
         approx_cmd},
        {"curve-image", "Image of a curve under f x g",
         [](CLI::App& a, Options& o) {
             opt(a, "--curve", o.curve, "curve G(x, y)");
             opt(a, "--f", o.f, "f");
             opt(a, "--g", o.g, "g");
         },
         curve_image_cmd},
        {"curve-period", "Period of a curve under f x g",
         [](CLI::App& a, Options& o) {
             opt(a, "--curve", o.curve, "curve G(x, y)");
             opt(a, "--f", o.f, "f");
             opt(a, "--g", o.g, "g");
             a.add_option("--nmax", o.nmax, "largest period searched")->capture_default_str();
             a.add_option("--degree-cap", o.degree_cap, "bidegree cap for image curves")->capture_default_str();
         },
         curve_period_cmd},
        {"ms-diagonal", "Periodic graphs of maps commuting with an iterate of f",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "f");
             a.add_option("--deg-cap", o.deg_cap, "degree cap")->capture_default_str();
             a.add_option("--iter-bound", o.iter_bound, "largest iterate")->capture_default_str();
         },
         ms_diagonal_cmd},
        {"bound-c1", "The constant c1(d, n)",
         [](CLI::App& a, Options& o) {
             a.add_option("d", o.bound_d, "degree")->required();
             a.add_option("n", o.bound_n, "number of factors")->required();
             a.add_option("--threshold", o.threshold, "bits kept exact")->capture_default_str();
         },
         bound_c1_cmd},
        {"bound-c", "The constant c(d, n)",
         [](CLI::App& a, Options& o) {
             a.add_option("d", o.bound_d, "degree")->required();
             a.add_option("n", o.bound_n, "number of factors")->required();
             a.add_option("--threshold", o.threshold, "bits kept exact")->capture_default_str();
         },
         bound_c_cmd},
        {"orbit", "Exact orbit of (x0, y0) under F1 x F2",
         [](CLI::App& a, Options& o) {
             opt(a, "--f1", o.f1, "F1");
             opt(a, "--f2", o.f2, "F2");
             opt(a, "--x0", o.x0, "x coordinate");
             opt(a, "--y0", o.y0, "y coordinate");
             a.add_option("--n", o.n, "last index")->capture_default_str();
             a.add_option("--height-cap", o.height_cap, "bit cap for coordinates")->capture_default_str();
         },
         orbit_cmd},
        {"return-set", "Exact return set of the orbit to a curve",
         [](CLI::App& a, Options& o) {
             opt(a, "--f1", o.f1, "F1");
             opt(a, "--f2", o.f2, "F2");
             opt(a, "--x0", o.x0, "x coordinate");
             opt(a, "--y0", o.y0, "y coordinate");
             opt(a, "--curve", o.curve, "curve G(x, y)");
             a.add_option("--n", o.n, "last index")->capture_default_str();
             a.add_option("--height-cap", o.height_cap, "bit cap for coordinates")->capture_default_str();
         },
         return_set_cmd},
        {"return-set-modp", "Return sets modulo primes (parallel over primes)",
         [](CLI::App& a, Options& o) {
             opt(a, "--f1", o.f1, "F1");
             opt(a, "--f2", o.f2, "F2");
             opt(a, "--x0", o.x0, "x coordinate");
             opt(a, "--y0", o.y0, "y coordinate");
             opt(a, "--curve", o.curve, "curve G(x, y)");
             a.add_option("--primes", o.primes, "odd primes, comma separated")->delimiter(',');
             a.add_option("--prime-max", o.prime_max, "use the odd primes up to this bound when --primes is absent")->capture_default_str();
             a.add_option("--n", o.n, "last index")->capture_default_str();
             a.add_option("--height-cap", o.height_cap, "bit cap for the exact comparison")->capture_default_str();
         },
         return_set_modp_cmd},
        {"progressions", "Decompose a set of indices into arithmetic progressions",
         [](CLI::App& a, Options& o) {
             a.add_option("--set", o.set, "indices, comma separated")->delimiter(',');
             a.add_option("--horizon", o.horizon, "largest index considered")->required();
         },
         progressions_cmd},
        {"preperiodic", "Preperiodicity of a under f",
         [](CLI::App& a, Options& o) {
             opt(a, "--f", o.f, "f");
             opt(a, "--a", o.start, "starting point");
             a.add_option("--n", o.n, "steps")->capture_default_str();
             a.add_option("--height-cap", o.height_cap, "bit cap")->capture_default_str();
         },
         preperiodic_cmd},
    };
    return list;
}

// Per-command defaults for the shared integer caps.
void set_defaults(const std::string& name, Options& o) {
    static const std::map<std::string, std::map<std::string, int>> defaults = {
        {"decompose", {{"deg_cap", kDecomposeDegreeCap}}},
        {"m-infinity", {{"iter_bound", 8}}},
        {"solve-p", {{"deg_bound", 4}}},
        {"common-semiconj", {{"nmax", 3}, {"deg_cap", 8}}},
        {"approx-classes", {{"nmax", 2}, {"deg_cap", 8}}},
        {"curve-period", {{"nmax", 8}}},
        {"ms-diagonal", {{"deg_cap", 4}, {"iter_bound", 4}}},
        {"orbit", {{"n", 10}}},
        {"return-set", {{"n", 10}}},
        {"return-set-modp", {{"n", 10}}},
        {"preperiodic", {{"n", 64}}},
    };
    const auto it = defaults.find(name);
    if (it == defaults.end()) return;
    for (const auto& [k, v] : it->second) {
        if (k == "deg_cap") o.deg_cap = v;
        if (k == "iter_bound") o.iter_bound = v;
        if (k == "deg_bound") o.deg_bound = v;
        if (k == "nmax") o.nmax = v;
        if (k == "n") o.n = v;
    }
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

Outcome failure(const std::string& command, int code, const std::string& status, const std::string& message, json extra = json::object()) {
    json doc{{"command", command}, {"status", status}, {"error", message}};
    for (auto& [k, v] : extra.items()) doc[k] = v;
    return {code, render(doc)};
}

// Turns {"command": ..., "args": [...], key: value, ...} into an argument list.
std::vector<std::string> job_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read job file " + path);
    json job;
    try {
        job = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(std::string("job file is not valid JSON: ") + e.what());
    }
    if (!job.is_object() || !job.contains("command") || !job["command"].is_string()) throw InputError("job file needs a string \"command\"");
    std::vector<std::string> args{job["command"].get<std::string>()};
    auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& [k, v] : job.items()) {
        if (k == "command") continue;
        if (k == "args") {
            if (!v.is_array()) throw InputError("\"args\" must be a list");
            for (const auto& e : v) args.push_back(text(e));
            continue;
        }
        if (v.is_array()) {
            for (const auto& e : v) {
                args.push_back("--" + k);
                args.push_back(text(e));
            }
        } else {
            args.push_back("--" + k);
            args.push_back(text(v));
        }
    }
    return args;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& c : commands()) out.push_back(c.name);
        return out;
    }();
    return names;
}

Outcome run_command(const std::vector<std::string>& raw) {
    std::vector<std::string> args = raw;
    std::string name = args.empty() ? std::string() : args.front();
    try {
        if (name == "--job") {
            if (args.size() != 2) throw InputError("usage: --job FILE");
            args = job_arguments(args[1]);
            name = args.front();
        }
    } catch (const InputError& e) {
        return failure(name, kExitInput, "input-error", e.what());
    }

    CLI::App app{"Exact tools for polynomial dynamics", "ritt-kit"};
    app.require_subcommand(1);
    Options o;
    std::string field;
    app.add_option("--field", o.field, "coefficient field: Q or Q(zeta N)")->capture_default_str();
    std::map<CLI::App*, const Command*> by_app;
    for (const auto& cmd : commands()) {
        if (cmd.name == name) set_defaults(name, o);
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--field", o.field, "coefficient field: Q or Q(zeta N)")->capture_default_str();
        cmd.options(*sub, o);
        by_app[sub] = &cmd;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {kExitOk, app.help()};
    } catch (const CLI::ParseError& e) {
        return failure(name, kExitInput, "input-error", e.what());
    }

    const Command* cmd = nullptr;
    for (const auto& [sub, c] : by_app)
        if (sub->parsed()) cmd = c;
    if (!cmd) return failure(name, kExitInput, "input-error", "no subcommand");

    Context ctx{o, Field(), json::object()};
    ctx.doc["command"] = cmd->name;
    ctx.doc["status"] = "ok";
    try {
        ctx.K = parse_field(o.field);
        ctx.doc["field"] = ctx.K.to_string();
        ctx.doc["input"] = json::object();
        ctx.doc["result"] = json::object();
        ctx.doc["certificates"] = json::object();
        cmd->run(ctx);
    } catch (const FieldExtensionRequired& e) {
        json extra{{"equation", e.equation()}};
        extra["cyclotomic_hint"] = e.cyclotomic_hint() ? json(*e.cyclotomic_hint()) : json(nullptr);
        return failure(cmd->name, kExitExtension, "field-extension-required", e.what(), extra);
    } catch (const ResourceError& e) {
        return failure(cmd->name, kExitResource, "resource-error", e.what());
    } catch (const InputError& e) {
        return failure(cmd->name, kExitInput, "input-error", e.what());
    } catch (const Error& e) {
        return failure(cmd->name, 1, "internal-error", e.what());
    }
    return {kExitOk, render(ctx.doc)};
}

}  // namespace rittkit::cli
