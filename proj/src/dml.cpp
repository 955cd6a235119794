#include "rittkit/dml.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "rittkit/errors.hpp"
#include "rittkit/kernels.hpp"

namespace rittkit {

namespace {

void check_fields(const Poly& F1, const Poly& F2, const Point& alpha) {
    const Field& K = F1.field();
    if (!(F2.field() == K) || !(alpha.first.field() == K) || !(alpha.second.field() == K)) throw InputError("field mismatch");
    if (F1.degree() < 0 || F2.degree() < 0) throw InputError("maps must be nonzero polynomials");
}

std::size_t height(const Point& P) { return std::max(P.first.height_bits(), P.second.height_bits()); }

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (a %= p; e; e >>= 1) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 reduce(const mpq_class& q, u64 p, u64 p_check, const std::string& what) {
    const u64 den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) throw BadReduction(p_check, "a denominator in " + what + " is divisible by p");
    const u64 num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    return mulmod(num, powmod(den, p - 2, p), p);
}

u64 reduce(const Scalar& s, u64 p, const std::string& what) {
    if (!s.is_rational()) throw InputError("mod-p filters accept rational inputs only (" + what + ")");
    return reduce(s.rational(), p, p, what);
}

std::vector<u64> reduce(const Poly& f, u64 p, const std::string& what) {
    std::vector<u64> out;
    for (const auto& c : f.coeffs()) out.push_back(reduce(c, p, what));
    if (!out.empty() && out.back() == 0) throw BadReduction(p, "the leading coefficient of " + what + " vanishes mod p, so the degree drops");
    return out;
}

u64 horner(const std::vector<u64>& f, u64 x, u64 p) {
    u64 acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
    return acc;
}

// Primitive integer multiple of G, which stays nonzero modulo every prime.
BivarPoly primitive(const BivarPoly& G) {
    mpz_class den = 1, num = 0;
    for (const auto& row : G.rows())
        for (const auto& c : row.coeffs()) {
            if (!c.is_rational()) throw InputError("mod-p filters accept rational inputs only (curve)");
            den = lcm(den, mpz_class(c.rational().get_den()));
            num = gcd(num, mpz_class(c.rational().get_num()));
        }
    mpq_class scale(den, num);
    scale.canonicalize();
    return G * Scalar(G.field(), scale);
}

mpq_class abs_rational(const Scalar& s) { return abs(s.rational()); }

// Lower bound of |f(x)| / |x| for |x| = r >= 1, from the triangle inequality.
mpq_class growth_bound(const Poly& f, const mpq_class& r) {
    const int d = f.degree();
    mpq_class lower = abs_rational(f.lc()), rp = 1;
    for (int i = 0; i < d; ++i) rp *= r;
    lower *= rp;
    rp = 1;
    for (int i = 0; i < d; ++i) {
        lower -= abs_rational(f.coeff(i)) * rp;
        rp *= r;
    }
    return lower / r;
}

}  // namespace

Orbit orbit(const Poly& F1, const Poly& F2, const Point& alpha, int N, std::size_t height_cap) {
    if (N < 0) throw InputError("N must be nonnegative");
    check_fields(F1, F2, alpha);
    Orbit out;
    Point P = alpha;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) P = {F1(P.first), F2(P.second)};
        if (height(P) > height_cap) {
            out.truncated_at = n;
            break;
        }
        out.points.push_back({n, P});
    }
    return out;
}

ReturnSet return_set_exact(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C, int N,
                           std::size_t height_cap) {
    if (!(C.field() == F1.field())) throw InputError("field mismatch");
    const Orbit o = orbit(F1, F2, alpha, N, height_cap);
    ReturnSet out;
    out.truncated_at = o.truncated_at;
    out.horizon = static_cast<int>(o.points.size()) - 1;
    for (const auto& pt : o.points)
        if (C.contains(pt.point.first, pt.point.second)) out.indices.push_back(pt.index);
    return out;
}

ModpReturnSet return_set_modp(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C, std::uint64_t p, int N) {
    if (N < 0) throw InputError("N must be nonnegative");
    if (p < 3 || p > kMaxPrime || !is_prime(p)) throw InputError("p must be an odd prime below 2^32, got " + std::to_string(p));
    check_fields(F1, F2, alpha);
    if (!F1.field().is_rational() || !(C.field() == F1.field()))
        throw InputError("mod-p filters accept rational inputs only");
    const auto f1 = reduce(F1, p, "F1");
    const auto f2 = reduce(F2, p, "F2");
    std::vector<std::vector<u64>> G;
    const BivarPoly Gq = primitive(C.poly());
    for (const auto& row : Gq.rows()) {
        std::vector<u64> r;
        for (const auto& c : row.coeffs()) r.push_back(reduce(c, p, "the curve"));
        G.push_back(std::move(r));
    }
    u64 x = reduce(alpha.first, p, "the point"), y = reduce(alpha.second, p, "the point");

    ModpReturnSet out;
    out.prime = p;
    std::unordered_map<u64, int> seen;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            x = horner(f1, x, p);
            y = horner(f2, y, p);
        }
        if (!out.cycle) {
            const auto [it, fresh] = seen.emplace(x * p + y, n);
            if (!fresh) {
                out.cycle = std::make_pair(it->second, n - it->second);
                seen.clear();
            }
        }
        u64 acc = 0;
        for (auto row = G.rbegin(); row != G.rend(); ++row) acc = (mulmod(acc, y, p) + horner(*row, x, p)) % p;
        if (acc == 0) out.indices.push_back(n);
    }
    return out;
}

ModpSurvey return_set_modp_survey(const Poly& F1, const Poly& F2, const Point& alpha, const BivarCurve& C,
                                  const std::vector<std::uint64_t>& primes, int N) {
    ModpSurvey out;
    std::optional<std::vector<int>> acc;
    for (auto& r : kernels::modp_return_sets(F1, F2, alpha, C, primes, N, kernels::Exec::Parallel)) {
        if (!r.good) {
            out.rejected.emplace_back(r.prime, r.rejection);
            continue;
        }
        if (!acc) {
            acc = r.result.indices;
        } else {
            std::vector<int> next;
            std::set_intersection(acc->begin(), acc->end(), r.result.indices.begin(), r.result.indices.end(), std::back_inserter(next));
            acc = std::move(next);
        }
        out.running_intersection.push_back(*acc);
        out.good.push_back(std::move(r.result));
    }
    return out;
}

std::optional<std::vector<Progression>> progression_decompose(const std::vector<int>& S, int horizon) {
    if (horizon < 0) throw InputError("horizon must be nonnegative");
    std::vector<char> chi(static_cast<std::size_t>(horizon) + 1, 0);
    for (int s : S) {
        if (s < 0 || s > horizon) throw InputError("set element " + std::to_string(s) + " outside [0, horizon]");
        chi[s] = 1;
    }
    const int bound = std::max(1, horizon / 3);
    std::optional<std::vector<Progression>> best;
    for (int P = 1; P <= bound; ++P) {
        int t = -1;
        for (int cand = 0; cand <= horizon / 3 && t < 0; ++cand) {
            bool ok = true;
            for (int n = cand; n + P <= horizon && ok; ++n) ok = chi[n] == chi[n + P];
            if (ok) t = cand;
        }
        if (t < 0) continue;
        std::vector<char> covered(chi.size(), 0);
        std::vector<Progression> ps;
        for (int r = t; r < t + P && r <= horizon; ++r) {
            if (!chi[r]) continue;
            int a = r;
            while (a - P >= 0 && chi[a - P]) a -= P;
            ps.push_back({a, P});
            for (int n = a; n <= horizon; n += P) covered[n] = 1;
        }
        for (int n = 0; n <= horizon; ++n)
            if (chi[n] && !covered[n]) ps.push_back({n, 0});
        std::sort(ps.begin(), ps.end());
        if (!best || ps.size() < best->size() || (ps.size() == best->size() && ps < *best)) best = std::move(ps);
    }
    return best;
}

std::vector<int> expand_progressions(const std::vector<Progression>& ps, int horizon) {
    std::vector<int> out;
    for (const auto& p : ps) {
        if (p.b == 0) {
            if (p.a <= horizon) out.push_back(static_cast<int>(p.a));
            continue;
        }
        for (long n = p.a; n <= horizon; n += p.b) out.push_back(static_cast<int>(n));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PreperiodicResult preperiodic_check(const Poly& f, const Scalar& a, int N, std::size_t height_cap) {
    if (N < 1) throw InputError("N must be positive");
    if (!(a.field() == f.field())) throw InputError("field mismatch");
    const bool rational = f.has_rational_coeffs() && a.is_rational() && f.degree() >= 2;
    PreperiodicResult out;
    std::map<Scalar, int> seen;
    Scalar x = a;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            x = f(x);
            if (x.height_bits() > height_cap) return out;
        }
        const auto [it, fresh] = seen.emplace(x, n);
        out.orbit.push_back(x);
        if (!fresh) {
            out.kind = PreperiodicResult::Kind::Preperiodic;
            out.tail = it->second;
            out.period = n - it->second;
            return out;
        }
        if (rational) {
            const mpq_class r = abs(x.rational());
            if (r >= 1) {
                const mpq_class g = growth_bound(f, r);
                if (g > 1) {
                    out.kind = PreperiodicResult::Kind::Escape;
                    out.escape = EscapeCertificate{n, x, g};
                    return out;
                }
            }
        }
    }
    return out;
}

bool verify_escape(const Poly& f, const EscapeCertificate& cert, int steps) {
    if (!cert.point.is_rational() || !f.has_rational_coeffs() || f.degree() < 2) return false;
    mpq_class r = abs(cert.point.rational());
    if (r < 1 || growth_bound(f, r) != cert.growth || cert.growth <= 1) return false;
    Scalar x = cert.point;
    for (int k = 0; k < steps; ++k) {
        const Scalar next = f(x);
        const mpq_class rn = abs(next.rational());
        if (rn <= r) return false;
        x = next;
        r = rn;
    }
    return true;
}

std::string to_string(PreperiodicResult::Kind k) {
    switch (k) {
        case PreperiodicResult::Kind::Preperiodic:
            return "preperiodic";
        case PreperiodicResult::Kind::Escape:
            return "escape";
        case PreperiodicResult::Kind::Unknown:
            return "unknown";
    }
    return {};
}

}  // namespace rittkit
