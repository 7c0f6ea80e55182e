#ifndef ROTORLAB_ACCEPTANCE_HPP
#define ROTORLAB_ACCEPTANCE_HPP

#include "expansions.hpp"
#include "parallel.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>

namespace rotorlab {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace acceptance {

inline CriterionResult make_result(int id, std::string title)
{
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    return r;
}

inline std::string fmt(const Real& v, int digits = 12) { return v.str(digits); }

inline CriterionResult limit_table()
{
    static const char* published[] = {"0.04394252102495575454",     "0.027915747684440153071",
                                      "0.0043390573122902285760",   "0.0011842200753144612564",
                                      "0.00044544206984605774866",  "0.00020336198417268636974",
                                      "0.00010566669827864850788",  "0.0000602301047692083869367"};
    auto r = make_result(1, "A_m limit table (m = 1..8, |error| <= 1e-12)");
    Real worst(0);
    long worst_m = 0;
    for (long m = 1; m <= 8; ++m) {
        Real err = mp::abs(limit_Am(m) - Real(published[m - 1]));
        if (err > worst) {
            worst = err;
            worst_m = m;
        }
    }
    r.pass = worst <= Real("1e-12");
    r.detail = "max error " + fmt(worst, 3) + " at m=" + std::to_string(worst_m);
    return r;
}

inline CriterionResult series_sum(Real* out = nullptr)
{
    auto r = make_result(2, "series sum over m <= 2000 = 0.0783220277996 +- 1e-10");
    Real s = limit_area_series(2000);
    if (out) *out = s;
    Real err = mp::abs(s - Real("0.0783220277996"));
    r.pass = err <= Real("1e-10");
    r.detail = "sum " + fmt(s, 15) + ", error " + fmt(err, 3);
    return r;
}

inline CriterionResult percent_check(const Real* sum = nullptr)
{
    auto r = make_result(3, "series sum / (1 - pi/4) in [0.355, 0.370]");
    Real s = sum ? *sum : limit_area_series(2000);
    Real q = s / (1 - pi_real() / 4);
    r.pass = q >= Real("0.355") && q <= Real("0.370");
    r.detail = "ratio " + fmt(q, 6);
    return r;
}

inline CriterionResult fixed_point_oracle()
{
    auto r = make_result(4, "exact period/code of Z(m,n) at lambda = 1/64, m <= 10");
    Exact lam = make_exact(1, 64);
    ExactVertices v(lam);
    auto recs = admissible_fixed_points(v, 10);
    std::vector<char> ok(recs.size());
    parallel_for(recs.size(), [&](size_t i) { ok[i] = verify_fixed_point(recs[i], lam).verified; });
    long fails = 0;
    std::string first;
    for (size_t i = 0; i < recs.size(); ++i)
        if (!ok[i]) {
            if (!fails) first = " first (" + std::to_string(recs[i].m) + "," + std::to_string(recs[i].n) + ")";
            ++fails;
        }
    r.pass = fails == 0 && !recs.empty();
    r.detail = std::to_string(recs.size()) + " orbits, " + std::to_string(fails) + " failures" + first;
    return r;
}

// Strictly interior point: random positive weights on the vertices.
inline Point interior_sample(const Polygon& poly, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> w(1, 16);
    Point s{Exact(0), Exact(0)};
    long total = 0;
    for (const auto& p : poly.vertices) {
        long k = w(rng);
        s = s + Exact(k) * p;
        total += k;
    }
    return {s.x / Exact(total), s.y / Exact(total)};
}

inline CriterionResult involution_suite(std::uint64_t seed = 20240601)
{
    auto r = make_result(5, "involutions square to identity; out-atom vertex exchange");
    const Exact lams[] = {make_exact(1, 64), make_exact(1, 256)};
    long perm_checked = 0, perm_fail = 0;
    std::string first;
    for (const auto& lam : lams) {
        ExactVertices v(lam);
        v.prepare_all();
        for (long m = 1; m <= std::min<long>(v.M(), 20); ++m) {
            ++perm_checked;
            auto rep = verify_atom_involution(atom_out(v, m), lam);
            if (!rep.ok) {
                if (!perm_fail) first = " out m=" + std::to_string(m) + ": " + rep.failure;
                ++perm_fail;
            }
        }
    }
    std::mt19937_64 rng(seed);
    struct Job {
        AtomRecord atom;
        Exact lam;
        Point p;
    };
    std::vector<Job> jobs;
    std::vector<ExactVertices> vs{ExactVertices(lams[0]), ExactVertices(lams[1])};
    for (int i = 0; i < 1000; ++i) {
        const ExactVertices& v = vs[static_cast<size_t>(i % 2)];
        AtomRecord a;
        if (i % 4 < 2) a = atom_out(v, std::uniform_int_distribution<long>(1, std::min<long>(v.M(), 20))(rng));
        else a = atom_in(v, std::uniform_int_distribution<long>(2, v.N() - 1)(rng));
        Point p = interior_sample(a.polygon, rng);
        jobs.push_back({std::move(a), v.lambda(), std::move(p)});
    }
    std::vector<char> ok(jobs.size());
    parallel_for(jobs.size(), [&](size_t i) {
        auto once = apply_involution(jobs[i].atom, jobs[i].p, jobs[i].lam);
        if (!once) return;
        auto twice = apply_involution(jobs[i].atom, *once, jobs[i].lam);
        ok[i] = twice && *twice == jobs[i].p;
    });
    long sq_fail = 0;
    for (char c : ok) sq_fail += !c;
    r.pass = perm_fail == 0 && sq_fail == 0;
    r.detail = std::to_string(jobs.size()) + " points, " + std::to_string(sq_fail) + " failures; " +
               std::to_string(perm_checked) + " permutations, " + std::to_string(perm_fail) + " failures" + first;
    return r;
}

// The generator's first five iterates as functions of λ.
inline std::vector<std::pair<long, Segment>> table_one(const Exact& lam)
{
    Exact l2 = lam * lam, l3 = l2 * lam, l4 = l3 * lam;
    Exact g = (1 + 2 * lam - l2 - l3) / (2 - l2), gp = (1 - l2) / (2 - l2);
    auto seg = [](Exact a, Exact b, Exact c, Exact d) { return Segment{{a, b}, {c, d}, true, false}; };
    return {{0, seg(0, 0, 0, 1)},
            {1, seg(1, 0, 0, 0)},
            {2, seg(lam, 1, 0, 0)},
            {3, seg(l2, lam, 1, 0)},
            {4, seg(-lam + l3, l2, lam, 1)},
            {5, seg(lam - 2 * l2 + l4, 1 - lam + l3, g - 1, 1)},
            {5, seg(gp, 0, l2, lam)}};
}

inline CriterionResult table_one_regression()
{
    auto r = make_result(6, "discontinuity generator reproduces the five-iterate table");
    long rows = 0, fails = 0;
    std::string first;
    for (const auto& lam : {make_exact(1, 64), make_exact(1, 10)}) {
        auto segs = discontinuity_set(lam, 5);
        std::vector<std::pair<long, Segment>> got;
        for (const auto& s : segs)
            if (s.t >= 0) got.push_back({s.t, s.segment});
        auto want = table_one(lam);
        for (const auto& [t, w] : want) {
            ++rows;
            bool found = false;
            for (const auto& [u, s] : got)
                found = found || (u == t && s.first == w.first && s.second == w.second);
            if (!found) {
                if (!fails) first = " first missing row t=" + std::to_string(t) + " at lambda " + to_string(lam);
                ++fails;
            }
        }
        long count = static_cast<long>(got.size());
        if (count != static_cast<long>(want.size())) {
            if (!fails) first = " segment count " + std::to_string(count) + " at lambda " + to_string(lam);
            ++fails;
        }
    }
    r.pass = fails == 0;
    r.detail = std::to_string(rows) + " rows, " + std::to_string(fails) + " mismatches" + first;
    return r;
}

// Band for residual/λ², frozen from the first run over k = 6..12.
inline const Real& covering_band_lo()
{
    static const Real v("3.5");
    return v;
}
inline const Real& covering_band_hi()
{
    static const Real v("5.5");
    return v;
}

inline CriterionResult covering_ledger()
{
    auto r = make_result(7, "covering ledger: residual band, A_out/lambda, A_in intercept");
    std::vector<AreaLedger> rows(7);
    parallel_for(rows.size(), [&](size_t i) { rows[i] = covering_report(mp::ldexp(Real(1), -static_cast<int>(i + 6))); });
    bool band = true;
    Real lo, hi;
    for (size_t i = 0; i < rows.size(); ++i) {
        Real q = rows[i].residual / (rows[i].lambda * rows[i].lambda);
        if (i == 0) lo = hi = q;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        band = band && q >= covering_band_lo() && q <= covering_band_hi();
    }
    const auto& k10 = rows[4];
    Real out_ratio = k10.A_out_sum / k10.lambda / Real(9) * 4;
    bool out_ok = mp::abs(out_ratio - 1) <= Real("0.05");
    // least squares A_in = a + b·λ over k = 8..12
    Real sx(0), sy(0), sxx(0), sxy(0);
    for (size_t i = 2; i < rows.size(); ++i) {
        sx += rows[i].lambda;
        sy += rows[i].A_in_sum;
        sxx += rows[i].lambda * rows[i].lambda;
        sxy += rows[i].lambda * rows[i].A_in_sum;
    }
    Real n(5);
    Real b = (n * sxy - sx * sy) / (n * sxx - sx * sx), a = (sy - b * sx) / n;
    Real target = 1 - pi_real() / 4;
    bool in_ok = mp::abs(a - target) <= Real("1e-3");
    r.pass = band && out_ok && in_ok;
    r.detail = "residual/lambda^2 in [" + fmt(lo, 5) + ", " + fmt(hi, 5) + "] (band [" + fmt(covering_band_lo(), 3) +
               ", " + fmt(covering_band_hi(), 3) + "]); A_out/lambda at 2^-10 = " + fmt(k10.A_out_sum / k10.lambda, 6) +
               "; A_in intercept " + fmt(a, 8) + " vs " + fmt(target, 8);
    return r;
}

inline CriterionResult crossover_check()
{
    auto r = make_result(8, "crossover: round(m*(2^-6)) = 6; root vs series within 10 lambda^2 at 1e-4");
    auto c6 = crossover(Real(1) / 64);
    long nearest = static_cast<long>(mp::round(c6.m_star));
    Real lam("1e-4");
    auto c = crossover(lam);
    Real em = mp::abs(c.m_star - c.series_m) / c.series_m, en = mp::abs(c.n_star - c.series_n) / c.series_n;
    Real tol = 10 * lam * lam;
    r.pass = nearest == 6 && em <= tol && en <= tol;
    r.detail = "m*(2^-6) = " + fmt(c6.m_star, 8) + "; relative gaps m " + fmt(em, 3) + ", n " + fmt(en, 3);
    return r;
}

// Random polynomial/box pairs; every exact evaluation at a point of the box must
// lie in the enclosure.
inline long interval_fuzz(long trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(-99, 99), den(1, 20), expo(0, 4), nv(1, 3), nt(1, 5);
    long violations = 0;
    for (long t = 0; t < trials; ++t) {
        size_t vars = static_cast<size_t>(nv(rng));
        std::vector<RInterval> box;
        std::vector<Exact> pt;
        for (size_t i = 0; i < vars; ++i) {
            Exact a = make_exact(coef(rng), den(rng)), b = make_exact(coef(rng), den(rng));
            if (b < a) std::swap(a, b);
            box.push_back({a, b});
            Exact s = make_exact(std::uniform_int_distribution<long>(0, 64)(rng), 64);
            pt.push_back(a + s * (b - a));
        }
        std::vector<MonomialTerm> terms;
        long k = nt(rng);
        for (long j = 0; j < k; ++j) {
            MonomialTerm m{make_exact(coef(rng), den(rng)), {}};
            for (size_t i = 0; i < vars; ++i) m.exponents.push_back(static_cast<int>(expo(rng)));
            terms.push_back(std::move(m));
        }
        int digits = static_cast<int>(std::uniform_int_distribution<long>(2, 6)(rng));
        RInterval enc = bound_polynomial(terms, box, {digits, {}});
        if (!enc.contains(evaluate(terms, pt))) ++violations;
    }
    return violations;
}

inline CriterionResult interval_engine(std::uint64_t seed = 7)
{
    auto r = make_result(9, "interval engine: rounding example, soundness fuzz, h' certificate");
    Real pi = pi_real();
    RInterval raw{to_exact(pi / 2), to_exact(pi)};
    RInterval rounded = round_outward(raw, 4);
    // The literal upper endpoint lies below the lower one, so it is compared endpoint-wise.
    bool literal = rounded.lo == make_exact(157, 100) && rounded.hi == make_exact(3142, 10000);
    bool corrected = rounded.lo == make_exact(157, 100) && rounded.hi == make_exact(3142, 1000);
    long violations = interval_fuzz(10000, seed);
    auto cert = certify_negative_increasing(denominator_leading_poly(), make_exact(6171, 10000));
    r.pass = literal && violations == 0 && cert.increasing && cert.negative;
    r.detail = "[pi/2, pi] -> " + to_string(rounded) + " (literal 157/100, 3142/10000: " + (literal ? "match" : "MISMATCH") +
               "; with 3142/1000: " + (corrected ? "match" : "mismatch") + "); fuzz violations " +
               std::to_string(violations) + "; h' enclosure " + to_string(cert.derivative_bound) +
               (cert.negative ? ", h < 0 certified" : ", certificate failed");
    return r;
}

inline const std::vector<std::string>& membership_names()
{
    static const std::vector<std::string> names{"r0x", "r2x", "rZx", "rA0", "rA0(m=2)", "rmid", "rmid(m=2)", "m_tau"};
    return names;
}

inline CriterionResult remainder_membership(std::uint64_t seed = 1234, long samples = 100)
{
    auto r = make_result(10, "remainder membership (100 samples per spec, cut-off regime)");
    auto specs = remainder_specs();
    const auto& names = membership_names();
    std::vector<MembershipReport> reps(names.size());
    parallel_for(names.size(), [&](size_t i) {
        reps[i] = check_remainder_membership(find_remainder_spec(specs, names[i]), samples, seed + i);
    });
    r.pass = true;
    for (const auto& rep : reps) {
        r.pass = r.pass && rep.pass;
        if (!r.detail.empty()) r.detail += "; ";
        r.detail += rep.name + (rep.pass ? " ok" : " FAIL") + " [" + fmt(rep.min_seen, 4) + ", " + fmt(rep.max_seen, 4) + "]";
    }
    return r;
}

inline CriterionResult phi_families()
{
    auto r = make_result(11, "irregular-domain code families at lambda = 1/64");
    Exact lam = make_exact(1, 64);
    ExactVertices v(lam);
    ScanOptions opt;
    opt.grid = 16;
    opt.max_steps = 80;
    opt.apply_G = true;
    auto rep = scan_return_codes(phi_domain(v), lambda_domain(v), lam, opt);
    struct Want {
        std::string name;
        long m;
        CodeWord code;
        long transit;
    };
    std::vector<Want> want;
    for (long m = 1; m <= 2; ++m) {
        want.push_back({"red", m, red_code(m), 12 * m + 4});
        want.push_back({"blue", m, blue_code(m), 20 * m - 3});
        want.push_back({"green", m, green_code(m), 24 * m + 11});
    }
    long found = 0;
    std::string missing;
    for (const auto& w : want) {
        bool hit = false;
        for (const auto& c : rep.codes) hit = hit || (c.code == w.code && c.transit_time == w.transit);
        if (hit) ++found;
        else missing += " " + w.name + std::to_string(w.m);
    }
    r.pass = found == static_cast<long>(want.size());
    r.detail = std::to_string(found) + "/" + std::to_string(want.size()) + " family codes found among " +
               std::to_string(rep.codes.size()) + " distinct codes from " + std::to_string(rep.samples) + " samples" +
               (missing.empty() ? "" : "; missing" + missing);
    return r;
}

} // namespace acceptance

inline std::vector<int> acceptance_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}; }

// A seed, when given, replaces the default seed of the randomized criteria (5, 9, 10).
inline CriterionResult run_criterion(int id, std::optional<std::uint64_t> seed = {})
{
    using namespace acceptance;
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        switch (id) {
        case 1: r = limit_table(); break;
        case 2: r = series_sum(); break;
        case 3: r = percent_check(); break;
        case 4: r = fixed_point_oracle(); break;
        case 5: r = seed ? involution_suite(*seed) : involution_suite(); break;
        case 6: r = table_one_regression(); break;
        case 7: r = covering_ledger(); break;
        case 8: r = crossover_check(); break;
        case 9: r = seed ? interval_engine(*seed) : interval_engine(); break;
        case 10: r = seed ? remainder_membership(*seed) : remainder_membership(); break;
        case 11: r = phi_families(); break;
        default: throw std::invalid_argument("unknown criterion " + std::to_string(id));
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        r.id = id;
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline void print_result(std::ostream& os, const CriterionResult& r)
{
    os << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << "  " << r.title << " -- " << r.detail << " ("
       << std::fixed << std::setprecision(2) << r.seconds << "s)" << std::defaultfloat << "\n";
}

} // namespace rotorlab

#endif
