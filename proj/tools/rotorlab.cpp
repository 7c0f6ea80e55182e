#include <rotorlab/rotorlab.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rotorlab;
using nlohmann::ordered_json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string lambda = "1/64";
    std::vector<std::string> lambdas;
    int digits = 20;
    long depth = 5;
    std::vector<long> grid{256, 256};
    std::vector<std::string> window;
    long steps = 500;
    long m_max = 0;
    std::optional<std::uint64_t> seed;
    long samples = 100;
    std::vector<int> criteria;
    std::string out;
    std::string format;
};

Exact parse_lambda(const std::string& s)
{
    try {
        return parse_exact(s);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--lambda: ") + e.what());
    }
}

void check_digits(int d)
{
    if (d < 15 || d > 90) throw InputError("--digits must lie in [15, 90]");
}

std::string real_str(const Real& v, int digits) { return v.str(digits, std::ios_base::scientific); }

ordered_json point_json(const Point& p) { return ordered_json::array({to_string(p.x), to_string(p.y)}); }

void emit(const Config& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InputError("cannot open " + c.out + " for writing");
    f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void require_format(const std::string& f, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (f == a) return;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw InputError("--format must be one of: " + list);
}

std::string csv_join(const std::vector<std::string>& cells)
{
    std::string s;
    for (size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s + "\n";
}

void cmd_disco(const Config& c)
{
    Exact lam = parse_lambda(c.lambda);
    require_map_range(lam);
    if (c.depth < 0 || c.depth > 64) throw InputError("--depth must lie in [0, 64]");
    std::string fmt = c.format.empty() ? "csv" : c.format;
    require_format(fmt, {"csv", "svg"});
    auto segs = discontinuity_set(lam, c.depth);
    std::ostringstream os;
    if (fmt == "csv") write_segments_csv(os, segs);
    else write_segments_svg(os, segs);
    emit(c, os.str());
}

void cmd_portrait(const Config& c)
{
    Exact lam = parse_lambda(c.lambda);
    std::string fmt = c.format.empty() ? "ppm" : c.format;
    require_format(fmt, {"ppm", "csv", "json"});
    PortraitOptions opt;
    opt.width = c.grid[0];
    opt.height = c.grid[1];
    opt.steps = c.steps;
    if (!c.window.empty()) {
        if (c.window.size() != 4) throw InputError("--window takes x0 y0 x1 y1");
        opt.x0 = parse_exact(c.window[0]);
        opt.y0 = parse_exact(c.window[1]);
        opt.x1 = parse_exact(c.window[2]);
        opt.y1 = parse_exact(c.window[3]);
    }
    Portrait img = render_portrait(lam, opt);
    std::ostringstream os;
    if (fmt == "ppm") {
        write_ppm(os, img, opt.steps);
    } else if (fmt == "csv") {
        os << "i,j,class,value\n";
        static const char* names[] = {"periodic", "escaping", "bounded"};
        for (long j = 0; j < img.height; ++j)
            for (long i = 0; i < img.width; ++i) {
                const auto& p = img.at(i, j);
                os << i << "," << j << "," << names[static_cast<int>(p.kind)] << "," << p.value << "\n";
            }
    } else {
        Real island = ellipse_area_main(lam) / metric_factor(lam);
        ordered_json j{{"lambda", to_string(lam)},
                       {"grid", {img.width, img.height}},
                       {"steps", opt.steps},
                       {"window", {to_string(opt.x0), to_string(opt.y0), to_string(opt.x1), to_string(opt.y1)}},
                       {"fraction_periodic", img.fraction(PixelClass::periodic)},
                       {"fraction_escaping", img.fraction(PixelClass::escaping)},
                       {"fraction_bounded", img.fraction(PixelClass::bounded)},
                       {"island_area_euclidean", real_str(island, c.digits)},
                       {"precision_digits", c.digits}};
        os << dump(j);
    }
    emit(c, os.str());
}

ordered_json atom_json(const AtomRecord& a, const Exact& lam, int digits)
{
    ordered_json verts = ordered_json::array();
    for (const auto& p : a.polygon.vertices) verts.push_back(point_json(p));
    auto area = q_area(a.polygon, lam);
    auto inv = verify_atom_involution(a, lam);
    return {{"kind", a.kind == AtomRecord::Kind::out ? "out" : "in"},
            {"index", a.kind == AtomRecord::Kind::out ? a.m : a.n},
            {"transit_time", a.transit_time},
            {"code", code_string(a.expected_code)},
            {"vertices", verts},
            {"edge_included", a.polygon.edge_included},
            {"shoelace", to_string(area.shoelace)},
            {"q_area", real_str(area.value(lam), digits)},
            {"degenerate", a.degenerate},
            {"involution_ok", inv.ok}};
}

void cmd_atoms(const Config& c)
{
    check_digits(c.digits);
    Exact lam = parse_lambda(c.lambda);
    ExactVertices v(lam);
    v.prepare_all();
    long m_max = c.m_max > 0 ? std::min(c.m_max, v.M()) : v.M();
    std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "csv"});
    std::vector<AtomRecord> atoms;
    for (long m = 1; m <= m_max; ++m) atoms.push_back(atom_out(v, m));
    for (long n = 1; n <= v.N() - 1; ++n) atoms.push_back(atom_in(v, n));
    std::vector<ordered_json> rows(atoms.size());
    parallel_for(atoms.size(), [&](size_t i) { rows[i] = atom_json(atoms[i], lam, c.digits); });
    std::ostringstream os;
    if (fmt == "json") {
        ordered_json j{{"lambda", to_string(lam)}, {"N", v.N()}, {"M", v.M()}, {"precision_digits", c.digits},
                       {"atoms", rows}};
        os << dump(j);
    } else {
        os << "kind,index,transit_time,shoelace,q_area,involution_ok\n";
        for (const auto& r : rows)
            os << csv_join({r["kind"].get<std::string>(), std::to_string(r["index"].get<long>()),
                            std::to_string(r["transit_time"].get<long>()), r["shoelace"].get<std::string>(),
                            r["q_area"].get<std::string>(), r["involution_ok"].get<bool>() ? "true" : "false"});
    }
    emit(c, os.str());
    for (const auto& r : rows)
        if (!r["involution_ok"].get<bool>()) throw VerificationFailure("atom involution check failed");
}

void cmd_fixed_points(const Config& c)
{
    Exact lam = parse_lambda(c.lambda);
    ExactVertices v(lam);
    v.prepare_all();
    std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "csv"});
    auto recs = admissible_fixed_points(v, c.m_max > 0 ? c.m_max : 10);
    parallel_for(recs.size(), [&](size_t i) { recs[i] = verify_fixed_point(recs[i], lam); });
    std::ostringstream os;
    bool all = true;
    if (fmt == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : recs) {
            all = all && r.verified;
            arr.push_back({{"m", r.m},
                           {"n", r.n},
                           {"z", point_json(r.z)},
                           {"period", r.period},
                           {"code", code_string(r.code)},
                           {"observed_period", r.observed_period ? ordered_json(*r.observed_period) : ordered_json()},
                           {"verified", r.verified}});
        }
        os << dump({{"lambda", to_string(lam)}, {"fixed_points", arr}});
    } else {
        os << "m,n,zx,zy,period,observed_period,verified\n";
        for (const auto& r : recs) {
            all = all && r.verified;
            os << csv_join({std::to_string(r.m), std::to_string(r.n), to_string(r.z.x), to_string(r.z.y),
                            std::to_string(r.period), r.observed_period ? std::to_string(*r.observed_period) : "",
                            r.verified ? "true" : "false"});
        }
    }
    emit(c, os.str());
    if (!all) throw VerificationFailure("a fixed point failed exact verification");
}

void cmd_areas(const Config& c)
{
    check_digits(c.digits);
    Exact lam = parse_lambda(c.lambda);
    ExactVertices v(lam);
    long m_max = std::min(c.m_max > 0 ? c.m_max : 8, v.M());
    std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "csv"});
    v.prepare_all();
    std::vector<Real> fam(static_cast<size_t>(m_max)), lim(static_cast<size_t>(m_max));
    parallel_for(static_cast<size_t>(m_max), [&](size_t i) {
        long m = static_cast<long>(i) + 1;
        fam[i] = family_total_Am(v, m);
        lim[i] = limit_Am(m);
    });
    std::ostringstream os;
    if (fmt == "json") {
        ordered_json rows = ordered_json::array();
        for (long m = 1; m <= m_max; ++m) {
            auto b = n_bounds(v, m);
            rows.push_back({{"m", m},
                            {"n_range", {b.lo, b.hi}},
                            {"A_m", real_str(fam[static_cast<size_t>(m - 1)], c.digits)},
                            {"limit_A_m", real_str(lim[static_cast<size_t>(m - 1)], c.digits)},
                            {"asymptotic_A_m", real_str(asymptotic_Am(m), c.digits)}});
        }
        os << dump({{"lambda", to_string(lam)}, {"precision_digits", c.digits}, {"rows", rows}});
    } else {
        os << "m,A_m,limit_A_m,asymptotic_A_m\n";
        for (long m = 1; m <= m_max; ++m)
            os << csv_join({std::to_string(m), real_str(fam[static_cast<size_t>(m - 1)], c.digits),
                            real_str(lim[static_cast<size_t>(m - 1)], c.digits), real_str(asymptotic_Am(m), c.digits)});
    }
    emit(c, os.str());
}

std::vector<Exact> lambda_list(const Config& c, std::vector<Exact> fallback)
{
    if (c.lambdas.empty()) return fallback;
    std::vector<Exact> out;
    for (const auto& s : c.lambdas) out.push_back(parse_lambda(s));
    return out;
}

std::vector<Exact> dyadic_lambdas(int lo, int hi)
{
    std::vector<Exact> v;
    for (int k = lo; k <= hi; ++k) v.push_back(Exact(Integer(1), mp::pow(Integer(2), static_cast<unsigned>(k))));
    return v;
}

void cmd_covering(const Config& c)
{
    check_digits(c.digits);
    auto lams = lambda_list(c, dyadic_lambdas(6, 12));
    for (const auto& l : lams) require_return_range(l);
    std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "csv"});
    std::vector<AreaLedger> rows(lams.size());
    parallel_for(lams.size(), [&](size_t i) { rows[i] = covering_report(to_real(lams[i])); });
    std::ostringstream os;
    auto r = [&](const Real& x) { return real_str(x, c.digits); };
    if (fmt == "json") {
        ordered_json arr = ordered_json::array();
        for (size_t i = 0; i < rows.size(); ++i) {
            const auto& L = rows[i];
            arr.push_back({{"lambda", to_string(lams[i])},
                           {"A_square", r(L.A_square)},
                           {"A_ellipse", r(L.A_ellipse)},
                           {"A_out_sum", r(L.A_out_sum)},
                           {"A_in_sum", r(L.A_in_sum)},
                           {"residual", r(L.residual)},
                           {"residual_over_lambda2", r(L.residual / (L.lambda * L.lambda))}});
        }
        os << dump({{"precision_digits", c.digits}, {"ledger", arr}});
    } else {
        os << "lambda,A_square,A_ellipse,A_out_sum,A_in_sum,residual\n";
        for (size_t i = 0; i < rows.size(); ++i) {
            const auto& L = rows[i];
            os << csv_join({to_string(lams[i]), r(L.A_square), r(L.A_ellipse), r(L.A_out_sum), r(L.A_in_sum),
                            r(L.residual)});
        }
    }
    emit(c, os.str());
}

void cmd_crossover(const Config& c)
{
    check_digits(c.digits);
    auto lams = lambda_list(c, {make_exact(1, 64)});
    for (const auto& l : lams) require_return_range(l);
    std::string fmt = c.format.empty() ? "json" : c.format;
    require_format(fmt, {"json", "csv"});
    std::vector<CrossoverRecord> rows(lams.size());
    parallel_for(lams.size(), [&](size_t i) { rows[i] = crossover(to_real(lams[i])); });
    std::ostringstream os;
    auto r = [&](const Real& x) { return real_str(x, c.digits); };
    auto nearest = [](const Real& x) { return static_cast<long>(mp::round(x)); };
    if (fmt == "json") {
        ordered_json arr = ordered_json::array();
        for (size_t i = 0; i < rows.size(); ++i)
            arr.push_back({{"lambda", to_string(lams[i])},
                           {"m_star", r(rows[i].m_star)},
                           {"n_star", r(rows[i].n_star)},
                           {"m_series", r(rows[i].series_m)},
                           {"n_series", r(rows[i].series_n)},
                           {"m_nearest", nearest(rows[i].m_star)}});
        os << dump({{"precision_digits", c.digits}, {"crossover", arr}});
    } else {
        os << "lambda,m_star,n_star,m_series,n_series,m_nearest\n";
        for (size_t i = 0; i < rows.size(); ++i)
            os << csv_join({to_string(lams[i]), r(rows[i].m_star), r(rows[i].n_star), r(rows[i].series_m),
                            r(rows[i].series_n), std::to_string(nearest(rows[i].m_star))});
    }
    emit(c, os.str());
}

void cmd_verify(const Config& c)
{
    std::vector<int> ids = c.criteria.empty() ? acceptance_ids() : c.criteria;
    for (int id : ids)
        if (id < 1 || id > 11) throw InputError("--criterion must lie in [1, 11]");
    std::string fmt = c.format.empty() ? "text" : c.format;
    require_format(fmt, {"text", "json"});
    std::vector<CriterionResult> results;
    std::ostringstream os;
    for (int id : ids) {
        results.push_back(run_criterion(id, c.seed));
        if (fmt == "text" && c.out.empty()) {
            print_result(std::cout, results.back());
            std::cout.flush();
        } else if (fmt == "text") {
            print_result(os, results.back());
        }
    }
    long failed = 0;
    for (const auto& r : results) failed += !r.pass;
    if (fmt == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results)
            arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        os << dump({{"criteria", arr}, {"failed", failed}});
    } else {
        std::ostringstream tail;
        tail << results.size() - static_cast<size_t>(failed) << "/" << results.size() << " criteria passed\n";
        if (c.out.empty()) std::cout << tail.str();
        else os << tail.str();
    }
    if (!os.str().empty()) emit(c, os.str());
    if (failed) throw VerificationFailure(std::to_string(failed) + " criteria failed");
}

void cmd_interval_demo(const Config& c)
{
    int digits = c.digits;
    if (digits < 1 || digits > 30) throw InputError("--digits must lie in [1, 30] for interval-demo");
    Real pi = pi_real();
    RInterval raw{to_exact(pi / 2), to_exact(pi)};
    RInterval rounded = round_outward(raw, digits);
    auto cert = certify_negative_increasing(denominator_leading_poly(), make_exact(6171, 10000), digits);
    std::vector<MonomialTerm> lm{{Exact(1), {2, 2}}};
    RInterval cut = bound_polynomial(lm, {RInterval{Exact(0), make_exact(1, 10000)}, RInterval{Exact(2), Exact(10)}},
                                     {digits, CutOff{}});
    ordered_json j{{"digits", digits},
                   {"pi_interval", {{"input", "[pi/2, pi]"}, {"rounded", to_string(rounded)}}},
                   {"cutoff_lambda2_m2", to_string(cut)},
                   {"h_prime_enclosure", to_string(cert.derivative_bound)},
                   {"h_at_0", to_string(cert.h_left)},
                   {"h_at_x1", to_string(cert.h_right)},
                   {"h_increasing", cert.increasing},
                   {"h_negative", cert.negative}};
    emit(c, dump(j));
    if (!cert.negative) throw VerificationFailure("h certificate failed");
}

void cmd_remainders(const Config& c)
{
    check_digits(c.digits);
    if (c.samples < 1) throw InputError("--samples must be positive");
    auto specs = remainder_specs();
    std::vector<MembershipReport> reps(specs.size());
    std::uint64_t seed = c.seed.value_or(1234);
    parallel_for(specs.size(), [&](size_t i) { reps[i] = check_remainder_membership(specs[i], c.samples, seed + i); });
    ordered_json arr = ordered_json::array();
    for (const auto& r : reps) {
        ordered_json w;
        if (r.witness)
            w = {{"lambda", real_str(r.witness->lambda, c.digits)},
                 {"m", r.witness->m},
                 {"n", r.witness->n},
                 {"value", real_str(r.witness->value, c.digits)}};
        arr.push_back({{"name", r.name},
                       {"published", to_string(r.published)},
                       {"tested", r.tested},
                       {"min", real_str(r.min_seen, c.digits)},
                       {"max", real_str(r.max_seen, c.digits)},
                       {"pass", r.pass},
                       {"witness", w}});
    }
    emit(c, dump({{"seed", seed}, {"samples", c.samples}, {"precision_digits", c.digits}, {"specs", arr}}));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rotorlab: exact dynamics of a piecewise rotation of the torus near rotation number 1/4"};
    app.require_subcommand(1);
    Config cfg;
    std::function<void(const Config&)> action;

    auto add_lambda = [&](CLI::App* s) { s->add_option("--lambda", cfg.lambda, "rotation parameter as p/q")->capture_default_str(); };
    auto add_out = [&](CLI::App* s, const char* formats) {
        s->add_option("--out", cfg.out, "output path (default stdout)");
        s->add_option("--format", cfg.format, formats);
    };
    auto add_digits = [&](CLI::App* s) { s->add_option("--digits", cfg.digits, "significant digits of real output")->capture_default_str(); };

    auto* disco = app.add_subcommand("disco", "discontinuity set F^t(gamma), |t| <= depth");
    add_lambda(disco);
    disco->add_option("--depth", cfg.depth, "iterate depth (<= 64)")->capture_default_str();
    add_out(disco, "csv or svg");
    disco->callback([&] { action = cmd_disco; });

    auto* portrait = app.add_subcommand("portrait", "phase portrait by exact period / escape time");
    add_lambda(portrait);
    portrait->add_option("--grid", cfg.grid, "width and height in pixels")->expected(2)->capture_default_str();
    portrait->add_option("--steps", cfg.steps, "iteration cap per pixel")->capture_default_str();
    portrait->add_option("--window", cfg.window, "x0 y0 x1 y1 as rationals")->expected(4);
    add_digits(portrait);
    add_out(portrait, "ppm, csv or json");
    portrait->callback([&] { action = cmd_portrait; });

    auto* atoms = app.add_subcommand("atoms", "regular atoms of the return map");
    add_lambda(atoms);
    atoms->add_option("--m-max", cfg.m_max, "largest out-atom index (default M)");
    add_digits(atoms);
    add_out(atoms, "json or csv");
    atoms->callback([&] { action = cmd_atoms; });

    auto* fps = app.add_subcommand("fixed-points", "fixed points Z(m,n) with exact orbit verification");
    add_lambda(fps);
    fps->add_option("--m-max", cfg.m_max, "largest m (default 10)");
    add_out(fps, "json or csv");
    fps->callback([&] { action = cmd_fixed_points; });

    auto* areas = app.add_subcommand("areas", "disk-area totals A_m against their limits");
    add_lambda(areas);
    areas->add_option("--m-max", cfg.m_max, "largest m (default 8)");
    add_digits(areas);
    add_out(areas, "json or csv");
    areas->callback([&] { action = cmd_areas; });

    auto* covering = app.add_subcommand("covering", "area ledger of the covering");
    covering->add_option("--lambda", cfg.lambdas, "one or more p/q values (default 2^-6..2^-12)");
    add_digits(covering);
    add_out(covering, "json or csv");
    covering->callback([&] { action = cmd_covering; });

    auto* cross = app.add_subcommand("crossover", "crossover index m*, n* by root finding and series");
    cross->add_option("--lambda", cfg.lambdas, "one or more p/q values (default 1/64)");
    add_digits(cross);
    add_out(cross, "json or csv");
    cross->callback([&] { action = cmd_crossover; });

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--criterion", cfg.criteria, "criterion ids (default all)");
    verify->add_option("--seed", cfg.seed, "seed for the randomized criteria");
    add_out(verify, "text or json");
    verify->callback([&] { action = cmd_verify; });

    auto* demo = app.add_subcommand("interval-demo", "outward rounding and polynomial certificate");
    demo->add_option("--digits", cfg.digits, "rounding digits (default 4)");
    add_out(demo, "json");
    demo->callback([&] {
        if (demo->count("--digits") == 0) cfg.digits = 4;
        action = cmd_interval_demo;
    });

    auto* rem = app.add_subcommand("remainders", "sampled membership of expansion remainders");
    rem->add_option("--seed", cfg.seed, "sampling seed (default 1234)");
    rem->add_option("--samples", cfg.samples, "samples per remainder")->capture_default_str();
    add_digits(rem);
    add_out(rem, "json");
    rem->callback([&] { action = cmd_remainders; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (cfg.grid.size() != 2) throw InputError("--grid takes W H");
        action(cfg);
    } catch (const VerificationFailure& e) {
        std::cerr << "rotorlab " << name << ": " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "rotorlab " << name << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rotorlab " << name << ": " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "rotorlab " << name << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "rotorlab " << name << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
