#include "inoz/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "inoz/eigen.hpp"
#include "inoz/errors.hpp"
#include "inoz/identities.hpp"
#include "inoz/operators.hpp"

namespace inoz {

cplx parse_complex(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex re(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?$)");
    static const std::regex im_only(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i$)");
    std::smatch m;
    if (s.empty()) throw ConfigError("empty complex literal");
    if (std::regex_match(s, m, im_only)) {
        const double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
        return {0.0, m[1].str() == "-" ? -v : v};
    }
    if (std::regex_match(s, m, re)) {
        const double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
        double im_part = 0.0;
        if (m[2].matched) {
            im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
            if (m[2].str() == "-") im_part = -im_part;
        }
        if (!m[1].matched && !m[2].matched) throw ConfigError("bad complex literal '" + text + "'");
        return {re_part, im_part};
    }
    throw ConfigError("bad complex literal '" + text + "'");
}

namespace {

std::vector<std::string> split(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (!text.empty() && text.back() == ',') out.emplace_back();
    return out;
}

} // namespace

std::vector<cplx> parse_complex_list(const std::string& text)
{
    std::vector<cplx> out;
    for (const auto& s : split(text)) out.push_back(parse_complex(s));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    for (const auto& s : split(text)) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad integer '" + s + "'");
        }
        if (used != s.size()) throw ConfigError("bad integer '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

namespace {

struct Globals {
    double omega1 = pi / 2.0;
    std::string tau;
    std::optional<double> q;
    std::uint64_t seed = 1;
    int points = 100;
    std::optional<double> tol;
    std::string report;
    bool timing = false;
    bool serial = false;
};

// coupling block shared by the corollary, symmetry and constant commands
struct CorollaryBlock {
    int which = 1;
    std::string counts = "1,0,0,0";
    std::string g = "0.3,0.2,0.1,0.4";
    std::string lambda = "0.7";
};

Lattice make_lattice(const Globals& g)
{
    if (!g.tau.empty() && g.q) throw ConfigError("give at most one of --tau and --q");
    if (!(g.omega1 > 0.0)) throw ConfigError("--omega1 must be positive");
    if (!g.tau.empty()) return Lattice::from_tau(g.omega1, parse_complex(g.tau));
    const double q = g.q ? *g.q : 0.3;
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("--q must lie in (0, 1)");
    return Lattice::from_nome(g.omega1, q);
}

std::array<cplx, 4> four(const std::string& text, const char* what)
{
    const auto v = parse_complex_list(text);
    if (v.size() != 4) throw ConfigError(std::string(what) + " needs exactly four entries");
    return {v[0], v[1], v[2], v[3]};
}

CorollaryParams corollary_params(const CorollaryBlock& b)
{
    if (b.which < 1 || b.which > 4) throw ConfigError("--which must be 1, 2, 3 or 4");
    auto c = parse_int_list(b.counts);
    if (c.size() > 4) throw ConfigError("--counts takes at most four entries N,Nt,M,Mt");
    c.resize(4, 0);
    CorollaryParams p;
    p.which = static_cast<Corollary>(b.which);
    p.N = c[0];
    p.Nt = c[1];
    p.M = c[2];
    p.Mt = c[3];
    p.g = four(b.g, "--g");
    p.lambda = parse_complex(b.lambda);
    validate(p);
    return p;
}

std::string fmt(cplx z)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

class Runner {
public:
    Runner(const Globals& g, std::ostream& out) : g_(g), out_(out)
    {
        if (!g.report.empty()) {
            file_.open(g.report, std::ios::trunc);
            if (!file_) throw ConfigError("cannot open report file " + g.report);
        }
    }
    double tol(double fallback) const
    {
        const double t = g_.tol ? *g_.tol : fallback;
        if (!(t > 0.0)) throw ConfigError("--tol must be positive");
        return t;
    }
    std::size_t points() const
    {
        if (g_.points < 1) throw ConfigError("--points must be at least 1");
        return static_cast<std::size_t>(g_.points);
    }
    Exec exec() const { return g_.serial ? Exec::serial : Exec::parallel; }

    template <class F>
    void run(F&& check)
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<ResidualReport> rs = check();
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        for (auto& r : rs) {
            r.wall_ms = g_.timing ? ms / static_cast<double>(rs.size()) : 0.0;
            emit(r);
        }
    }
    void emit(const ResidualReport& r)
    {
        all_pass_ = all_pass_ && r.pass;
        if (file_.is_open()) {
            file_ << to_json_line(r) << '\n';
            out_ << to_text_line(r) << '\n';
        } else {
            out_ << to_json_line(r) << '\n';
        }
    }
    bool all_pass() const { return all_pass_; }

private:
    const Globals& g_;
    std::ostream& out_;
    std::ofstream file_;
    bool all_pass_ = true;
};

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Elliptic Inozemtsev-type identities: residual verification and eigenfunction transforms", "inoz"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--omega1", g.omega1, "real half-period omega_1 (default pi/2)");
    app.add_option("--tau", g.tau, "tau = omega_3/omega_1 as a+bi");
    app.add_option("--q", g.q, "real nome q = exp(i pi tau) (default 0.3)");
    app.add_option("--seed", g.seed, "sampling seed");
    app.add_option("--points", g.points, "sample points per check");
    app.add_option("--tol", g.tol, "relative tolerance (command default otherwise)");
    app.add_option("--report", g.report, "write JSON report lines to this file");
    app.add_flag("--timing", g.timing, "record wall_ms (reports are byte-identical without it)");
    app.add_flag("--serial", g.serial, "serial kernels");

    auto* verify = app.add_subcommand("verify", "residual checks")->require_subcommand(1)->fallthrough();
    auto* eigen = app.add_subcommand("eigen", "eigenfunction transforms")->require_subcommand(1)->fallthrough();
    auto* table = app.add_subcommand("table", "constant tables")->require_subcommand(1)->fallthrough();

    std::string identity = "all";
    auto* appendix = verify->add_subcommand("appendix", "theta and Weierstrass identities")->fallthrough();
    appendix->add_option("--identity", identity, "one identity name or all");

    int n_vars = 0;
    std::string masses, d = "0,0,0,0", lambda = "1";
    auto* source = verify->add_subcommand("source", "the source identity for arbitrary masses")->fallthrough();
    source->add_option("--n", n_vars, "number of variables");
    source->add_option("--masses", masses, "comma-separated complex masses");
    source->add_option("--d", d, "d_0,d_1,d_2,d_3");
    source->add_option("--lambda", lambda, "complex lambda");
    auto* routes = verify->add_subcommand("routes", "three assemblies of the one/two/three-body sums")->fallthrough();
    routes->add_option("--n", n_vars, "number of variables");
    routes->add_option("--masses", masses, "comma-separated complex masses");
    routes->add_option("--d", d, "d_0,d_1,d_2,d_3");
    routes->add_option("--lambda", lambda, "complex lambda");

    CorollaryBlock cb;
    auto add_block = [&](CLI::App* sc, bool with_which) {
        if (with_which) sc->add_option("--which", cb.which, "corollary 1..4");
        sc->add_option("--counts", cb.counts, "N,Nt,M,Mt");
        sc->add_option("--g", cb.g, "g_0,g_1,g_2,g_3");
        sc->add_option("--lambda", cb.lambda, "complex lambda");
    };
    auto* corollary = verify->add_subcommand("corollary", "corollary identities")->fallthrough();
    add_block(corollary, true);
    auto* symmetries = verify->add_subcommand("symmetries", "the two parameter symmetries")->fallthrough();
    add_block(symmetries, false);
    auto* constants = table->add_subcommand("constants", "lattice constants and A, C of a corollary")->fallthrough();
    add_block(constants, true);

    std::string counts2 = "1,0", gt = "1,1,0,0", reading = "eta";
    std::string lambda_e = "1";
    int mode = 0;
    double eps = 0.0;
    auto* ex1 = eigen->add_subcommand("example1", "plane-wave transform")->fallthrough();
    ex1->add_option("--counts", counts2, "N,Nt");
    ex1->add_option("--gt", gt, "g~ entries in {0,1}");
    ex1->add_option("--lambda", lambda_e, "complex lambda, lambda N integer");
    ex1->add_option("--n", mode, "mode number");
    ex1->add_option("--eps", eps, "line offset (default -R ln|q| / 2)");
    ex1->add_option("--reading", reading, "eta or literal");
    std::string t_text, lambda_override;
    auto* ex2 = eigen->add_subcommand("example2", "Lame transform on a figure-eight")->fallthrough();
    ex2->add_option("--counts", counts2, "N,Nt");
    ex2->add_option("--t", t_text, "Lame parameter t (random per point when omitted)");
    ex2->add_option("--lambda", lambda_override, "override lambda (default (2Nt - 1)/(2N))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const Lattice lat = make_lattice(g);
        Runner run(g, out);

        auto coupling = [&]() {
            std::vector<cplx> m;
            if (!masses.empty()) m = parse_complex_list(masses);
            else if (n_vars > 0) m.assign(static_cast<std::size_t>(n_vars), cplx{1.0});
            else throw ConfigError("give --masses or --n");
            if (n_vars > 0 && static_cast<std::size_t>(n_vars) != m.size())
                throw ConfigError("--n does not match the number of masses");
            return CouplingData(m, four(d, "--d"), parse_complex(lambda));
        };
        auto pair_counts = [&]() {
            const auto c = parse_int_list(counts2);
            if (c.size() != 2) throw ConfigError("--counts takes N,Nt");
            return std::pair{c[0], c[1]};
        };

        if (appendix->parsed()) {
            const double tol = run.tol(std::abs(lat.q()) > 0.6 ? 1e-7 : 1e-10);
            if (identity == "all") {
                run.run([&] { return check_all(lat, run.points(), g.seed, tol, run.exec()); });
            } else {
                std::optional<IdentityId> id;
                for (auto i : all_identities)
                    if (identity_name(i) == identity) id = i;
                if (!id) throw ConfigError("unknown identity '" + identity + "'");
                run.run([&] {
                    return std::vector{check_identity(*id, lat, run.points(), g.seed, tol, run.exec())};
                });
            }
        } else if (source->parsed()) {
            const CouplingData c = coupling();
            run.run([&] {
                return std::vector{residual_source_report(c, lat, run.points(), g.seed, run.tol(1e-8), run.exec())};
            });
        } else if (routes->parsed()) {
            const CouplingData c = coupling();
            run.run([&] {
                return std::vector{route_equivalence(c, lat, run.points(), g.seed, run.tol(1e-10), run.exec())};
            });
        } else if (corollary->parsed()) {
            const CorollaryParams p = corollary_params(cb);
            run.run([&] {
                return std::vector{residual_corollary(p, lat, run.points(), g.seed, run.tol(1e-9), run.exec()),
                                   corollary_coherence(p, lat, run.points(), g.seed, 1e-12, run.exec())};
            });
        } else if (symmetries->parsed()) {
            cb.which = 4;
            const CorollaryParams p = corollary_params(cb);
            run.run([&] { return std::vector{check_symmetries(p, lat, run.tol(1e-12))}; });
        } else if (ex1->parsed()) {
            const auto [N, Nt] = pair_counts();
            const auto gv = parse_int_list(gt);
            if (gv.size() != 4) throw ConfigError("--gt needs four entries");
            if (reading != "eta" && reading != "literal") throw ConfigError("--reading is eta or literal");
            PlaneWaveParams p{N, Nt, {gv[0], gv[1], gv[2], gv[3]}, parse_complex(lambda_e), mode};
            validate(p);
            PlaneWaveOptions opts;
            opts.eps = eps;
            opts.quad.exec = run.exec();
            const CReading r = reading == "eta" ? CReading::with_eta : CReading::literal;
            run.run([&] {
                return std::vector{example1_report(p, lat, run.points(), g.seed, run.tol(1e-6), r, opts)};
            });
        } else if (ex2->parsed()) {
            const auto [N, Nt] = pair_counts();
            LameParams p{N, Nt, {}, {}};
            if (!lambda_override.empty()) p.lambda = parse_complex(lambda_override);
            if (!t_text.empty()) p.t = parse_complex(t_text);
            FigureEightOptions opts;
            opts.quad.exec = run.exec();
            run.run([&] {
                return std::vector{
                    example2_report(p, !t_text.empty(), lat, run.points(), g.seed, run.tol(1e-5), opts)};
            });
        } else if (constants->parsed()) {
            const CorollaryParams p = corollary_params(cb);
            const auto& lc = lat.constants();
            const IdentityConstants k = constants_corollary(p, lat);
            out << "lattice " << lat.summary() << '\n';
            for (int nu = 1; nu <= 3; ++nu) out << "e" << nu << ' ' << fmt(lc.e[static_cast<std::size_t>(nu - 1)]) << '\n';
            out << "eta1 " << fmt(lc.eta1) << '\n';
            out << "params " << describe(p) << '\n';
            out << "A " << fmt(k.A) << '\n' << "C " << fmt(k.C) << '\n';
            out << "c0 " << fmt(k.c0) << '\n' << "|g| " << fmt(k.g_abs) << '\n';
        }
        return run.all_pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidCoupling& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidLattice& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionViolation& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "check aborted: " << e.what() << '\n';
        return 1;
    }
}

} // namespace inoz
