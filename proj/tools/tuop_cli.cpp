// tuop: command-line front end.
//
//   tuop poly     --n 10 --N 20 --gamma 1 --x 0.3
//   tuop moments  --n 10 --N 20 --gamma 1 --x 0.3 --n-max 12
//   tuop curve    --n 37 --N 74 --gamma 0.5 --x 0.583333 --r 1 --format csv
//   tuop asy      --n 40 --N 80 --gamma 1 --x 0.3 [--integral --t 1.1]
//   tuop rgamma   --exact|--asymptotic|--mc --n 8 --N 16 --gamma 1 --x 0.3
//   tuop clt      --n 50 --N 100 --x 0.3 --samples 2000
//   tuop diffid   --n 12 --N 24 --gamma 1 --x 0.2 [--prefactor appendix]
//   tuop painleve --alpha 1 --gamma 1 --v 2 --n 40
//   tuop verify   [--only 2,3,8] [--sample-scale 0.1]
//
// Exit codes: 0 ok, 1 acceptance failure (verify), 2 invalid input, 3 accuracy failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tuop/asymptotics.hpp"
#include "tuop/ensemble.hpp"
#include "tuop/geometry.hpp"
#include "tuop/orthopoly.hpp"
#include "tuop/painleve.hpp"
#include "tuop/verify.hpp"

using nlohmann::json;
using namespace tuop;

namespace {

constexpr const char* kSchemaVersion = "1.0";

struct RunConfig {
    std::string command;
    int n = 10;
    int N = 20;
    double gamma_re = 1.0;
    double gamma_im = 0.0;
    double x = 0.3;
    std::uint64_t seed = 20240613;
    std::string format = "json";
    std::string out;
    // subcommand knobs
    int n_max = -1;
    std::size_t nodes = 4096;
    double radius = 0.0;
    double r = 1.0;
    std::size_t points = 720;
    std::string component = "inner";
    bool tilde = false;
    bool integral = false;
    double t = 1.1;
    double u_width = -1.0;
    double delta = 4.0;
    bool exact = false, asymptotic = false, mc = false;
    std::size_t samples = 10000;
    std::string prefactor = "main";
    double h = 1e-4;
    int alpha = 1;
    double v = 2.0;
    double u_max = 60.0;
    std::string form = "corrected";
    std::vector<int> only;
    double sample_scale = 1.0;
};

json config_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"n", c.n},         {"N", c.N},         {"gamma_re", c.gamma_re},
              {"gamma_im", c.gamma_im}, {"x", c.x},       {"seed", c.seed},   {"format", c.format}};
    if (c.command == "moments") {
        j["n_max"] = c.n_max;
    } else if (c.command == "curve") {
        j["r"] = c.r;
        j["points"] = c.points;
        j["component"] = c.component;
        j["tilde"] = c.tilde;
    } else if (c.command == "asy") {
        j["integral"] = c.integral;
        j["t"] = c.t;
        j["u_width"] = c.u_width;
        j["delta"] = c.delta;
    } else if (c.command == "rgamma") {
        j["mode"] = c.mc ? "mc" : (c.asymptotic ? "asymptotic" : "exact");
        j["samples"] = c.samples;
    } else if (c.command == "clt") {
        j["samples"] = c.samples;
    } else if (c.command == "diffid") {
        j["prefactor"] = c.prefactor;
        j["nodes"] = c.nodes;
        j["h"] = c.h;
    } else if (c.command == "painleve") {
        j["alpha"] = c.alpha;
        j["v"] = c.v;
        j["u_max"] = c.u_max;
        j["form"] = c.form;
    } else if (c.command == "verify") {
        j["only"] = c.only;
        j["sample_scale"] = c.sample_scale;
    }
    return j;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json envelope(const RunConfig& c, const json& result) {
    json body = {{"command", c.command}, {"config", config_json(c)}, {"result", result}};
    json j = {{"schema_version", kSchemaVersion}, {"command", c.command}, {"config", body["config"]},
              {"result", result}};
    j["content_hash"] = fnv1a_hex(body.dump());
    return j;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV with the run config and content hash in '#' header lines.
struct Csv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }
    std::string str(const RunConfig& c) const {
        std::ostringstream body;
        for (std::size_t i = 0; i < columns.size(); ++i) body << (i ? "," : "") << columns[i];
        body << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) body << (i ? "," : "") << r[i];
            body << "\n";
        }
        std::ostringstream os;
        os << "# schema_version: " << kSchemaVersion << "\n";
        os << "# config: " << config_json(c).dump() << "\n";
        os << "# content_hash: " << fnv1a_hex(config_json(c).dump() + body.str()) << "\n";
        os << body.str();
        return os.str();
    }
};

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(c.out);
        if (!f) throw DomainError("cannot open output file " + c.out);
        f << text;
        if (!text.empty() && text.back() != '\n') f << "\n";
    }
}

void emit_json(const RunConfig& c, const json& result) { emit(c, envelope(c, result).dump(2)); }

ModelParams params(const RunConfig& c) { return ModelParams::make(c.n, c.N, cplx(c.gamma_re, c.gamma_im), c.x); }

// ---------------------------------------------------------------- subcommands

void run_poly(const RunConfig& c) {
    const ModelParams p = params(c);
    const PolyPair pp = monic_pair(p, p.n, moments(p, p.n + 1));
    const std::vector<cplx> zeros = poly_zeros(pp.P);
    if (c.format == "csv") {
        Csv t;
        t.columns = {"kind", "index", "re", "im"};
        for (std::size_t i = 0; i < pp.P.size(); ++i)
            t.row({"coef", std::to_string(i), g17(pp.P[i].real()), g17(pp.P[i].imag())});
        for (std::size_t i = 0; i < zeros.size(); ++i)
            t.row({"zero", std::to_string(i), g17(zeros[i].real()), g17(zeros[i].imag())});
        emit(c, t.str(c));
        return;
    }
    json coef = json::array(), zs = json::array(), q = json::array();
    for (cplx v : pp.P) coef.push_back(cplx_json(v));
    for (cplx v : pp.Q) q.push_back(cplx_json(v));
    for (cplx v : zeros) zs.push_back(cplx_json(v));
    emit_json(c, {{"coefficients", coef},
                  {"partner_coefficients", q},
                  {"zeros", zs},
                  {"chi", pp.chi},
                  {"chi_hat", pp.chi_hat},
                  {"log_chi", pp.log_chi},
                  {"residual_P", pp.residual_P},
                  {"residual_Q", pp.residual_Q}});
}

void run_moments(const RunConfig& c) {
    const ModelParams p = params(c);
    const int nmax = c.n_max >= 0 ? c.n_max : p.n + 1;
    const MomentTable mt = moments(p, nmax);
    const ToeplitzChain tc = toeplitz_chain(mt, nmax);
    if (c.format == "csv") {
        Csv t;
        t.columns = {"j", "re", "im", "radius", "error"};
        for (int j = -nmax; j <= nmax; ++j) {
            const std::size_t i = static_cast<std::size_t>(j + nmax);
            t.row({std::to_string(j), g17(mt[j].real()), g17(mt[j].imag()), g17(mt.radius[i]), g17(mt.error[i])});
        }
        emit(c, t.str(c));
        return;
    }
    json ms = json::array(), lt = json::array(), ph = json::array();
    for (int j = -nmax; j <= nmax; ++j) {
        const std::size_t i = static_cast<std::size_t>(j + nmax);
        ms.push_back({{"j", j}, {"value", cplx_json(mt[j])}, {"radius", mt.radius[i]}, {"error", mt.error[i]}});
    }
    for (int k = 0; k <= nmax; ++k) lt.push_back(tc.log_abs(k));
    emit_json(c, {{"n_max", nmax}, {"moments", ms}, {"log_abs_T", lt}, {"max_error", mt.max_error()}});
}

void run_curve(const RunConfig& c) {
    const ModelParams p = params(c);
    if (c.component != "inner" && c.component != "outer") throw DomainError("component must be inner or outer");
    const Component comp = c.component == "inner" ? Component::inner : Component::outer;
    const LevelCurve L = trace_gamma(p, c.r, c.points, comp, c.tilde ? PhiVariant::tilde : PhiVariant::plain);
    std::vector<double> res(L.points.size());
    for (std::size_t i = 0; i < L.points.size(); ++i) res[i] = std::abs(re_phi(L.points[i], L.x, L.coeff) - L.level);
    if (c.format == "csv") {
        Csv t;
        t.columns = {"re", "im", "residual"};
        for (std::size_t i = 0; i < L.points.size(); ++i)
            t.row({g17(L.points[i].real()), g17(L.points[i].imag()), g17(res[i])});
        emit(c, t.str(c));
        return;
    }
    json pts = json::array();
    for (std::size_t i = 0; i < L.points.size(); ++i)
        pts.push_back({{"re", L.points[i].real()}, {"im", L.points[i].imag()}, {"residual", res[i]}});
    json out = {{"r", L.r},
                {"component", to_string(L.component)},
                {"level", L.level},
                {"max_residual", L.residual},
                {"real_axis_crossings", real_axis_crossings(L)},
                {"jordan", is_jordan(L)},
                {"points", pts}};
    if (p.x > 0.0 && p.strong_regime()) {
        const SaddleReport s = saddle_report(p);
        out["saddle"] = {{"z0", s.z0}, {"phi_z0", s.phi_z0}, {"phi2_z0", s.phi2_z0}};
    }
    emit_json(c, out);
}

void run_asy(const RunConfig& c) {
    const ModelParams p = params(c);
    struct Row {
        cplx z;
        std::string region;
        cplx exact_log, asy_log;
    };
    std::vector<Row> rows;
    const double uw = c.u_width > 0 ? c.u_width : 5.0 / p.n;
    if (!c.integral) {
        const PolyPair pp = monic_pair(p, p.n, moments(p, p.n + 1));
        const LevelCurve g1 = trace_gamma(p, 1.0, 720, Component::inner);
        std::vector<cplx> zs;
        for (int k = 0; k < 32; ++k) {
            const double th = 2.0 * kPi * (k + 0.5) / 32.0;
            zs.push_back(std::polar(0.45, th));
            zs.push_back(std::polar(1.6, th));
            zs.push_back(critical_point(p, std::polar(3.0, 0.05 + (kPi - 0.1) * k / 31.0)));
        }
        const LevelCurve ring = trace_gamma(p, 1.0, 64, Component::inner);
        for (cplx z : ring.points) zs.push_back(z);
        for (cplx z : zs) {
            const RegionLabel lab = classify(z, p, g1, uw, c.delta);
            rows.push_back({z, to_string(lab.region), std::log(poly_eval(pp.P, z)), pn_asymptotic(z, p, lab).log_value});
        }
    } else {
        const LevelCurve gt = trace_gamma(p, c.t, 2048, Component::inner);
        auto add = [&](cplx z, IntegralRegime reg) {
            rows.push_back({z, to_string(reg), std::log(integral_direct(z, p, gt)),
                            integral_asymptotic(z, p, reg).log_value});
        };
        for (int k = 0; k < 16; ++k) {
            const double th = 2.0 * kPi * (k + 0.5) / 16.0;
            add(std::polar(0.45, th), IntegralRegime::interior);
            add(std::polar(1.6, th), IntegralRegime::exterior);
            add(critical_point(p, std::polar(3.0, 0.05 + (kPi - 0.1) * k / 15.0)), IntegralRegime::critical);
        }
    }
    auto rel = [](const Row& r) { return std::abs(std::exp(r.asy_log - r.exact_log) - 1.0); };
    if (c.format == "csv") {
        Csv t;
        t.columns = {"z_re", "z_im", "region", "exact_log", "asy_log", "rel_err"};
        for (const auto& r : rows)
            t.row({g17(r.z.real()), g17(r.z.imag()), r.region, g17(r.exact_log.real()), g17(r.asy_log.real()),
                   g17(rel(r))});
        emit(c, t.str(c));
        return;
    }
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"z_re", r.z.real()},
                       {"z_im", r.z.imag()},
                       {"region", r.region},
                       {"exact_log", r.exact_log.real()},
                       {"asy_log", r.asy_log.real()},
                       {"rel_err", rel(r)}});
    emit_json(c, {{"rows", arr}});
}

void run_rgamma(const RunConfig& c) {
    const ModelParams p = params(c);
    const int modes = int(c.exact) + int(c.asymptotic) + int(c.mc);
    if (modes > 1) throw DomainError("choose one of --exact, --asymptotic, --mc");
    json out;
    if (c.mc) {
        const McEstimate e = mc_rgamma(p, c.samples, c.seed);
        out = {{"mode", "mc"},           {"mean", e.mean},       {"standard_error", e.standard_error},
               {"samples", e.samples},   {"seed", e.seed},       {"log_value", std::log(e.mean)},
               {"variance_warning", e.variance_warning}};
    } else if (c.asymptotic) {
        const cplx v = rgamma_asymptotic_c(p);
        if (p.x * p.x >= p.mu) throw DomainError("rgamma --asymptotic needs x < sqrt(mu)");
        out = {{"mode", "asymptotic"}, {"log_value", v.real()}, {"log_value_im", v.imag()}};
    } else {
        const cplx v = rgamma_exact_c(p);
        out = {{"mode", "exact"}, {"log_value", v.real()}, {"log_value_im", v.imag()}};
    }
    if (c.format == "csv") {
        Csv t;
        t.columns = {"key", "value"};
        for (auto it = out.begin(); it != out.end(); ++it)
            t.row({it.key(), it->is_string() ? it->get<std::string>() : it->dump()});
        emit(c, t.str(c));
        return;
    }
    emit_json(c, out);
}

void run_clt(const RunConfig& c) {
    const ModelParams p = params(c);
    const CltSummary s = clt_empirical(p, c.samples, c.seed);
    if (c.format == "csv") {
        Csv t;
        t.columns = {"standardized"};
        for (double v : s.standardized) t.row({g17(v)});
        emit(c, t.str(c));
        return;
    }
    emit_json(c, {{"mean", s.mean},
                  {"variance", s.variance},
                  {"ks_distance", s.ks_distance},
                  {"samples", s.samples},
                  {"seed", s.seed},
                  {"kappa1", kappa1(p)},
                  {"predicted_mean_offset", clt_mean_offset(p.n)}});
}

void run_diffid(const RunConfig& c) {
    const ModelParams p = params(c);
    if (c.prefactor != "main" && c.prefactor != "appendix") throw DomainError("prefactor must be main or appendix");
    const DiffidPrefactor pref = c.prefactor == "main" ? DiffidPrefactor::main_text : DiffidPrefactor::appendix;
    const DiffidReport r = diffid_rhs(p, pref, c.nodes);
    const cplx g(c.gamma_re, c.gamma_im);
    const double fd = (rgamma_exact(ModelParams::make(c.n, c.N, g, c.x + c.h)) -
                       rgamma_exact(ModelParams::make(c.n, c.N, g, c.x - c.h))) / (2.0 * c.h);
    json terms = json::array();
    for (const cplx& t : r.terms) terms.push_back(cplx_json(t));
    json out = {{"value", r.value},        {"finite_difference", fd}, {"rel_err", std::abs(r.value / fd - 1.0)},
                {"I12", cplx_json(r.I12)}, {"I22", cplx_json(r.I22)}, {"terms", terms}};
    if (c.format == "csv") {
        Csv t;
        t.columns = {"value", "finite_difference", "rel_err"};
        t.row({g17(r.value), g17(fd), g17(std::abs(r.value / fd - 1.0))});
        emit(c, t.str(c));
        return;
    }
    emit_json(c, out);
}

void run_painleve(RunConfig c) {
    c.N = c.n + c.alpha;
    if (c.v > 0.0 && c.v < c.n) c.x = std::sqrt(1.0 - c.v / c.n);
    if (c.form != "corrected" && c.form != "printed") throw DomainError("form must be corrected or printed");
    const PvForm form = c.form == "corrected" ? PvForm::corrected : PvForm::printed;
    const PVParams pv = PVParams::make(c.alpha, c.gamma_re);
    PvConfig cfg;
    cfg.u_max = c.u_max;
    cfg.form = form;
    const SigmaSolution sol = sigma_solve(pv, c.v, cfg);
    if (c.format == "csv") {
        Csv t;
        t.columns = {"u", "sigma", "sigma_prime", "residual"};
        for (std::size_t i = 0; i < sol.u.size(); ++i)
            t.row({g17(sol.u[i]), g17(sol.sigma[i]), g17(sol.sigma_p[i]), g17(sol.residual[i])});
        emit(c, t.str(c));
        return;
    }
    const PvPrediction pred = rgamma_pv(c.alpha, c.gamma_re, c.v, c.n, form, cfg);
    const WeakExact ex = dn_exact_weak(c.alpha, c.gamma_re, c.v, c.n);
    emit_json(c, {{"a", pv.a},
                  {"b", pv.b},
                  {"a2_minus_b2", pv.D()},
                  {"exponent_identity_gap", exponent_identity_gap(c.alpha, c.gamma_re)},
                  {"sigma_at_v", sol.sigma.back()},
                  {"max_residual", sol.max_residual},
                  {"integral_v_to_inf", omega_integral(sol)},
                  {"rgamma_pv", pred.log_value},
                  {"dn_exact_weak", ex.log_value},
                  {"x", ex.x},
                  {"ratio", std::exp(pred.log_value - ex.log_value)},
                  {"barnes_prefactor_log", ex.barnes_prefactor_log},
                  {"barnes_power_gap", ex.barnes_power_gap},
                  {"conditioning_warning", ex.conditioning_warning}});
}

int run_verify(const RunConfig& c) {
    VerifyConfig vc;
    vc.seed = c.seed;
    vc.sample_scale = c.sample_scale;
    std::vector<int> ids = c.only;
    if (ids.empty())
        for (int k = 1; k <= 12; ++k) ids.push_back(k);
    json arr = json::array();
    bool all = true;
    for (int id : ids) {
        const CriterionResult r = run_criterion(id, vc);
        all &= r.pass();
        arr.push_back(to_json(r));
        std::fprintf(stderr, "[%s] criterion %2d: %s\n", r.pass() ? "PASS" : "FAIL", id, r.title.c_str());
    }
    emit_json(c, {{"criteria", arr}, {"all_pass", all}});
    return all ? 0 : 1;
}

void add_model_options(CLI::App* s, RunConfig& c) {
    s->add_option("--n", c.n, "polynomial degree / matrix size n");
    s->add_option("--N", c.N, "unitary size N (alpha = N - n)");
    s->add_option("--gamma", c.gamma_re, "Re(gamma)");
    s->add_option("--gamma-im", c.gamma_im, "Im(gamma)");
    s->add_option("--x", c.x, "charge location, 0 <= x < 1");
    s->add_option("--seed", c.seed, "64-bit seed");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", c.out, "output file (default stdout)");
}

void print_error(const RunConfig& c, const std::string& kind, const std::string& msg, int code) {
    json e = {{"schema_version", kSchemaVersion},
              {"command", c.command},
              {"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}};
    std::cout << e.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated unitary orthogonal polynomials and characteristic-polynomial moments"};
    app.require_subcommand(1);
    RunConfig c;

    auto* poly = app.add_subcommand("poly", "monic polynomial, partner, norming constants, zeros");
    add_model_options(poly, c);

    auto* mom = app.add_subcommand("moments", "contour moments and Toeplitz determinants");
    add_model_options(mom, c);
    mom->add_option("--n-max", c.n_max, "largest |j| (default n+1)");

    auto* curve = app.add_subcommand("curve", "level curve Re phi = phi(r)");
    add_model_options(curve, c);
    curve->add_option("--r", c.r, "level parameter r");
    curve->add_option("--points", c.points, "number of angles");
    curve->add_option("--component", c.component, "inner or outer");
    curve->add_flag("--tilde", c.tilde, "use c + gamma/(2n)");

    auto* asy = app.add_subcommand("asy", "asymptotic vs exact comparison table");
    add_model_options(asy, c);
    asy->add_flag("--integral", c.integral, "compare the Gamma_t contour integral instead of P_n");
    asy->add_option("--t", c.t, "contour level t for --integral");
    asy->add_option("--u-width", c.u_width, "width of the neighbourhood of Gamma_1 (default 5/n)");
    asy->add_option("--delta", c.delta, "Disc1 radius times n");

    auto* rg = app.add_subcommand("rgamma", "log E|det(B_n - x)|^gamma");
    add_model_options(rg, c);
    rg->add_flag("--exact", c.exact, "Toeplitz determinant (default)");
    rg->add_flag("--asymptotic", c.asymptotic, "large-n formula");
    rg->add_flag("--mc", c.mc, "Monte Carlo");
    rg->add_option("--samples", c.samples, "Monte Carlo samples");

    auto* clt = app.add_subcommand("clt", "empirical CLT summary");
    add_model_options(clt, c);
    clt->add_option("--samples", c.samples, "samples");

    auto* dif = app.add_subcommand("diffid", "differential identity vs finite difference");
    add_model_options(dif, c);
    dif->add_option("--prefactor", c.prefactor, "main or appendix");
    dif->add_option("--nodes", c.nodes, "trapezoid nodes");
    dif->add_option("--fd-step", c.h, "finite-difference step");

    auto* pv = app.add_subcommand("painleve", "sigma-PV solution and weak-regime comparison");
    add_model_options(pv, c);
    pv->add_option("--alpha", c.alpha, "alpha = N - n (integer)");
    pv->add_option("--v", c.v, "double-scaling variable v");
    pv->add_option("--umax", c.u_max, "start of the backward integration");
    pv->add_option("--form", c.form, "corrected or printed boundary sign and constant");

    auto* ver = app.add_subcommand("verify", "acceptance criteria");
    ver->add_option("--only", c.only, "criterion ids")->delimiter(',');
    ver->add_option("--seed", c.seed, "Monte Carlo seed");
    ver->add_option("--sample-scale", c.sample_scale, "multiplier on Monte Carlo sample counts");
    ver->add_option("--out", c.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error(c, "validation", e.what(), 2);
        return 2;
    }
    for (auto* s : app.get_subcommands()) c.command = s->get_name();

    try {
        if (c.command == "poly") run_poly(c);
        else if (c.command == "moments") run_moments(c);
        else if (c.command == "curve") run_curve(c);
        else if (c.command == "asy") run_asy(c);
        else if (c.command == "rgamma") run_rgamma(c);
        else if (c.command == "clt") run_clt(c);
        else if (c.command == "diffid") run_diffid(c);
        else if (c.command == "painleve") run_painleve(c);
        else if (c.command == "verify") return run_verify(c);
    } catch (const DomainError& e) {
        print_error(c, "validation", e.what(), 2);
        return 2;
    } catch (const AccuracyError& e) {
        print_error(c, "accuracy", e.what(), 3);
        return 3;
    } catch (const std::invalid_argument& e) {
        print_error(c, "validation", e.what(), 2);
        return 2;
    }
    return 0;
}
