#include "lewisper/cli.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lewisper/errors.hpp"
#include "lewisper/io.hpp"
#include "lewisper/lewis.hpp"
#include "lewisper/lfunc.hpp"
#include "lewisper/maass.hpp"
#include "lewisper/parallel.hpp"
#include "lewisper/specialfn.hpp"
#include "lewisper/transfer.hpp"
#include "lewisper/version.hpp"

namespace lewisper {
namespace cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Report: config echo plus results, human-readable lines and a JSON trailer.
// The timestamp appears only in the header line so bodies stay comparable.

class Report {
  public:
    explicit Report(std::string command) : command_(std::move(command)) {
        lines_.emplace_back("command", command_);
        json_["command"] = command_;
        json_["version"] = library_version;
        json_["config"] = json::object();
        json_["results"] = json::object();
    }

    void config(const std::string& key, const std::string& value) {
        lines_.emplace_back(key, value);
        json_["config"][key] = value;
    }
    void config(const std::string& key, double value) {
        lines_.emplace_back(key, io::format_cell(value));
        json_["config"][key] = value;
    }
    void config(const std::string& key, int value) {
        lines_.emplace_back(key, std::to_string(value));
        json_["config"][key] = value;
    }

    void result(const std::string& key, const std::string& value) {
        lines_.emplace_back(key, value);
        json_["results"][key] = value;
    }
    void result(const std::string& key, double value) {
        lines_.emplace_back(key, io::format_cell(value));
        json_["results"][key] = value;
    }
    void result(const std::string& key, bool value) {
        lines_.emplace_back(key, value ? "true" : "false");
        json_["results"][key] = value;
    }
    void result_json(const std::string& key, json value) {
        json_["results"][key] = std::move(value);
    }

    void write(const std::string& path) const {
        std::time_t t = std::time(nullptr);
        char stamp[40];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        std::ostringstream body;
        body << "# lewisper " << library_version << " | " << stamp << "\n";
        for (const auto& [k, v] : lines_) body << k << " = " << v << "\n";
        body << "=== json ===\n" << json_.dump() << "\n";
        if (path.empty()) {
            std::cout << body.str();
        } else {
            std::ofstream out(path);
            if (!out) throw ParseError("cannot write report to '" + path + "'");
            out << body.str();
        }
    }

  private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> lines_;
    json json_;
};

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream body;
    body << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) body << ',';
            body << io::format_cell(row[i]);
        }
        body << "\n";
    }
    if (path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(path);
        if (!out) throw ParseError("cannot write CSV to '" + path + "'");
        out << body.str();
    }
}

// ---------------------------------------------------------------------------
// Option parsing helpers.

std::vector<double> parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("grid must be start:stop:count, got '" + text + "'");
    double a = 0.0, b = 0.0;
    long n = 0;
    try {
        a = std::stod(text.substr(0, c1));
        b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        n = std::stol(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ParseError("bad grid '" + text + "'");
    }
    if (n < 1 || n > 1000000) throw ParseError("grid count out of range");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(a);
    } else if (a > 0.0 && b > 0.0) {
        for (long i = 0; i < n; ++i)
            out.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    } else {
        for (long i = 0; i < n; ++i)
            out.push_back(a + (b - a) * static_cast<double>(i) / (n - 1));
    }
    return out;
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto c = text.find(':');
    if (c == std::string::npos)
        throw ParseError("window must be lo:hi, got '" + text + "'");
    try {
        return {std::stod(text.substr(0, c)), std::stod(text.substr(c + 1))};
    } catch (const std::exception&) {
        throw ParseError("bad window '" + text + "'");
    }
}

cplx parse_point(const std::string& text) {
    const auto c = text.find(',');
    try {
        if (c == std::string::npos) return {std::stod(text), 0.0};
        return {std::stod(text.substr(0, c)), std::stod(text.substr(c + 1))};
    } catch (const std::exception&) {
        throw ParseError("bad point '" + text + "' (expected re[,im])");
    }
}

finrep::FiniteRep load_rep(const std::string& spec) {
    if (spec.empty() || spec == "trivial") return finrep::trivial_rep();
    if (spec == "sign") return finrep::s3_sign_rep();
    if (spec == "standard") return finrep::s3_standard_rep();
    return io::read_rep_file(spec);
}

maass::MaassForm load_form(const std::string& form_path, const std::string& rep_spec) {
    const auto data = io::read_coeff_file(form_path);
    if (rep_spec.empty() && data.dim == 1) return io::to_form(data);
    return io::to_form(data, load_rep(rep_spec));
}

struct FormOptions {
    std::string form_path;
    std::string rep_spec;
    bool direct = false;
};

lewis::PeriodFunction make_pf(const FormOptions& opt, int taylor_order = 26) {
    const auto form = load_form(opt.form_path, opt.rep_spec);
    const auto mode =
        opt.direct ? lewis::DataMode::DirectEverywhere : lewis::DataMode::Integral;
    return lewis::make_period_function(lewis::boundary_data(form, mode), taylor_order);
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.

int cmd_repinfo(const std::string& rep_spec, const std::string& report_path) {
    const auto rep = load_rep(rep_spec);
    const auto info = finrep::validate_rep(rep);
    Report rep_out("repinfo");
    rep_out.config("rep", rep_spec.empty() ? "trivial" : rep_spec);
    rep_out.result("dim", static_cast<double>(rep.dim));
    rep_out.result("order_T", static_cast<double>(info.order_T));
    rep_out.result("err_S2", info.err_S2);
    rep_out.result("err_ST3", info.err_ST3);
    rep_out.result("err_unitary_S", info.err_unitary_S);
    rep_out.result("err_unitary_T", info.err_unitary_T);
    rep_out.result("pass", info.pass);
    rep_out.write(report_path);
    return info.pass ? 0 : 1;
}

int cmd_solve(const std::string& window, const std::string& parity, int kmax,
              const std::string& out_path, const std::string& report_path) {
    const auto [lo, hi] = parse_window(window);
    const auto par = parity == "even" ? maass::Parity::Even : maass::Parity::Odd;
    const auto form = maass::hejhal_solve(lo, hi, par, kmax);

    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i)
        pts.emplace_back(0.05 + 0.40 * i / 19.0, 1.05 + 0.30 * ((7 * i) % 20) / 19.0);
    finrep::GroupWord s_word;
    s_word.tokens = {finrep::Tok::S};
    const double autom = maass::automorphy_residual(form, s_word, pts);

    if (!out_path.empty()) io::write_coeff_file(out_path, form);
    Report rep("solve");
    rep.config("window", window);
    rep.config("parity", parity);
    rep.config("kmax", kmax);
    if (!out_path.empty()) rep.config("out", out_path);
    rep.result("R", form.nu.nu.imag());
    rep.result("automorphy_residual", autom);
    rep.result("hecke_defect", maass::hecke_defect(form));
    rep.write(report_path);
    return 0;
}

int cmd_eval(const FormOptions& opt, const std::vector<std::string>& zs,
             const std::string& grid, double y_level, bool renorm,
             const std::string& out_path, const std::string& report_path) {
    const auto form = load_form(opt.form_path, opt.rep_spec);
    std::vector<cplx> points;
    for (const auto& z : zs) points.push_back(parse_point(z));
    if (!grid.empty())
        for (double x : parse_grid(grid)) points.emplace_back(x, y_level);
    if (points.empty()) throw ParseError("eval: no points given (use --z or --grid)");

    std::vector<std::vector<double>> rows(points.size());
    double worst_tail = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double tail = 0.0;
        const Vec u = renorm ? maass::evaluate_renorm(form, points[i], &tail)
                             : maass::evaluate(form, points[i], &tail);
        worst_tail = std::max(worst_tail, tail);
        auto& row = rows[i];
        row = {points[i].real(), points[i].imag()};
        for (Eigen::Index j = 0; j < u.size(); ++j) {
            row.push_back(u[j].real());
            row.push_back(u[j].imag());
        }
    }
    std::ostringstream header;
    header << "x,y";
    for (int j = 0; j < form.dim(); ++j)
        header << ",re_" << j << ",im_" << j;
    write_csv(out_path, header.str(), rows);
    if (!report_path.empty() || out_path.empty()) {
        Report rep("eval");
        rep.config("form", opt.form_path);
        rep.config("scale", renorm ? "renorm" : "true");
        rep.result("points", static_cast<double>(points.size()));
        rep.result("max_tail_estimate", worst_tail);
        rep.write(report_path);
    }
    return 0;
}

int cmd_period(const FormOptions& opt, const std::vector<std::string>& zs,
               const std::string& grid, const std::string& out_path,
               const std::string& report_path) {
    const auto pf = make_pf(opt);
    std::vector<cplx> points;
    for (const auto& z : zs) points.push_back(parse_point(z));
    if (!grid.empty())
        for (double x : parse_grid(grid)) points.emplace_back(x, 0.0);
    if (points.empty()) throw ParseError("period: no points given (use --z or --grid)");

    std::vector<std::vector<double>> rows(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const Vec p = lewis::psi_eval(pf, points[i]);
        auto& row = rows[i];
        row = {points[i].real(), points[i].imag()};
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            row.push_back(p[j].real());
            row.push_back(p[j].imag());
        }
    });
    std::ostringstream header;
    header << "x,y";
    for (int j = 0; j < pf.source.form.dim(); ++j)
        header << ",re_" << j << ",im_" << j;
    write_csv(out_path, header.str(), rows);
    if (!report_path.empty() || out_path.empty()) {
        Report rep("period");
        rep.config("form", opt.form_path);
        rep.config("mode", opt.direct ? "direct" : "integral");
        rep.result("points", static_cast<double>(points.size()));
        rep.write(report_path);
    }
    return 0;
}

int cmd_lewis_check(const FormOptions& opt, const std::string& grid, double tol,
                    const std::string& out_path, const std::string& report_path) {
    const auto pf = make_pf(opt);
    std::vector<cplx> points;
    if (grid.empty()) {
        points = lewis::standard_grid();
    } else {
        for (double x : parse_grid(grid)) points.emplace_back(x, 0.0);
    }
    // Per-point residuals (deterministic order, parallel evaluation).
    const auto& form = pf.source.form;
    const Mat eta_T = form.rep.mat_T;
    const Mat eta_ST_inv = form.rep.mat_S * form.rep.mat_T.inverse();
    const cplx a = 2.0 * form.nu.nu + 1.0;
    std::vector<std::vector<double>> rows(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const cplx z = points[i];
        const Vec base = lewis::psi_eval(pf, z);
        const Vec lhs = eta_T * base;
        const Vec rhs = lewis::psi_eval(pf, z + 1.0) +
                        specialfn::cpow(z + 1.0, -a) *
                            (eta_ST_inv * lewis::psi_eval(pf, z / (z + 1.0)));
        const double res = (lhs - rhs).norm() / std::max(1.0, base.norm());
        rows[i] = {z.real(), z.imag(), res};
    });
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, row[2]);

    if (!out_path.empty()) write_csv(out_path, "x,y,residual", rows);
    Report rep("lewis-check");
    rep.config("form", opt.form_path);
    rep.config("mode", opt.direct ? "direct" : "integral");
    rep.config("grid", grid.empty() ? "standard" : grid);
    rep.config("tol", tol);
    rep.result("points", static_cast<double>(points.size()));
    rep.result("max_residual", worst);
    rep.result("pass", worst <= tol);
    rep.write(report_path);
    return worst <= tol ? 0 : 1;
}

int cmd_transfer_spec(const std::string& kind_str, const std::string& nu_str,
                      const std::string& rep_spec, int basis, long nmax, double radius,
                      int count, const std::string& out_path,
                      const std::string& report_path) {
    const auto kind =
        kind_str == "L0" ? transfer::Kind::L0 : transfer::Kind::Linf;
    const auto nu = spectral(parse_point(nu_str));
    const auto rep = load_rep(rep_spec);
    const auto disc = transfer::make_disc(kind, nu, rep, basis, nmax, radius);

    Report report("transfer-spec");
    report.config("kind", kind_str);
    report.config("nu", nu_str);
    report.config("rep", rep_spec.empty() ? "trivial" : rep_spec);
    report.config("basis", basis);
    report.config("radius", radius);
    try {
        const auto spec = transfer::spectrum(disc, count);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
            rows.push_back({static_cast<double>(i), spec.eigenvalues[i].real(),
                            spec.eigenvalues[i].imag(),
                            std::abs(spec.eigenvalues[i])});
        write_csv(out_path, "index,re,im,modulus", rows);
        report.result("converged", spec.converged);
        report.result("leading_modulus", std::abs(spec.eigenvalues.at(0)));
        report.write(report_path);
        return 0;
    } catch (const ConvergenceError& e) {
        json coarse = json::array(), fine = json::array();
        for (const auto& v : e.spectrum_coarse) coarse.push_back({v.real(), v.imag()});
        for (const auto& v : e.spectrum_fine) fine.push_back({v.real(), v.imag()});
        report.result("converged", false);
        report.result("error", std::string(e.what()));
        report.result_json("spectrum_coarse", coarse);
        report.result_json("spectrum_fine", fine);
        report.write(report_path);
        return 1;
    }
}

int cmd_lfunc(const FormOptions& opt, int eps, const std::vector<std::string>& ss,
              const std::string& sgrid, double fe_tol, const std::string& out_path,
              const std::string& report_path) {
    const auto form = load_form(opt.form_path, opt.rep_spec);
    std::vector<cplx> points;
    for (const auto& s : ss) points.push_back(parse_point(s));
    if (!sgrid.empty())
        for (double x : parse_grid(sgrid)) points.emplace_back(x, 0.0);
    if (points.empty()) points = {0.8, cplx(1.0, 0.5), 1.3};

    std::vector<std::vector<double>> rows(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec lhat = lfunc::completed_L_mellin(form, eps, points[i]);
        auto& row = rows[i];
        row = {points[i].real(), points[i].imag()};
        for (Eigen::Index j = 0; j < lhat.size(); ++j) {
            row.push_back(lhat[j].real());
            row.push_back(lhat[j].imag());
        }
    }
    const double fe = lfunc::functional_equation_residual(form, eps, points);

    std::ostringstream header;
    header << "s_re,s_im";
    for (int j = 0; j < form.dim(); ++j)
        header << ",lhat_re_" << j << ",lhat_im_" << j;
    write_csv(out_path, header.str(), rows);
    if (!report_path.empty() || out_path.empty()) {
        Report rep("lfunc");
        rep.config("form", opt.form_path);
        rep.config("eps", eps);
        rep.config("fe_tol", fe_tol);
        rep.result("fe_residual", fe);
        rep.result("pass", fe <= fe_tol);
        rep.write(report_path);
    }
    return fe <= fe_tol ? 0 : 1;
}

int cmd_converse(const FormOptions& opt, const std::string& report_path) {
    const auto form = load_form(opt.form_path, opt.rep_spec);
    const auto result = lfunc::converse_build(lfunc::dirichlet_data(form));
    Report rep("converse");
    rep.config("form", opt.form_path);
    rep.result("fe_probe", result.report.fe_probe);
    rep.result("automorphy_residual", result.report.automorphy_residual);
    rep.result("flagged", result.report.flagged);
    rep.result("message", result.report.message);
    rep.write(report_path);
    return result.report.flagged ? 1 : 0;
}

int cmd_asymptotics(const FormOptions& opt, double C, const std::string& report_path) {
    const auto pf = make_pf(opt);
    const auto check = lewis::asymptotic_bound_check(pf, C);
    Report rep("asymptotics");
    rep.config("form", opt.form_path);
    rep.config("C", C);
    rep.result("worst_slope", check.worst_slope);
    rep.result("sup_small", check.sup_small);
    rep.result("bound", check.bound);
    rep.result("pass", check.pass);
    rep.write(report_path);
    return check.pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Lewis correspondence toolkit for twisted Maass forms"};
    app.require_subcommand(1);

    int threads = 0;
    std::string out_path, report_path;
    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--threads", threads, "worker threads (0 = default)");
        sc->add_option("--out,-o", out_path, "CSV output path");
        sc->add_option("--report", report_path, "report output path");
    };
    FormOptions fo;
    auto add_form = [&](CLI::App* sc, bool with_direct = true) {
        sc->add_option("--form", fo.form_path, "coefficient file")->required();
        sc->add_option("--rep", fo.rep_spec, "representation (builtin name or file)");
        if (with_direct)
            sc->add_flag("--direct", fo.direct,
                         "evaluate boundary series everywhere (synthetic data)");
    };

    std::string rep_spec, window, parity = "odd", grid, kind = "Linf", nu_str = "0.5,0";
    std::string sgrid;
    std::vector<std::string> zs, ss;
    int kmax = 25, basis = 40, count = 6, eps = 1;
    long nmax = 200;
    double y_level = 1.0, tol = 1e-7, radius = 1.2, fe_tol = 1e-6, big_c = 0.9;
    bool renorm = false;

    auto* sc_repinfo = app.add_subcommand("repinfo", "validate a representation");
    sc_repinfo->add_option("--rep", rep_spec, "builtin name or file")->required();
    add_common(sc_repinfo);

    auto* sc_solve = app.add_subcommand("solve", "locate a cusp form in a window");
    sc_solve->add_option("--window", window, "R search window lo:hi")->required();
    sc_solve->add_option("--parity", parity, "even|odd")
        ->check(CLI::IsMember({"even", "odd"}));
    sc_solve->add_option("--kmax", kmax, "coefficient truncation");
    add_common(sc_solve);

    auto* sc_eval = app.add_subcommand("eval", "evaluate the form u(z)");
    add_form(sc_eval, false);
    sc_eval->add_option("--z", zs, "points re,im");
    sc_eval->add_option("--grid", grid, "x grid start:stop:count");
    sc_eval->add_option("--y", y_level, "height for --grid points");
    sc_eval->add_flag("--renorm", renorm, "renormalized kernel scale");
    add_common(sc_eval);

    auto* sc_period = app.add_subcommand("period", "evaluate the period function");
    add_form(sc_period);
    sc_period->add_option("--z", zs, "points re,im");
    sc_period->add_option("--grid", grid, "real grid start:stop:count");
    add_common(sc_period);

    auto* sc_lewis = app.add_subcommand("lewis-check", "three-term relation residuals");
    add_form(sc_lewis);
    sc_lewis->add_option("--grid", grid, "real grid (default: standard grid)");
    sc_lewis->add_option("--tol", tol, "pass threshold");
    add_common(sc_lewis);

    auto* sc_spec = app.add_subcommand("transfer-spec", "transfer-operator spectrum");
    sc_spec->add_option("--kind", kind, "L0|Linf")->check(CLI::IsMember({"L0", "Linf"}));
    sc_spec->add_option("--nu", nu_str, "spectral parameter re[,im]");
    sc_spec->add_option("--rep", rep_spec, "builtin name or file");
    sc_spec->add_option("--basis", basis, "polynomial basis size");
    sc_spec->add_option("--nmax", nmax, "direct branches before zeta tails");
    sc_spec->add_option("--radius", radius, "disc radius");
    sc_spec->add_option("--count", count, "eigenvalues to report");
    add_common(sc_spec);

    auto* sc_lfunc = app.add_subcommand("lfunc", "completed L-values and FE residual");
    add_form(sc_lfunc, false);
    sc_lfunc->add_option("--eps", eps, "parity sector 0|1")->check(CLI::Range(0, 1));
    sc_lfunc->add_option("--s", ss, "evaluation points re[,im]");
    sc_lfunc->add_option("--sgrid", sgrid, "real s grid start:stop:count");
    sc_lfunc->add_option("--fe-tol", fe_tol, "functional-equation threshold");
    add_common(sc_lfunc);

    auto* sc_conv = app.add_subcommand("converse", "coefficient-to-form round trip");
    add_form(sc_conv, false);
    add_common(sc_conv);

    auto* sc_asym = app.add_subcommand("asymptotics", "growth/decay bound check");
    add_form(sc_asym);
    sc_asym->add_option("--C", big_c, "decay exponent");
    add_common(sc_asym);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (threads > 0) set_thread_count(threads);
        if (*sc_repinfo) return cmd_repinfo(rep_spec, report_path);
        if (*sc_solve) return cmd_solve(window, parity, kmax, out_path, report_path);
        if (*sc_eval)
            return cmd_eval(fo, zs, grid, y_level, renorm, out_path, report_path);
        if (*sc_period) return cmd_period(fo, zs, grid, out_path, report_path);
        if (*sc_lewis) return cmd_lewis_check(fo, grid, tol, out_path, report_path);
        if (*sc_spec)
            return cmd_transfer_spec(kind, nu_str, rep_spec, basis, nmax, radius, count,
                                     out_path, report_path);
        if (*sc_lfunc)
            return cmd_lfunc(fo, eps, ss, sgrid, fe_tol, out_path, report_path);
        if (*sc_conv) return cmd_converse(fo, report_path);
        if (*sc_asym) return cmd_asymptotics(fo, big_c, report_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace cli
}  // namespace lewisper
