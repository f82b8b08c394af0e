#include "catspec/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>

#include "catspec/adiabatic.hpp"
#include "catspec/cat_field.hpp"
#include "catspec/errors.hpp"
#include "catspec/gaussian_ansatz.hpp"
#include "catspec/gpe_relax.hpp"
#include "catspec/thomas_fermi.hpp"
#include "catspec/tridiag_eigen.hpp"
#include "catspec/twomode_exact.hpp"
#include "catspec/twomode_meanfield.hpp"
#include "catspec/varifield.hpp"

namespace catspec {

namespace {

namespace fs = std::filesystem;

constexpr double kPaperU0 = 0.20943951023931953;  // 4 pi * 50 nm / 3 um

// default Lambda grid: 61 points over [0.5, 2], denser (0.005) in [0.95, 1.05]
std::vector<double> default_two_mode_grid() {
    std::set<double> pts;
    for (int i = 0; i < 61; ++i) pts.insert(0.5 + 1.5 * i / 60.0);
    for (int i = 0; i <= 20; ++i) pts.insert(0.95 + 0.005 * i);
    return {pts.begin(), pts.end()};
}

std::vector<double> grid_from_config(const Config& cfg, const std::string& prefix,
                                     const std::vector<double>& fallback) {
    if (cfg.has(prefix + ".values")) return cfg.get_double_list(prefix + ".values", {});
    if (cfg.has(prefix + ".min") || cfg.has(prefix + ".max") || cfg.has(prefix + ".points")) {
        const double lo = cfg.get_double(prefix + ".min", 0.5);
        const double hi = cfg.get_double(prefix + ".max", 2.0);
        const int n = cfg.get_int(prefix + ".points", 61);
        if (n < 1 || hi < lo) throw ConfigError("bad " + prefix + " grid specification");
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0);
        return g;
    }
    return fallback;
}

std::string lambda_tag(double v) {
    std::string s = format_g12(v);
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

// exact double round-trip for config defaults
std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunContext {
    Config cfg;
    std::string out_dir;
    int threads = 0;
    RunManifest manifest;

    std::string path(const std::string& name) {
        manifest.outputs.push_back(name);
        return (fs::path(out_dir) / name).string();
    }
    void convention(const std::string& k, const std::string& v) {
        manifest.conventions.emplace_back(k, v);
    }
};

ModelParams exact_params(const Config& cfg) {
    Config c = cfg;
    if (!c.has("n_atoms")) c.set("n_atoms", "1000");
    if (!c.has("u0")) c.set("u0", full_precision(1.0 / c.get_int("n_atoms", 1000)));
    if (!c.has("u1")) c.set("u1", full_precision(3.0 * c.get_double("u0", 0.0)));
    return params_from_config(c, /*tilde_default=*/false);
}

ModelParams meanfield_params(const Config& cfg) {
    Config c = cfg;
    if (!c.has("n_atoms")) c.set("n_atoms", "1000");
    if (!c.has("u0")) c.set("u0", full_precision(1.0 / c.get_int("n_atoms", 1000)));
    if (!c.has("u1")) c.set("u1", full_precision(3.0 * c.get_double("u0", 0.0)));
    return params_from_config(c, /*tilde_default=*/true);
}

ModelParams field_params(const Config& cfg) {
    Config c = cfg;
    if (!c.has("n_atoms")) c.set("n_atoms", "1000");
    if (!c.has("u0")) c.set("u0", full_precision(kPaperU0));
    if (!c.has("u1")) c.set("u1", full_precision(3.0 * c.get_double("u0", kPaperU0)));
    return params_from_config(c, /*tilde_default=*/true);
}

void note_params(RunContext& ctx, const ModelParams& p) {
    ctx.convention("n_atoms", format_g12(p.n_atoms));
    ctx.convention("u0", format_g12(p.u0));
    ctx.convention("u1", format_g12(p.u1));
    ctx.convention("tilde_rescale", p.tilde_rescale ? "on" : "off");
}

void emit_sweep(RunContext& ctx, const std::string& stem, const std::vector<SweepRow>& rows) {
    CsvFile csv(ctx.path(stem + ".csv"), ctx.manifest, "Lambda,E0,gap01,gap12,ratio,gap03");
    SvgSeries ratio{"(E1-E0)/(E2-E1)", {}, {}};
    for (const auto& r : rows) {
        csv.row({r.Lambda, r.e0, r.gap01, r.gap12, r.ratio, r.gap03});
        ratio.x.push_back(r.Lambda);
        ratio.y.push_back(r.ratio);
    }
    write_svg_polylines(ctx.path(stem + ".svg"), {ratio});
}

void run_fig1(RunContext& ctx) {
    const ModelParams p = exact_params(ctx.cfg);
    note_params(ctx, p);
    const auto grid = grid_from_config(ctx.cfg, "grid", default_two_mode_grid());
    const auto rows = gap_ratio_sweep(p, grid, ctx.threads);
    CsvFile csv(ctx.path("fig1.csv"), ctx.manifest, "Lambda,E0");
    SvgSeries e0{"E0", {}, {}};
    for (const auto& r : rows) {
        csv.row({r.Lambda, r.e0});
        e0.x.push_back(r.Lambda);
        e0.y.push_back(r.e0);
    }
    write_svg_polylines(ctx.path("fig1.svg"), {e0});
}

void run_fig2(RunContext& ctx) {
    const auto ns = ctx.cfg.get_double_list("fig2.n_values", {1000, 10000});
    const auto grid = grid_from_config(ctx.cfg, "grid", default_two_mode_grid());
    for (double ndbl : ns) {
        Config c = ctx.cfg;
        c.set("n_atoms", format_g12(ndbl));
        const ModelParams p = exact_params(c);
        if (ndbl == ns.front()) note_params(ctx, p);
        const auto rows = gap_ratio_sweep(p, grid, ctx.threads);
        const std::string stem = "fig2_N" + format_g12(ndbl);
        emit_sweep(ctx, stem, rows);
        // transition-region zoom
        std::vector<SweepRow> zoom;
        for (const auto& r : rows)
            if (r.Lambda >= 0.95 && r.Lambda <= 1.05) zoom.push_back(r);
        emit_sweep(ctx, stem + "_zoom", zoom);
    }
}

void run_fig3(RunContext& ctx) {
    const auto ns = ctx.cfg.get_double_list("fig3.n_values", {1000, 10000});
    const auto grid = grid_from_config(ctx.cfg, "grid", default_two_mode_grid());
    for (double ndbl : ns) {
        Config c = ctx.cfg;
        c.set("n_atoms", format_g12(ndbl));
        const ModelParams p = exact_params(c);
        if (ndbl == ns.front()) note_params(ctx, p);
        const auto rows = gap_ratio_sweep(p, grid, ctx.threads);
        const std::string stem = "fig3_N" + format_g12(ndbl);
        CsvFile csv(ctx.path(stem + ".csv"), ctx.manifest, "Lambda,E1mE0,E2mE0,E3mE0");
        SvgSeries s1{"E1-E0", {}, {}}, s2{"E2-E0", {}, {}}, s3{"E3-E0", {}, {}};
        for (const auto& r : rows) {
            const double e1 = r.gap01, e2 = r.gap01 + r.gap12, e3 = r.gap03;
            csv.row({r.Lambda, e1, e2, e3});
            s1.x.push_back(r.Lambda);
            s1.y.push_back(e1);
            s2.x.push_back(r.Lambda);
            s2.y.push_back(e2);
            s3.x.push_back(r.Lambda);
            s3.y.push_back(e3);
        }
        write_svg_polylines(ctx.path(stem + ".svg"), {s1, s2, s3});
    }
}

void run_fig4(RunContext& ctx) {
    const ModelParams base = exact_params(ctx.cfg);
    note_params(ctx, base);
    const auto lambdas = ctx.cfg.get_double_list("fig4.lambda_values", {0.9, 0.95, 1.0, 1.05});
    std::vector<SvgSeries> all;
    for (double L : lambdas) {
        const ModelParams p =
            base.with_lambda(lambda_from_Lambda(base, L, LambdaConvention::TwoMode));
        const auto spec = diagonalize(build_hamiltonian(p), 2, true);
        const auto dist = ground_distribution(spec);
        CsvFile csv(ctx.path("fig4_L" + lambda_tag(L) + ".csv"), ctx.manifest, "m,prob");
        SvgSeries s{"Lambda=" + format_g12(L), {}, {}};
        for (std::size_t m = 0; m < dist.probs.size(); ++m) {
            csv.row({static_cast<double>(m), dist.probs[m]});
            s.x.push_back(static_cast<double>(m));
            s.y.push_back(dist.probs[m]);
        }
        all.push_back(std::move(s));
    }
    write_svg_polylines(ctx.path("fig4.svg"), all);
}

void emit_vari_sweep(RunContext& ctx, const std::string& stem,
                     const std::vector<VariSweepRow>& rows, bool fig6_columns) {
    if (!fig6_columns) {
        CsvFile csv(ctx.path(stem + ".csv"), ctx.manifest,
                    "Lambda,Lambda_rel,E0,gap01,gap12,ratio,gap03");
        SvgSeries s{"(E1-E0)/(E2-E1)", {}, {}};
        for (const auto& r : rows) {
            csv.row({r.Lambda, r.Lambda_rel, r.e0, r.gap01, r.gap12, r.ratio, r.gap03});
            s.x.push_back(r.Lambda_rel);
            s.y.push_back(r.ratio);
        }
        write_svg_polylines(ctx.path(stem + ".svg"), {s});
    } else {
        CsvFile csv(ctx.path(stem + ".csv"), ctx.manifest,
                    "Lambda,Lambda_rel,E1mE0,E2mE0,E3mE0");
        SvgSeries s1{"E1-E0", {}, {}}, s2{"E2-E0", {}, {}}, s3{"E3-E0", {}, {}};
        for (const auto& r : rows) {
            const double e1 = r.gap01, e2 = r.gap01 + r.gap12, e3 = r.gap03;
            csv.row({r.Lambda, r.Lambda_rel, e1, e2, e3});
            s1.x.push_back(r.Lambda_rel);
            s1.y.push_back(e1);
            s2.x.push_back(r.Lambda_rel);
            s2.y.push_back(e2);
            s3.x.push_back(r.Lambda_rel);
            s3.y.push_back(e3);
        }
        write_svg_polylines(ctx.path(stem + ".svg"), {s1, s2, s3});
    }
}

OrbitalOptions orbital_options(const Config& cfg) {
    OrbitalOptions opts;
    opts.coarse_step = cfg.get_bool("varifield.full_resolution", false) ? 1 : 0;
    const std::string coupling = cfg.get_string("varifield.coupling", "2lambda");
    if (coupling == "2lambda")
        opts.coupling = VariCoupling::TwoLambda;
    else if (coupling == "lambda")
        opts.coupling = VariCoupling::Lambda;
    else
        throw ConfigError("varifield.coupling must be 'lambda' or '2lambda'");
    opts.two_gaussian = cfg.get_bool("varifield.two_gaussian", false);
    return opts;
}

std::vector<double> vari_grid(const Config& cfg, const ModelParams& p) {
    const double L0 = tf_lambda0(p);
    std::vector<double> rel;
    if (cfg.has("grid.rel_values")) {
        rel = cfg.get_double_list("grid.rel_values", {});
    } else if (cfg.has("grid.values")) {
        return cfg.get_double_list("grid.values", {});
    } else {
        for (int i = 0; i <= 26; ++i) rel.push_back(0.3 + 0.05 * i);
    }
    std::vector<double> grid;
    grid.reserve(rel.size());
    for (double x : rel) grid.push_back(x * L0);
    return grid;
}

void run_fig5(RunContext& ctx, bool fig6_columns) {
    const ModelParams p = field_params(ctx.cfg);
    note_params(ctx, p);
    const auto opts = orbital_options(ctx.cfg);
    ctx.convention("vari_coupling", opts.coupling == VariCoupling::TwoLambda ? "2lambda" : "lambda");
    ctx.convention("Lambda_axis", "field convention; Lambda_rel = Lambda / Lambda0");
    const auto grid = vari_grid(ctx.cfg, p);
    const auto rows = variational_sweep(p, grid, opts, ctx.threads);
    emit_vari_sweep(ctx, fig6_columns ? "fig6" : "fig5", rows, fig6_columns);
}

void run_spectrum(RunContext& ctx) {
    Config c = ctx.cfg;
    if (!c.has("n_atoms")) c.set("n_atoms", "2");
    if (!c.has("u0")) c.set("u0", "0");
    if (!c.has("u1")) c.set("u1", "2");
    if (!c.has("lambda") && !c.has("Lambda")) c.set("lambda", "1");
    const ModelParams p = params_from_config(c, false);
    note_params(ctx, p);
    const int k = ctx.cfg.get_int("k_lowest", std::min(p.n_atoms + 1, 8));
    const auto spec = diagonalize(build_hamiltonian(p), k, false);
    CsvFile csv(ctx.path("spectrum.csv"), ctx.manifest, "k,energy");
    for (int i = 0; i < spec.k_computed; ++i)
        csv.row({static_cast<double>(i), spec.eigenvalues[i]});
}

void run_meanfield(RunContext& ctx) {
    const ModelParams p = meanfield_params(ctx.cfg);
    note_params(ctx, p);
    const auto grid = grid_from_config(ctx.cfg, "grid", default_two_mode_grid());
    const auto rows = gap_ratio_sweep(p, grid, ctx.threads);
    CsvFile csv(ctx.path("meanfield.csv"), ctx.manifest,
                "Lambda,E0,gap01,gap12,ratio,gap03,eps,E_plus,E_minus");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rows) {
        double eps = nan, ep = nan, em = nan;
        if (r.Lambda > 0.0 && r.Lambda < 1.0) {
            const ModelParams pl =
                p.with_lambda(lambda_from_Lambda(p, r.Lambda, LambdaConvention::TwoMode));
            const auto cd = cat_energies(pl);
            eps = cd.overlap_eps;
            ep = cd.e_plus;
            em = cd.e_minus;
        }
        csv.row({r.Lambda, r.e0, r.gap01, r.gap12, r.ratio, r.gap03, eps, ep, em});
    }
}

void run_tf(RunContext& ctx) {
    const ModelParams p = field_params(ctx.cfg);
    note_params(ctx, p);
    double lambda = ctx.cfg.get_double("lambda", p.lambda);
    if (ctx.cfg.has("Lambda"))
        lambda = lambda_from_Lambda(p, ctx.cfg.get_double("Lambda", 0.0), LambdaConvention::Field);
    const auto sols = solve_thomas_fermi(p, lambda);
    CsvFile summary(ctx.path("tf_summary.csv"), ctx.manifest, "Lambda,branch,mu,energy,A,a,B,b");
    std::vector<SvgSeries> series;
    const double Lam = (p.u1_eff() > p.u0_eff())
                           ? 2.0 * lambda / (p.u1_eff() - p.u0_eff())
                           : std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : sols) {
        const std::string bname = s.branch == BranchLabel::Symmetric
                                      ? "symmetric"
                                      : (s.branch == BranchLabel::Plus ? "plus" : "minus");
        const double e = energy_breakdown(s.profile, p, lambda).total();
        summary.raw_row(format_g12(Lam) + "," + bname + "," + format_g12(s.mu) + "," +
                        format_g12(e) + ",nan,nan,nan,nan");
        CsvFile prof(ctx.path("tf_profile_" + bname + ".csv"), ctx.manifest, "r,alpha,beta");
        SvgSeries sa{bname + " alpha", {}, {}};
        for (int i = 0; i < s.profile.grid.n; ++i) {
            prof.row({s.profile.grid.r(i), s.profile.alpha[i], s.profile.beta[i]});
            sa.x.push_back(s.profile.grid.r(i));
            sa.y.push_back(s.profile.alpha[i]);
        }
        series.push_back(std::move(sa));
    }
    write_svg_polylines(ctx.path("tf_profiles.svg"), series);
}

void run_gaussian(RunContext& ctx) {
    const ModelParams p = field_params(ctx.cfg);
    note_params(ctx, p);
    std::vector<double> lambdas;
    if (ctx.cfg.has("grid.values") || ctx.cfg.has("grid.min")) {
        for (double L : grid_from_config(ctx.cfg, "grid", {}))
            lambdas.push_back(lambda_from_Lambda(p, L, LambdaConvention::Field));
    } else if (ctx.cfg.has("Lambda")) {
        lambdas.push_back(
            lambda_from_Lambda(p, ctx.cfg.get_double("Lambda", 0.0), LambdaConvention::Field));
    } else {
        lambdas.push_back(ctx.cfg.get_double("lambda", p.lambda));
    }
    const int restarts = ctx.cfg.get_int("gaussian.restarts", 2);
    CsvFile csv(ctx.path("gaussian.csv"), ctx.manifest, "Lambda,branch,mu,energy,A,a,B,b");
    for (double lam : lambdas) {
        const auto m = minimize_gaussian(p, lam, restarts);
        const double Lam = (p.u1_eff() > p.u0_eff()) ? 2.0 * lam / (p.u1_eff() - p.u0_eff())
                                                     : std::numeric_limits<double>::quiet_NaN();
        const std::string branch = m.degenerate_partner ? "plus" : "symmetric";
        csv.raw_row(format_g12(Lam) + "," + branch + "," +
                    format_g12(gaussian_mu(m.pair, p, lam)) + "," + format_g12(m.energy) + "," +
                    format_g12(m.pair.amp_a) + "," + format_g12(m.pair.width_a) + "," +
                    format_g12(m.pair.amp_b) + "," + format_g12(m.pair.width_b));
        if (m.degenerate_partner) {
            const auto& g = *m.degenerate_partner;
            csv.raw_row(format_g12(Lam) + ",minus," + format_g12(gaussian_mu(g, p, lam)) + "," +
                        format_g12(m.energy) + "," + format_g12(g.amp_a) + "," +
                        format_g12(g.width_a) + "," + format_g12(g.amp_b) + "," +
                        format_g12(g.width_b));
        }
    }
}

void run_adiabatic(RunContext& ctx) {
    Config c = ctx.cfg;
    if (!c.has("n_atoms")) c.set("n_atoms", "50");
    if (!c.has("u0")) c.set("u0", "0.02");
    if (!c.has("u1")) c.set("u1", full_precision(3.0 * c.get_double("u0", 0.02)));
    const ModelParams p = params_from_config(c, false);
    note_params(ctx, p);
    RampSchedule ramp;
    ramp.Lambda_start = ctx.cfg.get_double("ramp.start", 1.5);
    ramp.Lambda_end = ctx.cfg.get_double("ramp.end", 0.7);
    ramp.duration = ctx.cfg.get_double("ramp.duration", 200.0);
    ramp.shape = ramp_shape_from_string(ctx.cfg.get_string("ramp.shape", "linear"));
    ctx.convention("ramp.shape", ramp.shape == RampShape::Linear ? "linear" : "smoothstep");
    double dt = ctx.cfg.get_double("dt", 0.0);
    if (dt <= 0.0) {
        const auto h0 = build_hamiltonian(
            p.with_lambda(lambda_from_Lambda(p, ramp.Lambda_start, LambdaConvention::TwoMode)));
        const double span =
            eigenvalue_by_index(h0, h0.dim() - 1) - eigenvalue_by_index(h0, 0);
        dt = 0.05 / span * 0.95;
    }
    const auto result = evolve(p, ramp, dt, ctx.cfg.get_int("adiabatic.max_rows", 401));
    CsvFile csv(ctx.path("adiabatic.csv"), ctx.manifest, "t,Lambda,fid0,fid01,norm");
    SvgSeries f0{"fid0", {}, {}}, f01{"fid01", {}, {}};
    for (const auto& r : result.rows) {
        csv.row({r.t, r.Lambda, r.fid_ground, r.fid_pair, r.norm});
        f0.x.push_back(r.t);
        f0.y.push_back(r.fid_ground);
        f01.x.push_back(r.t);
        f01.y.push_back(r.fid_pair);
    }
    write_svg_polylines(ctx.path("adiabatic.svg"), {f0, f01});
}

void run_varifield(RunContext& ctx) {
    const ModelParams p = field_params(ctx.cfg);
    note_params(ctx, p);
    const auto opts = orbital_options(ctx.cfg);
    ctx.convention("vari_coupling", opts.coupling == VariCoupling::TwoLambda ? "2lambda" : "lambda");
    const auto grid = vari_grid(ctx.cfg, p);
    const auto rows = variational_sweep(p, grid, opts, ctx.threads);
    emit_vari_sweep(ctx, "varifield", rows, false);
    // widths dump at one coupling
    const double rel = ctx.cfg.get_double("varifield.dump_Lambda_rel", 0.5);
    const double lam =
        lambda_from_Lambda(p, rel * tf_lambda0(p), LambdaConvention::Field);
    const auto family = solve_orbitals(p, lam, opts);
    CsvFile widths(ctx.path("varifield_widths.csv"), ctx.manifest, "m,a_m");
    for (int m = 0; m <= family.n_atoms; ++m)
        widths.row({static_cast<double>(m), family.width(m)});
}

}  // namespace

RunManifest run_subcommand(const std::string& name, const Config& cfg, const std::string& out_dir,
                           int threads, bool seed_free) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw ConfigError("out_dir is not writable: " + out_dir);

    RunContext ctx;
    ctx.cfg = cfg;
    ctx.out_dir = out_dir;
    ctx.threads = threads;
    ctx.manifest.subcommand = name;
    ctx.manifest.config_hash = fnv1a64_hex(name + "\n" + cfg.resolved_text());
    if (seed_free) ctx.convention("seed_free", "asserted (library contains no RNG)");

    if (name == "fig1")
        run_fig1(ctx);
    else if (name == "fig2")
        run_fig2(ctx);
    else if (name == "fig3")
        run_fig3(ctx);
    else if (name == "fig4")
        run_fig4(ctx);
    else if (name == "fig5")
        run_fig5(ctx, false);
    else if (name == "fig6")
        run_fig5(ctx, true);
    else if (name == "spectrum")
        run_spectrum(ctx);
    else if (name == "meanfield")
        run_meanfield(ctx);
    else if (name == "tf")
        run_tf(ctx);
    else if (name == "gaussian")
        run_gaussian(ctx);
    else if (name == "adiabatic")
        run_adiabatic(ctx);
    else if (name == "varifield")
        run_varifield(ctx);
    else
        throw ConfigError("unknown subcommand: " + name);

    write_manifest_json((fs::path(out_dir) / "manifest.json").string(), ctx.manifest);
    return ctx.manifest;
}

}  // namespace catspec
