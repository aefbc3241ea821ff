#pragma once

// Batch subcommands shared by the decoh executable and the integration tests.
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "decoh/config.hpp"
#include "decoh/csv.hpp"
#include "decoh/decoherence.hpp"
#include "decoh/field_scan.hpp"
#include "decoh/inversion.hpp"
#include "decoh/numerov.hpp"

namespace decoh::cli {

inline const std::vector<std::string> kSubcommands{"rate", "evolve", "scan", "invert", "oracle", "synth"};

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_directory;
    unsigned threads = 0;  // 0: DECOH_THREADS / hardware
};

enum ExitCode : int { ok = 0, validation_error = 1, numerical_error = 2 };

namespace detail {

inline std::filesystem::path output_path(const RunConfig& cfg, const Overrides& ov, const char* file) {
    const std::filesystem::path dir = ov.output_directory.value_or(cfg.output.directory);
    std::filesystem::create_directories(dir);
    return dir / file;
}

inline std::ofstream open_output(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    return out;
}

template <typename Block>
const Block& require_block(const std::optional<Block>& b, const char* name) {
    if (!b) throw ConfigError(std::string("config has no [") + name + "] block");
    return *b;
}

inline StateScatteringModel model(const RunConfig& cfg, const std::string& name, std::ostream& err) {
    const StateBlock* s = cfg.find_state(name);
    if (!s) throw ConfigError("unknown state '" + name + "'");
    auto m = to_model(*s);
    for (const auto& w : validate(m)) err << "warning: " << w << "\n";
    return m;
}

inline std::string num(double v) { return csv::format_double(v); }

inline int run_rate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto& b = require_block(cfg.rate, "rate");
    const auto gas = to_gas(cfg.gas);
    const auto a = evaluate_model(model(cfg, b.state_a, err), b.field);
    const auto x = evaluate_model(model(cfg, b.state_b, err), b.field);
    const auto c = coefficients(gas, a, x);
    out << "field_gauss " << num(b.field) << "\n"
        << "alpha_a_bohr " << num(meter_to_bohr(a.alpha)) << "\n"
        << "beta_a_bohr " << num(meter_to_bohr(a.beta)) << "\n"
        << "alpha_b_bohr " << num(meter_to_bohr(x.alpha)) << "\n"
        << "beta_b_bohr " << num(meter_to_bohr(x.beta)) << "\n"
        << "delta_abs_bohr " << num(meter_to_bohr(std::sqrt(squared_difference(a, x)))) << "\n"
        << "rate_per_s " << num(first_order_rate(gas, a, x, b.eta0)) << "\n"
        << "deta_dt_t0_per_s " << num(decoherence_rate_t0(c, gas.temperature(), b.eta0)) << "\n"
        << "xi1 " << num(c.xi1) << "\n"
        << "xi21 " << num(c.xi21) << "\n"
        << "xi22 " << num(c.xi22) << "\n"
        << "zeta0_per_s " << num(c.zeta0) << "\n"
        << "zeta1 " << num(c.zeta1) << "\n";
    return ok;
}

inline int run_evolve(const RunConfig& cfg, const Overrides& ov, std::ostream& out, std::ostream& err) {
    const auto& b = require_block(cfg.evolve, "evolve");
    const auto gas = to_gas(cfg.gas);
    const auto a = evaluate_model(model(cfg, b.state_a, err), b.field);
    const auto x = evaluate_model(model(cfg, b.state_b, err), b.field);
    std::vector<double> times(static_cast<std::size_t>(b.steps) + 1);
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = b.t_max * static_cast<double>(i) / static_cast<double>(b.steps);
    const auto traj = evolve(gas, a, x, {b.eta0, b.rho_aa, b.rho_bb, b.rho_ab}, times, b.epsilon);

    const auto path = output_path(cfg, ov, "evolve.csv");
    auto file = open_output(path);
    csv::Writer w(file, csv::columns::evolve, static_cast<int>(cfg.output.precision));
    for (std::size_t i = 0; i < times.size(); ++i)
        w.row({traj.times[i], traj.eta[i], traj.rho_offdiag[i], traj.rho_aa[i], traj.rho_bb[i],
               static_cast<long long>(traj.times[i] <= traj.validity_time)});
    out << "wrote " << path.string() << " (" << times.size() << " rows)\n"
        << "validity_time_s " << num(traj.validity_time) << "\n";
    return ok;
}

inline int run_scan(const RunConfig& cfg, const Overrides& ov, std::ostream& out, std::ostream& err) {
    const auto& b = require_block(cfg.scan, "scan");
    const auto gas = to_gas(cfg.gas);
    const auto ma = model(cfg, b.state_a, err);
    const auto mb = model(cfg, b.state_b, err);
    ScanOptions opt;
    opt.eta0 = b.eta0;
    opt.refine_depth = static_cast<unsigned>(b.refine_depth);
    opt.threads = ov.threads;
    const auto res = scan(gas, ma, mb, b.field_lo, b.field_hi, static_cast<std::size_t>(b.base_points), opt);

    const auto path = output_path(cfg, ov, "scan.csv");
    auto file = open_output(path);
    csv::Writer w(file, csv::columns::scan, static_cast<int>(cfg.output.precision));
    for (const auto& r : res.rows)
        w.row({r.field, meter_to_bohr(r.a_a.alpha), meter_to_bohr(r.a_a.beta), meter_to_bohr(r.a_b.alpha),
               meter_to_bohr(r.a_b.beta), meter_to_bohr(r.delta_abs), r.rate, r.zeta0});
    for (const auto& s : res.skipped)
        err << "skipped field " << num(s.field) << " G: state '" << s.state << "' singular at resonance "
            << s.resonance_index << "\n";

    out << "wrote " << path.string() << " (" << res.rows.size() << " rows, " << res.skipped.size()
        << " skipped)\n";
    if (!res.rows.empty()) {
        const auto range = dynamic_range(res.rows);
        out << "dynamic_range " << (range ? num(*range) : std::string("undefined")) << "\n";
        for (const auto& win : find_suppression_windows(gas, ma, mb, res.rows, b.suppression_threshold, b.eta0))
            out << "suppression_window " << num(win.field_lo) << " " << num(win.field_hi) << " argmin "
                << num(win.argmin_field) << " min_rate " << num(win.min_rate) << "\n";
    }
    return ok;
}

inline std::vector<double> invert_grid(const InvertBlock& b) {
    std::vector<double> f(static_cast<std::size_t>(b.points));
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = i + 1 == f.size() ? b.field_hi
                                 : b.field_lo + (b.field_hi - b.field_lo) * static_cast<double>(i) /
                                                    static_cast<double>(f.size() - 1);
    return f;
}

inline RateMeasurementSeries synthesize(const RunConfig& cfg, const Overrides& ov, std::ostream& err) {
    const auto& b = require_block(cfg.invert, "invert");
    if (b.truth.empty()) throw ConfigError("[invert] needs a 'truth' state to synthesize measurements");
    const auto gas = to_gas(cfg.gas);
    const auto ref = model(cfg, b.reference, err);
    const auto truth = model(cfg, b.truth, err);
    const auto fields = invert_grid(b);
    const std::uint64_t seed = ov.seed.value_or(b.seed);
    double sigma = b.noise_sigma;
    if (sigma == 0 && b.noise_fraction > 0) {
        const auto clean = synth_measurements(gas, ref, truth, fields, b.eta0, 0.0, seed);
        std::vector<double> r = clean.rates;
        std::nth_element(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(r.size() / 2), r.end());
        sigma = b.noise_fraction * r[r.size() / 2];
    }
    return synth_measurements(gas, ref, truth, fields, b.eta0, sigma, seed);
}

inline int run_synth(const RunConfig& cfg, const Overrides& ov, std::ostream& out, std::ostream& err) {
    const auto s = synthesize(cfg, ov, err);
    const auto path = output_path(cfg, ov, "synth.csv");
    auto file = open_output(path);
    csv::Writer w(file, csv::columns::synth, static_cast<int>(cfg.output.precision));
    for (std::size_t i = 0; i < s.fields.size(); ++i) w.row({s.fields[i], s.rates[i], s.zeta0[i]});
    out << "wrote " << path.string() << " (" << s.fields.size() << " rows, noise_sigma " << num(s.noise_sigma)
        << ")\n";
    return ok;
}

inline int run_invert(const RunConfig& cfg, const Overrides& ov, std::ostream& out, std::ostream& err) {
    const auto& b = require_block(cfg.invert, "invert");
    const auto gas = to_gas(cfg.gas);
    const auto ref = model(cfg, b.reference, err);

    RateMeasurementSeries series;
    if (!b.measurements.empty()) {
        const auto t = csv::read_file(b.measurements);
        series.fields = t.column("field_gauss");
        series.rates = t.column("rate_per_s");
        if (t.has("zeta0_per_s")) series.zeta0 = t.column("zeta0_per_s");
    } else {
        series = synthesize(cfg, ov, err);
    }

    std::optional<StateScatteringModel> truth;
    if (!b.truth.empty()) truth = model(cfg, b.truth, err);
    double anchor = 0;
    if (b.anchor) anchor = bohr_to_meter(*b.anchor);
    else if (truth) anchor = truth->background.alpha;
    else if (b.rule == "smooth") throw ConfigError("[invert] rule \"smooth\" needs an 'anchor' or a 'truth' state");

    const auto rule = b.rule == "flat" ? BranchRule::flat : BranchRule::smooth;
    const auto branches = reference_branches(gas, ref, series, b.eta0, bohr_to_meter(b.beta_unknown));
    const auto res = select_branch(branches, rule, anchor);
    const std::size_t n = series.fields.size();

    const auto path = output_path(cfg, ov, "invert.csv");
    auto file = open_output(path);
    csv::Writer w(file, csv::columns::invert, static_cast<int>(cfg.output.precision));
    std::vector<bool> clamped(n, false);
    for (auto i : res.clamped_points) clamped[i] = true;
    for (std::size_t i = 0; i < n; ++i)
        w.row({series.fields[i], meter_to_bohr(branches.q_plus[i]), meter_to_bohr(branches.q_minus[i]),
               static_cast<long long>(res.branch_choice[i]), meter_to_bohr(res.alpha_recovered[i]),
               static_cast<long long>(clamped[i])});

    out << "wrote " << path.string() << " (" << n << " rows, " << res.clamped_points.size() << " clamped, "
        << res.degenerate_points.size() << " degenerate)\n";
    if (truth) {
        std::vector<bool> degenerate(n, false);
        for (auto i : res.degenerate_points) degenerate[i] = true;
        double max_rel = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (degenerate[i]) continue;
            const double t = evaluate_model(*truth, series.fields[i]).alpha;
            max_rel = std::max(max_rel, std::abs(res.alpha_recovered[i] - t) / std::abs(t));
        }
        out << "max_relative_error_nondegenerate " << num(max_rel) << "\n";
    }
    return ok;
}

inline int run_oracle(const RunConfig& cfg, std::ostream& out) {
    const OracleBlock b = cfg.oracle.value_or(OracleBlock{});
    const auto gas = to_gas(cfg.gas);
    const double range = bohr_to_meter(b.range);
    const double depth = depth_for_kappa_range(b.kappa_range, range, gas.reduced_mass());
    const auto v = make_square_well(depth, range, gas.reduced_mass(), b.absorber_fraction * depth);
    const auto conf = default_numerov_config(v);
    const auto a = extract_scattering_length(v, conf);
    const auto exact = analytic_absorbing_square_well(v.depth, v.absorber_depth, range, gas.reduced_mass());
    out << "kappa_range " << num(b.kappa_range) << "\n"
        << "range_bohr " << num(b.range) << "\n"
        << "step_bohr " << num(meter_to_bohr(conf.step)) << "\n"
        << "alpha_bohr " << num(meter_to_bohr(a.alpha)) << "\n"
        << "beta_bohr " << num(meter_to_bohr(a.beta)) << "\n"
        << "analytic_alpha_bohr " << num(meter_to_bohr(exact.alpha)) << "\n"
        << "analytic_beta_bohr " << num(meter_to_bohr(exact.beta)) << "\n"
        << "relative_deviation "
        << num(std::abs(a.value() - exact.value()) / std::max(std::abs(exact.value()), 1e-300)) << "\n";
    return ok;
}

}  // namespace detail

/// Runs one subcommand; diagnostics go to `err`, summaries to `out`.
inline int run_subcommand(const std::string& name, const RunConfig& cfg, const Overrides& ov, std::ostream& out,
                          std::ostream& err) {
    try {
        if (name == "rate") return detail::run_rate(cfg, out, err);
        if (name == "evolve") return detail::run_evolve(cfg, ov, out, err);
        if (name == "scan") return detail::run_scan(cfg, ov, out, err);
        if (name == "invert") return detail::run_invert(cfg, ov, out, err);
        if (name == "synth") return detail::run_synth(cfg, ov, out, err);
        if (name == "oracle") return detail::run_oracle(cfg, out);
        err << "error: unknown subcommand '" << name << "'\n";
        return validation_error;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_error;
    } catch (const SingularityError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return validation_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return validation_error;
    }
}

}  // namespace decoh::cli
