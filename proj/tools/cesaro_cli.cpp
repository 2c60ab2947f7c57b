// cesaro: command-line front end for classification, limits, synthesis,
// property suites and the weighted-shift lab. Reports are JSON on stdout.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cesaro/cesaro.hpp"
#include "cesaro/matrix_io.hpp"

using namespace cesaro;
using io::json;

namespace {

enum Exit : int {
    kOk = 0,
    kCheckFailed = 1,
    kParse = 2,
    kNumeric = 3,
    kNotPowerBounded = 4,
    kInfeasible = 5,
};

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
        return kParse;
    case ErrorCode::NotPowerBounded:
    case ErrorCode::NotConverging:
        return kNotPowerBounded;
    case ErrorCode::Infeasible:
    case ErrorCode::NotInSpectralSet:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::RankMismatch:
        return kInfeasible;
    default:
        return kNumeric;
    }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json complex_list(const std::vector<Complex>& zs)
{
    json out = json::array();
    for (const Complex& z : zs) {
        out.push_back(complex_json(z));
    }
    return out;
}

struct Common {
    std::vector<std::string> tol_overrides;
    bool timing = false;
    Tolerances tol;

    void apply()
    {
        for (const std::string& item : tol_overrides) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw Error(ErrorCode::Parse, "--tol expects name=value, got " + item);
            }
            const std::string name = item.substr(0, eq);
            double value = 0.0;
            try {
                std::size_t used = 0;
                value = std::stod(item.substr(eq + 1), &used);
                if (used != item.size() - eq - 1) {
                    throw std::invalid_argument("trailing characters");
                }
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::Parse, "--tol value is not a number: " + item);
            }
            if (!(value >= 0.0) || !std::isfinite(value) || !tol.set(name, value)) {
                throw Error(ErrorCode::Parse, "unknown tolerance or bad value: " + item);
            }
        }
    }
};

json report_header(const std::string& command, const Common& common)
{
    json r;
    r["command"] = command;
    r["tolerances"] = common.tol.as_map();
    return r;
}

json input_block(const std::string& path, const std::string& text)
{
    return json{{"path", path}, {"digest", "fnv1a64:" + io::fnv1a_hex(text)}};
}

json report_json(const PowerboundReport& rep, const Tolerances& tol)
{
    json r;
    r["verdict"] = to_string(rep.verdict);
    r["reason"] = to_string(rep.reason);
    r["d"] = rep.d;
    r["spectrum"] = complex_list(rep.spectrum);
    r["power_bound_estimate"] = std::isfinite(rep.power_bound_estimate) ? json(rep.power_bound_estimate)
                                                                         : json("inf");
    r["dead_zone_warning"] = rep.dead_zone_warning;
    if (rep.power_bounded()) {
        r["m"] = rep.m;
        r["stable_dim_l"] = rep.stable_dim_l;
        r["class_label"] = class_label(rep).name();
        r["unimodular_values"] = complex_list(rep.unimodular_values);
        r["cluster_of"] = rep.cluster_of;
        r["similarity_S"] = io::to_json(rep.similarity_S);
        r["interior_block_B"] = io::to_json(rep.interior_block_B);
        r["reconstruction_residual"] = rep.reconstruction_residual;
        r["norm_limit_exists"] = norm_limit_exists(rep, tol);
    }
    return r;
}

json limit_json(const AsymptoticLimit& lim)
{
    json r;
    r["A"] = io::to_json(lim.A);
    r["rank_k"] = lim.rank_k;
    r["stable_dim_l"] = lim.stable_dim_l;
    r["nonzero_eigs"] = lim.nonzero_eigs;
    r["method"] = lim.method == LimitMethod::Spectral ? "Spectral" : "Iterated";
    if (lim.method == LimitMethod::Iterated) {
        r["n_used"] = lim.n_used;
    }
    return r;
}

struct Emitter {
    const Common* common;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int emit(json report, int code = kOk) const
    {
        if (common->timing) {
            report["timing_seconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        std::cout << report.dump(2) << '\n';
        return code;
    }
};

// ---- classify ---------------------------------------------------------------

int cmd_classify(const std::string& path, const Common& common)
{
    Emitter em{&common};
    const std::string text = io::read_text(path);
    const Matrix t = io::matrix_from_json(io::parse_json_text(text, path));
    json r = report_header("classify", common);
    r["input"] = input_block(path, text);
    r["result"] = report_json(classify(t, common.tol), common.tol);
    return em.emit(r);
}

// ---- limit ------------------------------------------------------------------

int cmd_limit(const std::string& path, const std::string& method, std::optional<std::int64_t> n, const Common& common)
{
    Emitter em{&common};
    const std::string text = io::read_text(path);
    const Matrix t = io::matrix_from_json(io::parse_json_text(text, path));
    if ((method == "iterate" || method == "both") && !n) {
        throw Error(ErrorCode::Parse, "--method " + method + " requires --n");
    }
    if (n && *n < 1) {
        throw Error(ErrorCode::Parse, "--n must be at least 1");
    }
    json r = report_header("limit", common);
    r["input"] = input_block(path, text);
    r["method"] = method;

    std::optional<AsymptoticLimit> spectral;
    std::optional<PowerboundReport> rep;
    if (method != "iterate") {
        rep = classify(t, common.tol);
        if (!rep->power_bounded()) {
            throw Error(ErrorCode::NotPowerBounded,
                        std::string("no Cesaro asymptotic limit: T is not power-bounded (") + to_string(rep->reason) +
                            "), and a matrix has a Cesaro limit only if it is power-bounded");
        }
        spectral = cesaro_limit(*rep, common.tol);
        json s = limit_json(*spectral);
        s["invariance_residual"] = check_invariance(t, *spectral);
        s["norm_lower_bound_ok"] = norm_lower_bound_check(*spectral, common.tol);
        s["trace_condition"] = to_string(trace_condition(*spectral, common.tol));
        r["spectral"] = s;
    }
    if (method != "spectral") {
        const auto steps = static_cast<std::size_t>(*n);
        const AsymptoticLimit it =
            make_limit(cesaro_iterate(t, steps), LimitMethod::Iterated, steps, common.tol);
        r["iterated"] = limit_json(it);
        if (spectral) {
            const double gap = operator_norm(it.A - spectral->A);
            const double envelope = oracle_envelope(*rep) / static_cast<double>(steps);
            r["disagreement"] = gap;
            r["envelope_C_over_n"] = envelope;
            r["within_envelope"] = gap <= envelope + common.tol.recon_for(rep->d);
        }
    }
    return em.emit(r);
}

// ---- synthesize -------------------------------------------------------------

std::vector<double> parse_spectrum(const std::string& csv)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::Parse, "--spectrum entry is not a number: \"" + item + "\"");
        }
    }
    return out;
}

int cmd_synthesize(const std::string& target_path, const std::string& spectrum, std::optional<std::int64_t> d_opt,
                   std::optional<std::int64_t> l_opt, std::uint64_t seed, bool idempotent, const Common& common)
{
    Emitter em{&common};
    json r = report_header("synthesize", common);
    r["seed"] = seed;
    const Tolerances& tol = common.tol;

    Matrix target;
    if (!target_path.empty()) {
        const std::string text = io::read_text(target_path);
        target = io::matrix_from_json(io::parse_json_text(text, target_path));
        r["input"] = input_block(target_path, text);
    } else {
        if (!d_opt || !l_opt) {
            throw Error(ErrorCode::Parse, "--spectrum needs --d and --l");
        }
        const std::vector<double> t = spectrum.empty() ? std::vector<double>{} : parse_spectrum(spectrum);
        if (*d_opt < 1 || *l_opt < 0 || *l_opt > *d_opt ||
            static_cast<std::int64_t>(t.size()) != *d_opt - *l_opt) {
            throw Error(ErrorCode::Parse, "--spectrum must list exactly d - l values with 0 <= l <= d");
        }
        SpectrumTarget st{static_cast<std::size_t>(*d_opt), t};
        r["target_spectrum"] = t;
        r["feasibility"] = to_string(st.feasibility(tol));
        if (st.feasibility(tol) == Feasibility::Infeasible) {
            (void)synthesize(st, tol, SynthesisOptions{seed});  // throws with the violated inequality
        }
        target = st.matrix();
    }
    r["target"] = io::to_json(target);
    const double scale = std::max(operator_norm(target), 1.0);

    if (idempotent) {
        const Matrix p = synthesize_norm_limit(target, tol);
        r["branch"] = "idempotent";
        r["T"] = io::to_json(p);
        r["idempotence_residual"] = operator_norm(p * p - p);
        r["round_trip_residual"] = operator_norm(p.adjoint() * p - target) / scale;
        return em.emit(r);
    }

    SynthesisResult res;
    const SynthesisOptions opts{seed};
    const HermitianEigen he = hermitian_eigen(target);
    const double nrm = std::max(std::abs(he.values(0)), std::abs(he.values(he.values.size() - 1)));
    Eigen::Index k = 0;
    while (k < he.values.size() && nrm > 0.0 && he.values(k) > tol.rank * nrm) {
        ++k;
    }
    if (k == 0) {
        r["branch"] = "zero";
        res = synthesize_zero(static_cast<std::size_t>(target.rows()), tol);
    } else if (k == target.rows()) {
        r["branch"] = "C11";
        res = synthesize_c11(target, tol, opts);
    } else {
        r["branch"] = "LStable";
        res = synthesize_l_stable(target, tol, opts);
    }
    r["T"] = io::to_json(res.T);
    r["certificate_S"] = io::to_json(res.certificate_S);
    r["certificate_projection_rank"] = res.projection_rank;
    r["certificate_note"] = res.certificate_note;
    r["realized_A"] = limit_json(res.realized_A);
    r["round_trip_residual"] = operator_norm(res.realized_A.A - target) / scale;
    double col_dev = 0.0;
    for (Eigen::Index j = 0; j < res.certificate_S.cols(); ++j) {
        col_dev = std::max(col_dev, std::abs(res.certificate_S.col(j).norm() - 1.0));
    }
    r["certificate_column_norm_deviation"] = col_dev;
    return em.emit(r);
}

// ---- check ------------------------------------------------------------------

struct TrialResult {
    bool pass = false;
    double residual = 0.0;
    std::string note;
};

struct CheckOptions {
    std::string suite;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::int64_t n = 1000;
    GeneratorProfile profile;
};

std::pair<std::size_t, std::size_t> draw_shape(std::uint64_t trial_seed, std::size_t d_max)
{
    Rng rng(mix_seed(trial_seed, 0xd1));
    const auto d = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(d_max)));
    const auto l = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(d)));
    return {d, l};
}

TrialResult run_trial(const CheckOptions& o, std::size_t i, const Tolerances& tol)
{
    const std::uint64_t s = mix_seed(o.seed, i);
    TrialResult out;
    if (o.suite == "harmonic2x2") {
        const GeneratedInstance g = random_powerbounded(2, 0, s, o.profile);
        out.residual = harmonic_mean_check(g.T, tol);
        out.pass = out.residual <= tol.id;
    } else if (o.suite == "normbound") {
        const auto [d, l] = draw_shape(s, 8);
        const GeneratedInstance g = random_powerbounded(d, l, s, o.profile);
        const AsymptoticLimit lim = cesaro_limit(g.T, tol);
        const double nrm = operator_norm(lim.A);
        out.residual = nrm;
        out.pass = norm_lower_bound_check(lim, tol) && trace_condition(lim, tol) != TraceVerdict::Violation;
    } else if (o.suite == "convergence") {
        const auto [d, l] = draw_shape(s, 8);
        const GeneratedInstance g = random_powerbounded(d, l, s, o.profile);
        const PowerboundReport rep = classify(g.T, tol);
        const AsymptoticLimit lim = cesaro_limit(rep, tol);
        const auto n = static_cast<std::size_t>(o.n);
        out.residual = operator_norm(cesaro_iterate(g.T, n) - lim.A);
        const double bound = oracle_envelope(rep) / static_cast<double>(n) + tol.recon_for(d);
        out.pass = out.residual <= bound;
        out.note = "bound " + std::to_string(bound);
    } else if (o.suite == "sets") {
        Rng rng(mix_seed(s, 0x5e7));
        const auto d = static_cast<std::size_t>(rng.integer(1, 8));
        const Matrix p = random_idempotent(d, s);
        const Matrix pp = p.adjoint() * p;
        const bool member = spectral_set_membership(pp, tol);
        const Matrix a = random_spectral_set_member(d, s);
        const Matrix q = synthesize_norm_limit(a, tol);
        const double scale = std::max(operator_norm(a), 1.0);
        out.residual = std::max(operator_norm(q.adjoint() * q - a) / scale, operator_norm(q * q - q));
        out.pass = member && out.residual <= 1e-9;
    } else {
        throw Error(ErrorCode::Parse, "unknown suite " + o.suite);
    }
    return out;
}

int cmd_check(const CheckOptions& o, const Common& common)
{
    Emitter em{&common};
    json r = report_header("check", common);
    r["suite"] = o.suite;
    r["seed"] = o.seed;
    bool all = true;

    if (o.suite == "counterexample3x3") {
        const std::vector<double> ev = harmonic_mean_counterexample(common.tol);
        const std::vector<double> expected{1.27178, 2.1285, 2.59972};
        double worst = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            worst = std::max(worst, std::abs(ev[i] - expected[i]));
        }
        all = worst <= 1e-4;
        r["eigenvalues"] = ev;
        r["expected"] = expected;
        r["max_deviation"] = worst;
        r["pass"] = all;
        return em.emit(r, all ? kOk : kCheckFailed);
    }

    r["trials"] = o.trials;
    if (o.suite == "convergence") {
        r["n"] = o.n;
    }
    r["profile"] = {{"condition_bound", o.profile.condition_bound},
                    {"interior_radius", o.profile.interior_radius},
                    {"gap_floor", o.profile.gap_floor}};
    const Tolerances tol = common.tol;
    const auto results = parallel_map(o.trials, o.jobs, [&](std::size_t i) { return run_trial(o, i, tol); });
    json per = json::array();
    double max_res = 0.0;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const TrialResult& t = results[i];
        max_res = std::max(max_res, t.residual);
        failures += t.pass ? 0 : 1;
        json e{{"trial", i}, {"pass", t.pass}, {"residual", t.residual}};
        if (!t.note.empty()) {
            e["note"] = t.note;
        }
        per.push_back(e);
    }
    all = failures == 0;
    r["max_residual"] = max_res;
    r["failures"] = failures;
    r["pass"] = all;
    r["per_trial"] = per;
    return em.emit(r, all ? kOk : kCheckFailed);
}

// ---- shift ------------------------------------------------------------------

json verdict_json(const shift::CesaroVerdict& v)
{
    if (const auto* c = std::get_if<shift::ConvergesTo>(&v)) {
        return {{"kind", "ConvergesTo"}, {"value", c->value}};
    }
    if (const auto* o = std::get_if<shift::Oscillates>(&v)) {
        return {{"kind", "Oscillates"}, {"lo", o->lo}, {"hi", o->hi}};
    }
    return {{"kind", "Diverges"}, {"largest_mean", std::get<shift::Diverges>(v).largest_mean}};
}

json verdict_json(const shift::PowerVerdict& v)
{
    if (const auto* b = std::get_if<shift::Bounded>(&v)) {
        return {{"kind", "Bounded"}, {"sup", b->sup}};
    }
    const auto& u = std::get<shift::Unbounded>(v);
    return {{"kind", "Unbounded"}, {"growth_exponent", u.growth_exponent}, {"exact_prefix", u.exact_prefix}};
}

json finite_or_string(double x) { return std::isfinite(x) ? json(x) : json("inf"); }

struct ShiftOptions {
    int example = 0;
    std::string rule_path;
    std::int64_t horizon = 531441;
    bool banach = false;
    std::int64_t pmax = 8;
    std::size_t budget = 64;
    std::uint64_t seed = 0;
    std::string csv;
};

int cmd_shift(const ShiftOptions& o, const Common& common)
{
    Emitter em{&common};
    json r = report_header("shift", common);
    shift::ShiftRule rule;
    if (!o.rule_path.empty()) {
        const std::string text = io::read_text(o.rule_path);
        rule = io::shift_rule_from_json(io::parse_json_text(text, o.rule_path));
        r["input"] = input_block(o.rule_path, text);
    } else {
        rule = shift::ShiftRule::example(o.example);
    }
    const shift::DiagonalTrace tr = shift::evaluate(rule, o.horizon);
    r["rule"] = tr.name;
    r["horizon"] = tr.horizon;

    json probes = json::array();
    for (const auto& scale : shift::probe_scales(tr.horizon)) {
        for (std::int64_t n : scale) {
            const auto i = static_cast<std::size_t>(n - 1);
            probes.push_back({{"n", n},
                              {"a_n", finite_or_string(tr.a[i])},
                              {"log2_a_n", tr.log2_a[i]},
                              {"cesaro_n", finite_or_string(tr.cesaro[i])},
                              {"log2_power_norm_n", tr.log2_power_norm[i]}});
        }
    }
    r["probes"] = probes;
    if (tr.horizon >= 729) {
        r["cesaro_verdict"] = verdict_json(shift::cesaro_verdict(tr, common.tol));
        r["power_verdict"] = verdict_json(shift::powerbounded_verdict(tr));
    } else {
        r["cesaro_verdict"] = "skipped: horizon below 729";
        r["power_verdict"] = "skipped: horizon below 729";
    }
    if (o.banach) {
        const shift::BanachBracket b = shift::banach_bracket(tr, o.pmax, o.budget, o.seed);
        r["banach_bracket"] = {{"q_upper", finite_or_string(b.q_upper)},
                               {"qprime_lower", finite_or_string(b.qprime_lower)},
                               {"trivial_liminf", finite_or_string(b.trivial_liminf)},
                               {"trivial_limsup", finite_or_string(b.trivial_limsup)},
                               {"upper_witness", b.upper_witness},
                               {"lower_witness", b.lower_witness},
                               {"tuples_tried", b.tuples_tried},
                               {"pmax", o.pmax},
                               {"budget", o.budget},
                               {"seed", o.seed}};
    }
    if (!o.csv.empty()) {
        std::ofstream out(o.csv, std::ios::binary);
        if (!out) {
            throw Error(ErrorCode::Parse, "cannot write " + o.csv);
        }
        out.precision(17);
        out << "n,a_n,cesaro_n,power_norm_n\n";
        for (std::size_t i = 0; i < tr.a.size(); ++i) {
            out << (i + 1) << ',' << tr.a[i] << ',' << tr.cesaro[i] << ',' << tr.power_norm[i] << '\n';
        }
        r["csv"] = o.csv;
    }
    return em.emit(r);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cesaro asymptotic limits of power-bounded matrices"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--tol", common.tol_overrides, "Override a tolerance, name=value (repeatable)")->take_all();
    app.add_flag("--timing", common.timing, "Include wall-clock timing in the report");

    std::string path;
    auto* classify_cmd = app.add_subcommand("classify", "Power-boundedness verdict and spectral split");
    classify_cmd->add_option("path", path, "Matrix file")->required();

    std::string method = "spectral";
    std::optional<std::int64_t> n_opt;
    auto* limit_cmd = app.add_subcommand("limit", "Cesaro asymptotic limit");
    limit_cmd->add_option("path", path, "Matrix file")->required();
    limit_cmd->add_option("--method", method, "spectral, iterate or both")
        ->check(CLI::IsMember({"spectral", "iterate", "both"}));
    limit_cmd->add_option("--n", n_opt, "Number of Cesaro terms for the iterated method");

    std::string target_path;
    std::string spectrum;
    std::optional<std::int64_t> d_opt;
    std::optional<std::int64_t> l_opt;
    std::uint64_t seed = 0;
    bool idempotent = false;
    auto* synth_cmd = app.add_subcommand("synthesize", "Build T whose limit hits a target");
    auto* target_opt = synth_cmd->add_option("--target", target_path, "Target matrix file");
    auto* spectrum_opt = synth_cmd->add_option("--spectrum", spectrum, "Comma-separated nonzero eigenvalues");
    target_opt->excludes(spectrum_opt);
    synth_cmd->add_option("--d", d_opt, "Dimension");
    synth_cmd->add_option("--l", l_opt, "Stable dimension");
    synth_cmd->add_option("--seed", seed, "Seed for the unimodular phase");
    synth_cmd->add_flag("--idempotent", idempotent, "Build an idempotent P with P^*P = target");

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Seeded property suites");
    check_cmd->add_option("--suite", check.suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"harmonic2x2", "counterexample3x3", "normbound", "convergence", "sets"}));
    check_cmd->add_option("--trials", check.trials, "Number of trials");
    check_cmd->add_option("--seed", check.seed, "Base seed");
    check_cmd->add_option("--jobs", check.jobs, "Worker threads");
    check_cmd->add_option("--n", check.n, "Cesaro terms for the convergence suite");
    check_cmd->add_option("--cond-bound", check.profile.condition_bound, "Generator condition bound");
    check_cmd->add_option("--interior-radius", check.profile.interior_radius, "Generator interior radius");
    check_cmd->add_option("--gap-floor", check.profile.gap_floor, "Generator eigenvalue gap floor");

    ShiftOptions shift_opts;
    auto* shift_cmd = app.add_subcommand("shift", "Weighted-shift lab");
    auto* ex_opt = shift_cmd->add_option("--example", shift_opts.example, "Built-in example 1, 2 or 3")
                       ->check(CLI::Range(1, 3));
    auto* rule_opt = shift_cmd->add_option("--rule", shift_opts.rule_path, "Custom rule JSON");
    ex_opt->excludes(rule_opt);
    shift_cmd->add_option("--horizon", shift_opts.horizon, "Horizon N");
    shift_cmd->add_flag("--banach", shift_opts.banach, "Bracket the Banach-limit range");
    shift_cmd->add_option("--pmax", shift_opts.pmax, "Largest shift offset");
    shift_cmd->add_option("--budget", shift_opts.budget, "Number of shift tuples");
    shift_cmd->add_option("--seed", shift_opts.seed, "Seed for random tuples");
    shift_cmd->add_option("--csv", shift_opts.csv, "Write n,a_n,cesaro_n,power_norm_n to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        common.apply();
        if (*classify_cmd) {
            return cmd_classify(path, common);
        }
        if (*limit_cmd) {
            return cmd_limit(path, method, n_opt, common);
        }
        if (*synth_cmd) {
            if (target_path.empty() && spectrum_opt->count() == 0) {
                throw Error(ErrorCode::Parse, "synthesize needs --target or --spectrum");
            }
            return cmd_synthesize(target_path, spectrum, d_opt, l_opt, seed, idempotent, common);
        }
        if (*check_cmd) {
            return cmd_check(check, common);
        }
        if (*shift_cmd) {
            if (shift_opts.rule_path.empty() && shift_opts.example == 0) {
                throw Error(ErrorCode::Parse, "shift needs --example or --rule");
            }
            return cmd_shift(shift_opts, common);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kParse;
}
