// Command-line front end: effective Hamiltonians, metric reports, the
// strict-inequality certificate, and the validation suites.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "homog/serialize.hpp"

namespace {

using namespace homog;

SpecPtr resolve_spec(const std::string& name) {
    if (name == "integrable")
        return HamiltonianSpec::mechanical(constant_field(1, 0.0));
    if (name == "pendulum")
        return HamiltonianSpec::mechanical(cosine_field(1, 1.0, 1));
    if (name == "bump") return make_bump_spec(BumpProfile{});
    return load_spec(name);
}

std::vector<double> parse_p_range(const std::string& s) {
    double a, b;
    int count;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> a >> c1 >> b >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2)
        throw Error("bad --p-range, expected a:b:count");
    return linspace(a, b, count);
}

RegionSpec parse_region(const std::string& s) {
    if (s == "unit-ball") return RegionSpec::unit_ball();
    if (s.rfind("sublevel:", 0) == 0)
        return RegionSpec::sublevel(std::stod(s.substr(9)));
    throw Error("bad --region, expected sublevel:r or unit-ball");
}

HomogMethod parse_method(const std::string& s) {
    if (s == "minimax") return HomogMethod::Minimax;
    if (s == "quadrature") return HomogMethod::Quadrature;
    if (s == "laxoleinik" || s == "lax-oleinik") return HomogMethod::LaxOleinik;
    throw Error("unknown method: " + s);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

int cmd_effective(const std::string& spec_name, const std::string& p_range,
                  const std::string& methods_csv, const std::string& out_dir,
                  const SolverConfig& solver) {
    const SpecPtr spec = resolve_spec(spec_name);
    const std::vector<double> grid = parse_p_range(p_range);
    const auto methods = split_csv(methods_csv);
    if (methods.empty()) throw Error("no method given");

    nlohmann::json results = nlohmann::json::array();
    std::vector<EffectiveHamiltonian> effs;
    for (const auto& m : methods) {
        EffectiveHamiltonian eff =
            effective_on_grid(*spec, grid, parse_method(m), solver);
        eff.spec_digest = spec_digest(*spec);
        results.push_back(effective_to_json(eff));
        effs.push_back(std::move(eff));
    }
    write_file(out_dir + "/effective.json",
               nlohmann::json{{"results", results}}.dump(2) + "\n");

    std::ostringstream csv;
    csv << "p";
    for (const auto& e : effs)
        csv << ',' << e.method << "_value," << e.method << "_lower," << e.method
            << "_upper";
    csv << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << grid[i];
        for (const auto& e : effs)
            csv << ',' << e.value[i] << ',' << e.lower[i] << ',' << e.upper[i];
        csv << '\n';
    }
    write_file(out_dir + "/effective.csv", csv.str());
    return 0;
}

int cmd_metrics(const std::string& spec_name, const std::string& region_str,
                const std::string& method, const std::string& out_dir,
                const MetricsConfig& base_cfg) {
    const SpecPtr spec = resolve_spec(spec_name);
    MetricsConfig cfg = base_cfg;
    cfg.method = parse_method(method);
    const RegionSpec region = parse_region(region_str);
    MetricsReport rep = compute_metrics(*spec, region, cfg);
    rep.effective.spec_digest = spec_digest(*spec);

    write_file(out_dir + "/metrics.json", metrics_to_json(rep).dump(2) + "\n");
    std::ostringstream csv;
    metrics_to_csv(csv, rep);
    write_file(out_dir + "/metrics.csv", csv.str());

    const double tol = 2e-2;
    for (const auto& [name, value] : rep.identity_residuals) {
        if (name == "ordering_slack") {
            if (value < -tol) {
                std::cerr << "ordering violated: " << name << " = " << value << "\n";
                return 2;
            }
            continue;
        }
        if (value > tol) {
            std::cerr << "identity residual out of tolerance: " << name << " = "
                      << value << "\n";
            return 2;
        }
    }
    return 0;
}

int cmd_counterexample(const BumpProfile& profile, bool truncate_at_zero,
                       const std::string& out_dir, const SolverConfig& solver) {
    const CounterexampleCertificate cert =
        verify_strict_inequality(profile, solver, truncate_at_zero);
    write_file(out_dir + "/certificate.json",
               certificate_to_json(cert).dump(2) + "\n");

    std::cout << "strict-inequality certificate (n=" << profile.n
              << ", delta=" << profile.delta << ", C=" << profile.C
              << ", c=" << profile.c << ")\n";
    auto row = [](const std::string& k, double v) {
        std::cout << "  " << std::left << std::setw(26) << k << std::setprecision(10)
                  << v << "\n";
    };
    row("gamma_inf", cert.gamma_inf);
    row("gamma_inf_upper", cert.gamma_inf_upper);
    row("oracle_disagreement", cert.oracle_disagreement);
    row("test_lagrangian_bound", cert.test_lagrangian);
    row("calabi", cert.calabi);
    row("calabi_analytic_bound", cert.calabi_analytic_bound);
    row("hofer_lower", cert.hofer_lower);
    row("hofer_upper", cert.hofer_upper);
    row("beta0", cert.beta0);
    row("margin", cert.margin);
    std::cout << "  verdict                   "
              << (cert.verdict ? "true" : "false") << "\n";
    std::cout << "  answer_flag               "
              << (cert.answer_flag ? "true" : "false") << "\n";
    return cert.verdict ? 0 : 2;
}

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

SuiteResult suite_fenchel(unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.2, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 17 + int(rng() % 64);
        SampledFn g;
        const double a = uni(rng), x0 = uni(rng) - 1.6, c0 = uni(rng) - 1.6;
        for (int i = 0; i < n; ++i) {
            const double x = -2.0 + 4.0 * i / (n - 1);
            g.x.push_back(x);
            g.y.push_back(0.5 * a * (x - x0) * (x - x0) + c0);
        }
        const std::vector<double> dual = linspace(-4.0, 4.0, 101);
        const SampledFn fast = fenchel_transform(g, dual);
        const SampledFn brute = fenchel_brute(g, dual);
        for (std::size_t i = 0; i < dual.size(); ++i)
            worst = std::max(worst, std::fabs(fast.y[i] - brute.y[i]));
    }
    std::ostringstream os;
    os << "max fast-vs-brute disagreement " << worst;
    return {"fenchel", worst <= 1e-12, os.str()};
}

SuiteResult suite_oracle_agreement() {
    const SpecPtr pendulum = resolve_spec("pendulum");
    const std::vector<double> grid = linspace(-2.0, 2.0, 9);
    SolverConfig cfg;
    cfg.grid_N = 256;
    const EffectiveHamiltonian mm =
        effective_on_grid(*pendulum, grid, HomogMethod::Minimax, cfg);
    const EffectiveHamiltonian qd =
        effective_on_grid(*pendulum, grid, HomogMethod::Quadrature, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::fabs(mm.value[i] - qd.value[i]));
    std::ostringstream os;
    os << "max minimax-vs-quadrature disagreement " << worst;
    return {"oracle-agreement", worst <= 1e-2, os.str()};
}

SuiteResult suite_identities() {
    MetricsConfig cfg;
    const MetricsReport pend =
        compute_metrics(*resolve_spec("pendulum"), RegionSpec::sublevel(2.0), cfg);
    const MetricsReport bump =
        compute_metrics(*resolve_spec("bump"), RegionSpec::unit_ball(), cfg);
    const double r1 = pend.identity_residuals.at("gamma_vs_r_plus_beta0");
    const double r2 = bump.identity_residuals.at("gamma_vs_beta0");
    std::ostringstream os;
    os << "residuals " << r1 << ", " << r2;
    return {"identities", r1 <= 2e-2 && r2 <= 2e-2, os.str()};
}

SuiteResult suite_ordering() {
    MetricsConfig cfg;
    bool ok = true;
    std::ostringstream os;
    for (const auto& [name, region] :
         std::vector<std::pair<std::string, RegionSpec>>{
             {"integrable", RegionSpec::sublevel(1.0)},
             {"pendulum", RegionSpec::sublevel(2.0)},
             {"bump", RegionSpec::unit_ball()}}) {
        const MetricsReport rep = compute_metrics(*resolve_spec(name), region, cfg);
        const double slack = rep.hofer_upper - rep.gamma_inf;
        os << name << " slack " << slack << "; ";
        if (slack < -1e-9) ok = false;
    }
    return {"ordering", ok, os.str()};
}

int cmd_validate(const std::string& only_csv, const std::string& out_dir,
                 unsigned long long seed) {
    auto wanted = split_csv(only_csv);
    auto selected = [&](const std::string& name) {
        if (wanted.empty()) return true;
        for (const auto& w : wanted)
            if (w == name) return true;
        return false;
    };
    std::vector<SuiteResult> results;
    if (selected("fenchel")) results.push_back(suite_fenchel(seed));
    if (selected("oracle-agreement")) results.push_back(suite_oracle_agreement());
    if (selected("identities")) results.push_back(suite_identities());
    if (selected("ordering")) results.push_back(suite_ordering());
    if (results.empty()) throw Error("no suite matches --only filter");

    bool all = true;
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        j.push_back({{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail
                  << "\n";
    }
    write_file(out_dir + "/validate.json",
               nlohmann::json{{"suites", j}, {"pass", all}}.dump(2) + "\n");
    return all ? 0 : 2;
}

int classify_and_report(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const SufficiencyViolated*>(&e)) return 3;
    if (dynamic_cast<const NoConvergence*>(&e) ||
        dynamic_cast<const RootBracketingFailure*>(&e) ||
        dynamic_cast<const CFLViolation*>(&e) ||
        dynamic_cast<const UnstableBlowup*>(&e) ||
        dynamic_cast<const QuadratureNotConverged*>(&e) ||
        dynamic_cast<const PlateauNotReached*>(&e) ||
        dynamic_cast<const MinimumOnBoundary*>(&e) ||
        dynamic_cast<const UnboundedRegion*>(&e) ||
        dynamic_cast<const NonConvexSpec*>(&e))
        return 2;
    return 1;  // config / IO / parameter errors
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symplectic homogenization toolkit"};
    app.require_subcommand(1);

    std::string spec_name = "pendulum";
    std::string out_dir = ".";
    unsigned long long seed = 42;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed for randomized restarts");

    SolverConfig solver;

    auto* eff = app.add_subcommand("effective", "sample the effective Hamiltonian");
    std::string p_range = "-2:2:65";
    std::string methods = "quadrature";
    eff->add_option("--spec", spec_name, "builtin name or spec JSON path");
    eff->add_option("--p-range", p_range, "a:b:count");
    eff->add_option("--method", methods, "comma list: minimax,quadrature,laxoleinik");
    eff->add_option("--grid-N", solver.grid_N, "corrector grid resolution");

    auto* met = app.add_subcommand("metrics", "metric-side report");
    std::string region_str;
    std::string met_method = "quadrature";
    MetricsConfig mcfg;
    met->add_option("--spec", spec_name, "builtin name or spec JSON path");
    met->add_option("--region", region_str, "sublevel:r or unit-ball")->required();
    met->add_option("--method", met_method, "homogenization method");
    met->add_option("--p-samples", mcfg.p_samples, "fiber grid samples");
    met->add_flag("--extension-limit", mcfg.run_extension_limit,
                  "run the Calabi extension-limit sweep (unit-ball only)");

    auto* cex = app.add_subcommand("counterexample", "strict-inequality certificate");
    BumpProfile profile;
    bool truncate_at_zero = false;
    cex->add_option("--delta", profile.delta, "plateau half-width parameter");
    cex->add_option("--C", profile.C, "plateau height");
    cex->add_option("--c", profile.c, "floor value");
    cex->add_option("--exponent", profile.smooth_exponent, "smoothstep exponent");
    cex->add_flag("--truncate-at-zero", truncate_at_zero,
                  "rerun on the level-0 truncation");

    auto* val = app.add_subcommand("validate", "run the property suites");
    std::string only;
    val->add_option("--only", only,
                    "comma list: fenchel,oracle-agreement,identities,ordering");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eff->parsed())
            return cmd_effective(spec_name, p_range, methods, out_dir, solver);
        if (met->parsed())
            return cmd_metrics(spec_name, region_str, met_method, out_dir, mcfg);
        if (cex->parsed())
            return cmd_counterexample(profile, truncate_at_zero, out_dir, solver);
        if (val->parsed()) return cmd_validate(only, out_dir, seed);
    } catch (const std::exception& e) {
        return classify_and_report(e);
    }
    return 1;
}
