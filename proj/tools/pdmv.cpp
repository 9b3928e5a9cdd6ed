// pdmv - equilibrium investment & catastrophe-insurance strategies under
// path-dependent dynamics: Hawkes calibration, coefficient solves, welfare
// sweeps, and Monte Carlo validation.
#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "pdmv/pdmv.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

json default_config() {
    return json{
        {"market",
         {{"upsilon", 0.02},
          {"theta", 5.0},
          {"kappa", 0.173},
          {"phi", 0.170},
          {"sigma", 0.340},
          {"rho", -0.615},
          {"gamma", 1.0},
          {"v0", 0.018},
          {"x0", 1.0},
          {"delta", 0.6}}},
        {"claims", {{"mu", 4.0}, {"theta_tilde", 0.2}}},
        {"hawkes",
         {{"lambda_star", 6.310822},
          {"a0", 2.233946},
          {"a1", -2.167217},
          {"rho1", 1.079113},
          {"rho2", 0.001},
          {"p", 0.556834}}},
        {"grid", {{"T", 10.0}, {"N", 2048}}},
        {"sim", {{"paths", 20000}, {"seed", 42}, {"N", 256}, {"strategy", "vanilla"}}},
        {"calibration", {{"starts", 8}, {"N", 4096}, {"seed", 20240817}}},
        {"sweep",
         {{"delta", {0.6, 0.7, 0.8, 0.9, 1.0}},
          {"p", {0.556834}},
          {"gamma", {0.5, 1.0, 1.5}}}},
    };
}

void deep_merge(json& base, const json& overlay) {
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (it->is_object() && base.contains(it.key()) && base[it.key()].is_object())
            deep_merge(base[it.key()], *it);
        else
            base[it.key()] = *it;
    }
}

// --set section.key=value (value parsed as JSON, falling back to string)
void apply_overrides(json& cfg, const std::vector<std::string>& sets) {
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--set expects key=value, got '" + s + "'");
        const std::string key = s.substr(0, eq), raw = s.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;
        }
        json* node = &cfg;
        std::size_t pos = 0;
        while (true) {
            const auto dot = key.find('.', pos);
            const std::string part = key.substr(pos, dot - pos);
            if (dot == std::string::npos) {
                (*node)[part] = value;
                break;
            }
            node = &(*node)[part];
            pos = dot + 1;
        }
    }
}

json load_config(const std::string& path, const std::vector<std::string>& sets) {
    json cfg = default_config();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config '" + path + "'");
        json file = json::parse(in);
        deep_merge(cfg, file);
    }
    apply_overrides(cfg, sets);
    return cfg;
}

pdmv::MarketParams market_from(const json& cfg) {
    const auto& m = cfg.at("market");
    pdmv::MarketParams p;
    p.upsilon = m.at("upsilon");
    p.theta = m.at("theta");
    p.kappa = m.at("kappa");
    p.phi = m.at("phi");
    p.sigma = m.at("sigma");
    p.rho = m.at("rho");
    p.gamma = m.at("gamma");
    p.v0 = m.at("v0");
    p.x0 = m.at("x0");
    p.delta = m.at("delta");
    p.validate();
    return p;
}

pdmv::ClaimParams claims_from(const json& cfg) {
    const auto& c = cfg.at("claims");
    pdmv::ClaimParams p;
    p.mu = c.at("mu");
    p.theta_tilde = c.at("theta_tilde");
    p.validate();
    return p;
}

pdmv::HawkesParams hawkes_from(const json& cfg) {
    const auto& h = cfg.at("hawkes");
    pdmv::HawkesParams p;
    p.lambda_star = h.at("lambda_star");
    p.a0 = h.at("a0");
    p.a1 = h.at("a1");
    p.kernel = pdmv::PowerLawKernel{h.at("rho1").get<double>(), h.at("rho2").get<double>(),
                                    h.at("p").get<double>()};
    p.validate();
    return p;
}

pdmv::TimeGrid grid_from(const json& cfg) {
    return pdmv::TimeGrid(cfg.at("grid").at("T"), cfg.at("grid").at("N").get<std::size_t>());
}

fs::path prepare_out_dir(const std::string& out, const json& cfg) {
    fs::path dir = out.empty() ? fs::path("pdmv-run") : fs::path(out);
    fs::create_directories(dir);
    std::ofstream o(dir / "config.json");
    o << cfg.dump(2) << '\n';
    return dir;
}

pdmv::EventCatalog read_catalog_arg(const std::string& path, double min_mag,
                                    const std::string& start, const std::string& end,
                                    double horizon) {
    std::ifstream probe(path);
    if (!probe) throw std::runtime_error("cannot open catalog '" + path + "'");
    std::string header;
    std::getline(probe, header);
    if (header.rfind("t_years", 0) == 0) {
        // normalized catalog: one event time per row, horizon from flag
        if (!(horizon > 0.0))
            throw std::runtime_error("normalized catalog requires --horizon");
        pdmv::EventCatalog cat;
        cat.horizon = horizon;
        std::string line;
        while (std::getline(probe, line))
            if (!line.empty()) cat.times.push_back(std::stod(line));
        cat.validate();
        return cat;
    }
    if (start.empty() || end.empty())
        throw std::runtime_error("raw catalog requires --start and --end window timestamps");
    return pdmv::load_catalog(path, min_mag, start, end);
}

void write_catalog_csv(const fs::path& path, const pdmv::EventCatalog& cat) {
    pdmv::CsvWriter csv(path.string());
    csv.header({"t_years"});
    for (double t : cat.times) csv.row({t});
}

int cmd_ingest(const json& cfg, const std::string& out, const std::string& catalog,
               double min_mag, const std::string& start, const std::string& end) {
    const auto cat = pdmv::load_catalog(catalog, min_mag, start, end);
    const fs::path dir = prepare_out_dir(out, cfg);
    write_catalog_csv(dir / "catalog.csv", cat);
    json summary = {{"command", "ingest"},
                    {"events", cat.times.size()},
                    {"horizon_years", cat.horizon},
                    {"min_magnitude", min_mag},
                    {"rate_k_over_T",
                     cat.horizon > 0 ? static_cast<double>(cat.times.size()) / cat.horizon : 0.0}};
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    if (cat.times.empty()) std::cerr << "warning: catalog is empty after filtering\n";
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_calibrate(const json& cfg, const std::string& out, const std::string& catalog,
                  double min_mag, const std::string& start, const std::string& end,
                  double horizon) {
    const auto cat = read_catalog_arg(catalog, min_mag, start, end, horizon);
    if (cat.times.empty()) throw std::runtime_error("calibrate: catalog has no events");
    const auto& cal = cfg.at("calibration");
    const pdmv::TimeGrid grid(cat.horizon, cal.at("N").get<std::size_t>());
    const auto fit = pdmv::calibrate(cat, grid, cal.at("starts").get<std::size_t>(), {},
                                     cal.at("seed").get<std::uint64_t>());

    const fs::path dir = prepare_out_dir(out, cfg);
    {
        const auto path = pdmv::intensity_on_grid(fit.params, cat, grid);
        pdmv::CsvWriter csv((dir / "intensity.csv").string());
        csv.header({"t", "lambda"});
        for (std::size_t i = 0; i < path.lambda.size(); ++i)
            csv.row({grid.time(i), path.lambda[i]});
    }
    json summary = {{"command", "calibrate"},
                    {"events", cat.times.size()},
                    {"horizon_years", cat.horizon},
                    {"fitted",
                     {{"lambda_star", fit.params.lambda_star},
                      {"a0", fit.params.a0},
                      {"a1", fit.params.a1},
                      {"rho1", fit.params.kernel.rho1},
                      {"rho2", fit.params.kernel.rho2},
                      {"p", fit.params.kernel.p}}},
                    {"log_likelihood", fit.log_likelihood},
                    {"baseline_log_likelihood", fit.baseline_log_likelihood},
                    {"baseline_lambda_k_over_T",
                     static_cast<double>(cat.times.size()) / cat.horizon},
                    {"converged", fit.converged},
                    {"starts", fit.starts}};
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    if (!fit.converged) {
        std::cerr << "error: no start improved on the constant-intensity baseline\n";
        return 2;
    }
    return 0;
}

int cmd_solve(const json& cfg, const std::string& out) {
    const auto m = market_from(cfg);
    const auto cl = claims_from(cfg);
    const auto h = hawkes_from(cfg);
    const auto grid = grid_from(cfg);
    const auto pd = pdmv::solve_pd(m, cl, h, grid);
    const auto van = pdmv::solve_vanilla(m, cl, h.lambda_star, grid);

    const fs::path dir = prepare_out_dir(out, cfg);
    {
        pdmv::CsvWriter csv((dir / "coefficients.csv").string());
        csv.header({"t", "tau", "Bbar", "Hbar", "Cbar", "Mbar", "B", "C", "D", "N",
                    "trading_weight", "deductible", "vanilla_B", "vanilla_H", "vanilla_D",
                    "vanilla_N", "vanilla_trading_weight", "vanilla_deductible"});
        const std::size_t N = grid.steps;
        for (std::size_t k = 0; k <= N; ++k) {
            const double tau = grid.time(k);
            csv.row({grid.horizon - tau, tau, pd.Bbar[k], pd.Hbar[k], pd.Cbar[k], pd.Mbar[k],
                     pd.B[k], pd.C[k], pd.D[k], pd.N[k],
                     pdmv::pd_trading_weight(m, pd.Hbar[k], tau),
                     pdmv::pd_deductible(m, cl, pd.Mbar[k], tau), van.B[k], van.H[k], van.D[k],
                     van.N[k], pdmv::vanilla_trading_weight(m, van.H[k], tau),
                     pdmv::vanilla_deductible(m, cl, tau)});
        }
    }
    {
        json schema = {
            {"file", "coefficients.csv"},
            {"index", "rows run from tau = 0 (t = T) to tau = T (t = 0)"},
            {"columns",
             {{"t", "calendar time, years"},
              {"tau", "time to maturity T - t, years"},
              {"Bbar", "PD convolution coefficient"},
              {"Hbar", "PD convolution coefficient"},
              {"Cbar", "PD convolution coefficient (claims)"},
              {"Mbar", "PD convolution coefficient (claims)"},
              {"B", "pointwise value-function integrand"},
              {"C", "pointwise value-function integrand (claims)"},
              {"D", "integral coefficient D(t)"},
              {"N", "integral coefficient N(t)"},
              {"trading_weight", "alpha* X* / sqrt(v)"},
              {"deductible", "d*(tau)"},
              {"vanilla_B", "vanilla Riccati B"},
              {"vanilla_H", "vanilla closed-form H"},
              {"vanilla_D", "vanilla D(t)"},
              {"vanilla_N", "vanilla N(t)"},
              {"vanilla_trading_weight", "alpha~ X~ / sqrt(v)"},
              {"vanilla_deductible", "d~(tau)"}}}};
        std::ofstream(dir / "schema.json") << schema.dump(2) << '\n';
    }
    json summary = {{"command", "solve"},
                    {"value_function_F0", pdmv::pd_value_function(pd, m, h.lambda_star)},
                    {"Hbar_T", pd.Hbar.back()},
                    {"Mbar_T", pd.Mbar.back()},
                    {"D_t0", pd.D.back()},
                    {"N_t0", pd.N.back()}};
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_welfare(const json& cfg, const std::string& out) {
    const auto m0 = market_from(cfg);
    const auto cl = claims_from(cfg);
    const auto h0 = hawkes_from(cfg);
    const auto grid = grid_from(cfg);
    const auto& sw = cfg.at("sweep");

    const fs::path dir = prepare_out_dir(out, cfg);
    pdmv::CsvWriter csv((dir / "welfare.csv").string());
    csv.header({"delta", "p", "gamma", "loss", "component_B", "component_C", "component_D"});
    json rows = json::array();
    for (double delta : sw.at("delta")) {
        for (double p : sw.at("p")) {
            for (double gamma : sw.at("gamma")) {
                pdmv::MarketParams m = m0;
                m.delta = delta;
                m.gamma = gamma;
                pdmv::HawkesParams h = h0;
                h.kernel = pdmv::PowerLawKernel{h0.kernel.rho1, h0.kernel.rho2, p};
                const auto r = pdmv::welfare_loss(m, cl, h, grid);
                csv.row({delta, p, gamma, r.loss, r.component_B, r.component_C,
                         r.component_D});
                rows.push_back({{"delta", delta},
                                {"p", p},
                                {"gamma", gamma},
                                {"loss", r.loss}});
            }
        }
    }
    json summary = {{"command", "welfare"}, {"rows", rows}};
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const json& cfg, const std::string& out) {
    const auto m = market_from(cfg);
    const auto cl = claims_from(cfg);
    const auto h = hawkes_from(cfg);
    const auto& sim = cfg.at("sim");
    pdmv::SimConfig sc;
    sc.paths = sim.at("paths").get<std::size_t>();
    sc.seed = sim.at("seed").get<std::uint64_t>();
    sc.grid = pdmv::TimeGrid(cfg.at("grid").at("T").get<double>(),
                             sim.at("N").get<std::size_t>());

    const std::string which = sim.at("strategy");
    pdmv::StrategySeries strat;
    double analytic_g0 = 0.0;
    if (which == "vanilla") {
        const auto c = pdmv::solve_vanilla(m, cl, h.lambda_star, sc.grid);
        strat = pdmv::vanilla_strategy_series(c, m, cl);
        analytic_g0 = std::exp(m.upsilon * sc.grid.horizon) * m.x0 + c.H.back() * m.v0 +
                      c.N.back();
    } else if (which == "pd") {
        const auto c = pdmv::solve_pd(m, cl, h, sc.grid);
        strat = pdmv::pd_strategy_series(c, m, cl);
        analytic_g0 = std::exp(m.upsilon * sc.grid.horizon) * m.x0 + c.Hbar.back() * m.v0 +
                      c.N.back();
    } else {
        throw std::runtime_error("sim.strategy must be 'vanilla' or 'pd'");
    }

    const auto b = pdmv::simulate_wealth(m, cl, h, strat, sc);
    const bool se_defined = sc.paths > 1;
    const double z = se_defined ? (b.mean - analytic_g0) / b.std_error : 0.0;
    json summary = {{"command", "simulate"},
                    {"strategy", which},
                    {"paths", sc.paths},
                    {"seed", sc.seed},
                    {"mc_mean", b.mean},
                    {"mc_variance", b.variance},
                    {"mc_std_error", se_defined ? json(b.std_error) : json(nullptr)},
                    {"se_undefined", !se_defined},
                    {"analytic_g0", analytic_g0},
                    {"z_score", se_defined ? json(z) : json(nullptr)},
                    {"within_3_se", se_defined ? json(std::abs(z) <= 3.0) : json(nullptr)},
                    {"objective", pdmv::estimate_objective(b, m.gamma)},
                    {"negative_wealth_paths", b.negative_wealth_paths},
                    {"variance_clamp_fraction", b.clamp_fraction}};
    const fs::path dir = prepare_out_dir(out, cfg);
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    if (!se_defined) std::cerr << "warning: standard error undefined with a single path\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"path-dependent mean-variance equilibrium toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, catalog_path, win_start, win_end;
    std::vector<std::string> sets;
    double min_mag = 5.0, horizon = 0.0;
    std::uint64_t seed_flag = 0;
    bool seed_given = false;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory (default pdmv-run)");
    app.add_option("--set", sets, "override config entries, e.g. --set market.gamma=0.5");
    app.add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed_flag = s; seed_given = true; },
        "RNG seed override");

    auto* ing = app.add_subcommand("ingest", "normalize an earthquake catalog CSV");
    ing->add_option("--catalog", catalog_path, "raw catalog CSV")->required();
    ing->add_option("--min-mag", min_mag, "inclusive magnitude threshold");
    ing->add_option("--start", win_start, "window start (ISO-8601)")->required();
    ing->add_option("--end", win_end, "window end (ISO-8601)")->required();

    auto* cal = app.add_subcommand("calibrate", "Hawkes maximum-likelihood fit");
    cal->add_option("--catalog", catalog_path, "catalog CSV (raw or normalized)")->required();
    cal->add_option("--min-mag", min_mag, "inclusive magnitude threshold (raw catalogs)");
    cal->add_option("--start", win_start, "window start (raw catalogs)");
    cal->add_option("--end", win_end, "window end (raw catalogs)");
    cal->add_option("--horizon", horizon, "window length in years (normalized catalogs)");

    auto* sol = app.add_subcommand("solve", "solve PD + vanilla coefficient systems");
    auto* wel = app.add_subcommand("welfare", "welfare-loss sweep");
    auto* sim = app.add_subcommand("simulate", "Monte Carlo wealth validation");

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = load_config(config_path, sets);
        if (seed_given) cfg["sim"]["seed"] = seed_flag;
        if (ing->parsed()) return cmd_ingest(cfg, out_dir, catalog_path, min_mag, win_start, win_end);
        if (cal->parsed())
            return cmd_calibrate(cfg, out_dir, catalog_path, min_mag, win_start, win_end, horizon);
        if (sol->parsed()) return cmd_solve(cfg, out_dir);
        if (wel->parsed()) return cmd_welfare(cfg, out_dir);
        if (sim->parsed()) return cmd_simulate(cfg, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
