#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "symtomo/error.hpp"
#include "symtomo/gaussian.hpp"
#include "symtomo/io.hpp"
#include "symtomo/radon.hpp"
#include "symtomo/wigner.hpp"

namespace symtomo::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct GridSpec {
    double x_min = -16.0;
    double x_max = 16.0;
    std::size_t n = 1024;
};

struct JobConfig {
    double hbar = 1.0;
    std::string grid = "-16:16:1024";
    std::string state;
    std::string out = ".";
    std::uint64_t seed = 1;
    std::optional<double> mu;
    std::optional<double> nu;
    std::optional<std::size_t> angles;
    std::string route = "metaplectic";
    std::string pauli_route = "chirp-fft";
    std::string format = "csv";
    std::string in;
    std::string reference;
    bool inject_fbp_error = false;
};

double parse_real(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

GridSpec parse_grid(const std::string& s)
{
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("--grid expects MIN:MAX:N, got '" + s + "'");
    GridSpec g;
    g.x_min = parse_real(parts[0], "grid minimum");
    g.x_max = parse_real(parts[1], "grid maximum");
    std::size_t n = 0;
    const auto& np = parts[2];
    const auto [ptr, ec] = std::from_chars(np.data(), np.data() + np.size(), n);
    if (ec != std::errc{} || ptr != np.data() + np.size()) throw ConfigError("cannot parse grid size '" + np + "'");
    g.n = n;
    return g;
}

Grid1D make_job_grid(const JobConfig& c)
{
    const GridSpec g = parse_grid(c.grid);
    return Grid1D(g.x_min, g.x_max, g.n, c.hbar);
}

struct StateSpec {
    std::optional<GaussianState> gaussian;
    std::string file;
};

StateSpec parse_state(const JobConfig& c)
{
    if (c.state.empty()) throw ConfigError("--state is required");
    const auto colon = c.state.find(':');
    if (colon == std::string::npos) throw ConfigError("--state expects gaussian:SXX,SXP[,SPP] or file:PATH");
    const std::string kind = c.state.substr(0, colon);
    const std::string rest = c.state.substr(colon + 1);
    StateSpec spec;
    if (kind == "gaussian") {
        const auto parts = split(rest, ',');
        if (parts.size() != 2 && parts.size() != 3)
            throw ConfigError("gaussian state expects SXX,SXP or SXX,SXP,SPP");
        const double sxx = parse_real(parts[0], "sigma_xx");
        const double sxp = parse_real(parts[1], "sigma_xp");
        if (!(sxx > 0.0)) throw ConfigError("sigma_xx must be positive");
        spec.gaussian = parts.size() == 2 ? GaussianState::pure(sxx, sxp, c.hbar)
                                          : GaussianState(sxx, parse_real(parts[2], "sigma_pp"), sxp, c.hbar);
    } else if (kind == "file") {
        if (!fs::exists(rest)) throw ConfigError("state file not found: " + rest);
        spec.file = rest;
    } else {
        throw ConfigError("unknown state kind '" + kind + "'");
    }
    return spec;
}

SampledWavefunction load_state(const JobConfig& c)
{
    const StateSpec spec = parse_state(c);
    if (spec.gaussian) {
        const Grid1D grid = make_job_grid(c);
        if (!grid_covers(*spec.gaussian, grid))
            std::cerr << "warning: grid narrower than 8 standard deviations of the state\n";
        return gaussian_wavefunction(*spec.gaussian, grid);
    }
    return io::read_wavefunction(spec.file, c.hbar);
}

json state_json(const GaussianState& s)
{
    return {{"sigma_xx", s.sigma_xx()}, {"sigma_pp", s.sigma_pp()}, {"sigma_xp", s.sigma_xp()}, {"hbar", s.hbar()}};
}

fs::path out_dir(const JobConfig& c)
{
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

void write_wigner_outputs(const fs::path& dir, const WignerMap& w)
{
    io::write_wigner_binary(dir / "wigner.json", w);
    io::write_wigner_csv(dir / "wigner.csv", w);
}

std::size_t nearest_index(const Axis& a, double v)
{
    const double r = std::round((v - a.start) / a.step);
    return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(a.size - 1)));
}

int cmd_wigner(const JobConfig& c, std::ostream& out)
{
    const SampledWavefunction psi = load_state(c);
    const WignerMap w = wigner_transform(psi);
    const fs::path dir = out_dir(c);
    write_wigner_outputs(dir, w);

    const auto peak = std::max_element(w.values().begin(), w.values().end());
    const auto flat = static_cast<std::size_t>(peak - w.values().begin());
    const std::size_t i0 = nearest_index(w.x_grid().position_axis(), 0.0);
    const std::size_t k0 = nearest_index(w.p_axis(), 0.0);
    const json summary = {{"command", "wigner"},
                          {"grid", io::grid_to_json(w.x_grid())},
                          {"mass", w.total_mass()},
                          {"peak", {{"value", *peak}, {"x", w.x_grid().x(flat / w.np())}, {"p", w.p_axis()[flat % w.np()]}}},
                          {"origin_value", w(i0, k0)},
                          {"max_imag_residue", w.max_imag_residue},
                          {"accuracy_warning", w.accuracy_warning},
                          {"files", {"wigner.json", "wigner.bin", "wigner.csv"}}};
    out << summary.dump(2) << "\n";
    return ok;
}

int cmd_tomogram(const JobConfig& c, std::ostream& out)
{
    const RadonRoute route = parse_route(c.route);
    const io::BlockFormat format = io::parse_block_format(c.format);
    const bool sweep = c.angles.has_value();
    if (sweep == (c.mu.has_value() || c.nu.has_value()))
        throw ConfigError("give either --angles N or both --mu and --nu");
    if (!sweep && !(c.mu && c.nu)) throw ConfigError("--mu and --nu must be given together");
    if (!sweep) {
        RotationParams::make(*c.mu, *c.nu);
        if (route == RadonRoute::chirp_fft && *c.nu == 0.0)
            throw UnsupportedError("the chirp-fft route needs nu != 0; use --route metaplectic for nu = 0");
    }

    const SampledWavefunction psi = load_state(c);
    std::vector<Tomogram> tomograms;
    if (sweep) {
        if (*c.angles == 0) throw ConfigError("--angles must be positive");
        tomograms = make_tomogram_set(psi, *c.angles, route).tomograms();
    } else {
        tomograms.push_back(radon(psi, *c.mu, *c.nu, route));
    }
    const TomogramSet set(std::move(tomograms));
    const fs::path dir = out_dir(c);
    io::write_tomogram_set(dir / "tomograms.json", set, format);

    double worst_mass = 0.0;
    bool warned = false;
    for (const auto& t : set.tomograms()) {
        worst_mass = std::max(worst_mass, std::abs(t.mass() - psi.norm_squared()));
        warned = warned || t.accuracy_warning;
    }
    const json summary = {{"command", "tomogram"},
                          {"route", to_string(route)},
                          {"blocks", set.size()},
                          {"block_format", c.format},
                          {"max_mass_deviation", worst_mass},
                          {"accuracy_warning", warned},
                          {"manifest", "tomograms.json"}};
    out << summary.dump(2) << "\n";
    return ok;
}

bool same_lattice(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

int cmd_invert(const JobConfig& c, std::ostream& out)
{
    if (c.in.empty()) throw ConfigError("--in MANIFEST is required");
    if (!fs::exists(c.in)) throw ConfigError("manifest not found: " + c.in);
    const TomogramSet set = io::read_tomogram_set(c.in);
    set.require_inversion_ready();

    std::optional<WignerMap> reference;
    const Axis& xa = set.x_axis();
    if (!c.reference.empty()) {
        if (!fs::exists(c.reference)) throw ConfigError("reference not found: " + c.reference);
        reference = io::read_wigner_binary(c.reference);
        const Grid1D& rg = reference->x_grid();
        const Axis& rp = reference->p_axis();
        const bool match = rg.size() == xa.size && same_lattice(rg.x_min(), xa.start) && same_lattice(rg.dx(), xa.step) &&
                           rp.size == xa.size && same_lattice(rp.start, xa.start) && same_lattice(rp.step, xa.step) &&
                           same_lattice(rg.hbar(), set.hbar());
        if (!match) throw ConfigError("reference map grid does not match the reconstruction grid");
    }

    InverseRadonOptions options;
    if (c.inject_fbp_error) options.constant_scale = 2.0 * std::numbers::pi * set.hbar();
    const WignerMap w = inverse_radon(set, options);
    const fs::path dir = out_dir(c);
    write_wigner_outputs(dir, w);

    json report = {{"command", "invert"},
                   {"angles", set.size()},
                   {"hbar", set.hbar()},
                   {"grid", io::grid_to_json(w.x_grid())},
                   {"mass", w.total_mass()},
                   {"files", {"wigner.json", "wigner.bin", "wigner.csv", "report.json"}}};
    if (reference) {
        double linf = 0.0;
        double l2 = 0.0;
        for (std::size_t i = 0; i < w.values().size(); ++i) {
            const double d = w.values()[i] - reference->values()[i];
            linf = std::max(linf, std::abs(d));
            l2 += d * d;
        }
        l2 = std::sqrt(l2 * w.x_grid().dx() * w.p_axis().step);
        report["reference"] = {{"file", c.reference}, {"linf_residual", linf}, {"l2_residual", l2}};
    }
    io::write_file_atomic(dir / "report.json", report.dump(2));
    out << report.dump(2) << "\n";
    return ok;
}

double linf_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

int cmd_pauli_demo(const JobConfig& c, std::ostream& out)
{
    const StateSpec spec = parse_state(c);
    if (!spec.gaussian) throw ConfigError("pauli-demo needs a gaussian state");
    const double mu = c.mu.value_or(1.0);
    const double nu = c.nu.value_or(1.0);
    if (mu * nu == 0.0) throw ConfigError("the extra tomogram needs mu * nu != 0");
    const RadonRoute route = parse_route(c.pauli_route);

    const GaussianState& state = *spec.gaussian;
    const GaussianState twin(state.sigma_xx(), state.sigma_pp(), -state.sigma_xp(), state.hbar());
    const Grid1D grid = make_job_grid(c);
    const SampledWavefunction psi = gaussian_wavefunction(state, grid);
    const SampledWavefunction psi_twin = gaussian_wavefunction(twin, grid);

    const Tomogram tx = radon(psi, 1.0, 0.0, RadonRoute::metaplectic);
    const Tomogram tp = radon(psi, 0.0, 1.0, route);
    const Tomogram te = radon(psi, mu, nu, route);
    const Tomogram tx_twin = radon(psi_twin, 1.0, 0.0, RadonRoute::metaplectic);
    const Tomogram tp_twin = radon(psi_twin, 0.0, 1.0, route);
    const Tomogram te_twin = radon(psi_twin, mu, nu, route);

    const double dx_lin = linf_diff(tx.values(), tx_twin.values());
    const double dp_lin = linf_diff(tp.values(), tp_twin.values());
    const PauliOptions options;
    const PauliResult r = pauli_reconstruct(tx, tp, te, options);

    const double err = std::max({std::abs(r.state.sigma_xx() - state.sigma_xx()),
                                 std::abs(r.state.sigma_pp() - state.sigma_pp()),
                                 std::abs(r.state.sigma_xp() - state.sigma_xp())});
    const std::string sign = r.sign_moot ? "moot" : (r.state.sigma_xp() > 0.0 ? "+" : "-");
    json report = {{"command", "pauli-demo"},
                   {"route", to_string(route)},
                   {"input", state_json(state)},
                   {"twin", state_json(twin)},
                   {"marginals",
                    {{"position_linf_difference", dx_lin},
                     {"momentum_linf_difference", dp_lin},
                     {"identical", std::max(dx_lin, dp_lin) <= 1e-10}}},
                   {"extra_tomogram",
                    {{"mu", mu},
                     {"nu", nu},
                     {"variance", gaussian_variance_estimate(te)},
                     {"twin_variance", gaussian_variance_estimate(te_twin)},
                     {"linf_difference", linf_diff(te.values(), te_twin.values())}}},
                   {"recovered", state_json(r.state)},
                   {"recovery_error", err},
                   {"sign", sign},
                   {"sign_moot", r.sign_moot},
                   {"sign_margin", r.sign_margin},
                   {"fit_tolerance", options.fit_tol},
                   {"margin_over_tolerance", r.sign_margin / options.fit_tol},
                   {"predicted_variance", {{"plus", r.predicted_plus}, {"minus", r.predicted_minus}}},
                   {"residual", r.residual}};
    if (r.sign_moot) report["note"] = "sign moot: sigma_xp = 0, the twin is the state itself";
    if (c.out != ".") io::write_file_atomic(fs::path(c.out) / "pauli.json", report.dump(2));
    out << report.dump(2) << "\n";
    return ok;
}

int cmd_check(const JobConfig& c, std::ostream& out)
{
    const GridSpec g = parse_grid(c.grid);
    CheckConfig cfg;
    cfg.x_min = g.x_min;
    cfg.x_max = g.x_max;
    cfg.n_points = g.n;
    cfg.hbar = c.hbar;
    cfg.seed = c.seed;
    cfg.inject_fbp_error = c.inject_fbp_error;
    if (c.angles) cfg.fbp_angles = *c.angles;
    Grid1D(cfg.x_min, cfg.x_max, cfg.n_points, cfg.hbar);
    const auto rows = run_checks(cfg);
    out << format_check_table(rows);
    const bool all = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
    return all ? ok : check_failed;
}

void add_common(CLI::App* cmd, JobConfig& c)
{
    cmd->add_option("--hbar", c.hbar, "reduced Planck constant")->capture_default_str();
    cmd->add_option("--grid", c.grid, "position grid MIN:MAX:N (N a power of two)")->capture_default_str();
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    JobConfig c;
    CLI::App app{"phase-space tomography toolkit", "tomo"};
    app.require_subcommand(1);

    auto* wigner = app.add_subcommand("wigner", "Wigner map of a state (CSV + JSON/binary)");
    add_common(wigner, c);
    wigner->add_option("--state", c.state, "gaussian:SXX,SXP[,SPP] or file:PATH")->required();

    auto* tomogram = app.add_subcommand("tomogram", "one tomogram (--mu, --nu) or an angle sweep (--angles)");
    add_common(tomogram, c);
    tomogram->add_option("--state", c.state, "gaussian:SXX,SXP[,SPP] or file:PATH")->required();
    tomogram->add_option("--mu", c.mu, "position coefficient of the observable mu x + nu p");
    tomogram->add_option("--nu", c.nu, "momentum coefficient of the observable mu x + nu p");
    tomogram->add_option("--angles", c.angles, "number of equispaced angles on [0, pi)");
    tomogram->add_option("--route", c.route, "metaplectic | chirp-fft | line-integral")->capture_default_str();
    tomogram->add_option("--format", c.format, "block format: csv | f64")->capture_default_str();

    auto* invert = app.add_subcommand("invert", "filtered back-projection of a tomogram set");
    invert->add_option("--in", c.in, "tomogram-set manifest")->required();
    invert->add_option("--reference", c.reference, "reference Wigner manifest (wigner.json)");
    invert->add_option("--out", c.out, "output directory")->capture_default_str();
    invert->add_flag("--inject-fbp-error", c.inject_fbp_error)->group("");

    auto* pauli = app.add_subcommand("pauli-demo", "sign ambiguity and its resolution for a Gaussian state");
    add_common(pauli, c);
    pauli->add_option("--state", c.state, "gaussian:SXX,SXP[,SPP]")->required();
    pauli->add_option("--mu", c.mu, "extra tomogram direction (default 1)");
    pauli->add_option("--nu", c.nu, "extra tomogram direction (default 1)");
    pauli->add_option("--route", c.pauli_route, "route for the momentum and extra tomograms")->capture_default_str();

    auto* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("--hbar", c.hbar, "reduced Planck constant")->capture_default_str();
    check->add_option("--grid", c.grid, "position grid MIN:MAX:N")->capture_default_str();
    check->add_option("--seed", c.seed, "seed for the random draws")->capture_default_str();
    check->add_option("--angles", c.angles, "angles in the round-trip check (default 360)");
    check->add_flag("--inject-fbp-error", c.inject_fbp_error)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (*wigner) return cmd_wigner(c, out);
        if (*tomogram) return cmd_tomogram(c, out);
        if (*invert) return cmd_invert(c, out);
        if (*pauli) return cmd_pauli_demo(c, out);
        if (*check) return cmd_check(c, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}

}  // namespace symtomo::cli
