#include "holevo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "holevo/analysis.hpp"
#include "holevo/channel.hpp"
#include "holevo/enumeration.hpp"
#include "holevo/errors.hpp"
#include "holevo/parallel.hpp"
#include "holevo/sectors.hpp"
#include "holevo/spectral.hpp"

namespace holevo {

namespace {

using json = nlohmann::ordered_json;

// 12 significant digits; exceeds every internal tolerance and keeps reruns
// byte-identical.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_kappa(Diffusion kappa) {
    return kappa.is_infinite() ? "inf" : fmt(kappa.kappa());
}

json json_kappa(Diffusion kappa) {
    if (kappa.is_infinite()) return json("inf");
    return json(kappa.kappa());
}

json json_opt(const std::optional<double>& v) {
    if (!v) return json(nullptr);
    return json(*v);
}

Diffusion parse_kappa_token(const std::string& token) {
    if (token == "inf" || token == "Inf" || token == "INF") return Diffusion::infinite();
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("unparseable kappa value '" + token + "'");
    }
    if (used != token.size())
        throw std::invalid_argument("unparseable kappa value '" + token + "'");
    return Diffusion(value);  // rejects negatives
}

struct KappaSpec {
    std::vector<std::string> tokens;       // from --kappa
    std::vector<double> log_range;         // min max count, from --kappa-log
};

void add_kappa_options(CLI::App* cmd, KappaSpec& spec) {
    cmd->add_option("--kappa", spec.tokens,
                    "diffusion strengths: comma-separated numbers, 0, or inf")
        ->delimiter(',');
    cmd->add_option("--kappa-log", spec.log_range,
                    "logarithmic kappa grid: MIN MAX COUNT")
        ->expected(3);
}

std::vector<Diffusion> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log kappa grid needs 0 < MIN < MAX and COUNT >= 2");
    std::vector<Diffusion> grid;
    const double step = (std::log10(hi) - std::log10(lo)) / (count - 1);
    for (int i = 0; i < count; ++i)
        grid.emplace_back(std::pow(10.0, std::log10(lo) + i * step));
    return grid;
}

enum class KappaDefault { kFigureGrid, kLogOnly, kRequired };

// Final grid: explicit tokens in given order, then the log range. The figure
// default is a log grid over [1e-2, 10] bracketed by the two sentinels.
std::vector<Diffusion> build_kappa_grid(const KappaSpec& spec, KappaDefault fallback) {
    std::vector<Diffusion> grid;
    for (const auto& token : spec.tokens) grid.push_back(parse_kappa_token(token));
    if (!spec.log_range.empty()) {
        const auto tail =
            log_grid(spec.log_range[0], spec.log_range[1], static_cast<int>(spec.log_range[2]));
        grid.insert(grid.end(), tail.begin(), tail.end());
    }
    if (!grid.empty()) return grid;
    switch (fallback) {
        case KappaDefault::kFigureGrid: {
            grid.emplace_back(0.0);
            const auto tail = log_grid(1e-2, 10.0, 25);
            grid.insert(grid.end(), tail.begin(), tail.end());
            grid.push_back(Diffusion::infinite());
            return grid;
        }
        case KappaDefault::kLogOnly:
            return log_grid(1e-2, 10.0, 25);
        case KappaDefault::kRequired:
            throw std::invalid_argument("--kappa is required for this subcommand");
    }
    return grid;
}

Diffusion single_kappa(const KappaSpec& spec) {
    const auto grid = build_kappa_grid(spec, KappaDefault::kRequired);
    if (grid.size() != 1)
        throw std::invalid_argument("this subcommand takes exactly one --kappa value");
    return grid[0];
}

struct NbarSpec {
    std::vector<double> single;
    std::vector<double> range;  // min max step
};

void add_nbar_options(CLI::App* cmd, NbarSpec& spec) {
    cmd->add_option("--nbar", spec.single, "mean photon number per time bin");
    cmd->add_option("--nbar-range", spec.range, "mean photon number grid: MIN MAX STEP")
        ->expected(3);
}

std::vector<double> build_nbar_grid(const NbarSpec& spec) {
    std::vector<double> grid = spec.single;
    if (!spec.range.empty()) {
        const double lo = spec.range[0], hi = spec.range[1], step = spec.range[2];
        if (step <= 0.0 || hi < lo)
            throw std::invalid_argument("--nbar-range needs MIN <= MAX and STEP > 0");
        const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) grid.push_back(lo + i * step);
    }
    if (grid.empty()) throw std::invalid_argument("--nbar or --nbar-range is required");
    for (double v : grid)
        if (v < 0.0) throw std::invalid_argument("mean photon number must be >= 0");
    return grid;
}

long env_long(const char* name, long fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 0)
        throw std::invalid_argument(std::string(name) + " must be a nonnegative integer");
    return value;
}

struct CommonOpts {
    std::string format;    // per-command default filled in later
    std::string out_path;
    std::size_t dim_cap = kDefaultDimCap;
    int threads = 0;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts, const std::string& default_format) {
    opts.format = default_format;
    opts.dim_cap = static_cast<std::size_t>(env_long("HOLEVO_DIM_CAP",
                                                     static_cast<long>(kDefaultDimCap)));
    opts.threads = static_cast<int>(env_long("HOLEVO_THREADS", 0));
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "write output to a file (atomically)");
    cmd->add_option("--dim-cap", opts.dim_cap, "dense matrix dimension cap");
    cmd->add_option("--threads", opts.threads, "worker threads for sweeps (0 = auto)");
}

void emit(const CommonOpts& opts, const std::string& document, std::ostream& out) {
    if (opts.out_path.empty()) {
        out << document;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(opts.out_path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << document;
        if (!f.good()) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target);
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------- dims ----

int run_dims(const std::vector<int>& photon_list, int bins, int symbols,
             const CommonOpts& opts, std::ostream& out) {
    json rows = json::array();
    std::ostringstream csv;
    csv << "N,L,M,dim_individual,dim_average\n";
    for (int n : photon_list) {
        const std::int64_t di = individual_dim(n, bins);
        const std::int64_t da = average_dim(n, bins, symbols);
        csv << n << ',' << bins << ',' << symbols << ',' << di << ',' << da << '\n';
        rows.push_back(json{{"N", n}, {"L", bins}, {"M", symbols},
                            {"dim_individual", di}, {"dim_average", da}});
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "dims"}, {"rows", rows}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

// ---------------------------------------------------------------- chi1 ----

int run_chi1(const std::vector<int>& bins_list, const std::vector<int>& symbol_list,
             const std::vector<Diffusion>& kappas, const CommonOpts& opts, std::ostream& out) {
    json rows = json::array();
    std::ostringstream csv;
    csv << "L,M,kappa,chi1_exact,chi1_asymptotic,gap\n";
    for (int bins : bins_list) {
        for (int symbols : symbol_list) {
            for (const Diffusion& kappa : kappas) {
                const double exact = chi1_exact(bins, symbols, kappa);
                std::optional<double> asym;
                if (!kappa.is_zero()) asym = chi1_asymptotic(symbols, kappa);
                std::optional<double> gap;
                if (asym) gap = *asym - exact;
                csv << bins << ',' << symbols << ',' << fmt_kappa(kappa) << ',' << fmt(exact)
                    << ',' << (asym ? fmt(*asym) : "inf") << ',' << (gap ? fmt(*gap) : "inf")
                    << '\n';
                rows.push_back(json{{"L", bins}, {"M", symbols}, {"kappa", json_kappa(kappa)},
                                    {"chi1_exact", exact}, {"chi1_asymptotic", json_opt(asym)},
                                    {"gap", json_opt(gap)}});
            }
        }
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "chi1"}, {"rows", rows}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

// -------------------------------------------------------------- sector ----

json sector_json(const SectorResult& s) {
    return json{{"N", s.photons},
                {"L", s.bins},
                {"M", s.symbols},
                {"kappa", json_kappa(s.kappa)},
                {"dim_individual", s.individual.dim},
                {"dim_average", s.average.dim},
                {"S_individual", s.individual.entropy},
                {"S_average", s.average.entropy},
                {"chi", s.chi}};
}

int run_sector(int photons, int bins, int symbols, Diffusion kappa, const CommonOpts& opts,
               std::ostream& out) {
    const SectorResult s = compute_sector(photons, bins, symbols, kappa, opts.dim_cap);
    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "N,L,M,kappa,dim_individual,dim_average,S_individual,S_average,chi\n";
        csv << s.photons << ',' << s.bins << ',' << s.symbols << ',' << fmt_kappa(s.kappa) << ','
            << s.individual.dim << ',' << s.average.dim << ',' << fmt(s.individual.entropy)
            << ',' << fmt(s.average.entropy) << ',' << fmt(s.chi) << '\n';
        emit(opts, csv.str(), out);
    } else {
        json doc{{"schema_version", 1}};
        doc.update(sector_json(s));
        emit(opts, dump_json(doc), out);
    }
    return 0;
}

// -------------------------------------------------------- sectors-sweep ----

int run_sectors_sweep(int bins, int symbols, const std::vector<Diffusion>& kappas, int n_max,
                      const CommonOpts& opts, std::ostream& out) {
    if (n_max < 1) throw std::invalid_argument("--N-max must be >= 1");
    const auto sectors = sector_sweep(bins, symbols, kappas, n_max, opts.dim_cap, opts.threads);
    json rows = json::array();
    std::ostringstream csv;
    csv << "N,kappa,chi_N,N_chi1\n";
    for (std::size_t ik = 0; ik < kappas.size(); ++ik) {
        const double chi_one = sectors[ik * static_cast<std::size_t>(n_max)].chi;
        for (int n = 1; n <= n_max; ++n) {
            const SectorResult& s =
                sectors[ik * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n) - 1];
            csv << n << ',' << fmt_kappa(s.kappa) << ',' << fmt(s.chi) << ','
                << fmt(n * chi_one) << '\n';
            rows.push_back(json{{"N", n}, {"kappa", json_kappa(s.kappa)}, {"chi_N", s.chi},
                                {"N_chi1", n * chi_one}});
        }
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "sectors-sweep"},
                 {"params", json{{"L", bins}, {"M", symbols}, {"N_max", n_max}}},
                 {"rows", rows}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

// -------------------------------------------------------------- holevo ----

json report_json(const HolevoReport& r) {
    json sectors = json::array();
    for (const SectorResult& s : r.sectors) sectors.push_back(sector_json(s));
    return json{{"params", json{{"L", r.params.bins},
                                {"M", r.params.symbols},
                                {"kappa", json_kappa(r.params.kappa)},
                                {"nbar", r.params.mean_photons}}},
                {"N_max", r.n_max},
                {"weights", r.weights},
                {"sectors", sectors},
                {"total_chi", r.total_chi},
                {"chi_per_use", r.chi_per_use},
                {"linear_bound", json_opt(r.linear_bound)},
                {"truncated_mass_fraction", r.truncated_mass_fraction}};
}

int run_holevo(int bins, int symbols, const std::vector<Diffusion>& kappas,
               const std::vector<double>& nbars, std::optional<int> n_max_override,
               const CommonOpts& opts, std::ostream& out) {
    json reports = json::array();
    std::ostringstream csv;
    csv << "kappa,nbar,chi_per_use,linear_bound\n";
    const double nbar_max = *std::max_element(nbars.begin(), nbars.end());

    for (const Diffusion& kappa : kappas) {
        // chi^(N) does not depend on nbar, so compute the sector values once
        // per kappa at the largest truncation the grid needs.
        int n_top = n_max_override ? *n_max_override : choose_truncation(bins, nbar_max);
        std::vector<SectorResult> sectors(static_cast<std::size_t>(n_top) + 1);
        sectors[0] = compute_sector(0, bins, symbols, kappa, opts.dim_cap);
        parallel_for(static_cast<std::size_t>(n_top), opts.threads, [&](std::size_t i) {
            sectors[i + 1] = compute_sector(static_cast<int>(i) + 1, bins, symbols, kappa,
                                            opts.dim_cap);
        });
        for (double nbar : nbars) {
            const ChannelParams params{bins, symbols, kappa, nbar};
            const int n_max = n_max_override ? *n_max_override : choose_truncation(bins, nbar);
            const HolevoReport r = assemble_holevo_report(params, n_max, sectors);
            csv << fmt_kappa(kappa) << ',' << fmt(nbar) << ',' << fmt(r.chi_per_use) << ','
                << (r.linear_bound ? fmt(*r.linear_bound) : "inf") << '\n';
            reports.push_back(report_json(r));
        }
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "holevo"}, {"reports", reports}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

// ----------------------------------------------------------- baselines ----

int run_baselines(const std::vector<double>& nbars, const CommonOpts& opts, std::ostream& out) {
    json rows = json::array();
    std::ostringstream csv;
    csv << "nbar,erasure,holevo_binary,leading_order,d_erasure,d_holevo_binary\n";
    for (double nbar : nbars) {
        const Baselines b = baselines(nbar);
        std::optional<double> d_erasure, d_binary;
        if (nbar > 0.0) {
            const BaselineSlopes s = baseline_slopes(nbar);
            d_erasure = s.erasure;
            d_binary = s.holevo_binary;
        }
        csv << fmt(nbar) << ',' << fmt(b.erasure) << ',' << fmt(b.holevo_binary) << ','
            << fmt(b.leading_order) << ',' << (d_erasure ? fmt(*d_erasure) : "nan") << ','
            << (d_binary ? fmt(*d_binary) : "nan") << '\n';
        rows.push_back(json{{"nbar", nbar}, {"erasure", b.erasure},
                            {"holevo_binary", b.holevo_binary},
                            {"leading_order", b.leading_order},
                            {"d_erasure", json_opt(d_erasure)},
                            {"d_holevo_binary", json_opt(d_binary)}});
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "baselines"}, {"rows", rows}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

// ----------------------------------------------------------- splitting ----

int run_splitting(int bins, int symbols, const std::vector<Diffusion>& kappas,
                  const CommonOpts& opts, std::ostream& out) {
    std::vector<SplittingComparison> results(kappas.size());
    parallel_for(kappas.size(), opts.threads, [&](std::size_t i) {
        results[i] = splitting_comparison(bins, symbols, kappas[i], opts.dim_cap);
    });
    json rows = json::array();
    std::ostringstream csv;
    csv << "kappa,model,S_individual,S_average,chi2\n";
    for (const SplittingComparison& r : results) {
        const auto row = [&](const char* model, const EnsembleEntropies& e) {
            csv << fmt_kappa(r.kappa) << ',' << model << ',' << fmt(e.entropy_individual) << ','
                << fmt(e.entropy_average) << ',' << fmt(e.chi) << '\n';
            rows.push_back(json{{"kappa", json_kappa(r.kappa)}, {"model", model},
                                {"S_individual", e.entropy_individual},
                                {"S_average", e.entropy_average}, {"chi2", e.chi}});
        };
        row("independent", r.independent);
        row("collective", r.collective);
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "splitting"},
                 {"params", json{{"L", bins}, {"M", symbols}}}, {"rows", rows}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

// --------------------------------------------------------------- szego ----

int run_szego(const std::vector<Diffusion>& kappas, double tolerance, const CommonOpts& opts,
              std::ostream& out) {
    json rows = json::array();
    std::ostringstream csv;
    csv << "kappa,quadrature,closed_form,difference\n";
    for (const Diffusion& kappa : kappas) {
        const SzegoIntegral integral = szego_entropy_integral(kappa, tolerance);
        const double diff = integral.quadrature - integral.closed_form;
        csv << fmt_kappa(kappa) << ',' << fmt(integral.quadrature) << ','
            << fmt(integral.closed_form) << ',' << fmt(diff) << '\n';
        rows.push_back(json{{"kappa", json_kappa(kappa)}, {"quadrature", integral.quadrature},
                            {"closed_form", integral.closed_form}, {"difference", diff}});
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "szego"}, {"rows", rows}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

// ---------------------------------------------------------- conjecture ----

int run_conjecture(int bins, int symbols, const std::vector<Diffusion>& kappas, int n_max,
                   const CommonOpts& opts, std::ostream& out) {
    const ConjectureScan scan =
        conjecture_check(bins, symbols, kappas, n_max, opts.dim_cap, opts.threads);

    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "kappa,N,chi_N,bound,margin\n";
        for (const ConjectureEntry& v : scan.violations)
            csv << fmt_kappa(v.kappa) << ',' << v.photons << ',' << fmt(v.chi_n) << ','
                << fmt(v.bound) << ',' << fmt(v.margin) << '\n';
        emit(opts, csv.str(), out);
        return 0;
    }

    json kappa_list = json::array();
    for (const Diffusion& k : kappas) kappa_list.push_back(json_kappa(k));
    json entries = json::array();
    for (const ConjectureEntry& e : scan.entries)
        entries.push_back(json{{"kappa", json_kappa(e.kappa)}, {"N", e.photons},
                               {"chi_N", e.chi_n}, {"bound", e.bound}, {"margin", e.margin}});
    json violations = json::array();
    for (const ConjectureEntry& v : scan.violations)
        violations.push_back(json{{"kappa", json_kappa(v.kappa)}, {"N", v.photons},
                                  {"chi_N", v.chi_n}, {"bound", v.bound}, {"margin", v.margin}});
    double max_margin = -std::numeric_limits<double>::infinity();
    for (const ConjectureEntry& e : scan.entries) max_margin = std::max(max_margin, e.margin);

    json doc{{"schema_version", 1},
             {"command", "conjecture"},
             {"params", json{{"L", bins}, {"M", symbols}, {"N_max", n_max},
                             {"tolerance", scan.tolerance}, {"kappa", kappa_list}}},
             {"checked", scan.entries.size()},
             {"violation_count", scan.violations.size()},
             {"max_margin", max_margin},
             {"entries", entries},
             {"violations", violations}};
    emit(opts, dump_json(doc), out);
    return 0;
}

// -------------------------------------------------------------- kernel ----

int run_kernel(Diffusion kappa, int points, double tolerance, const CommonOpts& opts,
               std::ostream& out) {
    if (points < 1) throw std::invalid_argument("--points must be >= 1");
    json rows = json::array();
    std::ostringstream csv;
    csv << "phi,p\n";
    for (int i = 1; i <= points; ++i) {
        const double phi = -std::numbers::pi + i * (2.0 * std::numbers::pi / points);
        const double p = kernel_density(phi, kappa, tolerance);
        csv << fmt(phi) << ',' << fmt(p) << '\n';
        rows.push_back(json{{"phi", phi}, {"p", p}});
    }
    if (opts.format == "json") {
        json doc{{"schema_version", 1}, {"command", "kernel"},
                 {"params", json{{"kappa", json_kappa(kappa)}}}, {"rows", rows}};
        emit(opts, dump_json(doc), out);
    } else {
        emit(opts, csv.str(), out);
    }
    return 0;
}

int run_command_impl(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
    CLI::App app{"Holevo-bound calculator for pulse-position keying with inter-symbol "
                 "phase diffusion"};
    app.require_subcommand(1);

    // dims
    auto* dims_cmd = app.add_subcommand("dims", "sector dimension table");
    std::vector<int> dims_photons;
    int dims_bins = 4, dims_symbols = 2;
    CommonOpts dims_opts;
    dims_cmd->add_option("--N", dims_photons, "photon numbers")->delimiter(',')->required();
    dims_cmd->add_option("--L", dims_bins, "time bins")->required();
    dims_cmd->add_option("--M", dims_symbols, "symbols per bin")->required();
    add_common_options(dims_cmd, dims_opts, "csv");

    // chi1
    auto* chi1_cmd = app.add_subcommand("chi1", "one-photon contribution vs its asymptote");
    std::vector<int> chi1_bins{10};
    std::vector<int> chi1_symbols{2};
    KappaSpec chi1_kappa;
    CommonOpts chi1_opts;
    chi1_cmd->add_option("--L", chi1_bins, "time bins")->delimiter(',');
    chi1_cmd->add_option("--M", chi1_symbols, "symbols per bin")->delimiter(',');
    add_kappa_options(chi1_cmd, chi1_kappa);
    add_common_options(chi1_cmd, chi1_opts, "csv");

    // sector
    auto* sector_cmd = app.add_subcommand("sector", "single N-photon sector contribution");
    int sector_photons = 0, sector_bins = 4, sector_symbols = 2;
    KappaSpec sector_kappa;
    CommonOpts sector_opts;
    sector_cmd->add_option("--N", sector_photons, "photon number")->required();
    sector_cmd->add_option("--L", sector_bins, "time bins")->required();
    sector_cmd->add_option("--M", sector_symbols, "symbols per bin")->required();
    add_kappa_options(sector_cmd, sector_kappa);
    add_common_options(sector_cmd, sector_opts, "json");

    // sectors-sweep
    auto* sweep_cmd = app.add_subcommand("sectors-sweep",
                                         "chi_N next to the linear bound N*chi_1");
    int sweep_bins = 4, sweep_symbols = 2, sweep_n_max = 5;
    KappaSpec sweep_kappa;
    CommonOpts sweep_opts;
    sweep_cmd->add_option("--L", sweep_bins, "time bins")->required();
    sweep_cmd->add_option("--M", sweep_symbols, "symbols per bin")->required();
    sweep_cmd->add_option("--N-max", sweep_n_max, "largest photon number")->required();
    add_kappa_options(sweep_cmd, sweep_kappa);
    add_common_options(sweep_cmd, sweep_opts, "csv");

    // holevo
    auto* holevo_cmd = app.add_subcommand("holevo", "Poisson-weighted total per channel use");
    int holevo_bins = 4, holevo_symbols = 2;
    int holevo_n_max = -1;
    KappaSpec holevo_kappa;
    NbarSpec holevo_nbar;
    CommonOpts holevo_opts;
    holevo_cmd->add_option("--L", holevo_bins, "time bins")->required();
    holevo_cmd->add_option("--M", holevo_symbols, "symbols per bin")->required();
    holevo_cmd->add_option("--N-max", holevo_n_max, "truncation override");
    add_kappa_options(holevo_cmd, holevo_kappa);
    add_nbar_options(holevo_cmd, holevo_nbar);
    add_common_options(holevo_cmd, holevo_opts, "csv");

    // baselines
    auto* base_cmd = app.add_subcommand("baselines",
                                        "two-symbol erasure vs binary-Holevo references");
    NbarSpec base_nbar;
    CommonOpts base_opts;
    add_nbar_options(base_cmd, base_nbar);
    add_common_options(base_cmd, base_opts, "csv");

    // splitting
    auto* split_cmd = app.add_subcommand("splitting",
                                         "two-photon collective vs independent dephasing");
    int split_bins = 2, split_symbols = 2;
    KappaSpec split_kappa;
    CommonOpts split_opts;
    split_cmd->add_option("--L", split_bins, "time bins")->required();
    split_cmd->add_option("--M", split_symbols, "symbols per bin")->required();
    add_kappa_options(split_cmd, split_kappa);
    add_common_options(split_cmd, split_opts, "csv");

    // szego
    auto* szego_cmd = app.add_subcommand("szego",
                                         "entropy integral: quadrature vs closed form");
    KappaSpec szego_kappa;
    double szego_tol = 1e-10;
    CommonOpts szego_opts;
    add_kappa_options(szego_cmd, szego_kappa);
    szego_cmd->add_option("--tol", szego_tol, "quadrature tolerance");
    add_common_options(szego_cmd, szego_opts, "csv");

    // conjecture
    auto* conj_cmd = app.add_subcommand("conjecture",
                                        "check chi_N <= N*chi_1 over a kappa grid");
    int conj_bins = 4, conj_symbols = 2, conj_n_max = 5;
    KappaSpec conj_kappa;
    CommonOpts conj_opts;
    conj_cmd->add_option("--L", conj_bins, "time bins")->required();
    conj_cmd->add_option("--M", conj_symbols, "symbols per bin")->required();
    conj_cmd->add_option("--N-max", conj_n_max, "largest photon number")->required();
    add_kappa_options(conj_cmd, conj_kappa);
    add_common_options(conj_cmd, conj_opts, "json");

    // kernel
    auto* kernel_cmd = app.add_subcommand("kernel", "phase kernel p(phi) samples");
    KappaSpec kernel_kappa;
    int kernel_points = 256;
    double kernel_tol = 1e-16;
    CommonOpts kernel_opts;
    add_kappa_options(kernel_cmd, kernel_kappa);
    kernel_cmd->add_option("--points", kernel_points, "sample count on (-pi, pi]");
    kernel_cmd->add_option("--tol", kernel_tol, "series truncation tolerance");
    add_common_options(kernel_cmd, kernel_opts, "csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));

        if (app.got_subcommand(dims_cmd))
            return run_dims(dims_photons, dims_bins, dims_symbols, dims_opts, out);
        if (app.got_subcommand(chi1_cmd))
            return run_chi1(chi1_bins, chi1_symbols,
                            build_kappa_grid(chi1_kappa, KappaDefault::kFigureGrid), chi1_opts,
                            out);
        if (app.got_subcommand(sector_cmd))
            return run_sector(sector_photons, sector_bins, sector_symbols,
                              single_kappa(sector_kappa), sector_opts, out);
        if (app.got_subcommand(sweep_cmd))
            return run_sectors_sweep(sweep_bins, sweep_symbols,
                                     build_kappa_grid(sweep_kappa, KappaDefault::kFigureGrid),
                                     sweep_n_max, sweep_opts, out);
        if (app.got_subcommand(holevo_cmd))
            return run_holevo(holevo_bins, holevo_symbols,
                              build_kappa_grid(holevo_kappa, KappaDefault::kFigureGrid),
                              build_nbar_grid(holevo_nbar),
                              holevo_n_max >= 0 ? std::optional<int>(holevo_n_max) : std::nullopt,
                              holevo_opts, out);
        if (app.got_subcommand(base_cmd))
            return run_baselines(build_nbar_grid(base_nbar), base_opts, out);
        if (app.got_subcommand(split_cmd))
            return run_splitting(split_bins, split_symbols,
                                 build_kappa_grid(split_kappa, KappaDefault::kFigureGrid),
                                 split_opts, out);
        if (app.got_subcommand(szego_cmd))
            return run_szego(build_kappa_grid(szego_kappa, KappaDefault::kLogOnly), szego_tol,
                             szego_opts, out);
        if (app.got_subcommand(conj_cmd))
            return run_conjecture(conj_bins, conj_symbols,
                                  build_kappa_grid(conj_kappa, KappaDefault::kFigureGrid),
                                  conj_n_max, conj_opts, out);
        if (app.got_subcommand(kernel_cmd))
            return run_kernel(single_kappa(kernel_kappa), kernel_points, kernel_tol, kernel_opts,
                              out);
        err << "error: no subcommand selected\n";
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_command_impl(args, out, err);
    } catch (const std::invalid_argument& e) {
        // Setup-time failures, e.g. malformed environment overrides.
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace holevo
