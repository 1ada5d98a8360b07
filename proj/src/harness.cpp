#include "prodcauchy/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "prodcauchy/kernel.hpp"
#include "prodcauchy/mcsim.hpp"
#include "prodcauchy/quadrature.hpp"
#include "prodcauchy/weight.hpp"

namespace prodcauchy::harness {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                ok = true;
                break;
            }
        if (!ok)
            throw std::domain_error("config: unknown key '" + it.key() + "' in " + where);
    }
}

std::vector<double> grid_radii(const GridSpec& grid) {
    std::vector<double> r(grid.points);
    for (int i = 0; i < grid.points; ++i)
        r[i] = grid.r_min + (grid.r_max - grid.r_min) * i / (grid.points - 1.0);
    return r;
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::domain_error(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::domain_error("config: top level must be an object");
    reject_unknown_keys(j, {"n", "dims", "grid", "contour", "mc", "tolerances", "out_dir"},
                        "top level");

    RunConfig cfg;
    if (j.contains("dims")) {
        std::vector<int> dims = j.at("dims").get<std::vector<int>>();
        cfg.ensemble = EnsembleConfig(std::move(dims));
    } else if (j.contains("n")) {
        throw std::domain_error("config: 'n' given without 'dims'");
    }
    if (j.contains("n")) {
        const int n = j.at("n").get<int>();
        if (n != cfg.ensemble.n())
            throw std::domain_error("config: 'n' inconsistent with 'dims' (expect n = dims-1)");
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        reject_unknown_keys(g, {"r_min", "r_max", "points"}, "grid");
        if (g.contains("r_min")) cfg.grid.r_min = g.at("r_min").get<double>();
        if (g.contains("r_max")) cfg.grid.r_max = g.at("r_max").get<double>();
        if (g.contains("points")) cfg.grid.points = g.at("points").get<int>();
        if (!(cfg.grid.r_min >= 0.0)) throw std::domain_error("config: grid.r_min must be >= 0");
        if (!(cfg.grid.r_max > cfg.grid.r_min))
            throw std::domain_error("config: grid.r_max must exceed grid.r_min");
        if (cfg.grid.points < 2) throw std::domain_error("config: grid.points must be >= 2");
    }
    if (j.contains("contour")) {
        const json& c = j.at("contour");
        reject_unknown_keys(c, {"abscissa", "half_extent", "node_count"}, "contour");
        if (c.contains("abscissa")) cfg.contour.abscissa = c.at("abscissa").get<double>();
        if (c.contains("half_extent")) {
            cfg.contour.half_extent = c.at("half_extent").get<double>();
            if (!(*cfg.contour.half_extent > 0.0))
                throw std::domain_error("config: contour.half_extent must be positive");
        }
        if (c.contains("node_count")) {
            cfg.contour.node_count = c.at("node_count").get<int>();
            if (*cfg.contour.node_count < 16)
                throw std::domain_error("config: contour.node_count must be >= 16");
        }
    }
    if (j.contains("mc")) {
        const json& m = j.at("mc");
        reject_unknown_keys(m, {"seed", "matrices"}, "mc");
        if (m.contains("seed")) cfg.mc.seed = m.at("seed").get<std::uint64_t>();
        if (m.contains("matrices")) {
            cfg.mc.matrices = m.at("matrices").get<int>();
            if (cfg.mc.matrices < 1) throw std::domain_error("config: mc.matrices must be >= 1");
        }
    }
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw std::domain_error("config: tolerances must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            const double v = it.value().get<double>();
            if (!(v > 0.0)) throw std::domain_error("config: tolerances must be positive");
            cfg.tolerances[it.key()] = v;
        }
    }
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["n"] = cfg.ensemble.n();
    j["dims"] = cfg.ensemble.dims();
    j["grid"] = {{"r_min", cfg.grid.r_min}, {"r_max", cfg.grid.r_max}, {"points", cfg.grid.points}};
    json c = json::object();
    if (cfg.contour.abscissa) c["abscissa"] = *cfg.contour.abscissa;
    if (cfg.contour.half_extent) c["half_extent"] = *cfg.contour.half_extent;
    if (cfg.contour.node_count) c["node_count"] = *cfg.contour.node_count;
    if (!c.empty()) j["contour"] = c;
    j["mc"] = {{"seed", cfg.mc.seed}, {"matrices", cfg.mc.matrices}};
    if (!cfg.tolerances.empty()) j["tolerances"] = cfg.tolerances;
    j["out_dir"] = cfg.out_dir;
    return j.dump(2);
}

VerificationReport make_report(std::string check_id, double computed, double reference,
                               double tolerance, std::string provenance) {
    VerificationReport r;
    r.check_id = std::move(check_id);
    r.computed = computed;
    r.reference = reference;
    r.tolerance = tolerance;
    r.provenance = std::move(provenance);
    r.pass = std::isfinite(computed) &&
             std::abs(computed - reference) <= tolerance * std::max(1.0, std::abs(reference));
    return r;
}

std::string report_to_json(const VerificationReport& report) {
    json j;
    j["check_id"] = report.check_id;
    j["computed"] = report.computed;
    j["reference"] = report.reference;
    j["tolerance"] = report.tolerance;
    j["verdict"] = report.pass ? "pass" : "fail";
    j["provenance"] = report.provenance;
    return j.dump();
}

Suite suite_from_string(const std::string& name) {
    if (name == "weights") return Suite::weights;
    if (name == "kernels") return Suite::kernels;
    if (name == "limits") return Suite::limits;
    if (name == "mc") return Suite::mc;
    if (name == "all") return Suite::all;
    throw std::domain_error("unknown suite '" + name + "'");
}

void cmd_weight(const RunConfig& cfg, const std::string& method, std::ostream& csv) {
    const auto radii = grid_radii(cfg.grid);
    const EnsembleConfig& ens = cfg.ensemble;
    auto eval = [&](double r) -> double {
        const std::complex<double> z(r, 0.0);
        if (method == "closed") {
            if (ens.n() != 1) throw std::domain_error("weight closed: requires n = 1");
            return weight::weight_closed_n1(z, ens.matrix_size());
        }
        if (method == "meijer") {
            const double u = r * r;
            if (u == 0.0) return weight::weight_meijer(z, ens);
            auto spec = weight::meijer_weight_spec(ens);
            auto contour = specfun::default_contour(spec, u);
            if (cfg.contour.abscissa) contour.abscissa = *cfg.contour.abscissa;
            if (cfg.contour.half_extent) contour.half_extent = *cfg.contour.half_extent;
            if (cfg.contour.node_count) contour.node_count = *cfg.contour.node_count;
            return weight::weight_meijer(z, ens, contour);
        }
        if (method == "quad") return weight::weight_quadrature(z, ens);
        if (method == "saddle") return weight::weight_saddle_asymptotic(z, ens);
        if (method == "origin") return weight::weight_origin_limit(z, ens);
        throw std::domain_error("unknown weight method '" + method + "'");
    };
    csv << "r,value\n";
    for (double r : radii) csv << fmt17(r) << ',' << fmt17(eval(r)) << '\n';
}

void cmd_density(const RunConfig& cfg, const std::string& kind, std::ostream& csv,
                 std::ostream& meta) {
    const auto radii = grid_radii(cfg.grid);
    const EnsembleConfig& ens = cfg.ensemble;
    json j;
    RadialProfile prof;
    prof.kind = RadialProfile::Kind::density;
    if (kind == "finite") {
        kernel::FiniteDensity rho(ens);
        for (double r : radii) {
            prof.radii.push_back(r);
            prof.values.push_back(rho(std::complex<double>(r, 0.0)));
        }
        j["normalization"] = rho.normalization();
        j["raw_mass"] = rho.raw_mass();
    } else if (kind == "macroscopic") {
        for (double r : radii) {
            prof.radii.push_back(r);
            prof.values.push_back(kernel::density_macroscopic(std::complex<double>(r, 0.0), ens.n()));
        }
    } else {
        throw std::domain_error("unknown density kind '" + kind + "'");
    }
    csv << "r,value\n";
    for (std::size_t i = 0; i < prof.radii.size(); ++i)
        csv << fmt17(prof.radii[i]) << ',' << fmt17(prof.values[i]) << '\n';
    // grid mass diagnostic (trapezoid on the emitted grid, extended to r=0)
    RadialProfile padded = prof;
    if (padded.radii.front() > 0.0) {
        padded.radii.insert(padded.radii.begin(), 0.0);
        padded.values.insert(padded.values.begin(),
                             std::isfinite(prof.values.front()) ? prof.values.front() : 0.0);
    }
    const RadialProfile cdf = radial_cdf(padded);
    j["grid_mass"] = cdf.values.back();
    j["kind"] = kind;
    meta << j.dump(2) << '\n';
}

void cmd_kernel(const RunConfig& cfg, const std::string& mode, std::istream& points,
                std::ostream& csv) {
    const EnsembleConfig& ens = cfg.ensemble;
    csv << "zi_re,zi_im,zj_re,zj_im,K_re,K_im\n";
    std::string line;
    bool any = false;
    while (std::getline(points, line)) {
        if (line.empty()) continue;
        if (std::isalpha(static_cast<unsigned char>(line[0]))) continue;  // header row
        std::istringstream ls(line);
        double v[4];
        char comma;
        ls >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3];
        if (!ls) throw std::domain_error("kernel points: bad row '" + line + "'");
        const std::complex<double> zi(v[0], v[1]), zj(v[2], v[3]);
        std::complex<double> k;
        if (mode == "finite")
            k = kernel::kernel_finite(zi, zj, ens).value;
        else if (mode == "bulk")
            k = kernel::kernel_bulk_limit(zi, zj, ens);
        else if (mode == "origin")
            k = kernel::kernel_origin_limit(zi, zj, ens);
        else if (mode == "bessel") {
            if (ens.n() != 2) throw std::domain_error("kernel bessel: requires n = 2");
            k = kernel::kernel_origin_bessel_n2(zi, zj, ens.nu()[1]);
        } else
            throw std::domain_error("unknown kernel mode '" + mode + "'");
        csv << fmt17(v[0]) << ',' << fmt17(v[1]) << ',' << fmt17(v[2]) << ',' << fmt17(v[3])
            << ',' << fmt17(k.real()) << ',' << fmt17(k.imag()) << '\n';
        any = true;
    }
    if (!any) throw std::domain_error("kernel points: no point pairs supplied");
}

void cmd_sample(const RunConfig& cfg, int threads, std::ostream& csv, std::ostream& meta,
                std::ostream& summary) {
    const EnsembleConfig& ens = cfg.ensemble;
    if (!ens.is_square())
        throw std::domain_error("sample: square ensembles only (nu_i = 0)");
    const auto batch = mcsim::product_eigenvalues(ens, cfg.mc.matrices, cfg.mc.seed, threads);
    mcsim::write_batch_csv(batch, csv);
    mcsim::write_batch_meta(batch, meta);
    summary << "phase_uniformity_ks=" << fmt17(mcsim::phase_uniformity_ks(batch)) << '\n';
    if (ens.n() == 1) {
        const double ks = mcsim::ks_statistic(
            batch, [](double r) { return r * r / (1.0 + r * r); });
        summary << "radial_ks_vs_analytic=" << fmt17(ks) << '\n';
    }
}

bool cmd_verify(const RunConfig& cfg, Suite suite, int threads, std::ostream& jsonl) {
    const auto reports = run_verification(cfg, suite, threads);
    bool all_pass = true;
    for (const auto& r : reports) {
        jsonl << report_to_json(r) << '\n';
        all_pass = all_pass && r.pass;
    }
    return all_pass;
}

}  // namespace prodcauchy::harness
