// Command-line driver: profile generation, field evaluation, decomposition,
// norms, polytope membership, polynomial partitioning, decoupling batteries,
// R-sweeps and power-law fits.

#include <CLI11.hpp>
#include <json.hpp>

#include "wpl/decoupling.hpp"
#include "wpl/exponents.hpp"
#include "wpl/extension.hpp"
#include "wpl/harness.hpp"
#include "wpl/io.hpp"
#include "wpl/norms.hpp"
#include "wpl/profiles.hpp"
#include "wpl/rng.hpp"
#include "wpl/wavepacket.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("WPL_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

struct GlobalConfig {
    double eps_drop = 1e-8;
    double c_star = 16.0;
    Eigen::Index points_cap = (Eigen::Index{1} << 26);
    unsigned threads = 1;
};

GlobalConfig load_config(const std::string& path) {
    GlobalConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    json doc;
    is >> doc;
    cfg.eps_drop = doc.value("eps_drop", cfg.eps_drop);
    cfg.c_star = doc.value("c_star", cfg.c_star);
    cfg.points_cap = doc.value("points_cap", cfg.points_cap);
    cfg.threads = doc.value("threads", cfg.threads);
    return cfg;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto slash = item.find('/');
        if (slash != std::string::npos)
            out.push_back(std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1)));
        else
            out.push_back(std::stod(item));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wave packet laboratory"};
    app.require_subcommand(1);
    app.fallthrough(true);  // global flags may follow the subcommand

    std::string config_path, out_path;
    std::uint64_t seed = default_seed();
    unsigned threads = 1;
    app.add_option("--config", config_path, "global JSON config");
    app.add_option("--seed", seed, "master RNG seed (env WPL_SEED)");
    app.add_option("--out", out_path, "output path");
    app.add_option("--threads", threads, "worker threads");

    // example
    auto* cmd_example = app.add_subcommand("example", "generate a profile family");
    std::string family = "f0";
    double exR = 1024.0, exU = 0.01;
    int exN = 4;
    cmd_example->add_option("--family", family, "f0|f1|many|bundle|star")->required();
    cmd_example->add_option("--R", exR, "scale R");
    cmd_example->add_option("--N", exN, "bundle/star N");
    cmd_example->add_option("--U", exU, "many U");

    // extend
    auto* cmd_extend = app.add_subcommand("extend", "evaluate Ef on a grid");
    std::string profile_path;
    double gR = 256.0;
    Eigen::Index gnx = 512, gnt = 256;
    double gxr = 0.0, gtr = 0.0;
    cmd_extend->add_option("--profile", profile_path, "profile JSON")->required();
    cmd_extend->add_option("--R", gR, "ball radius");
    cmd_extend->add_option("--nx", gnx, "x samples");
    cmd_extend->add_option("--nt", gnt, "t samples");
    cmd_extend->add_option("--xr", gxr, "x half-range (default R)");
    cmd_extend->add_option("--tr", gtr, "t half-range (default R)");

    // decompose
    auto* cmd_decomp = app.add_subcommand("decompose", "wave packet decomposition");
    std::string dprofile;
    double dR = 256.0;
    cmd_decomp->add_option("--profile", dprofile, "profile JSON")->required();
    cmd_decomp->add_option("--R", dR, "scale R")->required();

    // norm
    auto* cmd_norm = app.add_subcommand("norm", "L^p norm of a field over B_R");
    std::string field_path;
    double np = 2.0, nR = 0.0;
    cmd_norm->add_option("--field", field_path, ".fld file")->required();
    cmd_norm->add_option("--p", np, "exponent")->required();
    cmd_norm->add_option("--R", nR, "ball radius (default header R)");

    // polytope
    auto* cmd_poly = app.add_subcommand("polytope", "exponent polytope membership");
    std::string pp = "4", pa = "0", pb = "0";
    cmd_poly->add_option("--p", pp, "p (fraction allowed)")->required();
    cmd_poly->add_option("--alpha", pa, "alpha")->required();
    cmd_poly->add_option("--beta", pb, "beta")->required();

    // partition
    auto* cmd_part = app.add_subcommand("partition", "polynomial partition of weighted points");
    std::string points_path;
    int partD = 2;
    cmd_part->add_option("--points", points_path, "points.csv with x,t,w")->required();
    cmd_part->add_option("--D", partD, "degree budget")->required();

    // decouple
    auto* cmd_dec = app.add_subcommand("decouple", "decoupling ratio battery");
    std::string delta_list = "1/16,1/64";
    int trials = 20;
    cmd_dec->add_option("--delta-list", delta_list, "comma list, fractions allowed");
    cmd_dec->add_option("--trials", trials, "trials per delta");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "R-sweep of a family against a claimed point");
    std::string sfamily = "bundle", sR_list = "256,1024,4096", sclaimed = "4,1/8,1/4",
                sN_rule = "sqrtR";
    double sp = 4.0;
    bool svg = false;
    cmd_sweep->add_option("--family", sfamily, "f0|f1|many|bundle|star");
    cmd_sweep->add_option("--p", sp, "Lebesgue exponent");
    cmd_sweep->add_option("--R-list", sR_list, "ascending comma list");
    cmd_sweep->add_option("--claimed", sclaimed, "p,alpha,beta (fractions allowed)");
    cmd_sweep->add_option("--N-rule", sN_rule, "sqrtR or an integer");
    cmd_sweep->add_flag("--svg", svg, "emit log-log plot next to the CSV");

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "power-law fit of CSV columns");
    std::string fit_csv, xcol = "R", ycol = "ratio";
    bool loglog = true;
    cmd_fit->add_option("--csv", fit_csv, "input CSV")->required();
    cmd_fit->add_option("--xcol", xcol, "x column name");
    cmd_fit->add_option("--ycol", ycol, "y column name");
    cmd_fit->add_flag("--log-log,!--linear", loglog, "fit in log-log coordinates");

    CLI11_PARSE(app, argc, argv);

    try {
        const GlobalConfig cfg = load_config(config_path);

        if (*cmd_example) {
            wpl::FrequencyProfile f;
            if (family == "f0") f = wpl::make_f0();
            else if (family == "f1") f = wpl::make_f1(exR);
            else if (family == "many") f = wpl::make_many(exU);
            else if (family == "bundle") f = wpl::make_bundle(exR, exN);
            else if (family == "star") f = wpl::make_star(exR, exN);
            else throw std::runtime_error("unknown family " + family);
            const std::string path = out_path.empty() ? family + ".json" : out_path;
            wpl::write_profile(f, path);
            std::cout << json{{"label", f.label}, {"M", f.samples.size()}, {"out", path}}.dump()
                      << '\n';
        } else if (*cmd_extend) {
            const wpl::FrequencyProfile f = wpl::read_profile(profile_path);
            const wpl::SpaceTimeGrid grid = wpl::make_grid(gR, gnx, gnt, gxr, gtr);
            const wpl::SpaceTimeField field = wpl::evaluate_field(f, grid, cfg.points_cap, threads);
            const std::string path = out_path.empty() ? "field.fld" : out_path;
            wpl::write_field(field, path);
            std::cout << json{{"nx", grid.nx}, {"nt", grid.nt}, {"out", path}}.dump() << '\n';
        } else if (*cmd_decomp) {
            const wpl::FrequencyProfile f = wpl::read_profile(dprofile);
            wpl::DecomposeOptions opts;
            opts.eps_drop = cfg.eps_drop;
            opts.c_star = cfg.c_star;
            opts.threads = threads;
            const wpl::Decomposition d = wpl::decompose(f, dR, opts);
            const std::string path = out_path.empty() ? "decomposition.json" : out_path;
            wpl::write_decomposition(d, path);
            std::cout << json{{"R", d.R},
                              {"S", d.S},
                              {"packets", d.packet_count()},
                              {"reconstruction_error", d.reconstruction_error},
                              {"out", path}}
                             .dump()
                      << '\n';
        } else if (*cmd_norm) {
            const wpl::SpaceTimeField field = wpl::read_field(field_path);
            const double R = nR > 0.0 ? nR : field.grid.R;
            const double value = wpl::lp_norm_ball(field, np, R);
            std::cout << json{{"p", np}, {"R", R}, {"value", value}}.dump() << '\n';
        } else if (*cmd_poly) {
            const wpl::ExponentPoint pt = wpl::make_point(
                wpl::parse_fraction(pp), wpl::parse_fraction(pa), wpl::parse_fraction(pb));
            json doc;
            doc["sufficient"] = wpl::satisfies_sufficient(pt);
            doc["necessary"] = wpl::satisfies_necessary(pt);
            doc["tight_constraints"] = wpl::tight_constraints(pt);
            std::cout << doc.dump() << '\n';
        } else if (*cmd_part) {
            const wpl::WeightedPoints pts = wpl::read_points_csv(points_path);
            wpl::PartitionOptions popts;
            popts.seed = seed;
            const wpl::PartitionResult res = wpl::build_partition(pts, partD, popts);
            json doc;
            doc["product_degree"] = res.product_degree;
            doc["imbalance"] = res.imbalance;
            doc["boundary_weight"] = res.boundary_weight;
            doc["cell_weights"] = res.cell_weights;
            json bis = json::array();
            for (const auto& b : res.bisectors) {
                std::vector<double> c(b.coeffs.data(), b.coeffs.data() + b.coeffs.size());
                bis.push_back({{"degree", b.degree},
                               {"coeffs", c},
                               {"center", {b.cx, b.ct}},
                               {"scale", b.s}});
            }
            doc["bisectors"] = std::move(bis);
            const std::string path = out_path.empty() ? "partition.json" : out_path;
            std::ofstream os(path);
            os << doc.dump(2);
            std::cout << json{{"imbalance", res.imbalance}, {"out", path}}.dump() << '\n';
        } else if (*cmd_dec) {
            const std::vector<double> deltas = parse_list(delta_list);
            std::ostringstream csv;
            csv << "delta,trial,ratio\n";
            csv.precision(17);
            for (std::size_t di = 0; di < deltas.size(); ++di) {
                for (int tr = 0; tr < trials; ++tr) {
                    const auto s = wpl::substream_seed(seed, di * 1000003ULL +
                                                                static_cast<std::uint64_t>(tr));
                    const double r =
                        wpl::decoupling_ratio(wpl::synthesize_ensemble(deltas[di], s));
                    csv << deltas[di] << ',' << tr << ',' << r << '\n';
                }
            }
            const std::string path = out_path.empty() ? "decoupling.csv" : out_path;
            wpl::write_text(csv.str(), path);
            std::cout << json{{"deltas", deltas.size()}, {"trials", trials}, {"out", path}}.dump()
                      << '\n';
        } else if (*cmd_sweep) {
            wpl::SweepConfig sc;
            sc.family = wpl::family_from_name(sfamily);
            sc.p = sp;
            sc.R_list = parse_list(sR_list);
            const auto claimed = parse_list(sclaimed);
            if (claimed.size() != 3) throw std::runtime_error("--claimed needs p,alpha,beta");
            sc.claimed = wpl::make_point(claimed[0], claimed[1], claimed[2]);
            if (sN_rule == "sqrtR") sc.n_rule = wpl::NRule{true, 1};
            else sc.n_rule = wpl::NRule{false, std::stoi(sN_rule)};
            sc.seed = seed;
            sc.threads = threads;
            const wpl::SweepReport report = wpl::run_sweep(sc);
            const std::string path = out_path.empty() ? "sweep.csv" : out_path;
            wpl::write_text(wpl::sweep_csv(report), path);
            if (svg) wpl::write_text(wpl::sweep_svg(report), path + ".svg");
            std::cout << json{{"lp_slope", report.lp_fit.slope},
                              {"ratio_slope", report.ratio_fit.slope},
                              {"out", path}}
                             .dump()
                      << '\n';
        } else if (*cmd_fit) {
            std::ifstream is(fit_csv);
            if (!is) throw std::runtime_error("cannot open " + fit_csv);
            std::string header;
            std::getline(is, header);
            std::vector<std::string> cols;
            {
                std::stringstream hs(header);
                std::string c;
                while (std::getline(hs, c, ',')) cols.push_back(c);
            }
            const auto xi = std::find(cols.begin(), cols.end(), xcol) - cols.begin();
            const auto yi = std::find(cols.begin(), cols.end(), ycol) - cols.begin();
            if (xi == static_cast<long>(cols.size()) || yi == static_cast<long>(cols.size()))
                throw std::runtime_error("column not found in CSV header");
            std::vector<std::pair<double, double>> pairs;
            std::string line;
            while (std::getline(is, line)) {
                if (line.empty()) continue;
                std::stringstream ls(line);
                std::string cell;
                std::vector<std::string> cells;
                while (std::getline(ls, cell, ',')) cells.push_back(cell);
                pairs.emplace_back(std::stod(cells.at(static_cast<std::size_t>(xi))),
                                   std::stod(cells.at(static_cast<std::size_t>(yi))));
            }
            const wpl::PowerLawFit fit = wpl::fit_power_law(pairs, loglog);
            std::cout << json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}}
                             .dump()
                      << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
