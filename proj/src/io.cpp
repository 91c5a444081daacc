#include "wpl/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wpl {

using nlohmann::json;

void write_field(const SpaceTimeField& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    json header = {
        {"R", field.grid.R},
        {"nx", field.grid.nx},
        {"nt", field.grid.nt},
        {"x_range", {-field.grid.x_half, field.grid.x_half}},
        {"t_range", {-field.grid.t_half, field.grid.t_half}},
    };
    os << header.dump() << '\n';
    for (Eigen::Index ix = 0; ix < field.grid.nx; ++ix) {
        for (Eigen::Index it = 0; it < field.grid.nt; ++it) {
            const double re = field.values(ix, it).real();
            const double im = field.values(ix, it).imag();
            os.write(reinterpret_cast<const char*>(&re), sizeof(double));
            os.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
    }
    if (!os) throw std::runtime_error("write_field: write failed for " + path);
}

SpaceTimeField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    std::string line;
    std::getline(is, line);
    const json header = json::parse(line);
    const double R = header.at("R").get<double>();
    const Eigen::Index nx = header.at("nx").get<Eigen::Index>();
    const Eigen::Index nt = header.at("nt").get<Eigen::Index>();
    const double xh = header.at("x_range")[1].get<double>();
    const double th = header.at("t_range")[1].get<double>();
    SpaceTimeGrid grid = make_grid(R, nx, nt, xh, th);
    Eigen::MatrixXcd values(nx, nt);
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
        for (Eigen::Index it = 0; it < nt; ++it) {
            double re, im;
            is.read(reinterpret_cast<char*>(&re), sizeof(double));
            is.read(reinterpret_cast<char*>(&im), sizeof(double));
            values(ix, it) = Complex(re, im);
        }
    }
    if (!is) throw std::runtime_error("read_field: truncated data in " + path);
    return make_field(grid, values);
}

void write_profile(const FrequencyProfile& profile, const std::string& path) {
    json doc;
    doc["label"] = profile.label;
    doc["M"] = profile.samples.size();
    doc["omega_min"] = profile.omega_min;
    doc["omega_max"] = profile.omega_max;
    std::vector<double> flat;
    flat.reserve(2 * static_cast<std::size_t>(profile.samples.size()));
    for (Eigen::Index j = 0; j < profile.samples.size(); ++j) {
        flat.push_back(profile.samples[j].real());
        flat.push_back(profile.samples[j].imag());
    }
    doc["samples"] = flat;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_profile: cannot open " + path);
    os << doc.dump();
}

FrequencyProfile read_profile(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_profile: cannot open " + path);
    json doc;
    is >> doc;
    const auto& flat = doc.at("samples");
    Eigen::VectorXcd samples(flat.size() / 2);
    for (Eigen::Index j = 0; j < samples.size(); ++j)
        samples[j] = Complex(flat[2 * j].get<double>(), flat[2 * j + 1].get<double>());
    const double lo = doc.value("omega_min", -1.0);
    const double hi = doc.value("omega_max", 1.0);
    if (lo == -1.0 && hi == 1.0) return make_profile(samples, doc.value("label", ""));
    return make_profile_on(lo, hi, samples, doc.value("label", ""));
}

void write_decomposition(const Decomposition& d, const std::string& path) {
    json doc;
    doc["R"] = d.R;
    doc["f_l2"] = d.f_l2;
    doc["S"] = d.S;
    doc["M"] = d.M;
    doc["equivalence_constant"] = d.equivalence_constant;
    doc["reconstruction_error"] = d.reconstruction_error;
    json packets = json::array();
    const double a = d.theta_spacing();
    for (const PacketInfo& p : d.packets()) {
        packets.push_back({
            {"theta", p.theta},
            {"v", p.v},
            {"c_re", p.c.real()},
            {"c_im", p.c.imag()},
            {"support", {p.theta - 3.0 * a, p.theta + 3.0 * a}},
        });
    }
    doc["packets"] = std::move(packets);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_decomposition: cannot open " + path);
    os << doc.dump();
}

WeightedPoints read_points_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_points_csv: cannot open " + path);
    std::vector<WeightedPoint> pts;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c, ','))
            throw std::runtime_error("read_points_csv: expected x,t,w columns");
        if (a == "x") continue;  // header
        pts.push_back({std::stod(a), std::stod(b), std::stod(c)});
    }
    return make_weighted_points(std::move(pts));
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_text: cannot open " + path);
    os << text;
}

std::string sweep_svg(const SweepReport& report) {
    // log-log scatter of the claimed-point ratio vs R with the fitted line
    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& r : report.rows)
        if (r.error.empty() && r.ratio > 0.0) pts.emplace_back(std::log10(r.R), std::log10(r.ratio));
    std::ostringstream os;
    const int w = 480, h = 360, margin = 48;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    if (pts.size() >= 2) {
        double xlo = pts[0].first, xhi = xlo, ylo = pts[0].second, yhi = ylo;
        for (auto& [x, y] : pts) {
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
        if (yhi - ylo < 0.2) {
            const double mid = 0.5 * (ylo + yhi);
            ylo = mid - 0.1;
            yhi = mid + 0.1;
        }
        auto sx = [&](double x) { return margin + (x - xlo) / (xhi - xlo) * (w - 2 * margin); };
        auto sy = [&](double y) { return h - margin - (y - ylo) / (yhi - ylo) * (h - 2 * margin); };
        // fitted line (fit is in natural logs; convert to log10 space)
        const double s = report.ratio_fit.slope;
        const double b = report.ratio_fit.intercept / std::log(10.0);
        os << "<line x1='" << sx(xlo) << "' y1='" << sy(s * xlo + b) << "' x2='" << sx(xhi)
           << "' y2='" << sy(s * xhi + b) << "' stroke='steelblue' stroke-width='1.5'/>\n";
        for (auto& [x, y] : pts)
            os << "<circle cx='" << sx(x) << "' cy='" << sy(y) << "' r='4' fill='crimson'/>\n";
        os << "<text x='" << margin << "' y='" << margin / 2
           << "' font-family='monospace' font-size='12'>log10(ratio) vs log10(R), slope="
           << report.ratio_fit.slope << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace wpl
