#include "entpdf/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace entpdf {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

namespace {

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << text;
}

}  // namespace

DensityMatrix read_state_file(const std::filesystem::path& path) {
    json j = load_json(path);
    if (!j.contains("rho")) throw ParseError("state file lacks \"rho\"");
    const json& rows = j["rho"];
    if (!rows.is_array() || rows.size() != 4)
        throw ParseError("\"rho\" must be a 4x4 array");
    Matrix4 m;
    for (int r = 0; r < 4; ++r) {
        if (!rows[r].is_array() || rows[r].size() != 4)
            throw ParseError("\"rho\" must be a 4x4 array");
        for (int c = 0; c < 4; ++c) {
            const json& cell = rows[r][c];
            if (!cell.is_array() || cell.size() != 2)
                throw ParseError("matrix entries must be [re, im] pairs");
            m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return DensityMatrix(m);
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
    std::ostringstream os;
    os << "{\n  \"rho\": [\n";
    for (int r = 0; r < 4; ++r) {
        os << "    [";
        for (int c = 0; c < 4; ++c) {
            os << "[" << format_double(rho.mat()(r, c).real()) << ", "
               << format_double(rho.mat()(r, c).imag()) << "]";
            if (c < 3) os << ", ";
        }
        os << "]" << (r < 3 ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    write_text(path, os.str());
}

std::string marker_json(const MarkerSet& m) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"mu\": [" << format_double(m.mu.mu(0)) << ", " << format_double(m.mu.mu(1))
       << ", " << format_double(m.mu.mu(2)) << ", " << format_double(m.mu.mu(3)) << "]";
    if (m.e1) os << ",\n  \"e1\": " << format_double(*m.e1);
    if (m.pi2) {
        os << ",\n  \"e_cusp\": " << format_double(m.pi2->e_cusp);
        os << ",\n  \"e_max\": " << format_double(m.pi2->e_max);
    }
    if (m.e_perp) os << ",\n  \"e_perp\": " << format_double(*m.e_perp);
    if (m.angles || m.angles_perp) {
        os << ",\n  \"angles\": {";
        bool first = true;
        auto field = [&](const char* name, double v) {
            if (!first) os << ", ";
            os << "\"" << name << "\": " << format_double(v);
            first = false;
        };
        if (m.angles) {
            field("theta", m.angles->theta);
            field("phi", m.angles->phi);
        }
        if (m.angles_perp) {
            field("theta_perp", m.angles_perp->theta);
            field("phi_perp", m.angles_perp->phi);
        }
        os << "}";
    }
    os << "\n}\n";
    return os.str();
}

void write_marker_file(const std::filesystem::path& path, const MarkerSet& markers) {
    write_text(path, marker_json(markers));
}

MarkerSet read_marker_file(const std::filesystem::path& path) {
    json j = load_json(path);
    if (!j.contains("mu") || !j["mu"].is_array() || j["mu"].size() != 4)
        throw ParseError("marker file needs a 4-element \"mu\"");
    MarkerSet m;
    for (int i = 0; i < 4; ++i) m.mu.mu(i) = j["mu"][i].get<double>();
    double lambda1 =
        1.0 / (m.mu.mu(0) + 2.0 * m.mu.mu(1) + 3.0 * m.mu.mu(2) + 4.0 * m.mu.mu(3));
    m.mu.lambda_diffs = m.mu.mu * lambda1;

    if (j.contains("e1")) m.e1 = j["e1"].get<double>();
    if (j.contains("e_max") != j.contains("e_cusp"))
        throw ParseError("e_max and e_cusp must appear together");
    if (j.contains("e_max")) {
        Pi2Markers p;
        p.e_max = j["e_max"].get<double>();
        p.e_cusp = j["e_cusp"].get<double>();
        if (p.e_max >= 1e-12) {
            CanonicalTriple t = invert_pi2(p.e_max, p.e_cusp);
            p = pi2_markers(t.x, t.y);
            p.e_max = j["e_max"].get<double>();
            p.e_cusp = j["e_cusp"].get<double>();
        } else {
            p.p_at_emax = std::numeric_limits<double>::infinity();
        }
        m.pi2 = p;
    }
    if (j.contains("e_perp")) m.e_perp = j["e_perp"].get<double>();
    if (j.contains("angles")) {
        const json& a = j["angles"];
        if (a.contains("theta") != a.contains("phi"))
            throw ParseError("theta and phi must appear together");
        if (a.contains("theta"))
            m.angles = BlochAngles{a["theta"].get<double>(), a["phi"].get<double>()};
        if (a.contains("theta_perp") != a.contains("phi_perp"))
            throw ParseError("theta_perp and phi_perp must appear together");
        if (a.contains("theta_perp"))
            m.angles_perp =
                BlochAngles{a["theta_perp"].get<double>(), a["phi_perp"].get<double>()};
    }
    return m;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    os << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << format_double(row[i]);
        }
        os << "\n";
    }
    write_text(path, os.str());
}

}  // namespace entpdf
