#include "wtopo/io.hpp"

#include "wtopo/errors.hpp"
#include "wtopo/format.hpp"

#include <json.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

namespace wtopo {

using ordered_json = nlohmann::ordered_json;

void write_distance_csv(std::ostream& out, const DistanceMatrix& dm) {
    out << "source";
    for (std::size_t v = 0; v < dm.num_nodes(); ++v) out << ',' << v;
    out << '\n';
    for (std::size_t r = 0; r < dm.num_sources(); ++r) {
        out << dm.sources()[r];
        for (double d : dm.row(r)) out << ',' << format_real(d);
        out << '\n';
    }
}

std::string landmarks_to_json(const LandmarkSet& ls) {
    ordered_json j;
    j["fraction"] = ls.fraction;
    j["landmarks"] = ls.landmarks;
    return j.dump();
}

std::string cover_to_json(const Cover& cover) {
    ordered_json j;
    j["landmarks"] = cover.landmarks;
    ordered_json cells = ordered_json::object();
    ordered_json local = ordered_json::object();
    std::vector<NodeId> self_covered;
    for (const auto& cell : cover.cells) {
        const auto key = std::to_string(cell.landmark);
        cells[key] = cell.members;
        local[key] = cell.local_landmarks;
        if (cell.self_covered) self_covered.push_back(cell.landmark);
    }
    j["cells"] = std::move(cells);
    j["local_landmarks"] = std::move(local);
    j["self_covered"] = self_covered;
    j["epsilon_pairwise"] = cover.epsilon_pairwise;
    j["cover_radius"] = cover.cover_radius;
    j["c_epsilon"] = cover.c_epsilon;
    return j.dump();
}

void write_filtration_jsonl(std::ostream& out, const Filtration& f) {
    for (const auto& s : f.simplices) {
        ordered_json j;
        j["vertices"] = s.vertices;
        j["scale"] = s.scale;
        out << j.dump() << '\n';
    }
}

std::string diagram_to_json(const PersistenceDiagram& d, int max_dim) {
    ordered_json arr = ordered_json::array();
    for (int k = 0; k <= max_dim; ++k) {
        ordered_json j;
        j["dim"] = k;
        ordered_json pts = ordered_json::array();
        for (const auto& p : d.finite(k)) pts.push_back({p.birth, p.death});
        j["points"] = std::move(pts);
        j["essential"] = d.essential_births(k);
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

namespace {

void append_dimension(const nlohmann::json& j, std::vector<DiagramPoint>& points) {
    if (!j.is_object() || !j.contains("dim")) throw ParseError(1, "diagram object needs a \"dim\" field");
    const int dim = j.at("dim").get<int>();
    if (j.contains("points")) {
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2) throw ParseError(1, "diagram points must be [birth, death] pairs");
            points.push_back({p[0].get<double>(), p[1].get<double>(), dim});
        }
    }
    if (j.contains("essential")) {
        for (const auto& b : j.at("essential")) points.push_back({b.get<double>(), kEssential, dim});
    }
}

} // namespace

PersistenceDiagram diagram_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, std::string("invalid diagram JSON: ") + e.what());
    }
    std::vector<DiagramPoint> points;
    try {
        if (j.is_array()) {
            for (const auto& item : j) append_dimension(item, points);
        } else {
            append_dimension(j, points);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, std::string("malformed diagram: ") + e.what());
    }
    return PersistenceDiagram(std::move(points));
}

void write_image_csv(std::ostream& out, const PersistenceImage& img) {
    const std::size_t r = img.resolution();
    for (std::size_t row = 0; row < r; ++row) {
        for (std::size_t col = 0; col < r; ++col) {
            if (col) out << ',';
            out << format_real(img.at(row, col));
        }
        out << '\n';
    }
}

void write_features_csv(std::ostream& out, const NodeFeatureMatrix& m) {
    for (std::size_t i = 0; i < m.values.rows; ++i) {
        const auto row = m.values.row(i);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_real(row[c]);
        }
        out << '\n';
    }
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> bytes{};
    for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
    out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
        throw ParseError(0, "truncated binary feature block");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v |= std::uint64_t{bytes[i]} << (8 * i);
    return v;
}

} // namespace

void write_features_binary(std::ostream& out, const NodeFeatureMatrix& m) {
    put_u64(out, m.values.rows);
    put_u64(out, m.values.cols);
    for (double x : m.values.values) put_u64(out, std::bit_cast<std::uint64_t>(x));
}

Matrix read_features_binary(std::istream& in) {
    const auto rows = get_u64(in);
    const auto cols = get_u64(in);
    Matrix m(rows, cols);
    for (auto& x : m.values) x = std::bit_cast<double>(get_u64(in));
    return m;
}

void write_report_csv(std::ostream& out, const StabilityReport& report) {
    out << "budget,trial,l1_distance,local_wasserstein_p,global_pi_linf_drift,topo_loss_drift,"
           "cover_radius,c_epsilon,bound_ratio_local,bound_ratio_global\n";
    for (const auto& r : report.rows) {
        out << r.budget << ',' << r.trial << ',' << r.l1_distance << ',' << format_real(r.local_wasserstein_p) << ','
            << format_real(r.global_pi_linf_drift) << ',' << format_real(r.topo_loss_drift) << ','
            << format_real(r.cover_radius) << ',' << r.c_epsilon << ',' << format_real(r.bound_ratio_local) << ','
            << format_real(r.bound_ratio_global) << '\n';
    }
}

} // namespace wtopo
