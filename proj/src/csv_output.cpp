#include "catspec/csv_output.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "catspec/errors.hpp"

namespace catspec {

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_g12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct CsvFile::Impl {
    std::ofstream out;
};

CsvFile::CsvFile(const std::string& path, const RunManifest& manifest,
                 const std::string& header)
    : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out) {
        delete impl_;
        throw ConfigError("cannot open output file: " + path);
    }
    impl_->out << "# subcommand: " << manifest.subcommand << "\n";
    impl_->out << "# config_hash: " << manifest.config_hash << "\n";
    for (const auto& [k, v] : manifest.conventions) impl_->out << "# " << k << ": " << v << "\n";
    impl_->out << header << "\n";
}

CsvFile::~CsvFile() { delete impl_; }

void CsvFile::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << format_g12(values[i]);
    }
    impl_->out << '\n';
}

void CsvFile::raw_row(const std::string& line) { impl_->out << line << '\n'; }

void write_svg_polylines(const std::string& path, const std::vector<SvgSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    const int W = 720, H = 480, M = 40;
    double xmin = std::numeric_limits<double>::max(), xmax = std::numeric_limits<double>::lowest();
    double ymin = xmin, ymax = xmax;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\""
        << H - 2 * M << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << M << "\" y=\"" << H - 8 << "\" font-size=\"12\">x: ["
        << format_g12(xmin) << ", " << format_g12(xmax) << "]  y: [" << format_g12(ymin) << ", "
        << format_g12(ymax) << "]</text>\n";
    int idx = 0;
    for (const auto& s : series) {
        std::ostringstream pts;
        bool open = false;
        auto flush = [&] {
            if (open) {
                out << "<polyline fill=\"none\" stroke=\"black\" points=\"" << pts.str()
                    << "\"/>\n";
                pts.str("");
                open = false;
            }
        };
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            pts << format_g12(px(s.x[i])) << ',' << format_g12(py(s.y[i])) << ' ';
            open = true;
        }
        flush();
        if (!s.label.empty())
            out << "<text x=\"" << M + 6 << "\" y=\"" << M + 14 + 14 * idx
                << "\" font-size=\"12\">" << s.label << "</text>\n";
        ++idx;
    }
    out << "</svg>\n";
}

void write_manifest_json(const std::string& path, const RunManifest& manifest) {
    nlohmann::json j;
    j["subcommand"] = manifest.subcommand;
    j["config_hash"] = manifest.config_hash;
    nlohmann::json conv = nlohmann::json::object();
    for (const auto& [k, v] : manifest.conventions) conv[k] = v;
    j["conventions"] = conv;
    j["outputs"] = manifest.outputs;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace catspec
