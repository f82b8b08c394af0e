// csv_output.hpp — deterministic CSV/SVG emission and the run manifest
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace catspec {

// Every output file starts with these comment lines, so figure regeneration
// is self-describing; identical manifests give byte-identical bodies.
struct RunManifest {
    std::string subcommand;
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> conventions;
    std::vector<std::string> outputs;  // file names relative to out_dir
};

std::string fnv1a64_hex(const std::string& data);

// %.12g + lowercase nan/inf, locale independent
std::string format_g12(double v);

class CsvFile {
  public:
    CsvFile(const std::string& path, const RunManifest& manifest, const std::string& header);
    ~CsvFile();
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

  private:
    struct Impl;
    Impl* impl_;
};

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal unstyled polyline plot; non-finite points break the line.
void write_svg_polylines(const std::string& path, const std::vector<SvgSeries>& series);

void write_manifest_json(const std::string& path, const RunManifest& manifest);

}  // namespace catspec
