#pragma once

// Experiment results and their on-disk forms: report.json, CSV tables and
// small SVG line plots.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace liouville {

/// Where a reported number comes from: a value stated in the source
/// material, a trivial identity, or one derived by an independent oracle.
enum class Provenance { paper, trivial, derived };
std::string to_string(Provenance p);

struct Scalar {
    std::string name;
    double value = 0.0;
    Provenance provenance = Provenance::derived;
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<Scalar> scalars;
    std::vector<Verdict> verdicts;
    std::vector<std::string> artifacts;  // file names relative to the output directory

    void add(std::string name, double value, Provenance p) { scalars.push_back({std::move(name), value, p}); }
    void check(std::string name, bool pass, std::string detail = {}) {
        verdicts.push_back({std::move(name), pass, std::move(detail)});
    }
    bool pass() const;
    const Scalar* scalar(const std::string& name) const;
    nlohmann::json to_json() const;
};

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

struct Series {
    std::string name;
    std::vector<double> x, y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::optional<double> reference_y;  // dashed horizontal line
};

void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace liouville
