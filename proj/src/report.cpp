#include "liouville/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "liouville/errors.hpp"
#include "liouville/format.hpp"

namespace liouville {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// 1, 2 or 5 times a power of ten, about n steps across [lo, hi]
double nice_step(double lo, double hi, int n) {
    const double raw = (hi - lo) / n;
    const double p = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0}) {
        if (m * p >= raw) return m * p;
    }
    return 10.0 * p;
}

std::string tick_label(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

}  // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::paper: return "paper";
        case Provenance::trivial: return "trivial";
        case Provenance::derived: return "derived";
    }
    return "derived";
}

bool ExperimentResult::pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Scalar* ExperimentResult::scalar(const std::string& name) const {
    for (const Scalar& s : scalars) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

nlohmann::json ExperimentResult::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["pass"] = pass();
    j["scalars"] = nlohmann::json::array();
    for (const Scalar& s : scalars) {
        nlohmann::json v = std::isfinite(s.value) ? nlohmann::json(s.value) : nlohmann::json(fmt(s.value));
        j["scalars"].push_back({{"name", s.name}, {"value", v}, {"provenance", to_string(s.provenance)}});
    }
    j["verdicts"] = nlohmann::json::array();
    for (const Verdict& v : verdicts) {
        j["verdicts"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    }
    j["artifacts"] = artifacts;
    return j;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw Error("write_csv: header and column counts differ");
    std::size_t rows = 0;
    for (const auto& c : columns) rows = std::max(rows, c.size());
    std::ofstream out = open_out(path);
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (k) out << ',';
            if (i < columns[k].size()) out << fmt(columns[k][i]);
        }
        out << '\n';
    }
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series) {
    constexpr double W = 720, H = 440, L = 80, R = 160, T = 40, B = 60;
    auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || !std::isfinite(s.x[i]) || (spec.log_x && !(s.x[i] > 0.0))) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (spec.reference_y) {
        y0 = std::min(y0, *spec.reference_y);
        y1 = std::max(y1, *spec.reference_y);
    }
    if (!(x1 >= x0)) x0 = 0, x1 = 1;
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return L + (tx(x) - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape_xml(spec.title) << "</text>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";

    const double xs = spec.log_x ? std::max(1.0, std::ceil((x1 - x0) / 6.0)) : nice_step(x0, x1, 6);
    for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs) {
        const double x = L + (v - x0) / (x1 - x0) * (W - L - R);
        out << "<line x1=\"" << x << "\" y1=\"" << H - B << "\" x2=\"" << x << "\" y2=\"" << H - B + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">"
            << (spec.log_x ? "1e" + tick_label(v) : tick_label(v)) << "</text>\n";
    }
    const double ys = nice_step(y0, y1, 6);
    for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
        const double y = py(v);
        out << "<line x1=\"" << L - 5 << "\" y1=\"" << y << "\" x2=\"" << L << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << L - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
            << tick_label(std::abs(v) < 1e-12 * ys ? 0.0 : v) << "</text>\n";
    }
    out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
        << escape_xml(spec.x_label) << "</text>\n";
    out << "<text transform=\"translate(20," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape_xml(spec.y_label) << "</text>\n";
    if (spec.reference_y) {
        const double y = py(*spec.reference_y);
        out << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\"" << y
            << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const Series& s = series[k];
        const char* color = colors[k % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (spec.log_x && !(s.x[i] > 0.0))) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        const double ly = T + 10 + 18 * double(k);
        out << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - R + 35 << "\" y=\"" << ly + 4 << "\">" << escape_xml(s.name) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace liouville
